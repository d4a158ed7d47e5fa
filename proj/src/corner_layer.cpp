#include "ppflow/corner_layer.hpp"

#include "ppflow/fd.hpp"
#include "ppflow/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ppflow {

JumpSources compute_jump_sources(const ShearMap& shear, const Field1D& vp_jump,
                                 const Field1D& vp_jump_Zderiv, double t) {
    if (vp_jump.size() != vp_jump_Zderiv.size())
        throw std::invalid_argument("compute_jump_sources: jump and derivative grids differ");
    const double g = shear.psi_z_wall(t);
    const double c = 1.0 + g * g;
    JumpSources js;
    js.right_source = Field1D(vp_jump.grid);
    js.left_source = Field1D(vp_jump.grid);
    for (int j = 0; j < vp_jump.size(); ++j) {
        double q = vp_jump[j];
        double qZ = vp_jump_Zderiv[j];
        js.right_source[j] = -0.5 * (c * q + 2.0 * g * qZ);
        js.left_source[j] = 0.5 * (c * q - 2.0 * g * qZ);
    }
    return js;
}

namespace {

void lerp_series(const std::vector<Field1D>& series, std::size_t k, double theta, Field1D& out) {
    const std::vector<double>& a = series[k].values;
    const std::vector<double>& b = series[k + 1].values;
    for (std::size_t j = 0; j < a.size(); ++j)
        out.values[j] = (1.0 - theta) * a[j] + theta * b[j];
}

} // namespace

CornerLayerSolution solve_corner_layer(const std::vector<double>& times,
                                       const std::vector<Field1D>& vp_jump,
                                       const std::vector<Field1D>& vp_jump_Zderiv,
                                       const std::vector<Field1D>& transition_wall_row,
                                       double corner_jump,
                                       const ShearMap& shear,
                                       double T, const Grid1D& grid_X, const Grid1D& grid_Z,
                                       double dt) {
    if (times.size() < 2 || times.front() != 0.0 || times.back() != T)
        throw std::invalid_argument("solve_corner_layer: times must run from 0 to T");
    if (vp_jump.size() != times.size() || vp_jump_Zderiv.size() != times.size() ||
        transition_wall_row.size() != times.size())
        throw std::invalid_argument("solve_corner_layer: series lengths must match times");

    CornerLayerSolution sol;
    sol.times = times;
    sol.grid = Grid2D(grid_X, grid_Z);

    const int nX = grid_X.n_points;
    const int nZ = grid_Z.n_points;
    const int i0 = sol.grid.interface_index;
    const double hX = grid_X.spacing;
    const double hZ = grid_Z.spacing;

    const double dt0 = dt > 0.0 ? dt : T / 2048.0;
    const double smax = std::abs(shear.psi_z_wall(T));
    const double dt_bound = hX * hZ / (4.0 * (1.0 + smax * smax));
    if (dt0 > dt_bound) {
        std::ostringstream msg;
        msg << "solve_corner_layer: dt = " << dt0 << " violates the explicit stability bound "
            << dt_bound << "; use dt <= " << dt_bound;
        throw std::invalid_argument(msg.str());
    }

    // decay weights of the corner correction, and the wall boundary data pieces
    std::vector<double> decay(nX), half_jump_decay(nX);
    std::vector<int> side(nX);
    for (int i = 0; i < nX; ++i) {
        double X = grid_X.node(i);
        decay[i] = std::exp(-std::abs(X));
        side[i] = (i > i0) - (i < i0);
        half_jump_decay[i] = side[i] * (0.5 * corner_jump * decay[i]);
    }

    // compatibility of zero initial data with the wall row at t = 0
    double defect = 0.0;
    for (int i = 0; i < nX; ++i)
        defect = std::max(defect, std::abs(-transition_wall_row[0][i] - half_jump_decay[i]));
    if (defect > 1e-10 * std::max(1.0, std::abs(corner_jump)))
        throw std::invalid_argument(
            "solve_corner_layer: wall boundary data at t = 0 is incompatible with zero "
            "initial data (the transition layer's wall row must cancel the exponential "
            "corner correction)");

    auto wall_row = [&](std::size_t k, double theta, std::vector<double>& out) {
        const Field1D& a = transition_wall_row[k];
        const Field1D& b = transition_wall_row[k + 1];
        for (int i = 0; i < nX; ++i)
            out[i] = -((1.0 - theta) * a[i] + theta * b[i]) - half_jump_decay[i];
    };

    std::vector<double> w(std::size_t(nX) * nZ, 0.0);
    auto idx = [nX](int i, int j) { return std::size_t(j) * nX + std::size_t(i); };

    Field1D q_half(vp_jump[0].grid), qZ_half(vp_jump[0].grid);
    std::vector<double> rhs(w.size()), wstar(w.size()), bdata(nX);
    std::vector<double> lo(std::max(nX, nZ)), di(std::max(nX, nZ)), up(std::max(nX, nZ));
    std::vector<double> col(std::max(nX, nZ)), scratch(std::max(nX, nZ));

    const int monitor_stride = 16;
    auto record_monitors = [&](double t) {
        double l2 = 0.0, grad = 0.0;
        for (int j = 0; j < nZ; ++j)
            for (int i = 0; i < nX; ++i) l2 += w[idx(i, j)] * w[idx(i, j)];
        for (int j = 1; j + 1 < nZ; ++j)
            for (int i = 1; i + 1 < nX; ++i) {
                double gx = (w[idx(i + 1, j)] - w[idx(i - 1, j)]) / (2.0 * hX);
                double gz = (w[idx(i, j + 1)] - w[idx(i, j - 1)]) / (2.0 * hZ);
                grad += gx * gx + gz * gz;
            }
        sol.monitor_times.push_back(t);
        sol.monitor_l2_sq.push_back(l2 * hX * hZ);
        sol.monitor_grad_l2_sq.push_back(grad * hX * hZ);
    };

    auto push_snapshot = [&](std::size_t k) {
        TwoSidedField2D core(sol.grid);
        core.values.assign(w.begin(), w.end());
        core.adopt_continuous_traces();
        sol.smooth_core.push_back(core);

        const std::vector<double>& q = vp_jump[k].values;
        TwoSidedField2D vb(sol.grid);
        for (int j = 0; j < nZ; ++j) {
            for (int i = 0; i < nX; ++i)
                vb.at(i, j) = w[idx(i, j)] - side[i] * (0.5 * q[j] * decay[i]);
            double w0 = w[idx(i0, j)];
            vb.left_trace[j] = w0 + 0.5 * q[j];
            vb.right_trace[j] = w0 - 0.5 * q[j];
            double dw = (w[idx(i0 + 1, j)] - w[idx(i0 - 1, j)]) / (2.0 * hX);
            vb.left_xderiv_trace[j] = dw + 0.5 * q[j];
            vb.right_xderiv_trace[j] = dw + 0.5 * q[j];
        }
        vb.declared_continuous = false;
        sol.corner.push_back(std::move(vb));
    };

    record_monitors(0.0);
    push_snapshot(0);

    long step_count = 0;
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const double span = times[k + 1] - times[k];
        const int steps = std::max(1, static_cast<int>(std::lround(span / dt0)));
        const double hs = span / steps;
        const double rC = hs / (hZ * hZ);

        for (int s = 0; s < steps; ++s) {
            const double t_half = times[k] + (s + 0.5) * hs;
            const double theta_half = (s + 0.5) / steps;
            const double theta_next = (s + 1 == steps) ? 1.0 : double(s + 1) / steps;
            const double t_next = (s + 1 == steps) ? times[k + 1] : times[k] + (s + 1) * hs;

            const double sb = shear.psi_z_wall(t_half);
            const double rA = hs * (1.0 + sb * sb) / (hX * hX);

            lerp_series(vp_jump, k, theta_half, q_half);
            lerp_series(vp_jump_Zderiv, k, theta_half, qZ_half);
            JumpSources js = compute_jump_sources(shear, q_half, qZ_half, t_half);
            wall_row(k, theta_next, bdata);

            // explicit pieces: mixed derivative and the jump sources
            const double cmix = -2.0 * sb / (4.0 * hX * hZ);
            for (int j = 1; j + 1 < nZ; ++j) {
                double jr = js.right_source[j], jl = js.left_source[j];
                for (int i = 1; i + 1 < nX; ++i) {
                    double mixed = cmix * (w[idx(i + 1, j + 1)] - w[idx(i + 1, j - 1)] -
                                           w[idx(i - 1, j + 1)] + w[idx(i - 1, j - 1)]);
                    double src = i > i0   ? jr * decay[i]
                                 : i < i0 ? jl * decay[i]
                                          : 0.5 * (jr + jl);
                    rhs[idx(i, j)] = w[idx(i, j)] + hs * (mixed + src);
                }
            }

            // implicit sweep along X, rows of interior Z
            for (int j = 1; j + 1 < nZ; ++j) {
                lo[0] = 0.0; di[0] = 1.0; up[0] = 0.0; col[0] = 0.0;
                for (int i = 1; i + 1 < nX; ++i) {
                    lo[i] = -rA; di[i] = 1.0 + 2.0 * rA; up[i] = -rA;
                    col[i] = rhs[idx(i, j)];
                }
                lo[nX - 1] = 0.0; di[nX - 1] = 1.0; col[nX - 1] = 0.0;
                solve_tridiagonal(lo.data(), di.data(), up.data(), col.data(), scratch.data(), nX);
                for (int i = 0; i < nX; ++i) wstar[idx(i, j)] = col[i];
            }
            for (int i = 0; i < nX; ++i) {
                wstar[idx(i, 0)] = bdata[i];
                wstar[idx(i, nZ - 1)] = 0.0;
            }

            // implicit sweep along Z, interior columns; edges hold Dirichlet data
            for (int i = 1; i + 1 < nX; ++i) {
                lo[0] = 0.0; di[0] = 1.0; up[0] = 0.0; col[0] = bdata[i];
                for (int j = 1; j + 1 < nZ; ++j) {
                    lo[j] = -rC; di[j] = 1.0 + 2.0 * rC; up[j] = -rC;
                    col[j] = wstar[idx(i, j)];
                }
                lo[nZ - 1] = 0.0; di[nZ - 1] = 1.0; col[nZ - 1] = 0.0;
                solve_tridiagonal(lo.data(), di.data(), up.data(), col.data(), scratch.data(), nZ);
                for (int j = 0; j < nZ; ++j) w[idx(i, j)] = col[j];
            }
            for (int j = 0; j < nZ; ++j) {
                w[idx(0, j)] = 0.0;
                w[idx(nX - 1, j)] = 0.0;
            }
            w[idx(0, 0)] = bdata[0];
            w[idx(nX - 1, 0)] = bdata[nX - 1];

            ++step_count;
            if (step_count % monitor_stride == 0) record_monitors(t_next);
        }
        push_snapshot(k + 1);
    }
    if (sol.monitor_times.back() != T) record_monitors(T);
    return sol;
}

EnergyReport energy_monitor(const CornerLayerSolution& solution,
                            const std::vector<Field1D>& vp_jump,
                            const std::vector<Field1D>& vp_jump_Zderiv,
                            const ShearMap& shear, double p) {
    if (!(p > 1.0))
        throw std::invalid_argument("energy_monitor: p must exceed 1");
    if (vp_jump.size() != solution.times.size() || vp_jump_Zderiv.size() != solution.times.size())
        throw std::invalid_argument("energy_monitor: series lengths must match snapshot times");

    const Grid2D& g = solution.grid;
    const int nX = g.nx(), nZ = g.nz(), i0 = g.interface_index;
    const double hX = g.x_axis.spacing, hZ = g.z_axis.spacing, cell = hX * hZ;

    EnergyReport rep;
    rep.p = p;
    std::vector<double> diss, pair, phi(g.n_nodes());
    for (std::size_t m = 0; m < solution.times.size(); ++m) {
        const TwoSidedField2D& w = solution.smooth_core[m];
        double lp_pow = 0.0;
        for (std::size_t n = 0; n < w.values.size(); ++n) {
            lp_pow += std::pow(std::abs(w.values[n]), p);
            phi[n] = std::pow(std::abs(w.values[n]), 0.5 * p);
        }
        rep.sup_lp_pow = std::max(rep.sup_lp_pow, lp_pow * cell);

        double grad = 0.0;
        for (int j = 1; j + 1 < nZ; ++j)
            for (int i = 1; i + 1 < nX; ++i) {
                double gx = (phi[g.index(i + 1, j)] - phi[g.index(i - 1, j)]) / (2.0 * hX);
                double gz = (phi[g.index(i, j + 1)] - phi[g.index(i, j - 1)]) / (2.0 * hZ);
                grad += gx * gx + gz * gz;
            }
        diss.push_back((4.0 / (p * p)) * grad * cell);

        JumpSources js = compute_jump_sources(shear, vp_jump[m], vp_jump_Zderiv[m], solution.times[m]);
        double coupling = 0.0;
        for (int j = 0; j < nZ; ++j)
            for (int i = 0; i < nX; ++i) {
                double X = g.x_axis.node(i);
                double src = i > i0   ? js.right_source[j] * std::exp(-X)
                             : i < i0 ? js.left_source[j] * std::exp(X)
                                      : 0.5 * (js.right_source[j] + js.left_source[j]);
                double wv = w.values[g.index(i, j)];
                coupling += std::abs(src) * std::pow(std::abs(wv), p - 1.0);
            }
        pair.push_back(coupling * cell);
    }
    rep.dissipation = trapezoid(solution.times, diss);
    rep.source_coupling = trapezoid(solution.times, pair);
    rep.bound_constant =
        (rep.sup_lp_pow + rep.dissipation) / std::max(rep.source_coupling, 1e-300);
    return rep;
}

double second_derivative_integrability(const CornerLayerSolution& solution, double p) {
    std::vector<double> powers;
    powers.reserve(solution.times.size());
    for (const TwoSidedField2D& vb : solution.corner) {
        TwoSidedField2D dxx = fd_derivative(vb, Axis::X, 2);
        powers.push_back(std::pow(lp_norm(dxx, p), p));
    }
    return trapezoid(solution.times, powers);
}

} // namespace ppflow
