#include "ppflow/flow.hpp"

#include "ppflow/fd.hpp"
#include "ppflow/interp.hpp"
#include "ppflow/kernels.hpp"
#include "ppflow/norms.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppflow {

namespace {

void check_span(const std::vector<double>& times, double T, const char* who) {
    if (times.empty() || times.front() != 0.0)
        throw std::invalid_argument(std::string(who) + ": times must start at 0");
    if (times.back() != T)
        throw std::invalid_argument(std::string(who) + ": times must end at T");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (!(times[k] > times[k - 1]))
            throw std::invalid_argument(std::string(who) + ": times must be strictly increasing");
}

/// One row of a two-sided field as a pair of interpolants, each side closed
/// with its own trace at x = 0.
struct SideRow {
    PchipInterpolant left, right;
};

SideRow make_side_row(const TwoSidedField2D& f, int iz) {
    const Grid1D& ax = f.grid.x_axis;
    const int i0 = f.ix0();
    std::vector<double> lv(std::size_t(i0) + 1);
    std::vector<double> rv(std::size_t(ax.n_points - i0), 0.0);
    for (int i = 0; i < i0; ++i) lv[std::size_t(i)] = f.at(i, iz);
    lv.back() = f.left_trace[std::size_t(iz)];
    rv.front() = f.right_trace[std::size_t(iz)];
    for (int i = i0 + 1; i < ax.n_points; ++i) rv[std::size_t(i - i0)] = f.at(i, iz);
    SideRow s;
    s.left = make_pchip(Grid1D(i0 + 1, ax.spacing, ax.origin), std::move(lv));
    s.right = make_pchip(Grid1D(ax.n_points - i0, ax.spacing, 0.0), std::move(rv));
    return s;
}

} // namespace

TwoSidedField2D euler_solution(const InitialData& data, double t, CoordinateFrame frame) {
    if (frame == CoordinateFrame::straightened) return data.v0;

    const Grid2D& g = data.physical;
    const double xlo = g.x_axis.node(0), xhi = g.x_axis.last();
    const double h = g.x_axis.spacing;
    TwoSidedField2D out(g);
    long clamped = 0;

    for (int j = 0; j < g.nz(); ++j) {
        const double z = g.z_axis.node(j);
        const double s = t * data.u0_of(z);
        SideRow row = make_side_row(data.v0, j);
        for (int i = 0; i < g.nx(); ++i) {
            const double x = g.x_axis.node(i);
            if (x < s) {
                const double y = x - s;
                if (y < xlo) ++clamped;
                out.at(i, j) = row.left(y);
            } else if (x > s) {
                const double y = x - s;
                if (y > xhi) ++clamped;
                out.at(i, j) = row.right(y);
            } else {
                out.at(i, j) = 0.5 * (data.v0.left_trace[std::size_t(j)] +
                                      data.v0.right_trace[std::size_t(j)]);
            }
        }
        if (s == 0.0) {
            out.left_trace[std::size_t(j)] = data.v0.left_trace[std::size_t(j)];
            out.right_trace[std::size_t(j)] = data.v0.right_trace[std::size_t(j)];
            out.left_xderiv_trace[std::size_t(j)] = data.v0.left_xderiv_trace[std::size_t(j)];
            out.right_xderiv_trace[std::size_t(j)] = data.v0.right_xderiv_trace[std::size_t(j)];
        } else {
            // the shifted jump misses x = 0, so the field is smooth here
            const PchipInterpolant& piece = (s > 0.0) ? row.left : row.right;
            const double c = piece(-s);
            const double d = 0.5 * std::min(h, std::abs(s));
            const double slope = (piece(-s + d) - piece(-s - d)) / (2.0 * d);
            out.left_trace[std::size_t(j)] = c;
            out.right_trace[std::size_t(j)] = c;
            out.left_xderiv_trace[std::size_t(j)] = slope;
            out.right_xderiv_trace[std::size_t(j)] = slope;
        }
    }
    if (clamped > 0)
        std::cerr << "euler_solution: " << clamped
                  << " evaluations left the x-range and were clamped\n";
    return out;
}

double euler_lp_norm(const InitialData& data, double t, double p, CoordinateFrame frame) {
    if (!(p >= 1.0)) throw std::invalid_argument("euler_lp_norm: p must be >= 1");
    if (frame == CoordinateFrame::straightened) return lp_norm(data.v0, p);

    const Grid2D& g = data.physical;
    const double xlo = g.x_axis.node(0), xhi = g.x_axis.last();
    const double h = g.x_axis.spacing;
    const int nx = g.nx();
    std::vector<double> rowint(std::size_t(g.nz()), 0.0);
    std::vector<double> fp(std::size_t(nx), 0.0);
    long clamped = 0;

    for (int j = 0; j < g.nz(); ++j) {
        const double z = g.z_axis.node(j);
        const double s = t * data.u0_of(z);
        SideRow row = make_side_row(data.v0, j);
        for (int i = 0; i < nx; ++i) {
            const double x = g.x_axis.node(i);
            double v;
            if (x < s) {
                const double y = x - s;
                if (y < xlo) ++clamped;
                v = row.left(y);
            } else if (x > s) {
                const double y = x - s;
                if (y > xhi) ++clamped;
                v = row.right(y);
            } else {
                v = 0.0; // placeholder; jump-node cells use the one-sided traces below
            }
            fp[std::size_t(i)] = std::pow(std::abs(v), p);
        }
        const double jl = std::pow(std::abs(data.v0.left_trace[std::size_t(j)]), p);
        const double jr = std::pow(std::abs(data.v0.right_trace[std::size_t(j)]), p);
        double acc = 0.0;
        for (int i = 0; i + 1 < nx; ++i) {
            const double xa = g.x_axis.node(i), xb = g.x_axis.node(i + 1);
            if (s > xa && s < xb) {
                // split the jump cell exactly at the interface abscissa
                acc += 0.5 * (fp[std::size_t(i)] + jl) * (s - xa);
                acc += 0.5 * (jr + fp[std::size_t(i + 1)]) * (xb - s);
            } else {
                const double fa = (xa == s) ? jr : fp[std::size_t(i)];
                const double fb = (xb == s) ? jl : fp[std::size_t(i + 1)];
                acc += 0.5 * (fa + fb) * h;
            }
        }
        rowint[std::size_t(j)] = acc;
    }
    if (clamped > 0)
        std::cerr << "euler_lp_norm: " << clamped
                  << " evaluations left the x-range and were clamped\n";

    double total = 0.0;
    const double hz = g.z_axis.spacing;
    for (int j = 0; j + 1 < g.nz(); ++j)
        total += 0.5 * (rowint[std::size_t(j)] + rowint[std::size_t(j + 1)]) * hz;
    return std::pow(total, 1.0 / p);
}

Grid1D shear_speed_grid(double extent, int points_per_unit) {
    const int n = int(std::lround(extent * points_per_unit)) + 1;
    return make_halfline_grid(extent, n);
}

AnsatzField assemble_ansatz(const ProfileSet& profiles, const InitialData& data,
                            double epsilon, double t, const Grid1D& u_grid) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("assemble_ansatz: epsilon must be positive");
    std::size_t k = profiles.times.size();
    for (std::size_t m = 0; m < profiles.times.size(); ++m)
        if (std::abs(profiles.times[m] - t) <= 1e-12 * std::max(1.0, std::abs(t))) {
            k = m;
            break;
        }
    if (k == profiles.times.size())
        throw std::invalid_argument("assemble_ansatz: t is not a stored profile snapshot time");

    const Grid2D& pg = data.physical;
    const int nx = pg.nx(), nz = pg.nz(), i0 = pg.interface_index;
    const TwoSidedField2D& kh = profiles.transition_v.values[k];
    const TwoSidedField2D& vb = profiles.corner.corner[k];
    const TwoSidedField2D& core = profiles.corner.smooth_core[k];
    const Field1D& unit = profiles.wall_unit[k];

    if (kh.grid.z_axis.n_points != nz || kh.grid.z_axis.spacing != pg.z_axis.spacing)
        throw std::logic_error("assemble_ansatz: transition z grid does not match the strip");
    if (vb.grid.x_axis.n_points != kh.grid.x_axis.n_points ||
        vb.grid.z_axis.n_points != unit.grid.n_points)
        throw std::logic_error("assemble_ansatz: corner grids do not match the other fast grids");

    const double sq = std::sqrt(epsilon);
    std::vector<double> Xq(std::size_t(nx), 0.0), Zq(std::size_t(nz), 0.0);
    for (int i = 0; i < nx; ++i) Xq[std::size_t(i)] = pg.x_axis.node(i) / sq;
    for (int j = 0; j < nz; ++j) Zq[std::size_t(j)] = pg.z_axis.node(j) / sq;

    // wall layer: every column is the shared unit profile scaled by -v0(x, 0)
    PchipInterpolant P = make_pchip(unit);
    std::vector<double> Pz(std::size_t(nz), 0.0);
    for (int j = 0; j < nz; ++j) Pz[std::size_t(j)] = P(Zq[std::size_t(j)]);
    std::vector<double> ampL(std::size_t(nx), 0.0), ampR(std::size_t(nx), 0.0);
    for (int i = 0; i < nx; ++i) {
        const double x = pg.x_axis.node(i);
        ampL[std::size_t(i)] = -data.v0_left_of(x, 0.0);
        ampR[std::size_t(i)] = -data.v0_right_of(x, 0.0);
    }

    // corner layer mapped to the strip: interpolate each fast row in X, then
    // each strip column in Z, so the z = 0 row reduces exactly to the fast
    // wall row (a node evaluation) and cancels the transition wall row
    const int nZc = vb.nz();
    std::vector<double> colv(std::size_t(nZc) * std::size_t(nx), 0.0);
    for (int m = 0; m < nZc; ++m) {
        SideRow r = make_side_row(vb, m);
        double* dst = colv.data() + std::size_t(m) * std::size_t(nx);
        for (int i = 0; i < i0; ++i) dst[i] = r.left(Xq[std::size_t(i)]);
        for (int i = i0 + 1; i < nx; ++i) dst[i] = r.right(Xq[std::size_t(i)]);
    }
    std::vector<double> vbp(std::size_t(nx) * std::size_t(nz), 0.0); // [j*nx + i]
    {
        std::vector<double> column(std::size_t(nZc), 0.0);
        for (int i = 0; i < nx; ++i) {
            if (i == i0) continue;
            for (int m = 0; m < nZc; ++m)
                column[std::size_t(m)] = colv[std::size_t(m) * std::size_t(nx) + std::size_t(i)];
            PchipInterpolant ci = make_pchip(vb.grid.z_axis, column);
            for (int j = 0; j < nz; ++j)
                vbp[std::size_t(j) * std::size_t(nx) + std::size_t(i)] = ci(Zq[std::size_t(j)]);
        }
    }

    AnsatzField out;
    out.epsilon = epsilon;
    out.time = t;
    out.profiles = &profiles;
    out.data = &data;
    out.snapshot = k;
    out.v_app = TwoSidedField2D(pg);

    for (int j = 0; j < nz; ++j) {
        SideRow krow = make_side_row(kh, j);
        const double pz = Pz[std::size_t(j)];
        for (int i = 0; i < nx; ++i) {
            if (i == i0) continue;
            const double khv = (i < i0) ? krow.left(Xq[std::size_t(i)]) : krow.right(Xq[std::size_t(i)]);
            const double amp = (i < i0) ? ampL[std::size_t(i)] : ampR[std::size_t(i)];
            out.v_app.at(i, j) = data.v0.at(i, j) + amp * pz + khv +
                                 vbp[std::size_t(j) * std::size_t(nx) + std::size_t(i)];
        }
    }

    // interface traces composed from shared interpolants: the wall-layer jump
    // and the corner-layer jump are the same interpolant value with opposite
    // signs, so the assembled jump telescopes to rounding error
    {
        std::vector<double> w0(std::size_t(nZc), 0.0), dw(std::size_t(nZc), 0.0);
        const int iXc = core.ix0();
        for (int m = 0; m < nZc; ++m) {
            w0[std::size_t(m)] = core.at(iXc, m);
            dw[std::size_t(m)] = vb.left_xderiv_trace[std::size_t(m)]; // both sides equal
        }
        PchipInterpolant W = make_pchip(vb.grid.z_axis, std::move(w0));
        PchipInterpolant DW = make_pchip(vb.grid.z_axis, std::move(dw));
        const double dampL = -data.dxv0_left_of(0.0, 0.0);
        const double dampR = -data.dxv0_right_of(0.0, 0.0);
        for (int j = 0; j < nz; ++j) {
            const double z = pg.z_axis.node(j);
            const double Zj = Zq[std::size_t(j)];
            const double pz = Pz[std::size_t(j)];
            const double Wj = W(Zj);
            const double halfJ = 0.5 * profiles.corner_jump * pz;
            const double lt = data.v0.left_trace[std::size_t(j)] + ampL[std::size_t(i0)] * pz +
                              kh.left_trace[std::size_t(j)] + (Wj - halfJ);
            const double rt = data.v0.right_trace[std::size_t(j)] + ampR[std::size_t(i0)] * pz +
                              kh.right_trace[std::size_t(j)] + (Wj + halfJ);
            out.v_app.left_trace[std::size_t(j)] = lt;
            out.v_app.right_trace[std::size_t(j)] = rt;
            const double corner_xd = DW(Zj) / sq;
            out.v_app.left_xderiv_trace[std::size_t(j)] =
                data.dxv0_left_of(0.0, z) + dampL * pz +
                kh.left_xderiv_trace[std::size_t(j)] / sq + corner_xd;
            out.v_app.right_xderiv_trace[std::size_t(j)] =
                data.dxv0_right_of(0.0, z) + dampR * pz +
                kh.right_xderiv_trace[std::size_t(j)] / sq + corner_xd;
            out.v_app.at(i0, j) = 0.5 * (lt + rt);
        }
    }

    out.u_app = Field1D(u_grid);
    for (int i = 0; i < u_grid.n_points; ++i) {
        const double z = u_grid.node(i);
        out.u_app[i] = data.u0_of(z) - profiles.u0_at_wall * unit_layer_value(t, z / sq);
    }
    return out;
}

namespace {

/// Backward-implicit step of du/dt = eps d2u/dz2 with u(0) = 0 and a pinned
/// far value; the tridiagonal system overwrites u.
struct HeatStepper {
    double eps, h;
    std::vector<double> a, b, c, scratch;

    HeatStepper(double eps_, double h_, std::size_t n) : eps(eps_), h(h_), a(n), b(n), c(n), scratch(n) {}

    void step(std::vector<double>& u, double dt, double far) {
        const std::size_t n = u.size();
        const double r = eps * dt / (h * h);
        b[0] = 1.0;
        c[0] = 0.0;
        u[0] = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            a[i] = -r;
            b[i] = 1.0 + 2.0 * r;
            c[i] = -r;
        }
        a[n - 1] = 0.0;
        b[n - 1] = 1.0;
        u[n - 1] = far;
        solve_tridiagonal(a.data(), b.data(), c.data(), u.data(), scratch.data(), int(n));
    }
};

} // namespace

TrajectoryField solve_depleted_ns(const AnsatzField& initial, const InitialData& data,
                                  const ShearMap& shear, double epsilon, double T,
                                  const std::vector<double>& store_times,
                                  const DepletedSolveOptions& opts) {
    if (epsilon < 0.0)
        throw std::invalid_argument("solve_depleted_ns: epsilon must be nonnegative");
    if (std::abs(initial.epsilon - epsilon) > 1e-15 * std::max(1.0, epsilon))
        throw std::invalid_argument("solve_depleted_ns: initial state was assembled for a different epsilon");
    if (initial.time != 0.0)
        throw std::invalid_argument("solve_depleted_ns: initial state must be the t = 0 assembly");
    check_span(store_times, T, "solve_depleted_ns");

    const Grid2D& vg = initial.v_app.grid;
    const Grid1D& ug = initial.u_app.grid;
    const int nx = vg.nx(), nz = vg.nz();
    const double hx = vg.x_axis.spacing, hz = vg.z_axis.spacing, hu = ug.spacing;

    const int stride = int(std::lround(hz / hu));
    if (stride < 1 || std::abs(stride * hu - hz) > 1e-12 ||
        ug.last() < vg.z_axis.last() - 1e-12)
        throw std::logic_error("solve_depleted_ns: shear-speed grid does not subsample onto the strip");

    const int Nv = (opts.dt == 0.0) ? 1024 : std::max(1, int(std::lround(T / opts.dt)));
    const double dtv = T / Nv;
    const int Nu = (opts.u_time_steps == 0) ? 16384 : std::max(1, opts.u_time_steps);

    // the skew terms are explicit; their parabolic load must fit the step
    double smax = 0.0, szzmax = 0.0;
    for (int j = 0; j < nz; ++j) {
        const double z = vg.z_axis.node(j);
        smax = std::max(smax, std::abs(shear.psi_z(T, z)));
        szzmax = std::max(szzmax, std::abs(shear.psi_zz(T, z)));
    }
    {
        const double load = epsilon * dtv * (smax * smax / (hx * hx) + smax / (hx * hz));
        if (load > 0.25) {
            std::ostringstream msg;
            msg << "solve_depleted_ns: explicit skew terms violate stability; use dt <= "
                << 0.25 * dtv / load;
            throw std::invalid_argument(msg.str());
        }
    }
    for (double ts : store_times) {
        const double steps = ts / dtv;
        if (std::abs(steps - std::lround(steps)) > 1e-9)
            throw std::invalid_argument("solve_depleted_ns: store times must sit on the step mesh");
    }

    TrajectoryField traj;
    traj.epsilon = epsilon;
    traj.store_times = store_times;

    // ---- shear speed: graded implicit heat march, recording the advection
    // rows at every transverse step and full snapshots at the stored times
    const double sq = std::sqrt(std::max(epsilon, 0.0));
    const double zfar = ug.last();
    const double amp = (initial.profiles != nullptr) ? initial.profiles->u0_at_wall : data.u0_at_wall;
    auto far_value = [&](double t) {
        if (epsilon == 0.0) return initial.u_app.values.back();
        return data.u0_of(zfar) - amp * unit_layer_value(t, zfar / sq);
    };

    std::vector<double> mesh;
    mesh.reserve(std::size_t(Nu) + std::size_t(Nv) + store_times.size() + 2);
    for (int k = 0; k <= Nu; ++k) {
        const double f = double(k) / double(Nu);
        mesh.push_back(T * f * f);
    }
    for (int n = 0; n <= Nv; ++n) mesh.push_back(T * double(n) / double(Nv));
    for (double ts : store_times) mesh.push_back(ts);
    std::sort(mesh.begin(), mesh.end());
    std::vector<double> tmesh;
    tmesh.reserve(mesh.size());
    for (double t : mesh)
        if (tmesh.empty() || t - tmesh.back() > 1e-12 * std::max(1.0, T)) tmesh.push_back(t);

    std::vector<double> u = initial.u_app.values;
    HeatStepper heat(epsilon, hu, u.size());

    std::vector<std::vector<double>> arows(std::size_t(Nv) + 1);
    std::size_t pending_a = 0, pending_s = 0;
    const double match_tol = 1e-9 * std::max(1.0, T);
    auto record = [&](double tnow) {
        if (pending_a <= std::size_t(Nv) &&
            std::abs(tnow - T * double(pending_a) / double(Nv)) <= match_tol) {
            std::vector<double> row(std::size_t(nz), 0.0);
            for (int j = 0; j < nz; ++j)
                row[std::size_t(j)] = u[std::size_t(j) * std::size_t(stride)] - data.u0[j];
            arows[pending_a] = std::move(row);
            ++pending_a;
        }
        if (pending_s < store_times.size() &&
            std::abs(tnow - store_times[pending_s]) <= match_tol) {
            Field1D snap(ug);
            snap.values = u;
            traj.u.push_back(std::move(snap));
            ++pending_s;
        }
    };

    record(0.0);
    for (std::size_t m = 0; m + 1 < tmesh.size(); ++m) {
        const double dt = tmesh[m + 1] - tmesh[m];
        heat.step(u, dt, far_value(tmesh[m + 1]));
        record(tmesh[m + 1]);
    }
    if (pending_a != std::size_t(Nv) + 1 || pending_s != store_times.size())
        throw std::logic_error("solve_depleted_ns: time mesh failed to hit the recording points");

    // ---- transverse speed: diffusion implicit by factored sweeps, advection
    // and skew terms explicit
    std::vector<double> v = initial.v_app.values;
    std::vector<double> rhs(v.size()), wstar(v.size());
    std::vector<double> ta(std::size_t(std::max(nx, nz)), 0.0), tb(ta.size()), tc(ta.size()),
        td(ta.size()), tscratch(ta.size());
    const double rx = epsilon * dtv / (hx * hx);
    const double rz = epsilon * dtv / (hz * hz);

    std::size_t pending_v = 0;
    auto record_v = [&](double tnow) {
        if (pending_v < store_times.size() && std::abs(tnow - store_times[pending_v]) <= match_tol) {
            TwoSidedField2D snap(vg);
            snap.values = v;
            snap.adopt_continuous_traces();
            traj.v.push_back(std::move(snap));
            ++pending_v;
        }
    };
    record_v(0.0);

    std::vector<double> c2(std::size_t(nz), 0.0);
    std::vector<double> c3(std::size_t(nz), 0.0);
    for (int n = 0; n < Nv; ++n) {
        const double tmid = T * (double(n) + 0.5) / double(Nv);
        const std::vector<double>& a = arows[std::size_t(n)];
        double amax = 0.0;
        for (double av : a) amax = std::max(amax, std::abs(av));
        if ((amax + epsilon * szzmax) * dtv / hx > 1.0) {
            std::ostringstream msg;
            msg << "solve_depleted_ns: advective CFL exceeded; use dt <= "
                << 0.5 * hx / (amax + epsilon * szzmax);
            throw std::invalid_argument(msg.str());
        }
        for (int j = 0; j < nz; ++j) {
            const double z = vg.z_axis.node(j);
            c2[std::size_t(j)] = shear.psi_z(tmid, z);
            c3[std::size_t(j)] = shear.psi_zz(tmid, z);
        }

        for (int j = 1; j + 1 < nz; ++j) {
            const double aj = a[std::size_t(j)];
            const double s2 = c2[std::size_t(j)], s3 = c3[std::size_t(j)];
            const double* row = v.data() + std::size_t(j) * std::size_t(nx);
            const double* rowp = row + nx;
            const double* rowm = row - nx;
            double* out = rhs.data() + std::size_t(j) * std::size_t(nx);
            for (int i = 1; i + 1 < nx; ++i) {
                const double up = (aj > 0.0) ? (row[i] - row[i - 1]) / hx
                                             : (row[i + 1] - row[i]) / hx;
                const double sxx = (row[i + 1] - 2.0 * row[i] + row[i - 1]) / (hx * hx);
                const double sxz = (rowp[i + 1] - rowp[i - 1] - rowm[i + 1] + rowm[i - 1]) /
                                   (4.0 * hx * hz);
                const double sx = (row[i + 1] - row[i - 1]) / (2.0 * hx);
                out[i] = row[i] + dtv * (-aj * up +
                                         epsilon * (s2 * s2 * sxx - 2.0 * s2 * sxz - s3 * sx));
            }
        }

        // implicit x-diffusion, row by row
        for (int j = 1; j + 1 < nz; ++j) {
            double* out = wstar.data() + std::size_t(j) * std::size_t(nx);
            const double* src = rhs.data() + std::size_t(j) * std::size_t(nx);
            tb[0] = 1.0;
            tc[0] = 0.0;
            td[0] = 0.0;
            for (int i = 1; i + 1 < nx; ++i) {
                ta[std::size_t(i)] = -rx;
                tb[std::size_t(i)] = 1.0 + 2.0 * rx;
                tc[std::size_t(i)] = -rx;
                td[std::size_t(i)] = src[i];
            }
            ta[std::size_t(nx - 1)] = 0.0;
            tb[std::size_t(nx - 1)] = 1.0;
            td[std::size_t(nx - 1)] = 0.0;
            solve_tridiagonal(ta.data(), tb.data(), tc.data(), td.data(), tscratch.data(), nx);
            for (int i = 0; i < nx; ++i) out[i] = td[std::size_t(i)];
        }
        std::fill(wstar.begin(), wstar.begin() + nx, 0.0);
        std::fill(wstar.end() - nx, wstar.end(), 0.0);

        // implicit z-diffusion, column by column
        for (int i = 1; i + 1 < nx; ++i) {
            tb[0] = 1.0;
            tc[0] = 0.0;
            td[0] = 0.0;
            for (int j = 1; j + 1 < nz; ++j) {
                ta[std::size_t(j)] = -rz;
                tb[std::size_t(j)] = 1.0 + 2.0 * rz;
                tc[std::size_t(j)] = -rz;
                td[std::size_t(j)] = wstar[std::size_t(j) * std::size_t(nx) + std::size_t(i)];
            }
            ta[std::size_t(nz - 1)] = 0.0;
            tb[std::size_t(nz - 1)] = 1.0;
            td[std::size_t(nz - 1)] = 0.0;
            solve_tridiagonal(ta.data(), tb.data(), tc.data(), td.data(), tscratch.data(), nz);
            for (int j = 0; j < nz; ++j)
                v[std::size_t(j) * std::size_t(nx) + std::size_t(i)] = td[std::size_t(j)];
        }
        for (int j = 0; j < nz; ++j) {
            v[std::size_t(j) * std::size_t(nx)] = 0.0;
            v[std::size_t(j) * std::size_t(nx) + std::size_t(nx - 1)] = 0.0;
        }

        record_v(T * double(n + 1) / double(Nv));
    }
    if (pending_v != store_times.size())
        throw std::logic_error("solve_depleted_ns: transverse march failed to hit the stored times");

    return traj;
}

} // namespace ppflow
