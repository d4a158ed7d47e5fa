#include "ppflow/profiles.hpp"

#include "ppflow/fd.hpp"
#include "ppflow/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace ppflow {

namespace {

void check_times(const std::vector<double>& times, double T) {
    if (times.empty() || times.front() != 0.0 || times.back() != T)
        throw std::invalid_argument("snapshot times must start at 0 and end at T");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (!(times[k] > times[k - 1]))
            throw std::invalid_argument("snapshot times must be strictly increasing");
}

/// The unit wall layer: value 1 at Z = 0 for t > 0, initial e^{-Z}. The far
/// boundary of the FD path stays pinned at its initial value e^{-L}.
std::vector<Field1D> unit_wall_layer(double T, const Grid1D& grid_Z,
                                     const std::vector<double>& times,
                                     LayerPath path, double dt) {
    check_times(times, T);
    const int n = grid_Z.n_points;
    std::vector<Field1D> out;
    out.reserve(times.size());

    if (path == LayerPath::closed_form) {
        for (double t : times) {
            Field1D f;
            f.grid = grid_Z;
            f.values.resize(n);
            for (int i = 0; i < n; ++i) f.values[i] = unit_layer_value(t, grid_Z.node(i));
            out.push_back(std::move(f));
        }
        return out;
    }

    const double h = grid_Z.spacing;
    const double dt0 = dt > 0.0 ? dt : h * h;
    const double far_value = std::exp(-grid_Z.last());

    Field1D u;
    u.grid = grid_Z;
    u.values.resize(n);
    for (int i = 0; i < n; ++i) u.values[i] = std::exp(-grid_Z.node(i));
    out.push_back(u);

    std::vector<double> lo(n), di(n), up(n), rhs(n), scratch(n);
    for (std::size_t k = 1; k < times.size(); ++k) {
        double span = times[k] - times[k - 1];
        int steps = std::max(1, static_cast<int>(std::lround(span / dt0)));
        double hstep = span / steps;
        double r = hstep / (h * h);
        for (int s = 0; s < steps; ++s) {
            for (int i = 1; i + 1 < n; ++i) {
                lo[i] = -r;
                di[i] = 1.0 + 2.0 * r;
                up[i] = -r;
                rhs[i] = u.values[i];
            }
            di[0] = 1.0; up[0] = 0.0; rhs[0] = 1.0;
            lo[n - 1] = 0.0; di[n - 1] = 1.0; rhs[n - 1] = far_value;
            solve_tridiagonal(lo.data(), di.data(), up.data(), rhs.data(), scratch.data(), n);
            u.values = rhs;
        }
        out.push_back(u);
    }
    return out;
}

} // namespace

std::vector<Field1D> solve_wall_layer(double amplitude, double T, const Grid1D& grid_Z,
                                      const std::vector<double>& times,
                                      LayerPath path, double dt) {
    std::vector<Field1D> unit = unit_wall_layer(T, grid_Z, times, path, dt);
    for (Field1D& f : unit)
        for (double& v : f.values) v *= amplitude;
    return unit;
}

WallLayerFamily solve_wall_layer_family(const InitialData& data, double T,
                                        const Grid1D& grid_x, const Grid1D& grid_Z,
                                        const std::vector<double>& times,
                                        LayerPath path, double dt) {
    std::vector<Field1D> unit = unit_wall_layer(T, grid_Z, times, path, dt);

    WallLayerFamily fam;
    fam.times = times;
    fam.grid = Grid2D(grid_x, grid_Z);

    const int nx = grid_x.n_points;
    const int nZ = grid_Z.n_points;
    const int i0 = fam.grid.interface_index;
    const double j0 = data.jump_at_corner;

    // column amplitudes -v0(x, 0); the interface column carries both limits
    std::vector<double> amp(nx);
    for (int i = 0; i < nx; ++i) amp[i] = -data.v0_right_of(grid_x.node(i), 0.0);
    for (int i = 0; i < i0; ++i) amp[i] = -data.v0_left_of(grid_x.node(i), 0.0);
    const double amp_left = -data.v0_left_of(0.0, 0.0);
    const double amp_right = -data.v0_right_of(0.0, 0.0);
    const double damp_left = -data.dxv0_left_of(0.0, 0.0);
    const double damp_right = -data.dxv0_right_of(0.0, 0.0);

    for (std::size_t k = 0; k < times.size(); ++k) {
        const std::vector<double>& uv = unit[k].values;

        TwoSidedField2D f;
        f.grid = fam.grid;
        f.values.resize(fam.grid.n_nodes());
        f.left_trace.resize(nZ);
        f.right_trace.resize(nZ);
        f.left_xderiv_trace.resize(nZ);
        f.right_xderiv_trace.resize(nZ);
        f.declared_continuous = false;
        for (int j = 0; j < nZ; ++j) {
            for (int i = 0; i < nx; ++i) f.values[f.grid.index(i, j)] = amp[i] * uv[j];
            f.left_trace[j] = amp_left * uv[j];
            f.right_trace[j] = amp_right * uv[j];
            f.left_xderiv_trace[j] = damp_left * uv[j];
            f.right_xderiv_trace[j] = damp_right * uv[j];
        }
        f.refresh_interface_column();
        fam.values.push_back(std::move(f));

        Field1D jf;
        jf.grid = grid_Z;
        jf.values.resize(nZ);
        for (int j = 0; j < nZ; ++j) jf.values[j] = -j0 * uv[j];
        fam.jump.push_back(std::move(jf));

        Field1D jd;
        jd.grid = grid_Z;
        jd.values.resize(nZ);
        if (path == LayerPath::closed_form) {
            for (int j = 0; j < nZ; ++j)
                jd.values[j] = -j0 * unit_layer_slope(times[k], grid_Z.node(j));
        } else {
            Field1D du = fd_derivative(unit[k], 1);
            for (int j = 0; j < nZ; ++j) jd.values[j] = -j0 * du.values[j];
        }
        fam.jump_Zderiv.push_back(std::move(jd));
    }
    return fam;
}

TransitionLayer solve_transition_layer(const InitialData& data, const ShearMap& shear,
                                       double T, const Grid1D& grid_X, const Grid1D& grid_z,
                                       const std::vector<double>& times) {
    check_times(times, T);

    TransitionLayer layer;
    layer.times = times;
    layer.grid = Grid2D(grid_X, grid_z);

    const int nX = grid_X.n_points;
    const int nz = grid_z.n_points;
    const int i0 = layer.grid.interface_index;

    for (double t : times) {
        TwoSidedField2D f;
        f.grid = layer.grid;
        f.values.resize(layer.grid.n_nodes());
        f.left_trace.resize(nz);
        f.right_trace.resize(nz);
        f.left_xderiv_trace.resize(nz);
        f.right_xderiv_trace.resize(nz);
        f.declared_continuous = false;
        for (int j = 0; j < nz; ++j) {
            double z = grid_z.node(j);
            double ts = shear.stretched_time(t, z);
            double a = -0.5 * data.jump_v0.values[j];
            for (int i = 0; i < nX; ++i) {
                double X = grid_X.node(i);
                if (i > i0)
                    f.values[f.grid.index(i, j)] = a * unit_layer_value(ts, X);
                else if (i < i0)
                    f.values[f.grid.index(i, j)] = -a * unit_layer_value(ts, -X);
            }
            f.left_trace[j] = -a;  // -a * unit_layer_value(ts, 0), and the wall value is exactly 1
            f.right_trace[j] = a;
            double slope = a * unit_layer_slope(ts, 0.0);
            f.left_xderiv_trace[j] = slope;
            f.right_xderiv_trace[j] = slope;
        }
        f.refresh_interface_column();
        layer.values.push_back(std::move(f));
    }
    return layer;
}

double stretched_time_quadrature(const ShearMap& shear, double t, double z, int panels) {
    if (panels < 1) throw std::invalid_argument("panels must be positive");
    const int n = 2 * panels;
    const double h = t / n;
    auto f = [&](double s) {
        double g = shear.psi_z(s, z);
        return 1.0 + g * g;
    };
    double acc = f(0.0) + f(t);
    for (int i = 1; i < n; ++i) acc += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

} // namespace ppflow
