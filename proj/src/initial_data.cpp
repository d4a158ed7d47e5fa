#include "ppflow/initial_data.hpp"

#include "ppflow/fd.hpp"
#include "ppflow/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace ppflow {

double InitialData::wall_trace(double x, int side) const {
    if (x < 0.0 || (x == 0.0 && side < 0)) return v0_left_of(x, 0.0);
    return v0_right_of(x, 0.0);
}

namespace {

InitialData sample_preset(const std::string& name, const Grid2D& physical,
                          std::function<double(double)> u0,
                          std::function<double(double)> du0,
                          std::function<double(double)> d2u0,
                          std::function<double(double, double)> v0l,
                          std::function<double(double, double)> v0r,
                          std::function<double(double, double)> dxv0l,
                          std::function<double(double, double)> dxv0r) {
    InitialData d;
    d.preset = name;
    d.physical = physical;
    d.u0_of = u0;
    d.du0_of = du0;
    d.d2u0_of = d2u0;
    d.v0_left_of = v0l;
    d.v0_right_of = v0r;
    d.dxv0_left_of = dxv0l;
    d.dxv0_right_of = dxv0r;
    d.jump_of = [v0l, v0r](double z) { return v0r(0.0, z) - v0l(0.0, z); };
    d.u0_at_wall = u0(0.0);
    d.jump_at_corner = d.jump_of(0.0);

    const Grid1D& gx = physical.x_axis;
    const Grid1D& gz = physical.z_axis;

    d.u0.grid = gz;
    d.u0.values.resize(gz.n_points);
    for (int j = 0; j < gz.n_points; ++j) d.u0.values[j] = u0(gz.node(j));

    d.jump_v0.grid = gz;
    d.jump_v0.values.resize(gz.n_points);

    TwoSidedField2D& f = d.v0;
    f.grid = physical;
    f.values.assign(physical.n_nodes(), 0.0);
    f.left_trace.resize(gz.n_points);
    f.right_trace.resize(gz.n_points);
    f.left_xderiv_trace.resize(gz.n_points);
    f.right_xderiv_trace.resize(gz.n_points);
    f.declared_continuous = false;

    const int i0 = physical.interface_index;
    for (int j = 0; j < gz.n_points; ++j) {
        double z = gz.node(j);
        for (int i = 0; i < gx.n_points; ++i) {
            double x = gx.node(i);
            if (i < i0)
                f.values[f.grid.index(i, j)] = v0l(x, z);
            else if (i > i0)
                f.values[f.grid.index(i, j)] = v0r(x, z);
        }
        f.left_trace[j] = v0l(0.0, z);
        f.right_trace[j] = v0r(0.0, z);
        f.left_xderiv_trace[j] = dxv0l(0.0, z);
        f.right_xderiv_trace[j] = dxv0r(0.0, z);
        d.jump_v0.values[j] = f.right_trace[j] - f.left_trace[j];
    }
    f.refresh_interface_column();
    return d;
}

} // namespace

InitialData default_initial_data(const std::string& preset, const Grid2D& physical) {
    auto u0 = [](double z) { return std::exp(-z); };
    auto du0 = [](double z) { return -std::exp(-z); };
    auto d2u0 = [](double z) { return std::exp(-z); };
    auto bump = [](double x, double z) { return std::exp(-x * x) * std::exp(-z); };
    auto dbump = [](double x, double z) { return -2.0 * x * std::exp(-x * x) * std::exp(-z); };

    InitialData d;
    if (preset == "gaussian-jump") {
        d = sample_preset(preset, physical, u0, du0, d2u0,
                          [bump](double x, double z) { return -bump(x, z); },
                          bump,
                          [dbump](double x, double z) { return -dbump(x, z); },
                          dbump);
    } else if (preset == "no-jump") {
        d = sample_preset(preset, physical, u0, du0, d2u0, bump, bump, dbump, dbump);
    } else {
        throw std::invalid_argument("unknown initial-data preset: " + preset);
    }
    validate_initial_data(d, 2.0);
    return d;
}

void validate_initial_data(const InitialData& data, double p) {
    const Grid1D& gz = data.physical.z_axis;

    double max_jump = 0.0;
    double max_deriv_mismatch = 0.0;
    for (int j = 0; j < gz.n_points; ++j) {
        double z = gz.node(j);
        max_jump = std::max(max_jump, std::abs(data.jump_of(z)));
        max_deriv_mismatch = std::max(
            max_deriv_mismatch,
            std::abs(data.dxv0_right_of(0.0, z) - data.dxv0_left_of(0.0, z)));
    }
    if (!(max_jump > 1e-12))
        throw std::invalid_argument(
            "initial data rejected: interface jump of v0 vanishes identically "
            "(a nonzero jump across x = 0 is required)");
    if (!(max_deriv_mismatch <= 1e-10))
        throw std::invalid_argument(
            "initial data rejected: x-derivative of v0 jumps across the "
            "interface (one-sided derivatives must match at x = 0)");

    Field1D d2u0 = fd_derivative(fd_derivative(data.u0, 1), 1);
    if (!data.u0.all_finite() || !d2u0.all_finite() || !std::isfinite(lp_norm(d2u0, p)))
        throw std::invalid_argument("initial data rejected: u0 lacks finite second-derivative norms");

    TwoSidedField2D dxx = fd_derivative(data.v0, Axis::X, 2);
    TwoSidedField2D dzz = fd_derivative(data.v0, Axis::Z, 2);
    if (!data.v0.all_finite() || !dxx.all_finite() || !dzz.all_finite() ||
        !std::isfinite(lp_norm(dxx, p)) || !std::isfinite(lp_norm(dzz, p)))
        throw std::invalid_argument("initial data rejected: v0 lacks finite second-derivative norms");
}

ShearMap make_shear_map(const InitialData& data) {
    ShearMap m;
    m.u0_of = data.u0_of;
    m.du0_of = data.du0_of;
    m.d2u0_of = data.d2u0_of;
    m.du0_at_wall = data.du0_of(0.0);
    return m;
}

} // namespace ppflow
