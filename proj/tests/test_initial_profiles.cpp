#include "doctest.h"

#include "ppflow/fd.hpp"
#include "ppflow/initial_data.hpp"
#include "ppflow/kernels.hpp"
#include "ppflow/norms.hpp"
#include "ppflow/profile_set.hpp"
#include "ppflow/profiles.hpp"

#include <cmath>
#include <stdexcept>

using namespace ppflow;

namespace {

Grid2D small_strip() {
    return Grid2D(make_symmetric_grid(8.0, 257), make_halfline_grid(8.0, 129));
}

std::vector<double> snapshot_times(double T, int n_intervals) {
    std::vector<double> t;
    for (int k = 0; k <= n_intervals; ++k) t.push_back(k * T / n_intervals);
    return t;
}

} // namespace

TEST_CASE("gaussian-jump preset samples and closures") {
    InitialData d = default_initial_data("gaussian-jump", small_strip());

    CHECK(d.u0_at_wall == 1.0);
    CHECK(d.jump_at_corner == 2.0);
    CHECK(d.u0[0] == 1.0);

    const Grid1D& gz = d.physical.z_axis;
    for (int j = 0; j < gz.n_points; j += 17) {
        double z = gz.node(j);
        CHECK(d.jump_v0[j] == doctest::Approx(2.0 * std::exp(-z)).epsilon(1e-14));
        CHECK(d.v0.right_trace[j] == doctest::Approx(std::exp(-z)).epsilon(1e-14));
        CHECK(d.v0.left_trace[j] == -d.v0.right_trace[j]);
        CHECK(d.v0.left_xderiv_trace[j] == 0.0);
        CHECK(d.v0.right_xderiv_trace[j] == 0.0);
    }
    // interface column stores the mean of the traces, which is zero here
    CHECK(d.v0.at(d.v0.ix0(), 5) == 0.0);
    // off-interface sample
    double x = d.physical.x_axis.node(10);
    double z = gz.node(3);
    CHECK(d.v0.at(10, 3) == doctest::Approx(-std::exp(-x * x - z)).epsilon(1e-14));

    // curvature of the shear datum: L2 norm of u0'' is 1/sqrt(2) up to the far
    // tail and the one-sided stencils at the ends of the strip
    Field1D d2 = fd_derivative(fd_derivative(d.u0, 1), 1);
    CHECK(lp_norm(d2, 2.0) == doctest::Approx(0.7071067811865476).epsilon(5e-3));
}

TEST_CASE("presets violating the data assumptions are rejected by name") {
    CHECK_THROWS_WITH_AS(default_initial_data("no-jump", small_strip()),
                         doctest::Contains("interface jump"), std::invalid_argument);
    CHECK_THROWS_AS(default_initial_data("vortex", small_strip()), std::invalid_argument);

    InitialData broken = default_initial_data("gaussian-jump", small_strip());
    broken.dxv0_right_of = [](double, double) { return 1.0; };
    CHECK_THROWS_WITH_AS(validate_initial_data(broken, 2.0),
                         doctest::Contains("x-derivative"), std::invalid_argument);
}

TEST_CASE("shear map and stretched time") {
    InitialData d = default_initial_data("gaussian-jump", small_strip());
    ShearMap m = make_shear_map(d);

    CHECK(m.psi(0.0, 1.3) == 0.0);
    CHECK(m.psi_z(0.5, 0.0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(m.psi_zz(2.0, 1.0) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-15));
    CHECK(m.stretched_time(1.0, 0.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));

    // Simpson cross-check of the closed form; the integrand is quadratic in s
    for (double t : {0.25, 0.7, 1.0})
        for (double z : {0.0, 0.4, 2.0})
            CHECK(m.stretched_time(t, z) ==
                  doctest::Approx(stretched_time_quadrature(m, t, z)).epsilon(1e-12));
}

TEST_CASE("wall layer: closed form, FD cross-check, linearity, max principle") {
    Grid1D gZ = make_halfline_grid(20.0, 321);
    std::vector<double> times{0.0, 0.5, 1.0};

    auto cf = solve_wall_layer(1.0, 1.0, gZ, times);
    CHECK(cf[0][0] == 1.0); // e^{-0}
    CHECK(cf[0][16] == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(cf[1][0] == 1.0); // wall value is exact at the boundary
    CHECK(cf[2][16] == doctest::Approx(unit_layer_value(1.0, 1.0)).epsilon(1e-15));

    // implicit path at the default step h^2 tracks the closed form
    auto fd = solve_wall_layer(1.0, 1.0, gZ, times, LayerPath::implicit_fd);
    double worst = 0.0;
    for (std::size_t k = 1; k < times.size(); ++k)
        for (int i = 0; i < gZ.n_points; ++i)
            worst = std::max(worst, std::abs(fd[k][i] - cf[k][i]));
    CHECK(worst < 1e-3);
    CHECK(worst > 1e-6); // the paths really are distinct computations

    // discrete max principle for the implicit path
    for (const Field1D& f : fd)
        for (double v : f.values) {
            CHECK(v >= -1e-12);
            CHECK(v <= 1.0 + 1e-12);
        }

    // doubling the amplitude doubles every sample bitwise
    auto one = solve_wall_layer(-0.7, 1.0, gZ, times, LayerPath::implicit_fd);
    auto two = solve_wall_layer(-1.4, 1.0, gZ, times, LayerPath::implicit_fd);
    for (std::size_t k = 0; k < times.size(); ++k)
        for (int i = 0; i < gZ.n_points; ++i)
            CHECK(two[k][i] == 2.0 * one[k][i]);

    CHECK_THROWS_AS(solve_wall_layer(1.0, 1.0, gZ, {0.25, 0.5, 1.0}), std::invalid_argument);
}

TEST_CASE("wall layer family shares the unit solve across columns") {
    InitialData d = default_initial_data("gaussian-jump", small_strip());
    Grid1D gZ = make_halfline_grid(20.0, 161);
    auto times = snapshot_times(1.0, 4);
    WallLayerFamily fam = solve_wall_layer_family(d, 1.0, d.physical.x_axis, gZ, times);

    auto unit = solve_wall_layer(1.0, 1.0, gZ, times);
    const int i0 = fam.grid.interface_index;
    for (std::size_t k = 0; k < times.size(); ++k) {
        for (int i : {3, i0 - 1, i0 + 1, 200}) {
            double x = d.physical.x_axis.node(i);
            double amp = i < i0 ? -d.v0_left_of(x, 0.0) : -d.v0_right_of(x, 0.0);
            for (int j : {0, 7, 80})
                CHECK(fam.values[k].at(i, j) == amp * unit[k][j]);
        }
        // jump series is -[v0](0) times the unit profile, with exact wall value
        CHECK(fam.jump[k][0] == -2.0);
        for (int j : {1, 40}) CHECK(fam.jump[k][j] == -2.0 * unit[k][j]);
        // interface traces carry both one-sided amplitudes
        CHECK(fam.values[k].jump(5) == doctest::Approx(fam.jump[k][5]).epsilon(1e-15));
    }

    // Z-derivative of the jump matches differencing the jump itself
    Field1D dj = fd_derivative(fam.jump.back(), 1);
    for (int j = 0; j < gZ.n_points; ++j)
        CHECK(fam.jump_Zderiv.back()[j] == doctest::Approx(dj[j]).epsilon(2e-2).scale(1.0));
}

TEST_CASE("transition layer: odd structure, exact jump, slope traces") {
    InitialData d = default_initial_data("gaussian-jump", small_strip());
    ShearMap m = make_shear_map(d);
    Grid1D gX = make_symmetric_grid(20.0, 641);
    auto times = snapshot_times(1.0, 4);
    TransitionLayer tl = solve_transition_layer(d, m, 1.0, gX, d.physical.z_axis, times);

    const TwoSidedField2D& f = tl.values.back();
    const int i0 = f.ix0();
    for (int j = 0; j < f.nz(); j += 31) {
        // one-sided limits are -+ jump/2, so the interface jump is exactly -[v0](z)
        CHECK(f.jump(j) == -d.jump_v0[j]);
        CHECK(f.at(i0, j) == 0.0);
        CHECK(f.xderiv_jump(j) == 0.0);
        // odd in X up to the row amplitude
        for (int i : {i0 + 1, i0 + 30, f.nx() - 1})
            CHECK(f.at(i, j) == doctest::Approx(-f.at(2 * i0 - i, j)).epsilon(1e-15));
    }

    // stretched time slows nothing at t = 0: the initial row is the plain exponential
    const TwoSidedField2D& f0 = tl.values.front();
    for (int i : {i0 + 1, i0 + 16, i0 + 64}) {
        double X = gX.node(i);
        CHECK(f0.at(i, 3) ==
              doctest::Approx(-0.5 * d.jump_v0[3] * std::exp(-X)).epsilon(1e-14));
    }

    // stored x-derivative traces agree with one-sided differencing of the samples
    TwoSidedField2D dX = fd_derivative(f, Axis::X, 1);
    for (int j = 0; j < f.nz(); ++j) {
        CHECK(dX.left_trace[j] == doctest::Approx(f.left_xderiv_trace[j]).epsilon(1e-3).scale(1.0));
        CHECK(dX.right_trace[j] == doctest::Approx(f.right_xderiv_trace[j]).epsilon(1e-3).scale(1.0));
        CHECK(std::abs(dX.jump(j)) < 1e-13);
    }
}

TEST_CASE("profile set: hash identity, norm report, fast-edge decay") {
    StudyGrids grids;
    grids.physical = small_strip();
    grids.fast_wall = make_halfline_grid(20.0, 161);
    grids.fast_interface = make_symmetric_grid(20.0, 321);

    InitialData d = default_initial_data("gaussian-jump", grids.physical);
    ShearMap m = make_shear_map(d);
    auto times = snapshot_times(1.0, 8);

    ProfileSet a = build_profile_set(d, m, grids, 1.0, times);
    ProfileSet b = build_profile_set(d, m, grids, 1.0, times);
    CHECK(a.content_hash == b.content_hash);
    CHECK(a.content_hash != 0);

    ProfileNormReport rep = profile_norm_report(a, 1.5);
    CHECK(rep.wall_u_lp > 0.0);
    CHECK(rep.wall_u_w1p >= rep.wall_u_lp);
    CHECK(rep.wall_v_w1p >= rep.wall_v_lp);
    CHECK(rep.transition_w1p >= rep.transition_lp);
    CHECK(rep.corner_w1p >= rep.corner_lp);
    CHECK(rep.jump_lp > 0.0);
    CHECK(rep.fast_boundary_max < 1e-6);

    // halving the wall-layer grid spacing moves the L^p norm by under 1%
    StudyGrids fine = grids;
    fine.fast_wall = make_halfline_grid(20.0, 321);
    ProfileSet c = build_profile_set(d, m, fine, 1.0, times);
    ProfileNormReport rep_fine = profile_norm_report(c, 1.5);
    CHECK(rep_fine.wall_u_lp == doctest::Approx(rep.wall_u_lp).epsilon(1e-2));
    CHECK(c.content_hash != a.content_hash);
}
