#include "ppflow/field.hpp"
#include "ppflow/grid.hpp"

#include "doctest.h"

#include <stdexcept>

using namespace ppflow;

TEST_CASE("half-line grid nodes and cell lookup") {
    Grid1D g = make_halfline_grid(8.0, 129);
    CHECK(g.spacing == doctest::Approx(0.0625).epsilon(1e-15));
    CHECK(g.node(0) == 0.0);
    CHECK(g.node(128) == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(g.cell_of(0.03) == 0);
    CHECK(g.cell_of(8.0) == 127);   // clamped into the last cell
    CHECK(g.cell_of(-1.0) == 0);
    CHECK(g.has_node_at(0.5));
    CHECK(!g.has_node_at(0.51));
}

TEST_CASE("symmetric grid places a node exactly at zero") {
    Grid1D g = make_symmetric_grid(8.0, 257);
    CHECK(g.node(128) == 0.0);
    CHECK(g.node(0) == -8.0);
    CHECK_THROWS_AS(make_symmetric_grid(8.0, 256), std::invalid_argument);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(make_halfline_grid(0.0, 9), std::invalid_argument);
    CHECK_THROWS_AS(make_halfline_grid(1.0, 1), std::invalid_argument);
}

TEST_CASE("two-sided field traces and jumps") {
    Grid2D g(make_symmetric_grid(2.0, 9), make_halfline_grid(1.0, 5));
    CHECK(g.interface_index == 4);

    TwoSidedField2D f(g);
    // step in x with a z-dependent amplitude: value -(1+z) left, +(1+z) right
    for (int iz = 0; iz < g.nz(); ++iz) {
        double amp = 1.0 + g.z_axis.node(iz);
        for (int ix = 0; ix < g.nx(); ++ix) f.at(ix, iz) = (ix < g.interface_index ? -amp : amp);
        f.left_trace[iz] = -amp;
        f.right_trace[iz] = amp;
        f.left_xderiv_trace[iz] = 0.0;
        f.right_xderiv_trace[iz] = 0.0;
    }
    f.refresh_interface_column();

    CHECK(f.at(g.interface_index, 0) == 0.0); // average of the one-sided limits
    CHECK(f.jump(0) == doctest::Approx(2.0));
    CHECK(f.jump(4) == doctest::Approx(4.0));
    CHECK(f.value_from(g.interface_index, 4, -1) == doctest::Approx(-2.0));
    CHECK(f.value_from(g.interface_index, 4, +1) == doctest::Approx(2.0));
    CHECK(f.value_from(0, 0, +1) == f.at(0, 0));
    CHECK(f.all_finite());
    CHECK(f.max_interface_defect() == doctest::Approx(4.0));
}

TEST_CASE("adopting continuous traces zeroes the interface defect") {
    Grid2D g(make_symmetric_grid(2.0, 17), make_halfline_grid(1.0, 5));
    TwoSidedField2D f(g);
    for (int iz = 0; iz < g.nz(); ++iz)
        for (int ix = 0; ix < g.nx(); ++ix) {
            double x = g.x_axis.node(ix);
            f.at(ix, iz) = x * x + g.z_axis.node(iz);
        }
    f.adopt_continuous_traces();
    CHECK(f.declared_continuous);
    CHECK(f.max_interface_defect() == doctest::Approx(0.0).epsilon(1e-14));
    // centered x-derivative of x^2 at x = 0 is exact
    CHECK(f.left_xderiv_trace[2] == doctest::Approx(0.0).epsilon(1e-14));
}
