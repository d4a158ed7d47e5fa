#include "ppflow/field.hpp"

#include <cmath>
#include <stdexcept>

namespace ppflow {

Field1D::Field1D(const Grid1D& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (int(values.size()) != g.n_points)
        throw std::invalid_argument("Field1D: value count does not match grid");
}

bool Field1D::all_finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

TwoSidedField2D::TwoSidedField2D(const Grid2D& g)
    : grid(g),
      values(g.n_nodes(), 0.0),
      left_trace(std::size_t(g.nz()), 0.0),
      right_trace(std::size_t(g.nz()), 0.0),
      left_xderiv_trace(std::size_t(g.nz()), 0.0),
      right_xderiv_trace(std::size_t(g.nz()), 0.0) {}

double TwoSidedField2D::value_from(int ix, int iz, int side) const {
    if (ix == ix0()) return side < 0 ? left_trace[std::size_t(iz)] : right_trace[std::size_t(iz)];
    return at(ix, iz);
}

void TwoSidedField2D::refresh_interface_column() {
    int i0 = ix0();
    for (int iz = 0; iz < nz(); ++iz)
        at(i0, iz) = 0.5 * (left_trace[std::size_t(iz)] + right_trace[std::size_t(iz)]);
}

void TwoSidedField2D::adopt_continuous_traces() {
    int i0 = ix0();
    double h = grid.x_axis.spacing;
    if (i0 < 2 || i0 > nx() - 3)
        throw std::logic_error("adopt_continuous_traces: interface too close to the boundary");
    for (int iz = 0; iz < nz(); ++iz) {
        double c = at(i0, iz);
        left_trace[std::size_t(iz)] = c;
        right_trace[std::size_t(iz)] = c;
        // same centered estimate on both sides: the field is single-valued here
        double d = (at(i0 + 1, iz) - at(i0 - 1, iz)) / (2.0 * h);
        left_xderiv_trace[std::size_t(iz)] = d;
        right_xderiv_trace[std::size_t(iz)] = d;
    }
    declared_continuous = true;
}

bool TwoSidedField2D::all_finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    for (double v : left_trace)
        if (!std::isfinite(v)) return false;
    for (double v : right_trace)
        if (!std::isfinite(v)) return false;
    return true;
}

double TwoSidedField2D::max_interface_defect() const {
    double m = 0.0;
    for (int iz = 0; iz < nz(); ++iz) {
        m = std::max(m, std::abs(jump(iz)));
        m = std::max(m, std::abs(xderiv_jump(iz)));
    }
    return m;
}

} // namespace ppflow
