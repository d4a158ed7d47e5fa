#pragma once

#include "ppflow/field.hpp"
#include "ppflow/grid.hpp"

#include <vector>

namespace ppflow {

/// Shape-preserving cubic Hermite interpolant on a uniform grid
/// (Fritsch-Carlson slopes). Evaluation outside the grid range returns the
/// nearest end value. Exactly odd: interpolating negated samples negates the
/// result bit for bit, which downstream cancellation checks rely on.
struct PchipInterpolant {
    Grid1D grid;
    std::vector<double> values;
    std::vector<double> slopes;

    double operator()(double x) const;
};

PchipInterpolant make_pchip(const Grid1D& grid, std::vector<double> values);
PchipInterpolant make_pchip(const Field1D& samples);

} // namespace ppflow
