#pragma once

#include "ppflow/field.hpp"

#include <vector>

namespace ppflow {

/// Trapezoid rule on a strictly increasing, possibly nonuniform abscissa.
double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

/// L^p norm by the trapezoid rule, p >= 1.
double lp_norm(const Field1D& f, double p);

/// L^p norm over the strip. The row integrals are split at x = 0 and use the
/// one-sided traces there, so a jump costs no accuracy.
double lp_norm(const TwoSidedField2D& f, double p);

/// (|f|_p^p + |f'|_p^p)^(1/p) with the derivative taken by finite differences.
double w1p_norm(const Field1D& f, double p);

/// (|f|_p^p + |df/dx|_p^p + |df/dz|_p^p)^(1/p), derivatives one-sided at x = 0.
double w1p_norm(const TwoSidedField2D& f, double p);

} // namespace ppflow
