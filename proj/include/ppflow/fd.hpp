#pragma once

#include "ppflow/field.hpp"

namespace ppflow {

enum class Axis { X, Z };

/// Second-order finite-difference derivative of a 1D field: centered stencils in
/// the interior, one-sided 3-point (order 1) / 4-point (order 2) at the ends.
/// order must be 1 or 2; the grid needs >= 3 (order 1) or >= 4 (order 2) nodes.
Field1D fd_derivative(const Field1D& f, int order);

/// Same stencils applied along one axis of a two-sided field. No stencil ever
/// crosses x = 0: along X the derivative is built per side using the stored
/// one-sided trace at the interface column, and the result carries one-sided
/// derivative traces of its own. Along Z the traces are differentiated in z.
TwoSidedField2D fd_derivative(const TwoSidedField2D& f, Axis axis, int order);

/// In-place tridiagonal solve (Thomas algorithm): diagonals a (sub), b (main),
/// c (super) of length n, right-hand side d; the solution overwrites d.
/// a[0] and c[n-1] are ignored. Scratch must have length n.
void solve_tridiagonal(const double* a, const double* b, const double* c, double* d, double* scratch, int n);

} // namespace ppflow
