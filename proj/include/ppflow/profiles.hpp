#pragma once

#include "ppflow/field.hpp"
#include "ppflow/grid.hpp"
#include "ppflow/initial_data.hpp"

#include <vector>

namespace ppflow {

/// How a layer profile is produced: evaluating the closed-form half-line heat
/// solution (the accuracy reference) or stepping a backward-implicit finite
/// difference scheme (the cross-check).
enum class LayerPath { closed_form, implicit_fd };

/// Wall layer in the fast variable Z: amplitude times the unit problem
/// (value 1 at Z = 0 for t > 0, initial e^{-Z}, decay as Z grows).
/// Snapshots are returned at the requested times, which must be sorted,
/// start at 0, and end at T. dt = 0 means grid spacing squared.
std::vector<Field1D> solve_wall_layer(double amplitude, double T, const Grid1D& grid_Z,
                                      const std::vector<double>& times,
                                      LayerPath path = LayerPath::closed_form,
                                      double dt = 0.0);

/// Wall layer of the transverse speed: one wall-layer column per x node, each
/// a scaled copy of the shared unit solve with amplitude -v0(x, 0). Carries
/// the interface jump series and its Z-derivative for the corner-layer solve.
struct WallLayerFamily {
    std::vector<double> times;
    Grid2D grid; // (x, Z)
    std::vector<TwoSidedField2D> values;
    std::vector<Field1D> jump;        // over Z: -[v0](0) * unit profile
    std::vector<Field1D> jump_Zderiv; // over Z
};

WallLayerFamily solve_wall_layer_family(const InitialData& data, double T,
                                        const Grid1D& grid_x, const Grid1D& grid_Z,
                                        const std::vector<double>& times,
                                        LayerPath path = LayerPath::closed_form,
                                        double dt = 0.0);

/// Transition layer smoothing the interface jump of v0 in the fast variable
/// X: odd in X with one-sided values -sgn(X) (jump/2) at each z, diffusing in
/// the stretched time t + t^3 u0'(z)^2 / 3.
struct TransitionLayer {
    std::vector<double> times;
    Grid2D grid; // (X, z)
    std::vector<TwoSidedField2D> values;
};

TransitionLayer solve_transition_layer(const InitialData& data, const ShearMap& shear,
                                       double T, const Grid1D& grid_X, const Grid1D& grid_z,
                                       const std::vector<double>& times);

/// Simpson quadrature of 1 + psi_z(s,z)^2 over s in [0,t]; cross-checks the
/// closed-form stretched time (the integrand is quadratic in s, so composite
/// Simpson is exact up to rounding).
double stretched_time_quadrature(const ShearMap& shear, double t, double z, int panels = 8);

} // namespace ppflow
