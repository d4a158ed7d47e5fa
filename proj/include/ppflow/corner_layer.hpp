#pragma once

#include "ppflow/field.hpp"
#include "ppflow/grid.hpp"
#include "ppflow/initial_data.hpp"

#include <vector>

namespace ppflow {

/// Forcing produced when the exponential corner correction -+ q e^{-|X|}/2 is
/// subtracted from the corner layer: J e^{-X} drives the right half-strip,
/// J e^{+X} the left. Both live on the fast wall grid Z.
struct JumpSources {
    Field1D right_source; // J_+
    Field1D left_source;  // J_-
};

/// q = [V across the interface of the wall-layer family], q_Z its derivative,
/// both at time t. Uses the wall value of the shear slope at the same t.
JumpSources compute_jump_sources(const ShearMap& shear, const Field1D& vp_jump,
                                 const Field1D& vp_jump_Zderiv, double t);

/// Corner layer in both fast variables (X, Z). The solved unknown is the
/// smooth core w with zero initial data; the layer itself is reconstructed as
/// w -+ q e^{-|X|}/2, which carries the interface jump -q.
struct CornerLayerSolution {
    std::vector<double> times;
    Grid2D grid; // (X, Z)
    std::vector<TwoSidedField2D> corner;      // reconstructed layer
    std::vector<TwoSidedField2D> smooth_core; // w
    // in-solve stability series, sampled every few steps
    std::vector<double> monitor_times;
    std::vector<double> monitor_l2_sq;      // ||w||_2^2 over the strip
    std::vector<double> monitor_grad_l2_sq; // ||grad w||_2^2
};

/// Steps the skewed heat operator (1+s^2) dXX - 2 s dXZ + dZZ, s = wall shear
/// slope frozen at the half step, by an alternating-direction implicit
/// factorization; the mixed term and the jump sources are explicit. Boundary
/// data at Z = 0 cancels the transition layer's wall row (linear in t between
/// snapshots); the far edges hold zero. dt = 0 picks T/2048. Throws when the
/// t = 0 wall row is incompatible with zero initial data, and when dt violates
/// the explicit stability bound (the message suggests a dt).
CornerLayerSolution solve_corner_layer(const std::vector<double>& times,
                                       const std::vector<Field1D>& vp_jump,
                                       const std::vector<Field1D>& vp_jump_Zderiv,
                                       const std::vector<Field1D>& transition_wall_row,
                                       double corner_jump,
                                       const ShearMap& shear,
                                       double T, const Grid1D& grid_X, const Grid1D& grid_Z,
                                       double dt = 0.0);

/// Dissipation-balance report for the smooth core in the L^p energy frame:
/// d/dt ||w||_p^p is controlled by the gradient functional of |w|^{p/2} and
/// the source pairing. Throws for p <= 1.
struct EnergyReport {
    double p = 0.0;
    double sup_lp_pow = 0.0;      // sup over snapshots of ||w||_p^p
    double dissipation = 0.0;     // time integral of (4/p^2) ||grad |w|^{p/2}||_2^2
    double source_coupling = 0.0; // time integral of the source pairing
    double bound_constant = 0.0;  // (sup + dissipation) / coupling
};

EnergyReport energy_monitor(const CornerLayerSolution& solution,
                            const std::vector<Field1D>& vp_jump,
                            const std::vector<Field1D>& vp_jump_Zderiv,
                            const ShearMap& shear, double p);

/// Time integral of ||dXX w||_p^p with one-sided second derivatives at X = 0;
/// finite and grid-stable even though the source jumps across the interface.
double second_derivative_integrability(const CornerLayerSolution& solution, double p);

} // namespace ppflow
