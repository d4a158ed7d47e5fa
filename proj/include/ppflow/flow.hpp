#pragma once

#include "ppflow/field.hpp"
#include "ppflow/grid.hpp"
#include "ppflow/initial_data.hpp"
#include "ppflow/profile_set.hpp"

#include <cstddef>
#include <vector>

namespace ppflow {

/// The interface of the inviscid solution sits at x = psi(t,z) in the original
/// frame; the straightened frame moves with it, freezing the jump at x = 0 and
/// making the transported field stationary.
enum class CoordinateFrame { straightened, original };

/// Inviscid transport of the transverse speed. Straightened frame: returns v0
/// itself. Original frame: v0(x - t*u0(z), z) row by row, each side evaluated
/// by its own monotone-cubic interpolant so the jump sits exactly at
/// x = t*u0(z); queries that leave the truncated x-range clamp to the end
/// value (the data has decayed there) and a single warning line is emitted.
TwoSidedField2D euler_solution(const InitialData& data, double t,
                               CoordinateFrame frame = CoordinateFrame::straightened);

/// L^p norm of the transported field with the cell containing the shifted
/// jump split at the jump abscissa, so the discontinuity costs no quadrature
/// accuracy. Straightened frame delegates to the plain two-sided norm.
double euler_lp_norm(const InitialData& data, double t, double p,
                     CoordinateFrame frame = CoordinateFrame::straightened);

/// The assembled approximation at one time: u0 plus the wall layer for the
/// shear speed; v0 plus wall, interface, and corner layers for the transverse
/// speed. u_app lives on a fine wall-resolving z grid, v_app on the physical
/// strip. The layer terms are read off the profile snapshots by monotone-cubic
/// interpolation in the fast variables; the interface traces are composed from
/// shared interpolants so the four-term jump cancellation survives in floating
/// point.
struct AnsatzField {
    double epsilon = 0.0;
    double time = 0.0;
    Field1D u_app;
    TwoSidedField2D v_app;

    const ProfileSet* profiles = nullptr;
    const InitialData* data = nullptr;
    std::size_t snapshot = 0; // index into profiles->times
};

/// z grid the shear speed is solved and compared on. Finer than the strip grid
/// (the wall layer must be resolved well below the smallest epsilon) and longer
/// (so the far boundary cannot talk back to the strip within one sweep).
Grid1D shear_speed_grid(double extent = 12.0, int points_per_unit = 2048);

/// Evaluate the approximation at a stored profile time. epsilon > 0; t must be
/// one of the profile snapshot times.
AnsatzField assemble_ansatz(const ProfileSet& profiles, const InitialData& data,
                            double epsilon, double t,
                            const Grid1D& u_grid = shear_speed_grid());

/// Viscous trajectories at the stored times. u on the fine z grid, v on the
/// physical strip; both vanish at z = 0 by construction.
struct TrajectoryField {
    double epsilon = 0.0;
    std::vector<double> store_times;
    std::vector<Field1D> u;
    std::vector<TwoSidedField2D> v;
};

struct DepletedSolveOptions {
    double dt = 0.0;       // transverse step; 0 means T/1024
    int u_time_steps = 0;  // graded heat steps for the shear speed; 0 means 16384
};

/// March the viscous system from the assembled initial state. The shear speed
/// obeys a 1D heat equation, stepped backward-implicitly on a quadratically
/// graded time mesh (the layer sharpens like sqrt(t) near t = 0) with the far
/// value pinned to the approximation. The transverse speed is stepped with the
/// isotropic diffusion implicit (factored into two tridiagonal sweeps) and the
/// advection (u - u0) d/dx plus the epsilon-scaled skew terms explicit; zero
/// Dirichlet rows at z = 0 and at the truncation edges. Throws on an advective
/// CFL violation or an explicit-term stability violation, suggesting a step.
TrajectoryField solve_depleted_ns(const AnsatzField& initial, const InitialData& data,
                                  const ShearMap& shear, double epsilon, double T,
                                  const std::vector<double>& store_times,
                                  const DepletedSolveOptions& opts = {});

} // namespace ppflow
