#pragma once

#include "ppflow/corner_layer.hpp"
#include "ppflow/profiles.hpp"

#include <cstdint>

namespace ppflow {

/// Discretization bundle: the physical strip plus the fast grids the layer
/// profiles live on. Fast half-lines are truncated where e^{-L} is negligible.
struct StudyGrids {
    Grid2D physical;       // (x, z)
    Grid1D fast_wall;      // Z, for wall-layer profiles
    Grid1D fast_interface; // X, symmetric about the interface
};

/// [-8,8]x[0,8] at spacing 1/64; fast grids reach 20 at spacing 1/16.
StudyGrids default_study_grids();

/// All boundary-layer profiles of the approximation, sampled at shared
/// snapshot times. epsilon-independent: built once per study and reused.
struct ProfileSet {
    std::vector<double> times;
    std::vector<Field1D> wall_unit; // shared unit wall profile every column scales
    std::vector<Field1D> wall_u; // wall layer of the shear speed, on fast_wall
    WallLayerFamily wall_v;      // wall layer of the transverse speed, on (x, Z)
    TransitionLayer transition_v; // interface layer, on (X, z)
    CornerLayerSolution corner;   // corner layer, on (X, Z)
    double u0_at_wall = 0.0;
    double corner_jump = 0.0;
    std::uint64_t content_hash = 0; // identity of the numeric payload
};

ProfileSet build_profile_set(const InitialData& data, const ShearMap& shear,
                             const StudyGrids& grids, double T,
                             const std::vector<double>& times,
                             LayerPath path = LayerPath::closed_form,
                             double wall_dt = 0.0, double corner_dt = 0.0);

/// Sup-in-time sizes of each profile, for k = 0 (L^p) and k = 1 (first-order
/// Sobolev). fast_boundary_max is the largest sample on any fast truncation
/// edge; profiles must have decayed there.
struct ProfileNormReport {
    double p = 0.0;
    double wall_u_lp = 0.0, wall_u_w1p = 0.0;
    double wall_v_lp = 0.0, wall_v_w1p = 0.0;
    double jump_lp = 0.0, jump_w1p = 0.0;
    double transition_lp = 0.0, transition_w1p = 0.0;
    double corner_lp = 0.0, corner_w1p = 0.0;
    double fast_boundary_max = 0.0;
};

ProfileNormReport profile_norm_report(const ProfileSet& profiles, double p);

} // namespace ppflow
