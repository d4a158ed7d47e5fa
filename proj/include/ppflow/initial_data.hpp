#pragma once

#include "ppflow/field.hpp"
#include "ppflow/grid.hpp"

#include <functional>
#include <string>

namespace ppflow {

/// Initial state of the flow: a shear speed u0(z) and a transverse speed
/// v0(x,z) that may jump across x = 0. Presets are closed-form, so exact
/// off-grid evaluators ride along with the sampled fields.
struct InitialData {
    std::string preset;
    Grid2D physical; // (x, z) strip grid

    Field1D u0;             // sampled on physical.z_axis
    TwoSidedField2D v0;     // two-sided samples with traces at x = 0
    Field1D jump_v0;        // v0(0+,z) - v0(0-,z)

    // whole-strip closed forms, one per side of the interface
    std::function<double(double)> u0_of, du0_of, d2u0_of;
    std::function<double(double, double)> v0_left_of, v0_right_of;
    std::function<double(double, double)> dxv0_left_of, dxv0_right_of;
    std::function<double(double)> jump_of; // [v0](z)

    double u0_at_wall = 0.0;     // u0(0)
    double jump_at_corner = 0.0; // [v0](0)

    double wall_trace(double x, int side) const; // v0(x, 0), side picks the limit at x = 0
};

/// Straightening shear map psi(t,z) = t*u0(z) and derived coefficients.
struct ShearMap {
    std::function<double(double)> u0_of, du0_of, d2u0_of;
    double du0_at_wall = 0.0;

    double psi(double t, double z) const { return t * u0_of(z); }
    double psi_z(double t, double z) const { return t * du0_of(z); }
    double psi_zz(double t, double z) const { return t * d2u0_of(z); }
    double psi_z_wall(double t) const { return t * du0_at_wall; }

    /// Accumulated diffusion time along the interface: t + t^3 u0'(z)^2 / 3,
    /// the closed antiderivative of 1 + |psi_z(s,z)|^2 in s.
    double stretched_time(double t, double z) const {
        double s = du0_of(z);
        return t + t * t * t * s * s / 3.0;
    }
};

/// Build the named preset on the given strip grid. Throws std::invalid_argument
/// for unknown names and for presets that violate the data assumptions (the
/// message names the violated condition).
InitialData default_initial_data(const std::string& preset, const Grid2D& physical);

/// Check the standing assumptions: a nonvanishing interface jump of v0, a
/// matched x-derivative across the interface, and finite second-derivative
/// norms. Throws std::invalid_argument naming the first violated condition.
void validate_initial_data(const InitialData& data, double p);

ShearMap make_shear_map(const InitialData& data);

} // namespace ppflow
