#pragma once

#include "ppflow/field.hpp"
#include "ppflow/initial_data.hpp"
#include "ppflow/profile_set.hpp"

#include <string>
#include <vector>

namespace ppflow {

/// Defect of the shear-speed approximation: eps times the finite-difference
/// second derivative of the datum. Linear in u0, homogeneous in eps.
Field1D compute_Eu(const Field1D& u0, double epsilon);

/// Scalar field on a tensor quadrature mesh that refines the strip mesh with
/// the images of the fast-grid nodes, so layer structure stays resolved for
/// small eps. x holds 0 at index ix0; the interface column keeps one-sided
/// values so the norm can split the jump cell.
struct MergedField {
    std::vector<double> x, z;
    std::size_t ix0 = 0;
    std::vector<double> values; // row-major [j * x.size() + i]
    std::vector<double> left_col, right_col;

    double lp(double p) const; // trapezoid on the nonuniform mesh, split at x = 0
};

struct EvTerm {
    std::string name;
    double lp = 0.0; // L^p norm over the strip, fast-direction Jacobians applied
};

/// The summed defect field of the transverse approximation plus the size of
/// every term it is assembled from.
struct EvBreakdown {
    MergedField total;
    std::vector<EvTerm> terms;
    double total_lp = 0.0;
};

/// Evaluate the transverse defect at a stored profile time: the slow operator
/// applied to the datum, the coefficient defects of the three layers, and the
/// advection of the assembled field by the wall layer of the shear speed.
/// Each term is formed on its native grid; norms use the exact change of
/// variables (a factor eps^{1/2} per fast direction under the area element).
EvBreakdown compute_Ev(const ProfileSet& profiles, const InitialData& data,
                       const ShearMap& shear, double epsilon, double t, double p);

/// L^p size of the advection-of-transition-layer term
/// eps^{-1/2} U_P(t, z/sqrt(eps)) dX V_KH(t, x/sqrt(eps), z), computed by the
/// substitution that factors the integral; order eps^{1/p - 1/2}.
double singular_term_norm(const ProfileSet& profiles, double epsilon, double t, double p);

/// Change-of-variables identity for one fast direction: the L^p size of
/// f(z/sqrt(eps)) on the half-line against eps^{1/(2p)} times the size of f.
struct ScalingCheck {
    double measured = 0.0;
    double predicted = 0.0;
};
ScalingCheck scaling_check(const Field1D& f, double epsilon, double p);

/// Defect sizes across the stored profile times at one epsilon.
struct ResidualReport {
    double epsilon = 0.0;
    double p = 0.0;
    std::vector<double> times;
    std::vector<double> eu_l2;       // constant series: the defect of u does not move
    std::vector<double> ev_lp;
    std::vector<double> singular_lp;
    double ev_time_integral = 0.0;   // int_0^T |E^v|^p dt by trapezoid over the snapshots
    std::vector<std::vector<EvTerm>> breakdown; // per time
};

ResidualReport residual_report(const ProfileSet& profiles, const InitialData& data,
                               const ShearMap& shear, double epsilon, double p);

} // namespace ppflow
