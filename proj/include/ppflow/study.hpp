#pragma once

#include "ppflow/flow.hpp"
#include "ppflow/profile_set.hpp"
#include "ppflow/residuals.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace ppflow {

std::vector<double> default_epsilon_sweep(); // 1e-2 down to 1e-4, half-decade steps

/// Everything one sweep needs. The flat key = value config file mirrors these
/// fields one to one, and command-line flags override the file.
struct StudyConfig {
    std::string preset = "gaussian-jump";
    double p = 1.5;   // main study wants p in (1,2); p >= 2 only probes the singular term
    double T = 1.0;
    std::vector<double> epsilon_list = default_epsilon_sweep(); // strictly decreasing
    double physical_extent = 8.0; // strip [-L, L] x [0, L]
    int physical_ppu = 64;        // nodes per unit length, a divisor of 2048
    double fast_extent = 20.0;
    int fast_ppu = 16;
    double dt = 0.0;        // transverse step; 0 picks the solver default
    int u_time_steps = 0;   // shear-profile steps; 0 picks the solver default
    int store_count = 17;   // snapshots at k*T/(store_count-1)
    std::string out_dir = ".";
    std::string format = "csv"; // csv | json
    bool singular_only = false; // skip the viscous solves, report the singular term
};

/// Throws std::invalid_argument naming the offending field.
void validate_config(const StudyConfig& config);

StudyGrids study_grids(const StudyConfig& config);
std::vector<double> study_store_times(const StudyConfig& config);

/// Flat key = value file, # comments, lists comma-separated, strings may be
/// quoted. Unknown keys are rejected.
StudyConfig load_config(const std::string& path);

/// One epsilon of the sweep. Norms are sups over the stored times; a failed
/// case keeps its error message and is skipped by exports and fits.
struct CaseResult {
    double epsilon = 0.0;
    bool solved = false;
    std::string error;
    double err_u_L2 = std::numeric_limits<double>::quiet_NaN();
    double err_u_vs_ansatz_L2 = std::numeric_limits<double>::quiet_NaN();
    double err_v_Lp = std::numeric_limits<double>::quiet_NaN();
    double err_v_vs_ansatz_Lp = std::numeric_limits<double>::quiet_NaN();
    double residual_integral = std::numeric_limits<double>::quiet_NaN();
    double singular_norm = std::numeric_limits<double>::quiet_NaN();
    std::uint64_t profile_hash = 0;
};

struct SlopeFit {
    std::string quantity;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    bool reliable = false; // r_squared >= 0.98
};

struct ConvergenceReport {
    std::string version = "ppflow-report-1";
    StudyConfig config;
    std::uint64_t profile_hash = 0;
    std::vector<CaseResult> cases;  // in configured epsilon order
    std::vector<SlopeFit> slopes;   // empty when fewer than two cases succeeded
};

/// Profiles are built once and shared by every epsilon; each case asserts it
/// consumed the same snapshot payload by hash. Module errors abort only their
/// own case. Deterministic for a fixed config.
ConvergenceReport run_convergence_study(const StudyConfig& config);

void export_report(const ConvergenceReport& report, const std::string& format,
                   const std::string& path);
ConvergenceReport import_report(const std::string& path); // json only

void write_residual_report(const ResidualReport& report, const std::string& format,
                           const std::string& path);

/// Flat little-endian f64 arrays, one file per profile per snapshot, described
/// by a profiles.json sidecar (shapes, spacings, origins, times).
void dump_profiles(const ProfileSet& profiles, const std::string& dir);

/// Same format for a viscous trajectory: u_*.bin, v_*.bin plus the interface
/// traces, described by trajectory.json.
void dump_trajectory(const TrajectoryField& trajectory, const std::string& dir);

/// Fast cross-checks of the analytic identities; prints one line per check
/// and returns the number of failures.
int run_verify_suite();

} // namespace ppflow
