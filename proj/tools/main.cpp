#include "ppflow/study.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

using namespace ppflow;

namespace {

struct FlagBuffer {
    std::string config_path, preset, out_dir, format;
    std::vector<double> epsilon;
    double p = 0.0, T = 0.0, dt = 0.0, physical_extent = 0.0, fast_extent = 0.0;
    int physical_ppu = 0, fast_ppu = 0, u_time_steps = 0, store_count = 0;
    bool singular_only = false;
};

void add_common_options(CLI::App* sub, FlagBuffer& f) {
    sub->add_option("--config", f.config_path, "key = value config file; flags override it");
    sub->add_option("--preset", f.preset, "initial-data preset name");
    sub->add_option("--epsilon", f.epsilon, "viscosities, comma separated, decreasing")
        ->delimiter(',');
    sub->add_option("--p", f.p, "transverse norm exponent");
    sub->add_option("--T", f.T, "final time");
    sub->add_option("--out", f.out_dir, "output directory");
    sub->add_option("--format", f.format, "csv or json");
    sub->add_option("--dt", f.dt, "transverse time step (0 = solver default)");
    sub->add_option("--u-steps", f.u_time_steps, "shear-profile steps (0 = solver default)");
    sub->add_option("--store-count", f.store_count, "number of stored snapshots");
    sub->add_option("--physical-extent", f.physical_extent, "strip half-width and height");
    sub->add_option("--physical-ppu", f.physical_ppu, "strip nodes per unit length");
    sub->add_option("--fast-extent", f.fast_extent, "fast-variable truncation");
    sub->add_option("--fast-ppu", f.fast_ppu, "fast nodes per unit length");
    sub->add_flag("--singular-only", f.singular_only, "skip solves, report the singular term");
}

StudyConfig merge_config(const CLI::App* sub, const FlagBuffer& f) {
    StudyConfig cfg;
    if (!f.config_path.empty()) cfg = load_config(f.config_path);
    auto seen = [sub](const std::string& name) { return sub->count(name) > 0; };
    if (seen("--preset")) cfg.preset = f.preset;
    if (seen("--epsilon")) cfg.epsilon_list = f.epsilon;
    if (seen("--p")) cfg.p = f.p;
    if (seen("--T")) cfg.T = f.T;
    if (seen("--out")) cfg.out_dir = f.out_dir;
    if (seen("--format")) cfg.format = f.format;
    if (seen("--dt")) cfg.dt = f.dt;
    if (seen("--u-steps")) cfg.u_time_steps = f.u_time_steps;
    if (seen("--store-count")) cfg.store_count = f.store_count;
    if (seen("--physical-extent")) cfg.physical_extent = f.physical_extent;
    if (seen("--physical-ppu")) cfg.physical_ppu = f.physical_ppu;
    if (seen("--fast-extent")) cfg.fast_extent = f.fast_extent;
    if (seen("--fast-ppu")) cfg.fast_ppu = f.fast_ppu;
    if (seen("--singular-only")) cfg.singular_only = f.singular_only;
    validate_config(cfg);
    return cfg;
}

struct BuiltProfiles {
    StudyGrids grids;
    InitialData data;
    ShearMap shear;
    std::vector<double> times;
    ProfileSet profiles;
};

BuiltProfiles build_from_config(const StudyConfig& cfg) {
    BuiltProfiles b;
    b.grids = study_grids(cfg);
    b.data = default_initial_data(cfg.preset, b.grids.physical);
    b.shear = make_shear_map(b.data);
    b.times = study_store_times(cfg);
    b.profiles = build_profile_set(b.data, b.shear, b.grids, cfg.T, b.times);
    return b;
}

int cmd_profiles(const StudyConfig& cfg) {
    BuiltProfiles b = build_from_config(cfg);
    const std::string dir = cfg.out_dir + "/profiles";
    dump_profiles(b.profiles, dir);
    std::printf("profiles: %zu snapshots in %s (hash %llu)\n", b.profiles.times.size(),
                dir.c_str(), static_cast<unsigned long long>(b.profiles.content_hash));
    return 0;
}

int cmd_solve(const StudyConfig& cfg) {
    BuiltProfiles b = build_from_config(cfg);
    const double eps = cfg.epsilon_list.front();
    const Grid1D ugrid = shear_speed_grid(std::max(12.0, cfg.physical_extent));
    AnsatzField a0 = assemble_ansatz(b.profiles, b.data, eps, 0.0, ugrid);
    DepletedSolveOptions opts;
    opts.dt = cfg.dt;
    opts.u_time_steps = cfg.u_time_steps;
    TrajectoryField traj = solve_depleted_ns(a0, b.data, b.shear, eps, cfg.T, b.times, opts);
    const std::string dir = cfg.out_dir + "/solve";
    dump_trajectory(traj, dir);
    std::printf("solve: epsilon %.6g, %zu snapshots in %s\n", eps, traj.store_times.size(),
                dir.c_str());
    return 0;
}

int cmd_residuals(const StudyConfig& cfg) {
    BuiltProfiles b = build_from_config(cfg);
    const double eps = cfg.epsilon_list.front();
    ResidualReport rr = residual_report(b.profiles, b.data, b.shear, eps, cfg.p);
    std::filesystem::create_directories(cfg.out_dir);
    const std::string path = cfg.out_dir + "/residuals." + cfg.format;
    write_residual_report(rr, cfg.format, path);
    std::printf("residuals: epsilon %.6g, defect integral %.6g, written to %s\n", eps,
                rr.ev_time_integral, path.c_str());
    return 0;
}

int cmd_study(const StudyConfig& cfg) {
    ConvergenceReport rep = run_convergence_study(cfg);
    std::filesystem::create_directories(cfg.out_dir);
    const std::string path = cfg.out_dir + "/report." + cfg.format;
    export_report(rep, cfg.format, path);

    for (const CaseResult& c : rep.cases) {
        if (c.solved)
            std::printf("epsilon %.6g: err_u %.6g, err_v %.6g, err_v_vs_ansatz %.6g, "
                        "residual %.6g, singular %.6g\n",
                        c.epsilon, c.err_u_L2, c.err_v_Lp, c.err_v_vs_ansatz_Lp,
                        c.residual_integral, c.singular_norm);
        else
            std::printf("epsilon %.6g: FAILED (%s)\n", c.epsilon, c.error.c_str());
    }
    for (const SlopeFit& s : rep.slopes)
        std::printf("slope %s = %.4f (r^2 %.4f%s)\n", s.quantity.c_str(), s.slope,
                    s.r_squared, s.reliable ? "" : ", unreliable");
    std::printf("report written to %s\n", path.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"inviscid-limit verification suite for plane-parallel flows with an "
                 "interface jump"};
    app.require_subcommand(1);
    FlagBuffer flags;

    CLI::App* sc_profiles =
        app.add_subcommand("profiles", "build the layer profiles and dump them");
    CLI::App* sc_solve = app.add_subcommand("solve", "one viscous solve at the first epsilon");
    CLI::App* sc_residuals =
        app.add_subcommand("residuals", "defect report at the first epsilon");
    CLI::App* sc_study = app.add_subcommand("study", "full epsilon sweep with fitted rates");
    CLI::App* sc_verify = app.add_subcommand("verify", "fast analytic cross-checks");
    for (CLI::App* sub : {sc_profiles, sc_solve, sc_residuals, sc_study})
        add_common_options(sub, flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sc_verify->parsed()) return run_verify_suite() == 0 ? 0 : 1;
        CLI::App* sub = app.get_subcommands().front();
        StudyConfig cfg = merge_config(sub, flags);
        if (sc_profiles->parsed()) return cmd_profiles(cfg);
        if (sc_solve->parsed()) return cmd_solve(cfg);
        if (sc_residuals->parsed()) return cmd_residuals(cfg);
        return cmd_study(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
