#include "doctest.h"

#include "ppflow/study.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

using namespace ppflow;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    fs::path p = fs::temp_directory_path() / "ppflow_study_scratch";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(bool(in));
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

/// Coarse everything: two viscosities, three snapshots, fast solves.
StudyConfig tiny_config() {
    StudyConfig c;
    c.epsilon_list = {1e-2, 1e-3};
    c.physical_extent = 4.0;
    c.physical_ppu = 16;
    c.fast_extent = 10.0;
    c.fast_ppu = 8;
    c.u_time_steps = 2048;
    c.store_count = 3;
    return c;
}

const ConvergenceReport& tiny_report() {
    static ConvergenceReport* r = new ConvergenceReport(run_convergence_study(tiny_config()));
    return *r;
}

} // namespace

TEST_CASE("config validation names the offending field") {
    StudyConfig c;
    CHECK_NOTHROW(validate_config(c));

    StudyConfig bad = c;
    bad.p = 2.0;
    CHECK_THROWS_WITH_AS(validate_config(bad), doctest::Contains("p must lie in (1,2)"),
                         std::invalid_argument);
    bad.singular_only = true; // the singular probe alone admits p >= 2
    CHECK_NOTHROW(validate_config(bad));

    bad = c;
    bad.epsilon_list = {1e-3, 1e-2};
    CHECK_THROWS_WITH_AS(validate_config(bad), doctest::Contains("strictly decreasing"),
                         std::invalid_argument);
    bad.epsilon_list = {1e-2, 1e-2};
    CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
    bad.epsilon_list = {};
    CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);

    bad = c;
    bad.physical_ppu = 100; // 2048 is not a multiple
    CHECK_THROWS_WITH_AS(validate_config(bad), doctest::Contains("divide 2048"),
                         std::invalid_argument);

    bad = c;
    bad.format = "xml";
    CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
    bad = c;
    bad.store_count = 1;
    CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
    bad = c;
    bad.T = 0.0;
    CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
}

TEST_CASE("default grids and snapshot times") {
    StudyConfig c;
    StudyGrids g = study_grids(c);
    CHECK(g.physical.nx() == 1025);
    CHECK(g.physical.nz() == 513);
    CHECK(g.physical.x_axis.spacing == doctest::Approx(1.0 / 64.0).epsilon(1e-15));
    CHECK(g.fast_wall.n_points == 321);
    CHECK(g.fast_interface.n_points == 641);
    CHECK(g.fast_wall.spacing == doctest::Approx(1.0 / 16.0).epsilon(1e-15));

    std::vector<double> t = study_store_times(c);
    CHECK(t.size() == 17);
    CHECK(t.front() == 0.0);
    CHECK(t.back() == 1.0);
    CHECK(t[8] == 0.5);

    std::vector<double> sweep = default_epsilon_sweep();
    CHECK(sweep.size() == 5);
    CHECK(sweep[1] == doctest::Approx(std::pow(10.0, -2.5)).epsilon(1e-15));
}

TEST_CASE("config file parsing with overrides of every key") {
    fs::path dir = scratch_dir();
    fs::path file = dir / "study.cfg";
    {
        std::ofstream out(file);
        out << "# sweep configuration\n"
            << "preset = \"gaussian-jump\"   # quoted strings are fine\n"
            << "p = 1.25\n"
            << "T = 0.5\n"
            << "epsilon_list = 1e-2, 1e-3, 1e-4\n"
            << "physical_extent = 4\n"
            << "physical_ppu = 32\n"
            << "fast_extent = 12\n"
            << "fast_ppu = 8\n"
            << "dt = 0.001\n"
            << "u_time_steps = 512\n"
            << "store_count = 5\n"
            << "out_dir = 'runs/a'\n"
            << "format = json\n"
            << "singular_only = true\n";
    }
    StudyConfig c = load_config(file.string());
    CHECK(c.preset == "gaussian-jump");
    CHECK(c.p == 1.25);
    CHECK(c.T == 0.5);
    CHECK(c.epsilon_list == std::vector<double>{1e-2, 1e-3, 1e-4});
    CHECK(c.physical_extent == 4.0);
    CHECK(c.physical_ppu == 32);
    CHECK(c.fast_extent == 12.0);
    CHECK(c.fast_ppu == 8);
    CHECK(c.dt == 0.001);
    CHECK(c.u_time_steps == 512);
    CHECK(c.store_count == 5);
    CHECK(c.out_dir == "runs/a");
    CHECK(c.format == "json");
    CHECK(c.singular_only == true);

    {
        std::ofstream out(file);
        out << "banana = 3\n";
    }
    CHECK_THROWS_WITH_AS(load_config(file.string()), doctest::Contains("unknown key"),
                         std::invalid_argument);
    {
        std::ofstream out(file);
        out << "p = fast\n";
    }
    CHECK_THROWS_AS(load_config(file.string()), std::invalid_argument);
    {
        std::ofstream out(file);
        out << "just a line\n";
    }
    CHECK_THROWS_AS(load_config(file.string()), std::invalid_argument);
    CHECK_THROWS_AS(load_config((dir / "missing.cfg").string()), std::invalid_argument);
    fs::remove_all(dir);
}

TEST_CASE("coarse sweep solves both viscosities and fits slopes") {
    const ConvergenceReport& rep = tiny_report();
    REQUIRE(rep.cases.size() == 2);
    CHECK(rep.profile_hash != 0);
    for (const CaseResult& c : rep.cases) {
        CHECK(c.solved);
        CHECK(c.error.empty());
        CHECK(c.profile_hash == rep.profile_hash);
        for (double v : {c.err_u_L2, c.err_u_vs_ansatz_L2, c.err_v_Lp, c.err_v_vs_ansatz_Lp,
                         c.residual_integral, c.singular_norm}) {
            CHECK(std::isfinite(v));
            CHECK(v > 0.0);
        }
    }
    // the transverse error must shrink with the viscosity even at desk scale
    CHECK(rep.cases[1].err_v_Lp < rep.cases[0].err_v_Lp);

    REQUIRE(rep.slopes.size() == 6);
    for (const SlopeFit& s : rep.slopes) {
        CHECK(std::isfinite(s.slope));
        CHECK(std::isfinite(s.r_squared));
        CHECK(s.reliable == (s.r_squared >= 0.98));
    }
}

TEST_CASE("identical configs reproduce the report byte for byte") {
    fs::path dir = scratch_dir();
    const ConvergenceReport& first = tiny_report();
    ConvergenceReport second = run_convergence_study(tiny_config());

    export_report(first, "json", (dir / "a.json").string());
    export_report(second, "json", (dir / "b.json").string());
    CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));

    export_report(first, "csv", (dir / "a.csv").string());
    export_report(second, "csv", (dir / "b.csv").string());
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    fs::remove_all(dir);
}

TEST_CASE("csv export pins its columns and skips failed cases") {
    fs::path dir = scratch_dir();

    ConvergenceReport empty;
    export_report(empty, "csv", (dir / "empty.csv").string());
    CHECK(slurp(dir / "empty.csv") ==
          "epsilon,err_u_L2,err_v_Lp,err_v_vs_ansatz_Lp,residual_integral,singular_norm\n");

    ConvergenceReport rep = tiny_report();
    CaseResult broken;
    broken.epsilon = 1e-5;
    broken.solved = false;
    broken.error = "synthetic failure";
    rep.cases.push_back(broken);
    export_report(rep, "csv", (dir / "r.csv").string());
    std::string body = slurp(dir / "r.csv");
    CHECK(std::count(body.begin(), body.end(), '\n') == 3); // header + two solved rows
    CHECK(body.find("1e-05") == std::string::npos);

    CHECK_THROWS_AS(export_report(rep, "xml", (dir / "r.xml").string()), std::invalid_argument);
    CHECK_THROWS_AS(export_report(rep, "csv", (dir / "no/such/dir/r.csv").string()),
                    std::runtime_error);
    fs::remove_all(dir);
}

TEST_CASE("json report survives a round trip exactly") {
    fs::path dir = scratch_dir();
    const ConvergenceReport& rep = tiny_report();
    export_report(rep, "json", (dir / "r.json").string());
    ConvergenceReport back = import_report((dir / "r.json").string());
    export_report(back, "json", (dir / "r2.json").string());
    CHECK(slurp(dir / "r.json") == slurp(dir / "r2.json"));

    CHECK(back.cases.size() == rep.cases.size());
    CHECK(back.cases[0].err_v_Lp == rep.cases[0].err_v_Lp);
    CHECK(back.slopes.size() == rep.slopes.size());
    CHECK(back.slopes[0].slope == rep.slopes[0].slope);
    CHECK(back.config.epsilon_list == rep.config.epsilon_list);
    fs::remove_all(dir);
}

TEST_CASE("singular-only mode skips the solves but keeps the scaling fit") {
    StudyConfig c = tiny_config();
    c.singular_only = true;
    c.p = 2.0;
    c.epsilon_list = {1e-2, 1e-3, 1e-4};
    ConvergenceReport rep = run_convergence_study(c);

    REQUIRE(rep.cases.size() == 3);
    for (const CaseResult& cs : rep.cases) {
        CHECK(cs.solved);
        CHECK(std::isfinite(cs.singular_norm));
        CHECK(cs.singular_norm > 0.0);
        CHECK(std::isnan(cs.err_u_L2));
        CHECK(std::isnan(cs.residual_integral));
    }
    REQUIRE(rep.slopes.size() == 1);
    CHECK(rep.slopes[0].quantity == "singular_norm");
    CHECK(std::abs(rep.slopes[0].slope) <= 0.05); // p = 2 kills the gain

    fs::path dir = scratch_dir();
    export_report(rep, "csv", (dir / "s.csv").string());
    CHECK(slurp(dir / "s.csv").find("nan") != std::string::npos);

    export_report(rep, "json", (dir / "s.json").string());
    ConvergenceReport back = import_report((dir / "s.json").string());
    export_report(back, "json", (dir / "s2.json").string());
    CHECK(slurp(dir / "s.json") == slurp(dir / "s2.json"));
    fs::remove_all(dir);
}

TEST_CASE("a single viscosity yields norms but no slopes") {
    StudyConfig c = tiny_config();
    c.singular_only = true; // keep it fast; slope plumbing is mode-independent
    c.epsilon_list = {1e-2};
    ConvergenceReport rep = run_convergence_study(c);
    CHECK(rep.cases.size() == 1);
    CHECK(rep.cases[0].solved);
    CHECK(rep.slopes.empty());
}

TEST_CASE("binary snapshot dumps carry a sidecar that describes them") {
    StudyConfig c = tiny_config();
    c.epsilon_list = {1e-2};
    StudyGrids grids = study_grids(c);
    InitialData data = default_initial_data(c.preset, grids.physical);
    ShearMap shear = make_shear_map(data);
    std::vector<double> times = study_store_times(c);
    ProfileSet profiles = build_profile_set(data, shear, grids, c.T, times);

    fs::path dir = scratch_dir();
    dump_profiles(profiles, (dir / "profiles").string());

    nlohmann::ordered_json side =
        nlohmann::ordered_json::parse(slurp(dir / "profiles" / "profiles.json"));
    CHECK(side.at("byte_order") == "little");
    CHECK(side.at("scalar") == "f64");
    CHECK(side.at("times").size() == times.size());
    CHECK(side.at("content_hash").get<std::uint64_t>() == profiles.content_hash);
    for (const char* name : {"wall_unit", "wall_u", "wall_v", "wall_v_jump",
                             "wall_v_jump_Zderiv", "transition_v", "corner", "smooth_core"})
        CHECK(side.at("fields").contains(name));

    const auto wall = side.at("fields").at("wall_unit");
    CHECK(wall.at("files").size() == times.size());
    const fs::path f0 = dir / "profiles" / wall.at("files").at(0).get<std::string>();
    REQUIRE(fs::exists(f0));
    CHECK(fs::file_size(f0) ==
          std::uintmax_t(wall.at("grid").at("n").get<int>()) * sizeof(double));

    const auto corner = side.at("fields").at("corner");
    const fs::path c0 = dir / "profiles" / corner.at("files").at(0).get<std::string>();
    const auto shape = corner.at("shape");
    CHECK(fs::file_size(c0) ==
          std::uintmax_t(shape.at(0).get<int>()) * std::uintmax_t(shape.at(1).get<int>()) *
              sizeof(double));

    // the stored payload round-trips bit for bit
    {
        std::ifstream in(f0, std::ios::binary);
        std::vector<double> raw(profiles.wall_unit.front().values.size(), 0.0);
        in.read(reinterpret_cast<char*>(raw.data()),
                std::streamsize(raw.size() * sizeof(double)));
        REQUIRE(bool(in));
        CHECK(raw == profiles.wall_unit.front().values);
    }

    const Grid1D ugrid = shear_speed_grid(12.0);
    AnsatzField a0 = assemble_ansatz(profiles, data, 1e-2, 0.0, ugrid);
    DepletedSolveOptions opts;
    opts.u_time_steps = 512;
    TrajectoryField traj = solve_depleted_ns(a0, data, shear, 1e-2, c.T, times, opts);
    dump_trajectory(traj, (dir / "solve").string());
    nlohmann::ordered_json tside =
        nlohmann::ordered_json::parse(slurp(dir / "solve" / "trajectory.json"));
    CHECK(tside.at("epsilon").get<double>() == 1e-2);
    const fs::path v0 =
        dir / "solve" / tside.at("fields").at("v").at("files").at(0).get<std::string>();
    CHECK(fs::file_size(v0) == std::uintmax_t(grids.physical.n_nodes()) * sizeof(double));
    fs::remove_all(dir);
}

TEST_CASE("residual report files in both formats") {
    ResidualReport rr;
    rr.epsilon = 1e-2;
    rr.p = 1.5;
    rr.times = {0.0, 1.0};
    rr.eu_l2 = {3e-3, 3e-3};
    rr.ev_lp = {0.11, 0.13};
    rr.singular_lp = {0.2, 0.21};
    rr.ev_time_integral = 0.05;
    rr.breakdown = {{{"slow_laplacian_v0", 0.01}, {"advection_corner", 0.02}},
                    {{"slow_laplacian_v0", 0.012}, {"advection_corner", 0.019}}};

    fs::path dir = scratch_dir();
    write_residual_report(rr, "csv", (dir / "r.csv").string());
    std::string body = slurp(dir / "r.csv");
    CHECK(body.find("time,eu_L2,ev_Lp,singular_Lp,slow_laplacian_v0,advection_corner\n") == 0);
    CHECK(std::count(body.begin(), body.end(), '\n') == 3);

    write_residual_report(rr, "json", (dir / "r.json").string());
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(slurp(dir / "r.json"));
    CHECK(j.at("ev_time_integral").get<double>() == 0.05);
    CHECK(j.at("breakdown").at(1).at(0).at("lp").get<double>() == 0.012);
    fs::remove_all(dir);
}

TEST_CASE("analytic cross-check suite is clean") {
    CHECK(run_verify_suite() == 0);
}
