#include "ppflow/study.hpp"

#include "ppflow/kernels.hpp"
#include "ppflow/norms.hpp"
#include "ppflow/profiles.hpp"
#include "ppflow/ratefit.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>

namespace ppflow {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::vector<double> default_epsilon_sweep() {
    return {1e-2, std::pow(10.0, -2.5), 1e-3, std::pow(10.0, -3.5), 1e-4};
}

void validate_config(const StudyConfig& c) {
    if (c.preset.empty()) throw std::invalid_argument("config: preset must be set");
    if (c.singular_only) {
        if (!(c.p > 1.0)) throw std::invalid_argument("config: p must exceed 1");
    } else if (!(c.p > 1.0 && c.p < 2.0)) {
        throw std::invalid_argument("config: p must lie in (1,2) for the full study");
    }
    if (!(c.T > 0.0)) throw std::invalid_argument("config: T must be positive");
    if (c.epsilon_list.empty()) throw std::invalid_argument("config: epsilon_list is empty");
    for (std::size_t i = 0; i < c.epsilon_list.size(); ++i) {
        if (!(c.epsilon_list[i] > 0.0))
            throw std::invalid_argument("config: epsilon values must be positive");
        if (i > 0 && !(c.epsilon_list[i] < c.epsilon_list[i - 1]))
            throw std::invalid_argument("config: epsilon_list must be strictly decreasing");
    }
    if (!(c.physical_extent > 0.0) || !(c.fast_extent > 0.0))
        throw std::invalid_argument("config: extents must be positive");
    if (c.physical_ppu < 1 || c.fast_ppu < 1)
        throw std::invalid_argument("config: grid densities must be at least 1");
    if (2048 % c.physical_ppu != 0)
        throw std::invalid_argument(
            "config: physical_ppu must divide 2048 so the shear grid subsamples onto the strip");
    if (c.store_count < 2) throw std::invalid_argument("config: store_count must be at least 2");
    if (c.format != "csv" && c.format != "json")
        throw std::invalid_argument("config: format must be csv or json");
    if (c.dt < 0.0 || c.u_time_steps < 0)
        throw std::invalid_argument("config: dt and u_time_steps cannot be negative");
}

StudyGrids study_grids(const StudyConfig& c) {
    const int nx = int(std::lround(2.0 * c.physical_extent * c.physical_ppu)) + 1;
    const int nz = int(std::lround(c.physical_extent * c.physical_ppu)) + 1;
    const int nZ = int(std::lround(c.fast_extent * c.fast_ppu)) + 1;
    const int nX = int(std::lround(2.0 * c.fast_extent * c.fast_ppu)) + 1;
    return {Grid2D(make_symmetric_grid(c.physical_extent, nx),
                   make_halfline_grid(c.physical_extent, nz)),
            make_halfline_grid(c.fast_extent, nZ), make_symmetric_grid(c.fast_extent, nX)};
}

std::vector<double> study_store_times(const StudyConfig& c) {
    std::vector<double> t(std::size_t(c.store_count), 0.0);
    for (int k = 0; k < c.store_count; ++k)
        t[std::size_t(k)] = c.T * (double(k) / double(c.store_count - 1));
    return t;
}

namespace {

std::string trimmed(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_real(const std::string& v, const std::string& key) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: value of '" + key + "' is not a number");
    }
    if (used != v.size())
        throw std::invalid_argument("config: trailing characters after the value of '" + key + "'");
    return x;
}

int parse_int(const std::string& v, const std::string& key) {
    const double x = parse_real(v, key);
    if (x != std::floor(x))
        throw std::invalid_argument("config: value of '" + key + "' must be an integer");
    return int(x);
}

bool parse_flag(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::invalid_argument("config: value of '" + key + "' must be true or false");
}

std::vector<double> parse_list(const std::string& v, const std::string& key) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= v.size()) {
        const auto comma = v.find(',', pos);
        const std::string item =
            trimmed(v.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
        if (!item.empty()) out.push_back(parse_real(item, key));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("config: '" + key + "' lists no values");
    return out;
}

} // namespace

StudyConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    StudyConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trimmed(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not key = value");
        const std::string key = trimmed(line.substr(0, eq));
        std::string val = trimmed(line.substr(eq + 1));
        if (val.size() >= 2 && ((val.front() == '"' && val.back() == '"') ||
                                (val.front() == '\'' && val.back() == '\'')))
            val = val.substr(1, val.size() - 2);

        if (key == "preset") cfg.preset = val;
        else if (key == "p") cfg.p = parse_real(val, key);
        else if (key == "T") cfg.T = parse_real(val, key);
        else if (key == "epsilon_list") cfg.epsilon_list = parse_list(val, key);
        else if (key == "physical_extent") cfg.physical_extent = parse_real(val, key);
        else if (key == "physical_ppu") cfg.physical_ppu = parse_int(val, key);
        else if (key == "fast_extent") cfg.fast_extent = parse_real(val, key);
        else if (key == "fast_ppu") cfg.fast_ppu = parse_int(val, key);
        else if (key == "dt") cfg.dt = parse_real(val, key);
        else if (key == "u_time_steps") cfg.u_time_steps = parse_int(val, key);
        else if (key == "store_count") cfg.store_count = parse_int(val, key);
        else if (key == "out_dir") cfg.out_dir = val;
        else if (key == "format") cfg.format = val;
        else if (key == "singular_only") cfg.singular_only = parse_flag(val, key);
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    return cfg;
}

namespace {

TwoSidedField2D field_diff(const TwoSidedField2D& a, const TwoSidedField2D& b) {
    TwoSidedField2D d = a;
    for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= b.values[i];
    for (std::size_t j = 0; j < d.left_trace.size(); ++j) {
        d.left_trace[j] -= b.left_trace[j];
        d.right_trace[j] -= b.right_trace[j];
        d.left_xderiv_trace[j] -= b.left_xderiv_trace[j];
        d.right_xderiv_trace[j] -= b.right_xderiv_trace[j];
    }
    d.declared_continuous = a.declared_continuous && b.declared_continuous;
    return d;
}

} // namespace

ConvergenceReport run_convergence_study(const StudyConfig& config) {
    validate_config(config);
    ConvergenceReport rep;
    rep.config = config;

    StudyGrids grids = study_grids(config);
    InitialData data = default_initial_data(config.preset, grids.physical);
    ShearMap shear = make_shear_map(data);
    const std::vector<double> times = study_store_times(config);
    const ProfileSet profiles =
        build_profile_set(data, shear, grids, config.T, times);
    rep.profile_hash = profiles.content_hash;

    const Grid1D ugrid = shear_speed_grid(std::max(12.0, config.physical_extent));

    for (double eps : config.epsilon_list) {
        CaseResult c;
        c.epsilon = eps;
        c.profile_hash = profiles.content_hash;
        if (c.profile_hash != rep.profile_hash)
            throw std::logic_error("convergence study: profile payload changed between cases");
        try {
            double ssup = 0.0;
            for (double t : times)
                ssup = std::max(ssup, singular_term_norm(profiles, eps, t, config.p));
            c.singular_norm = ssup;

            if (!config.singular_only) {
                AnsatzField a0 = assemble_ansatz(profiles, data, eps, 0.0, ugrid);
                DepletedSolveOptions opts;
                opts.dt = config.dt;
                opts.u_time_steps = config.u_time_steps;
                TrajectoryField traj =
                    solve_depleted_ns(a0, data, shear, eps, config.T, times, opts);

                double su = 0.0, sua = 0.0, sv = 0.0, sva = 0.0;
                for (std::size_t k = 0; k < times.size(); ++k) {
                    AnsatzField ak =
                        (k == 0) ? std::move(a0)
                                 : assemble_ansatz(profiles, data, eps, times[k], ugrid);
                    Field1D du(ugrid), dua(ugrid);
                    for (int i = 0; i < ugrid.n_points; ++i) {
                        du[i] = traj.u[k][i] - data.u0_of(ugrid.node(i));
                        dua[i] = traj.u[k][i] - ak.u_app[i];
                    }
                    su = std::max(su, lp_norm(du, 2.0));
                    sua = std::max(sua, lp_norm(dua, 2.0));
                    sv = std::max(
                        sv, lp_norm(field_diff(traj.v[k], euler_solution(data, times[k])),
                                    config.p));
                    sva = std::max(sva, lp_norm(field_diff(traj.v[k], ak.v_app), config.p));
                }
                c.err_u_L2 = su;
                c.err_u_vs_ansatz_L2 = sua;
                c.err_v_Lp = sv;
                c.err_v_vs_ansatz_Lp = sva;

                ResidualReport rr = residual_report(profiles, data, shear, eps, config.p);
                c.residual_integral = rr.ev_time_integral;
            }
            c.solved = true;
        } catch (const std::exception& e) {
            c.solved = false;
            c.error = e.what();
        }
        rep.cases.push_back(std::move(c));
    }

    auto fit = [&rep](const std::string& name,
                      const std::function<double(const CaseResult&)>& pick) {
        std::vector<double> xs, ys;
        for (const CaseResult& c : rep.cases) {
            const double v = pick(c);
            if (c.solved && std::isfinite(v) && v > 0.0) {
                xs.push_back(c.epsilon);
                ys.push_back(v);
            }
        }
        if (xs.size() < 2) return;
        RateFit f = fit_loglog_rate(xs, ys);
        rep.slopes.push_back({name, f.slope, f.intercept, f.r_squared, f.r_squared >= 0.98});
    };
    fit("err_u_L2", [](const CaseResult& c) { return c.err_u_L2; });
    fit("err_u_vs_ansatz_L2", [](const CaseResult& c) { return c.err_u_vs_ansatz_L2; });
    fit("err_v_Lp", [](const CaseResult& c) { return c.err_v_Lp; });
    fit("err_v_vs_ansatz_Lp", [](const CaseResult& c) { return c.err_v_vs_ansatz_Lp; });
    fit("residual_integral", [](const CaseResult& c) { return c.residual_integral; });
    fit("singular_norm", [](const CaseResult& c) { return c.singular_norm; });
    return rep;
}

namespace {

std::string real17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json num_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

double null_as_nan(const ordered_json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    return j.get<double>();
}

ordered_json config_json(const StudyConfig& c) {
    ordered_json j;
    j["preset"] = c.preset;
    j["p"] = c.p;
    j["T"] = c.T;
    j["epsilon_list"] = c.epsilon_list;
    j["physical_extent"] = c.physical_extent;
    j["physical_ppu"] = c.physical_ppu;
    j["fast_extent"] = c.fast_extent;
    j["fast_ppu"] = c.fast_ppu;
    j["dt"] = c.dt;
    j["u_time_steps"] = c.u_time_steps;
    j["store_count"] = c.store_count;
    j["out_dir"] = c.out_dir;
    j["format"] = c.format;
    j["singular_only"] = c.singular_only;
    return j;
}

StudyConfig config_from_json(const ordered_json& j) {
    StudyConfig c;
    c.preset = j.at("preset").get<std::string>();
    c.p = j.at("p").get<double>();
    c.T = j.at("T").get<double>();
    c.epsilon_list = j.at("epsilon_list").get<std::vector<double>>();
    c.physical_extent = j.at("physical_extent").get<double>();
    c.physical_ppu = j.at("physical_ppu").get<int>();
    c.fast_extent = j.at("fast_extent").get<double>();
    c.fast_ppu = j.at("fast_ppu").get<int>();
    c.dt = j.at("dt").get<double>();
    c.u_time_steps = j.at("u_time_steps").get<int>();
    c.store_count = j.at("store_count").get<int>();
    c.out_dir = j.at("out_dir").get<std::string>();
    c.format = j.at("format").get<std::string>();
    c.singular_only = j.at("singular_only").get<bool>();
    return c;
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary); // binary keeps the bytes exact
    if (!out) throw std::runtime_error("cannot write " + path);
    out << body;
    if (!out) throw std::runtime_error("short write to " + path);
}

} // namespace

void export_report(const ConvergenceReport& report, const std::string& format,
                   const std::string& path) {
    if (format == "csv") {
        std::string body =
            "epsilon,err_u_L2,err_v_Lp,err_v_vs_ansatz_Lp,residual_integral,singular_norm\n";
        for (const CaseResult& c : report.cases) {
            if (!c.solved) continue;
            body += real17(c.epsilon) + "," + real17(c.err_u_L2) + "," + real17(c.err_v_Lp) +
                    "," + real17(c.err_v_vs_ansatz_Lp) + "," + real17(c.residual_integral) +
                    "," + real17(c.singular_norm) + "\n";
        }
        write_text(path, body);
        return;
    }
    if (format != "json") throw std::invalid_argument("export_report: format must be csv or json");

    ordered_json j;
    j["version"] = report.version;
    j["profile_hash"] = report.profile_hash;
    j["config"] = config_json(report.config);
    j["cases"] = ordered_json::array();
    for (const CaseResult& c : report.cases) {
        ordered_json cj;
        cj["epsilon"] = c.epsilon;
        cj["solved"] = c.solved;
        cj["error"] = c.error;
        cj["err_u_L2"] = num_or_null(c.err_u_L2);
        cj["err_u_vs_ansatz_L2"] = num_or_null(c.err_u_vs_ansatz_L2);
        cj["err_v_Lp"] = num_or_null(c.err_v_Lp);
        cj["err_v_vs_ansatz_Lp"] = num_or_null(c.err_v_vs_ansatz_Lp);
        cj["residual_integral"] = num_or_null(c.residual_integral);
        cj["singular_norm"] = num_or_null(c.singular_norm);
        cj["profile_hash"] = c.profile_hash;
        j["cases"].push_back(std::move(cj));
    }
    j["slopes"] = ordered_json::array();
    for (const SlopeFit& s : report.slopes) {
        ordered_json sj;
        sj["quantity"] = s.quantity;
        sj["slope"] = s.slope;
        sj["intercept"] = s.intercept;
        sj["r_squared"] = s.r_squared;
        sj["reliable"] = s.reliable;
        j["slopes"].push_back(std::move(sj));
    }
    write_text(path, j.dump(2) + "\n");
}

ConvergenceReport import_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    ordered_json j = ordered_json::parse(in);

    ConvergenceReport rep;
    rep.version = j.at("version").get<std::string>();
    rep.profile_hash = j.at("profile_hash").get<std::uint64_t>();
    rep.config = config_from_json(j.at("config"));
    for (const ordered_json& cj : j.at("cases")) {
        CaseResult c;
        c.epsilon = cj.at("epsilon").get<double>();
        c.solved = cj.at("solved").get<bool>();
        c.error = cj.at("error").get<std::string>();
        c.err_u_L2 = null_as_nan(cj.at("err_u_L2"));
        c.err_u_vs_ansatz_L2 = null_as_nan(cj.at("err_u_vs_ansatz_L2"));
        c.err_v_Lp = null_as_nan(cj.at("err_v_Lp"));
        c.err_v_vs_ansatz_Lp = null_as_nan(cj.at("err_v_vs_ansatz_Lp"));
        c.residual_integral = null_as_nan(cj.at("residual_integral"));
        c.singular_norm = null_as_nan(cj.at("singular_norm"));
        c.profile_hash = cj.at("profile_hash").get<std::uint64_t>();
        rep.cases.push_back(std::move(c));
    }
    for (const ordered_json& sj : j.at("slopes")) {
        SlopeFit s;
        s.quantity = sj.at("quantity").get<std::string>();
        s.slope = sj.at("slope").get<double>();
        s.intercept = sj.at("intercept").get<double>();
        s.r_squared = sj.at("r_squared").get<double>();
        s.reliable = sj.at("reliable").get<bool>();
        rep.slopes.push_back(std::move(s));
    }
    return rep;
}

void write_residual_report(const ResidualReport& report, const std::string& format,
                           const std::string& path) {
    if (format == "csv") {
        std::string body = "time,eu_L2,ev_Lp,singular_Lp";
        if (!report.breakdown.empty())
            for (const EvTerm& t : report.breakdown.front()) body += "," + t.name;
        body += "\n";
        for (std::size_t k = 0; k < report.times.size(); ++k) {
            body += real17(report.times[k]) + "," + real17(report.eu_l2[k]) + "," +
                    real17(report.ev_lp[k]) + "," + real17(report.singular_lp[k]);
            for (const EvTerm& t : report.breakdown[k]) body += "," + real17(t.lp);
            body += "\n";
        }
        write_text(path, body);
        return;
    }
    if (format != "json")
        throw std::invalid_argument("write_residual_report: format must be csv or json");

    ordered_json j;
    j["epsilon"] = report.epsilon;
    j["p"] = report.p;
    j["times"] = report.times;
    j["eu_L2"] = report.eu_l2;
    j["ev_Lp"] = report.ev_lp;
    j["singular_Lp"] = report.singular_lp;
    j["ev_time_integral"] = report.ev_time_integral;
    j["breakdown"] = ordered_json::array();
    for (const auto& row : report.breakdown) {
        ordered_json rj = ordered_json::array();
        for (const EvTerm& t : row) rj.push_back(ordered_json{{"name", t.name}, {"lp", t.lp}});
        j["breakdown"].push_back(std::move(rj));
    }
    write_text(path, j.dump(2) + "\n");
}

namespace {

void write_bin(const fs::path& p, const std::vector<double>& v) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f.write(reinterpret_cast<const char*>(v.data()), std::streamsize(v.size() * sizeof(double)));
    if (!f) throw std::runtime_error("short write to " + p.string());
}

std::string indexed_name(const std::string& stem, std::size_t k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "_%03zu.bin", k);
    return stem + buf;
}

ordered_json grid1_json(const Grid1D& g) {
    return {{"n", g.n_points}, {"spacing", g.spacing}, {"origin", g.origin}};
}

ordered_json grid2_json(const Grid2D& g) {
    return {{"x", grid1_json(g.x_axis)},
            {"z", grid1_json(g.z_axis)},
            {"interface_index", g.interface_index}};
}

ordered_json dump_series_1d(const fs::path& dir, const std::string& stem,
                            const Grid1D& grid, const std::vector<Field1D>& series) {
    ordered_json entry;
    entry["grid"] = grid1_json(grid);
    entry["shape"] = {grid.n_points};
    entry["files"] = ordered_json::array();
    for (std::size_t k = 0; k < series.size(); ++k) {
        const std::string name = indexed_name(stem, k);
        write_bin(dir / name, series[k].values);
        entry["files"].push_back(name);
    }
    return entry;
}

ordered_json dump_series_2d(const fs::path& dir, const std::string& stem,
                            const std::vector<TwoSidedField2D>& series) {
    ordered_json entry;
    const Grid2D& g = series.front().grid;
    entry["grid"] = grid2_json(g);
    entry["shape"] = {g.nz(), g.nx()}; // row-major, z rows
    entry["files"] = ordered_json::array();
    entry["left_trace_files"] = ordered_json::array();
    entry["right_trace_files"] = ordered_json::array();
    for (std::size_t k = 0; k < series.size(); ++k) {
        const std::string name = indexed_name(stem, k);
        write_bin(dir / name, series[k].values);
        entry["files"].push_back(name);
        const std::string ln = indexed_name(stem + "_left_trace", k);
        const std::string rn = indexed_name(stem + "_right_trace", k);
        write_bin(dir / ln, series[k].left_trace);
        write_bin(dir / rn, series[k].right_trace);
        entry["left_trace_files"].push_back(ln);
        entry["right_trace_files"].push_back(rn);
    }
    return entry;
}

} // namespace

void dump_profiles(const ProfileSet& profiles, const std::string& dir) {
    fs::create_directories(dir);
    const fs::path base(dir);

    ordered_json j;
    j["byte_order"] = "little";
    j["scalar"] = "f64";
    j["times"] = profiles.times;
    j["u0_at_wall"] = profiles.u0_at_wall;
    j["corner_jump"] = profiles.corner_jump;
    j["content_hash"] = profiles.content_hash;

    ordered_json fields;
    fields["wall_unit"] =
        dump_series_1d(base, "wall_unit", profiles.wall_unit.front().grid, profiles.wall_unit);
    fields["wall_u"] =
        dump_series_1d(base, "wall_u", profiles.wall_u.front().grid, profiles.wall_u);
    fields["wall_v"] = dump_series_2d(base, "wall_v", profiles.wall_v.values);
    fields["wall_v_jump"] =
        dump_series_1d(base, "wall_v_jump", profiles.wall_v.jump.front().grid,
                       profiles.wall_v.jump);
    fields["wall_v_jump_Zderiv"] =
        dump_series_1d(base, "wall_v_jump_Zderiv", profiles.wall_v.jump_Zderiv.front().grid,
                       profiles.wall_v.jump_Zderiv);
    fields["transition_v"] = dump_series_2d(base, "transition_v", profiles.transition_v.values);
    fields["corner"] = dump_series_2d(base, "corner", profiles.corner.corner);
    fields["smooth_core"] = dump_series_2d(base, "smooth_core", profiles.corner.smooth_core);
    j["fields"] = std::move(fields);

    write_text((base / "profiles.json").string(), j.dump(2) + "\n");
}

void dump_trajectory(const TrajectoryField& trajectory, const std::string& dir) {
    fs::create_directories(dir);
    const fs::path base(dir);

    ordered_json j;
    j["byte_order"] = "little";
    j["scalar"] = "f64";
    j["epsilon"] = trajectory.epsilon;
    j["times"] = trajectory.store_times;

    ordered_json fields;
    fields["u"] = dump_series_1d(base, "u", trajectory.u.front().grid, trajectory.u);
    fields["v"] = dump_series_2d(base, "v", trajectory.v);
    j["fields"] = std::move(fields);

    write_text((base / "trajectory.json").string(), j.dump(2) + "\n");
}

int run_verify_suite() {
    int failures = 0;
    auto report = [&failures](bool ok, const std::string& name, const std::string& detail) {
        if (ok) std::printf("ok - %s (%s)\n", name.c_str(), detail.c_str());
        else {
            std::printf("FAIL - %s (%s)\n", name.c_str(), detail.c_str());
            ++failures;
        }
    };

    { // fast-variable norm rescaling is an identity, not an estimate
        Grid1D g = make_halfline_grid(40.0, 40 * 64 + 1);
        Field1D f(g);
        for (int i = 0; i < g.n_points; ++i) f[i] = std::exp(-g.node(i));
        ScalingCheck c = scaling_check(f, 1e-2, 1.5);
        const double dev = std::abs(c.measured / c.predicted - 1.0);
        report(dev <= 1e-10, "norm rescaling identity", "deviation " + real17(dev));
    }
    { // wall value of the unit layer profile
        const double v = unit_layer_value(0.37, 0.0);
        report(v == 1.0, "unit layer wall value", "phi(0.37, 0) = " + real17(v));
    }
    { // closed-form stretched time against Simpson quadrature
        Grid2D g(make_symmetric_grid(2.0, 65), make_halfline_grid(2.0, 33));
        InitialData data = default_initial_data("gaussian-jump", g);
        ShearMap shear = make_shear_map(data);
        double worst = 0.0;
        for (double t : {0.25, 0.7, 1.0})
            for (double z : {0.0, 0.3, 1.5})
                worst = std::max(worst, std::abs(shear.stretched_time(t, z) -
                                                 stretched_time_quadrature(shear, t, z)));
        report(worst <= 1e-8, "stretched time closed form", "max deviation " + real17(worst));
    }
    { // transport conserves the L^p norm of the transverse datum
        Grid2D g(make_symmetric_grid(8.0, 257), make_halfline_grid(8.0, 129));
        InitialData data = default_initial_data("gaussian-jump", g);
        const double n0 = euler_lp_norm(data, 0.0, 1.5, CoordinateFrame::original);
        const double nt = euler_lp_norm(data, 0.5, 1.5, CoordinateFrame::original);
        const double dev = std::abs(nt / n0 - 1.0);
        report(dev <= 1e-4, "transport norm conservation", "relative drift " + real17(dev));
    }
    { // implicit stepping of the wall layer against the closed form
        Grid1D gZ = make_halfline_grid(20.0, 161);
        std::vector<double> times = {0.0, 1.0};
        auto exact = solve_wall_layer(1.0, 1.0, gZ, times, LayerPath::closed_form);
        auto fd = solve_wall_layer(1.0, 1.0, gZ, times, LayerPath::implicit_fd);
        double worst = 0.0;
        for (int i = 0; i < gZ.n_points; ++i)
            worst = std::max(worst, std::abs(exact[1][i] - fd[1][i]));
        report(worst <= 1e-3, "wall layer implicit stepping", "sup deviation " + real17(worst));
    }
    return failures;
}

} // namespace ppflow
