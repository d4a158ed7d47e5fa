#include "doctest.h"

#include "ppflow/fd.hpp"
#include "ppflow/flow.hpp"
#include "ppflow/initial_data.hpp"
#include "ppflow/norms.hpp"
#include "ppflow/profile_set.hpp"
#include "ppflow/ratefit.hpp"
#include "ppflow/residuals.hpp"

#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

using namespace ppflow;

namespace {

using Closure1 = std::function<double(double)>;
using Closure2 = std::function<double(double, double)>;

InitialData synthetic_data(const Grid2D& g, Closure1 u0, Closure1 du0, Closure1 d2u0,
                           Closure2 vL, Closure2 vR, Closure2 dxvL, Closure2 dxvR) {
    InitialData d;
    d.preset = "synthetic";
    d.physical = g;
    d.u0 = Field1D(g.z_axis);
    for (int j = 0; j < g.nz(); ++j) d.u0[j] = u0(g.z_axis.node(j));
    d.v0 = TwoSidedField2D(g);
    d.jump_v0 = Field1D(g.z_axis);
    const int i0 = g.interface_index;
    for (int j = 0; j < g.nz(); ++j) {
        const double z = g.z_axis.node(j);
        for (int i = 0; i < g.nx(); ++i) {
            const double x = g.x_axis.node(i);
            if (i < i0) d.v0.at(i, j) = vL(x, z);
            else if (i > i0) d.v0.at(i, j) = vR(x, z);
        }
        d.v0.left_trace[std::size_t(j)] = vL(0.0, z);
        d.v0.right_trace[std::size_t(j)] = vR(0.0, z);
        d.v0.at(i0, j) = 0.5 * (vL(0.0, z) + vR(0.0, z));
        d.v0.left_xderiv_trace[std::size_t(j)] = dxvL(0.0, z);
        d.v0.right_xderiv_trace[std::size_t(j)] = dxvR(0.0, z);
        d.jump_v0[j] = vR(0.0, z) - vL(0.0, z);
    }
    d.u0_of = u0;
    d.du0_of = du0;
    d.d2u0_of = d2u0;
    d.v0_left_of = vL;
    d.v0_right_of = vR;
    d.dxv0_left_of = dxvL;
    d.dxv0_right_of = dxvR;
    d.jump_of = [vL, vR](double z) { return vR(0.0, z) - vL(0.0, z); };
    d.u0_at_wall = u0(0.0);
    d.jump_at_corner = vR(0.0, 0.0) - vL(0.0, 0.0);
    return d;
}

/// Zero every profile sample and trace but keep the grids and times, so the
/// defect must come out identically zero for data the slow operator kills.
ProfileSet wiped_copy(const ProfileSet& src) {
    ProfileSet w = src;
    auto wipe2 = [](TwoSidedField2D& f) {
        std::fill(f.values.begin(), f.values.end(), 0.0);
        std::fill(f.left_trace.begin(), f.left_trace.end(), 0.0);
        std::fill(f.right_trace.begin(), f.right_trace.end(), 0.0);
        std::fill(f.left_xderiv_trace.begin(), f.left_xderiv_trace.end(), 0.0);
        std::fill(f.right_xderiv_trace.begin(), f.right_xderiv_trace.end(), 0.0);
    };
    for (auto& f : w.wall_unit) std::fill(f.values.begin(), f.values.end(), 0.0);
    for (auto& f : w.wall_u) std::fill(f.values.begin(), f.values.end(), 0.0);
    for (auto& f : w.wall_v.values) wipe2(f);
    for (auto& f : w.wall_v.jump) std::fill(f.values.begin(), f.values.end(), 0.0);
    for (auto& f : w.wall_v.jump_Zderiv) std::fill(f.values.begin(), f.values.end(), 0.0);
    for (auto& f : w.transition_v.values) wipe2(f);
    for (auto& f : w.corner.corner) wipe2(f);
    for (auto& f : w.corner.smooth_core) wipe2(f);
    w.u0_at_wall = 0.0;
    w.corner_jump = 0.0;
    return w;
}

struct ReducedSetup {
    Grid2D strip;
    InitialData data;
    ShearMap shear;
    ProfileSet profiles;
};

const ReducedSetup& reduced_setup() {
    static ReducedSetup* s = [] {
        auto* r = new ReducedSetup{
            Grid2D(make_symmetric_grid(8.0, 257), make_halfline_grid(8.0, 129)), {}, {}, {}};
        r->data = default_initial_data("gaussian-jump", r->strip);
        r->shear = make_shear_map(r->data);
        StudyGrids grids{r->strip, make_halfline_grid(20.0, 161), make_symmetric_grid(20.0, 321)};
        r->profiles = build_profile_set(r->data, r->shear, grids, 1.0,
                                        {0.0, 0.25, 0.5, 0.75, 1.0});
        return r;
    }();
    return *s;
}

} // namespace

TEST_CASE("shear defect is the scaled second derivative") {
    Grid1D g = make_halfline_grid(12.0, 12 * 256 + 1);

    Field1D lin(g);
    for (int j = 0; j < g.n_points; ++j) lin[j] = 3.0 - 0.5 * g.node(j);
    Field1D e_lin = compute_Eu(lin, 1e-2);
    for (double v : e_lin.values) CHECK(std::abs(v) <= 1e-12);

    Field1D expo(g);
    for (int j = 0; j < g.n_points; ++j) expo[j] = std::exp(-g.node(j));
    const double eps = 1e-3;
    Field1D e = compute_Eu(expo, eps);
    const double expect = eps * std::sqrt(0.5 * (1.0 - std::exp(-24.0)));
    CHECK(lp_norm(e, 2.0) == doctest::Approx(expect).epsilon(1e-3));

    // scaling in epsilon is exact, and the operator is linear in the profile
    Field1D e2 = compute_Eu(expo, 2.0 * eps);
    for (int j = 0; j < g.n_points; ++j) CHECK(e2[j] == 2.0 * e[j]);
    Field1D sum(g);
    for (int j = 0; j < g.n_points; ++j) sum[j] = expo[j] + lin[j];
    Field1D es = compute_Eu(sum, 1e-2);
    Field1D ee = compute_Eu(expo, 1e-2);
    for (int j = 0; j < g.n_points; ++j)
        CHECK(es[j] == doctest::Approx(ee[j] + e_lin[j]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("fast-variable norm rescaling") {
    Grid1D g = make_halfline_grid(40.0, 40 * 64 + 1);
    Field1D f(g);
    for (int j = 0; j < g.n_points; ++j) f[j] = std::exp(-g.node(j));

    ScalingCheck c = scaling_check(f, 0.01, 2.0);
    CHECK(c.measured == doctest::Approx(std::pow(0.01, 0.25) * std::sqrt(0.5)).epsilon(5e-4));
    CHECK(c.measured / c.predicted == doctest::Approx(1.0).epsilon(1e-10));

    ScalingCheck c15 = scaling_check(f, 1e-3, 1.5);
    CHECK(c15.measured / c15.predicted == doctest::Approx(1.0).epsilon(1e-10));

    Field1D zero(g);
    ScalingCheck cz = scaling_check(zero, 0.01, 2.0);
    CHECK(cz.measured == 0.0);
    CHECK(cz.predicted == 0.0);

    CHECK_THROWS_AS(scaling_check(f, 0.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(scaling_check(f, 0.01, 0.5), std::invalid_argument);
}

TEST_CASE("merged-mesh norm splits cells at the interface") {
    MergedField m;
    m.x = {-1.0, 0.0, 1.0};
    m.z = {0.0, 1.0};
    m.ix0 = 1;
    m.values = {2.0, 1.0, 2.0, 2.0, 1.0, 2.0};
    m.left_col = {0.0, 0.0};
    m.right_col = {2.0, 2.0};
    // left cell sees (2, 0-), right cell (2+, 2): rows integrate to 2 + 4
    CHECK(m.lp(2.0) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));
    CHECK_THROWS_AS(m.lp(0.5), std::invalid_argument);
}

TEST_CASE("defect vanishes for affine data without layers") {
    const ReducedSetup& R = reduced_setup();
    auto zero1 = [](double) { return 0.0; };
    auto vL = [](double x, double z) { return 1.0 + 0.25 * x - 0.125 * z; };
    auto vR = [](double x, double z) { return -0.5 + 0.25 * x + 0.0625 * z; };
    auto dxv = [](double, double) { return 0.25; };
    InitialData flat = synthetic_data(R.strip, zero1, zero1, zero1, vL, vR, dxv, dxv);
    ShearMap still;
    still.u0_of = zero1;
    still.du0_of = zero1;
    still.d2u0_of = zero1;
    still.du0_at_wall = 0.0;

    ProfileSet empty = wiped_copy(R.profiles);
    EvBreakdown b = compute_Ev(empty, flat, still, 1e-2, 0.5, 1.5);
    CHECK(b.total_lp <= 1e-10);
    for (const EvTerm& t : b.terms) CHECK(t.lp <= 1e-10);
    CHECK(singular_term_norm(empty, 1e-2, 0.5, 1.5) == 0.0);
}

TEST_CASE("defect breakdown names every contribution once") {
    const ReducedSetup& R = reduced_setup();
    EvBreakdown b = compute_Ev(R.profiles, R.data, R.shear, 1e-2, 0.5, 1.5);

    const std::set<std::string> expect = {
        "slow_laplacian_v0",     "corner_coefficient_defect", "transition_mixed",
        "transition_drift",      "transition_slow_diffusion", "wall_x_diffusion",
        "wall_mixed",            "wall_drift",                "advection_v0",
        "advection_wall",        "advection_transition",      "advection_corner"};
    std::set<std::string> got;
    for (const EvTerm& t : b.terms) got.insert(t.name);
    CHECK(b.terms.size() == 12);
    CHECK(got == expect);
    for (const EvTerm& t : b.terms) {
        CHECK(std::isfinite(t.lp));
        CHECK(t.lp >= 0.0);
    }

    CHECK(std::isfinite(b.total_lp));
    CHECK(b.total_lp > 0.0);
    // the total is one field, not a sum of norms, so it is dominated by them
    double sum = 0.0;
    for (const EvTerm& t : b.terms) sum += t.lp;
    CHECK(b.total_lp <= 1.05 * sum);

    const MergedField& M = b.total;
    CHECK(M.values.size() == M.x.size() * M.z.size());
    CHECK(M.x[M.ix0] == 0.0);
    CHECK(M.left_col.size() == M.z.size());
    for (double v : M.values) CHECK(std::isfinite(v));

    CHECK_THROWS_AS(compute_Ev(R.profiles, R.data, R.shear, 1e-2, 0.3, 1.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(compute_Ev(R.profiles, R.data, R.shear, 0.0, 0.5, 1.5),
                    std::invalid_argument);
}

TEST_CASE("singular advection term follows its scaling law") {
    const ReducedSetup& R = reduced_setup();
    std::vector<double> eps = {1e-2, 1e-3, 1e-4};

    std::vector<double> n15, n20;
    for (double e : eps) {
        n15.push_back(singular_term_norm(R.profiles, e, 0.5, 1.5));
        n20.push_back(singular_term_norm(R.profiles, e, 0.5, 2.0));
    }
    for (double v : n15) CHECK(v > 0.0);

    RateFit f15 = fit_loglog_rate(eps, n15);
    RateFit f20 = fit_loglog_rate(eps, n20);
    CHECK(std::abs(f15.slope - 1.0 / 6.0) <= 0.05);
    CHECK(std::abs(f20.slope - 0.0) <= 0.05);
    CHECK(f15.r_squared >= 0.98);
}

TEST_CASE("assembled field satisfies the defect equation") {
    // independent route: finite differences straight through the assembled
    // v_app, with a centered time derivative across dedicated snapshots
    const double eps = 0.04, tm = 0.5, del = 1.0 / 32.0, p = 1.5;
    StudyGrids grids = default_study_grids();
    InitialData data = default_initial_data("gaussian-jump", grids.physical);
    ShearMap shear = make_shear_map(data);
    std::vector<double> times = {0.0, tm - del, tm, tm + del, 1.0};
    ProfileSet profiles = build_profile_set(data, shear, grids, 1.0, times);

    AnsatzField am = assemble_ansatz(profiles, data, eps, tm);
    AnsatzField al = assemble_ansatz(profiles, data, eps, tm - del);
    AnsatzField ar = assemble_ansatz(profiles, data, eps, tm + del);

    const Grid2D& g = grids.physical;
    TwoSidedField2D D(g);
    {
        TwoSidedField2D dxx = fd_derivative(am.v_app, Axis::X, 2);
        TwoSidedField2D dzz = fd_derivative(am.v_app, Axis::Z, 2);
        TwoSidedField2D dx = fd_derivative(am.v_app, Axis::X, 1);
        TwoSidedField2D dxz = fd_derivative(dx, Axis::Z, 1);

        // transverse advection speed from the assembled shear profile
        const Grid1D& ug = am.u_app.grid;
        const long stride = std::lround(g.z_axis.spacing / ug.spacing);
        REQUIRE(stride * 1.0 * ug.spacing == doctest::Approx(g.z_axis.spacing).epsilon(1e-12));
        std::vector<double> a(std::size_t(g.nz()), 0.0);
        for (int j = 0; j < g.nz(); ++j)
            a[std::size_t(j)] = am.u_app[int(stride) * j] - data.u0[j];

        auto combine = [&](int j, double vdxx, double vdzz, double vdx, double vdxz,
                           double vl, double vr) {
            const double z = g.z_axis.node(j);
            const double c1 = shear.psi_z(tm, z), czz = shear.psi_zz(tm, z);
            const double lap =
                eps * ((1.0 + c1 * c1) * vdxx - 2.0 * c1 * vdxz + vdzz - czz * vdx);
            return lap - (vr - vl) / (2.0 * del) - a[std::size_t(j)] * vdx;
        };
        for (int j = 0; j < g.nz(); ++j) {
            for (int i = 0; i < g.nx(); ++i)
                D.at(i, j) = combine(j, dxx.at(i, j), dzz.at(i, j), dx.at(i, j),
                                     dxz.at(i, j), al.v_app.at(i, j), ar.v_app.at(i, j));
            const std::size_t j_ = std::size_t(j);
            D.left_trace[j_] = combine(j, dxx.left_trace[j_], dzz.left_trace[j_],
                                       dx.left_trace[j_], dxz.left_trace[j_],
                                       al.v_app.left_trace[j_], ar.v_app.left_trace[j_]);
            D.right_trace[j_] = combine(j, dxx.right_trace[j_], dzz.right_trace[j_],
                                        dx.right_trace[j_], dxz.right_trace[j_],
                                        al.v_app.right_trace[j_], ar.v_app.right_trace[j_]);
        }
    }
    const double direct = lp_norm(D, p);

    EvBreakdown b = compute_Ev(profiles, data, shear, eps, tm, p);
    CHECK(direct == doctest::Approx(b.total_lp).epsilon(0.05));
}

TEST_CASE("defect report spans the snapshot times") {
    const ReducedSetup& R = reduced_setup();
    ResidualReport rep = residual_report(R.profiles, R.data, R.shear, 1e-2, 1.5);

    CHECK(rep.times == R.profiles.times);
    CHECK(rep.eu_l2.size() == rep.times.size());
    CHECK(rep.ev_lp.size() == rep.times.size());
    CHECK(rep.singular_lp.size() == rep.times.size());
    CHECK(rep.breakdown.size() == rep.times.size());

    for (std::size_t k = 0; k < rep.times.size(); ++k) {
        CHECK(rep.eu_l2[k] == rep.eu_l2[0]); // frozen shear profile
        CHECK(std::isfinite(rep.ev_lp[k]));
        CHECK(rep.ev_lp[k] >= 0.0);
        CHECK(rep.breakdown[k].size() == 12);
    }
    for (std::size_t k = 1; k < rep.times.size(); ++k) CHECK(rep.singular_lp[k] > 0.0);

    std::vector<double> evp;
    for (double v : rep.ev_lp) evp.push_back(std::pow(v, 1.5));
    CHECK(rep.ev_time_integral == doctest::Approx(trapezoid(rep.times, evp)).epsilon(1e-12));
}
