#include "ppflow/profile_set.hpp"

#include "ppflow/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace ppflow {

StudyGrids default_study_grids() {
    StudyGrids g;
    g.physical = Grid2D(make_symmetric_grid(8.0, 1025), make_halfline_grid(8.0, 513));
    g.fast_wall = make_halfline_grid(20.0, 321);
    g.fast_interface = make_symmetric_grid(20.0, 641);
    return g;
}

namespace {

/// FNV-1a over raw bytes; enough to certify that two cases consumed the same
/// profile payload.
struct Hasher {
    std::uint64_t h = 1469598103934665603ull;
    void feed(const void* data, std::size_t n) {
        const unsigned char* b = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 1099511628211ull;
        }
    }
    void feed(const std::vector<double>& v) { feed(v.data(), v.size() * sizeof(double)); }
    void feed(const TwoSidedField2D& f) {
        feed(f.values);
        feed(f.left_trace);
        feed(f.right_trace);
        feed(f.left_xderiv_trace);
        feed(f.right_xderiv_trace);
    }
};

} // namespace

ProfileSet build_profile_set(const InitialData& data, const ShearMap& shear,
                             const StudyGrids& grids, double T,
                             const std::vector<double>& times,
                             LayerPath path, double wall_dt, double corner_dt) {
    ProfileSet set;
    set.times = times;
    set.u0_at_wall = data.u0_at_wall;
    set.corner_jump = data.jump_at_corner;

    set.wall_unit = solve_wall_layer(1.0, T, grids.fast_wall, times, path, wall_dt);
    set.wall_u = solve_wall_layer(-data.u0_at_wall, T, grids.fast_wall, times, path, wall_dt);
    set.wall_v = solve_wall_layer_family(data, T, grids.physical.x_axis, grids.fast_wall,
                                         times, path, wall_dt);
    set.transition_v = solve_transition_layer(data, shear, T, grids.fast_interface,
                                              grids.physical.z_axis, times);

    std::vector<Field1D> wall_row;
    wall_row.reserve(times.size());
    for (const TwoSidedField2D& f : set.transition_v.values) {
        Field1D row(grids.fast_interface);
        for (int i = 0; i < grids.fast_interface.n_points; ++i) row[i] = f.at(i, 0);
        wall_row.push_back(std::move(row));
    }
    set.corner = solve_corner_layer(times, set.wall_v.jump, set.wall_v.jump_Zderiv, wall_row,
                                    set.corner_jump, shear, T, grids.fast_interface,
                                    grids.fast_wall, corner_dt);

    Hasher hash;
    hash.feed(set.times);
    for (const Field1D& f : set.wall_unit) hash.feed(f.values);
    for (const Field1D& f : set.wall_u) hash.feed(f.values);
    for (const TwoSidedField2D& f : set.wall_v.values) hash.feed(f);
    for (const Field1D& f : set.wall_v.jump) hash.feed(f.values);
    for (const TwoSidedField2D& f : set.transition_v.values) hash.feed(f);
    for (const TwoSidedField2D& f : set.corner.corner) hash.feed(f);
    set.content_hash = hash.h;
    return set;
}

ProfileNormReport profile_norm_report(const ProfileSet& profiles, double p) {
    ProfileNormReport rep;
    rep.p = p;
    for (std::size_t k = 0; k < profiles.times.size(); ++k) {
        rep.wall_u_lp = std::max(rep.wall_u_lp, lp_norm(profiles.wall_u[k], p));
        rep.wall_u_w1p = std::max(rep.wall_u_w1p, w1p_norm(profiles.wall_u[k], p));
        rep.wall_v_lp = std::max(rep.wall_v_lp, lp_norm(profiles.wall_v.values[k], p));
        rep.wall_v_w1p = std::max(rep.wall_v_w1p, w1p_norm(profiles.wall_v.values[k], p));
        rep.jump_lp = std::max(rep.jump_lp, lp_norm(profiles.wall_v.jump[k], p));
        rep.jump_w1p = std::max(rep.jump_w1p, w1p_norm(profiles.wall_v.jump[k], p));
        rep.transition_lp = std::max(rep.transition_lp, lp_norm(profiles.transition_v.values[k], p));
        rep.transition_w1p = std::max(rep.transition_w1p, w1p_norm(profiles.transition_v.values[k], p));
        rep.corner_lp = std::max(rep.corner_lp, lp_norm(profiles.corner.corner[k], p));
        rep.corner_w1p = std::max(rep.corner_w1p, w1p_norm(profiles.corner.corner[k], p));
    }

    double edge = 0.0;
    const int nZ = profiles.wall_u.front().size();
    for (std::size_t k = 0; k < profiles.times.size(); ++k) {
        edge = std::max(edge, std::abs(profiles.wall_u[k][nZ - 1]));
        const TwoSidedField2D& vp = profiles.wall_v.values[k];
        for (int i = 0; i < vp.nx(); ++i) edge = std::max(edge, std::abs(vp.at(i, vp.nz() - 1)));
        const TwoSidedField2D& tr = profiles.transition_v.values[k];
        for (int j = 0; j < tr.nz(); ++j) {
            edge = std::max(edge, std::abs(tr.at(0, j)));
            edge = std::max(edge, std::abs(tr.at(tr.nx() - 1, j)));
        }
        const TwoSidedField2D& vb = profiles.corner.corner[k];
        for (int j = 0; j < vb.nz(); ++j) {
            edge = std::max(edge, std::abs(vb.at(0, j)));
            edge = std::max(edge, std::abs(vb.at(vb.nx() - 1, j)));
        }
        for (int i = 0; i < vb.nx(); ++i) edge = std::max(edge, std::abs(vb.at(i, vb.nz() - 1)));
    }
    rep.fast_boundary_max = edge;
    return rep;
}

} // namespace ppflow
