#include "ppflow/residuals.hpp"

#include "ppflow/fd.hpp"
#include "ppflow/interp.hpp"
#include "ppflow/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ppflow {

namespace {

std::size_t snapshot_index(const ProfileSet& profiles, double t) {
    for (std::size_t m = 0; m < profiles.times.size(); ++m)
        if (std::abs(profiles.times[m] - t) <= 1e-12 * std::max(1.0, std::abs(t))) return m;
    throw std::invalid_argument("residuals: t is not a stored profile snapshot time");
}

struct SideRow {
    PchipInterpolant left, right;
};

SideRow make_side_row(const TwoSidedField2D& f, int iz) {
    const Grid1D& ax = f.grid.x_axis;
    const int i0 = f.ix0();
    std::vector<double> lv(std::size_t(i0) + 1, 0.0);
    std::vector<double> rv(std::size_t(ax.n_points - i0), 0.0);
    for (int i = 0; i < i0; ++i) lv[std::size_t(i)] = f.at(i, iz);
    lv.back() = f.left_trace[std::size_t(iz)];
    rv.front() = f.right_trace[std::size_t(iz)];
    for (int i = i0 + 1; i < ax.n_points; ++i) rv[std::size_t(i - i0)] = f.at(i, iz);
    SideRow s;
    s.left = make_pchip(Grid1D(i0 + 1, ax.spacing, ax.origin), std::move(lv));
    s.right = make_pchip(Grid1D(ax.n_points - i0, ax.spacing, 0.0), std::move(rv));
    return s;
}

std::vector<double> merged_axis(const Grid1D& slow, const Grid1D& fast, double scale,
                                double lo, double hi) {
    std::vector<double> nodes;
    nodes.reserve(std::size_t(slow.n_points + fast.n_points));
    for (int i = 0; i < slow.n_points; ++i) nodes.push_back(slow.node(i));
    for (int i = 0; i < fast.n_points; ++i) {
        const double v = scale * fast.node(i);
        if (v >= lo && v <= hi) nodes.push_back(v);
    }
    std::sort(nodes.begin(), nodes.end());
    std::vector<double> out;
    out.reserve(nodes.size());
    for (double v : nodes)
        if (out.empty() || v - out.back() > 1e-12) out.push_back(v);
    return out;
}

/// Accumulation target: the merged tensor mesh with one-sided interface columns.
struct Merged {
    std::vector<double>& ux;
    std::vector<double>& uz;
    std::size_t ix0;
    std::vector<double>& values;
    std::vector<double>& lcol;
    std::vector<double>& rcol;
};

/// Add a two-sided native field to the merged mesh. The native coordinates
/// are (merged x)/sx and (merged z)/sz; fast layers vanish past their
/// truncation, so queries beyond the native box add zero when zero_beyond is
/// set. row_scale, when present, multiplies the contribution of merged row j.
void add_two_sided(Merged& m, const TwoSidedField2D& F, double sx, double sz,
                   bool zero_beyond, const std::vector<double>* row_scale) {
    const std::size_t nux = m.ux.size(), nuz = m.uz.size();
    const int nb = F.nz();
    const Grid1D& ax = F.grid.x_axis;
    const Grid1D& az = F.grid.z_axis;
    const double xlo = ax.node(0), xhi = ax.last(), zlo = az.node(0), zhi = az.last();

    // native rows evaluated at every merged abscissa, plus the two side limits
    std::vector<double> A(std::size_t(nb) * (nux + 2), 0.0);
    for (int mrow = 0; mrow < nb; ++mrow) {
        SideRow r = make_side_row(F, mrow);
        double* dst = A.data() + std::size_t(mrow) * (nux + 2);
        for (std::size_t i = 0; i < nux; ++i) {
            if (i == m.ix0) continue;
            const double xq = m.ux[i] / sx;
            if (zero_beyond && (xq < xlo - 1e-12 || xq > xhi + 1e-12)) continue;
            dst[i] = (m.ux[i] < 0.0) ? r.left(xq) : r.right(xq);
        }
        dst[nux] = F.left_trace[std::size_t(mrow)];
        dst[nux + 1] = F.right_trace[std::size_t(mrow)];
    }

    std::vector<double> column(std::size_t(nb), 0.0);
    for (std::size_t c = 0; c < nux + 2; ++c) {
        if (c == m.ix0) continue;
        for (int mrow = 0; mrow < nb; ++mrow)
            column[std::size_t(mrow)] = A[std::size_t(mrow) * (nux + 2) + c];
        PchipInterpolant ci = make_pchip(az, column);
        for (std::size_t j = 0; j < nuz; ++j) {
            const double zq = m.uz[j] / sz;
            double v;
            if (zero_beyond && (zq < zlo - 1e-12 || zq > zhi + 1e-12)) v = 0.0;
            else v = ci(zq);
            if (row_scale != nullptr) v *= (*row_scale)[j];
            if (c < nux) m.values[j * nux + c] += v;
            else if (c == nux) m.lcol[j] += v;
            else m.rcol[j] += v;
        }
    }
}

/// a*f + out -> out, including the interface traces. Fields share a grid.
void axpy(double a, const TwoSidedField2D& f, TwoSidedField2D& out) {
    for (std::size_t i = 0; i < f.values.size(); ++i) out.values[i] += a * f.values[i];
    for (std::size_t j = 0; j < f.left_trace.size(); ++j) {
        out.left_trace[j] += a * f.left_trace[j];
        out.right_trace[j] += a * f.right_trace[j];
    }
}

/// Row-wise a_j*f like axpy, coefficient constant along x.
void axpy_rows(const std::vector<double>& a, const TwoSidedField2D& f, TwoSidedField2D& out) {
    const int nx = f.nx(), nz = f.nz();
    for (int j = 0; j < nz; ++j) {
        const double c = a[std::size_t(j)];
        const double* src = f.values.data() + std::size_t(j) * std::size_t(nx);
        double* dst = out.values.data() + std::size_t(j) * std::size_t(nx);
        for (int i = 0; i < nx; ++i) dst[i] += c * src[i];
        out.left_trace[std::size_t(j)] += c * f.left_trace[std::size_t(j)];
        out.right_trace[std::size_t(j)] += c * f.right_trace[std::size_t(j)];
    }
}

double quad_row_x(const TwoSidedField2D& f, int j, double p) {
    const Grid1D& ax = f.grid.x_axis;
    const int i0 = f.ix0();
    double acc = 0.0;
    for (int i = 0; i + 1 < ax.n_points; ++i) {
        const double va = (i == i0) ? f.right_trace[std::size_t(j)] : f.at(i, j);
        const double vb = (i + 1 == i0) ? f.left_trace[std::size_t(j)] : f.at(i + 1, j);
        acc += 0.5 * (std::pow(std::abs(va), p) + std::pow(std::abs(vb), p)) * ax.spacing;
    }
    return acc;
}

} // namespace

Field1D compute_Eu(const Field1D& u0, double epsilon) {
    Field1D out = fd_derivative(u0, 2);
    for (double& v : out.values) v *= epsilon;
    return out;
}

double MergedField::lp(double p) const {
    if (!(p >= 1.0)) throw std::invalid_argument("MergedField::lp: p must be >= 1");
    const std::size_t nx = x.size();
    std::vector<double> rowint(z.size(), 0.0);
    for (std::size_t j = 0; j < z.size(); ++j) {
        const double* row = values.data() + j * nx;
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < nx; ++i) {
            const double va = (i == ix0) ? right_col[j] : row[i];
            const double vb = (i + 1 == ix0) ? left_col[j] : row[i + 1];
            acc += 0.5 * (std::pow(std::abs(va), p) + std::pow(std::abs(vb), p)) *
                   (x[i + 1] - x[i]);
        }
        rowint[j] = acc;
    }
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < z.size(); ++j)
        total += 0.5 * (rowint[j] + rowint[j + 1]) * (z[j + 1] - z[j]);
    return std::pow(total, 1.0 / p);
}

EvBreakdown compute_Ev(const ProfileSet& profiles, const InitialData& data,
                       const ShearMap& shear, double epsilon, double t, double p) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("compute_Ev: epsilon must be positive");
    if (!(p >= 1.0)) throw std::invalid_argument("compute_Ev: p must be >= 1");
    const std::size_t k = snapshot_index(profiles, t);
    const double sq = std::sqrt(epsilon);
    const Grid2D& pg = data.physical;

    const TwoSidedField2D& kh = profiles.transition_v.values[k];
    const TwoSidedField2D& vb = profiles.corner.corner[k];
    const TwoSidedField2D& fam = profiles.wall_v.values[k];
    const Field1D& unit = profiles.wall_unit[k];

    EvBreakdown out;
    out.terms.reserve(12);

    // --- quadrature mesh: strip nodes plus the images of the fast nodes
    MergedField& M = out.total;
    M.x = merged_axis(pg.x_axis, kh.grid.x_axis, sq, pg.x_axis.node(0), pg.x_axis.last());
    M.z = merged_axis(pg.z_axis, unit.grid, sq, 0.0, pg.z_axis.last());
    {
        auto it = std::lower_bound(M.x.begin(), M.x.end(), 0.0);
        if (it == M.x.end() || *it != 0.0)
            throw std::logic_error("compute_Ev: merged mesh lost the interface node");
        M.ix0 = std::size_t(it - M.x.begin());
    }
    M.values.assign(M.z.size() * M.x.size(), 0.0);
    M.left_col.assign(M.z.size(), 0.0);
    M.right_col.assign(M.z.size(), 0.0);
    Merged acc{M.x, M.z, M.ix0, M.values, M.left_col, M.right_col};

    const double psi_z_wall = shear.psi_z(t, 0.0);

    // --- slow term: the straightened Laplacian of the datum
    {
        TwoSidedField2D dxx = fd_derivative(data.v0, Axis::X, 2);
        TwoSidedField2D dzz = fd_derivative(data.v0, Axis::Z, 2);
        TwoSidedField2D dx = fd_derivative(data.v0, Axis::X, 1);
        TwoSidedField2D dxz = fd_derivative(dx, Axis::Z, 1);
        TwoSidedField2D t1(pg);
        std::vector<double> c(std::size_t(pg.nz()), 0.0);
        for (int j = 0; j < pg.nz(); ++j) {
            const double z = pg.z_axis.node(j);
            c[std::size_t(j)] = epsilon * (1.0 + shear.psi_z(t, z) * shear.psi_z(t, z));
        }
        axpy_rows(c, dxx, t1);
        for (int j = 0; j < pg.nz(); ++j)
            c[std::size_t(j)] = -2.0 * epsilon * shear.psi_z(t, pg.z_axis.node(j));
        axpy_rows(c, dxz, t1);
        axpy(epsilon, dzz, t1);
        for (int j = 0; j < pg.nz(); ++j)
            c[std::size_t(j)] = -epsilon * shear.psi_zz(t, pg.z_axis.node(j));
        axpy_rows(c, dx, t1);
        out.terms.push_back({"slow_laplacian_v0", lp_norm(t1, p)});
        add_two_sided(acc, t1, 1.0, 1.0, false, nullptr);
    }

    const double fastZ_jac = std::pow(epsilon, 0.5 / p);  // one fast direction
    const double fastXZ_jac = std::pow(epsilon, 1.0 / p); // two fast directions

    // --- transition-layer defect terms, native on (X, z)
    TwoSidedField2D kh_dX = fd_derivative(kh, Axis::X, 1);
    {
        TwoSidedField2D dXz = fd_derivative(kh_dX, Axis::Z, 1);
        TwoSidedField2D dzz = fd_derivative(kh, Axis::Z, 2);
        const int nzk = kh.nz();
        std::vector<double> c(std::size_t(nzk), 0.0);

        TwoSidedField2D t3(kh.grid);
        for (int j = 0; j < nzk; ++j)
            c[std::size_t(j)] = -2.0 * sq * shear.psi_z(t, kh.grid.z_axis.node(j));
        axpy_rows(c, dXz, t3);
        TwoSidedField2D t4(kh.grid);
        for (int j = 0; j < nzk; ++j)
            c[std::size_t(j)] = -sq * shear.psi_zz(t, kh.grid.z_axis.node(j));
        axpy_rows(c, kh_dX, t4);

        out.terms.push_back({"transition_mixed", fastZ_jac * lp_norm(t3, p)});
        out.terms.push_back({"transition_drift", fastZ_jac * lp_norm(t4, p)});
        out.terms.push_back({"transition_slow_diffusion", fastZ_jac * epsilon * lp_norm(dzz, p)});

        axpy(1.0, t4, t3);
        axpy(epsilon, dzz, t3);
        add_two_sided(acc, t3, sq, 1.0, true, nullptr);
    }

    // --- wall-layer defect and the advection of datum and wall layer,
    //     native on (x, Z)
    {
        TwoSidedField2D fdxx = fd_derivative(fam, Axis::X, 2);
        TwoSidedField2D fdx = fd_derivative(fam, Axis::X, 1);
        TwoSidedField2D fdxZ = fd_derivative(fdx, Axis::Z, 1);
        const int nZ = fam.nz();
        std::vector<double> c(std::size_t(nZ), 0.0);

        TwoSidedField2D t6(fam.grid);
        for (int m = 0; m < nZ; ++m) {
            const double pz = shear.psi_z(t, sq * fam.grid.z_axis.node(m));
            c[std::size_t(m)] = epsilon * (1.0 + pz * pz);
        }
        axpy_rows(c, fdxx, t6);
        TwoSidedField2D t7(fam.grid);
        for (int m = 0; m < nZ; ++m)
            c[std::size_t(m)] = -2.0 * sq * shear.psi_z(t, sq * fam.grid.z_axis.node(m));
        axpy_rows(c, fdxZ, t7);
        TwoSidedField2D t8(fam.grid);
        for (int m = 0; m < nZ; ++m)
            c[std::size_t(m)] = -epsilon * shear.psi_zz(t, sq * fam.grid.z_axis.node(m));
        axpy_rows(c, fdx, t8);

        // U_P(t,Z) rides every advection term
        std::vector<double> up(std::size_t(nZ), 0.0);
        for (int m = 0; m < nZ; ++m)
            up[std::size_t(m)] = -profiles.u0_at_wall * unit[m];

        TwoSidedField2D t9(fam.grid);
        TwoSidedField2D t10(fam.grid);
        for (int m = 0; m < nZ; ++m) {
            const double z = sq * fam.grid.z_axis.node(m);
            const double u = up[std::size_t(m)];
            for (int i = 0; i < fam.nx(); ++i) {
                const double x = fam.grid.x_axis.node(i);
                if (i < fam.ix0()) {
                    t9.at(i, m) = -u * data.dxv0_left_of(x, z);
                    t10.at(i, m) = u * data.dxv0_left_of(x, 0.0) * unit[m];
                } else if (i > fam.ix0()) {
                    t9.at(i, m) = -u * data.dxv0_right_of(x, z);
                    t10.at(i, m) = u * data.dxv0_right_of(x, 0.0) * unit[m];
                }
            }
            t9.left_trace[std::size_t(m)] = -u * data.dxv0_left_of(0.0, z);
            t9.right_trace[std::size_t(m)] = -u * data.dxv0_right_of(0.0, z);
            t10.left_trace[std::size_t(m)] = u * data.dxv0_left_of(0.0, 0.0) * unit[m];
            t10.right_trace[std::size_t(m)] = u * data.dxv0_right_of(0.0, 0.0) * unit[m];
            t9.at(t9.ix0(), m) = 0.5 * (t9.left_trace[std::size_t(m)] + t9.right_trace[std::size_t(m)]);
            t10.at(t10.ix0(), m) =
                0.5 * (t10.left_trace[std::size_t(m)] + t10.right_trace[std::size_t(m)]);
        }

        out.terms.push_back({"wall_x_diffusion", fastZ_jac * lp_norm(t6, p)});
        out.terms.push_back({"wall_mixed", fastZ_jac * lp_norm(t7, p)});
        out.terms.push_back({"wall_drift", fastZ_jac * lp_norm(t8, p)});
        out.terms.push_back({"advection_v0", fastZ_jac * lp_norm(t9, p)});
        out.terms.push_back({"advection_wall", fastZ_jac * lp_norm(t10, p)});

        axpy(1.0, t7, t6);
        axpy(1.0, t8, t6);
        axpy(1.0, t9, t6);
        axpy(1.0, t10, t6);
        add_two_sided(acc, t6, 1.0, sq, true, nullptr);
    }

    // --- corner-layer coefficient defect and its advection, native on (X, Z)
    {
        TwoSidedField2D cdXX = fd_derivative(vb, Axis::X, 2);
        TwoSidedField2D cdX = fd_derivative(vb, Axis::X, 1);
        TwoSidedField2D cdXZ = fd_derivative(cdX, Axis::Z, 1);
        const int nZ = vb.nz();
        std::vector<double> c(std::size_t(nZ), 0.0);

        TwoSidedField2D t2(vb.grid);
        for (int m = 0; m < nZ; ++m) {
            const double pz = shear.psi_z(t, sq * vb.grid.z_axis.node(m));
            c[std::size_t(m)] = pz * pz - psi_z_wall * psi_z_wall;
        }
        axpy_rows(c, cdXX, t2);
        for (int m = 0; m < nZ; ++m)
            c[std::size_t(m)] = -2.0 * (shear.psi_z(t, sq * vb.grid.z_axis.node(m)) - psi_z_wall);
        axpy_rows(c, cdXZ, t2);
        for (int m = 0; m < nZ; ++m)
            c[std::size_t(m)] = -sq * shear.psi_zz(t, sq * vb.grid.z_axis.node(m));
        axpy_rows(c, cdX, t2);

        TwoSidedField2D t12(vb.grid);
        for (int m = 0; m < nZ; ++m)
            c[std::size_t(m)] = profiles.u0_at_wall * unit[m] / sq; // -(1/sq)*U_P
        axpy_rows(c, cdX, t12);

        out.terms.push_back({"corner_coefficient_defect", fastXZ_jac * lp_norm(t2, p)});
        out.terms.push_back({"advection_corner", fastXZ_jac * lp_norm(t12, p)});

        axpy(1.0, t12, t2);
        add_two_sided(acc, t2, sq, sq, true, nullptr);
    }

    // --- the singular advection-of-transition term, kept in product form so
    //     its fast z dependence is exact on the merged mesh
    {
        PchipInterpolant U = make_pchip(unit);
        const double zmaxU = unit.grid.last();
        std::vector<double> scale(M.z.size(), 0.0);
        for (std::size_t j = 0; j < M.z.size(); ++j) {
            const double Zq = M.z[j] / sq;
            const double u = (Zq > zmaxU) ? 0.0 : -profiles.u0_at_wall * U(Zq);
            scale[j] = -u / sq;
        }
        out.terms.push_back({"advection_transition", singular_term_norm(profiles, epsilon, t, p)});
        add_two_sided(acc, kh_dX, sq, 1.0, true, &scale);
    }

    for (std::size_t j = 0; j < M.z.size(); ++j)
        M.values[j * M.x.size() + M.ix0] = 0.5 * (M.left_col[j] + M.right_col[j]);

    out.total_lp = M.lp(p);
    return out;
}

double singular_term_norm(const ProfileSet& profiles, double epsilon, double t, double p) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("singular_term_norm: epsilon must be positive");
    if (!(p >= 1.0)) throw std::invalid_argument("singular_term_norm: p must be >= 1");
    const std::size_t k = snapshot_index(profiles, t);
    const double sq = std::sqrt(epsilon);
    const TwoSidedField2D& kh = profiles.transition_v.values[k];
    const Field1D& unit = profiles.wall_unit[k];

    TwoSidedField2D dX = fd_derivative(kh, Axis::X, 1);

    // factor the integral: in x substitute X = x/sqrt(eps) rowwise, then in z
    Field1D g(kh.grid.z_axis);
    for (int j = 0; j < kh.nz(); ++j) g[j] = quad_row_x(dX, j, p);
    PchipInterpolant G = make_pchip(g);

    const Grid1D& Zg = unit.grid;
    std::vector<double> f(std::size_t(Zg.n_points), 0.0);
    const double zmax = kh.grid.z_axis.last();
    for (int m = 0; m < Zg.n_points; ++m) {
        const double z = sq * Zg.node(m);
        const double up = -profiles.u0_at_wall * unit[m];
        f[std::size_t(m)] = std::pow(std::abs(up), p) * ((z > zmax) ? 0.0 : G(z));
    }
    double integral = 0.0;
    for (int m = 0; m + 1 < Zg.n_points; ++m)
        integral += 0.5 * (f[std::size_t(m)] + f[std::size_t(m + 1)]) * Zg.spacing;
    return std::pow(std::pow(epsilon, 1.0 - 0.5 * p) * integral, 1.0 / p);
}

ScalingCheck scaling_check(const Field1D& f, double epsilon, double p) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("scaling_check: epsilon must be positive");
    if (!(p >= 1.0)) throw std::invalid_argument("scaling_check: p must be >= 1");
    const double sq = std::sqrt(epsilon);
    Field1D image(Grid1D(f.grid.n_points, sq * f.grid.spacing, sq * f.grid.origin));
    image.values = f.values;
    ScalingCheck out;
    out.measured = lp_norm(image, p);
    out.predicted = std::pow(epsilon, 0.5 / p) * lp_norm(f, p);
    return out;
}

ResidualReport residual_report(const ProfileSet& profiles, const InitialData& data,
                               const ShearMap& shear, double epsilon, double p) {
    ResidualReport rep;
    rep.epsilon = epsilon;
    rep.p = p;
    rep.times = profiles.times;

    const double eu = lp_norm(compute_Eu(data.u0, epsilon), 2.0);
    std::vector<double> evp;
    for (double t : profiles.times) {
        EvBreakdown b = compute_Ev(profiles, data, shear, epsilon, t, p);
        rep.eu_l2.push_back(eu);
        rep.ev_lp.push_back(b.total_lp);
        rep.singular_lp.push_back(singular_term_norm(profiles, epsilon, t, p));
        evp.push_back(std::pow(b.total_lp, p));
        rep.breakdown.push_back(std::move(b.terms));
    }
    rep.ev_time_integral = trapezoid(rep.times, evp);
    return rep;
}

} // namespace ppflow
