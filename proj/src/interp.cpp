#include "ppflow/interp.hpp"

#include <cmath>
#include <stdexcept>

namespace ppflow {

namespace {

// Fritsch-Carlson slopes on a uniform grid. Interior: harmonic mean of the
// adjacent secants when they share a sign, else zero. Ends: shape-limited
// three-point estimate. Every formula is odd in the data.
std::vector<double> fc_slopes(const std::vector<double>& v, double h) {
    int n = int(v.size());
    std::vector<double> m(v.size(), 0.0);
    std::vector<double> d(std::size_t(n - 1));
    for (int i = 0; i < n - 1; ++i) d[std::size_t(i)] = (v[std::size_t(i + 1)] - v[std::size_t(i)]) / h;

    if (n == 2) {
        m[0] = m[1] = d[0];
        return m;
    }
    for (int i = 1; i < n - 1; ++i) {
        double dl = d[std::size_t(i - 1)], dr = d[std::size_t(i)];
        if (dl * dr > 0.0) m[std::size_t(i)] = 2.0 * dl * dr / (dl + dr);
    }
    auto end_slope = [](double d0, double d1) {
        double s = (3.0 * d0 - d1) / 2.0;
        if (s * d0 <= 0.0) return 0.0;
        if (d0 * d1 < 0.0 && std::fabs(s) > 3.0 * std::fabs(d0)) return 3.0 * d0;
        return s;
    };
    m[0] = end_slope(d[0], d[1]);
    m[std::size_t(n - 1)] = end_slope(d[std::size_t(n - 2)], d[std::size_t(n - 3)]);
    return m;
}

} // namespace

double PchipInterpolant::operator()(double x) const {
    if (x <= grid.origin) return values.front();
    double last = grid.last();
    if (x >= last) return values.back();
    int i = grid.cell_of(x);
    double h = grid.spacing;
    double s = (x - grid.node(i)) / h;
    double s2 = s * s, s3 = s2 * s;
    double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    double h10 = s3 - 2.0 * s2 + s;
    double h01 = -2.0 * s3 + 3.0 * s2;
    double h11 = s3 - s2;
    return h00 * values[std::size_t(i)] + h * h10 * slopes[std::size_t(i)] + h01 * values[std::size_t(i + 1)] +
           h * h11 * slopes[std::size_t(i + 1)];
}

PchipInterpolant make_pchip(const Grid1D& grid, std::vector<double> values) {
    if (int(values.size()) != grid.n_points) throw std::invalid_argument("make_pchip: sample count mismatch");
    if (grid.n_points < 2) throw std::invalid_argument("make_pchip: need at least two samples");
    PchipInterpolant p;
    p.grid = grid;
    p.slopes = fc_slopes(values, grid.spacing);
    p.values = std::move(values);
    return p;
}

PchipInterpolant make_pchip(const Field1D& samples) { return make_pchip(samples.grid, samples.values); }

} // namespace ppflow
