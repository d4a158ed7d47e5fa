#include "ppflow/norms.hpp"

#include "ppflow/fd.hpp"

#include <cmath>
#include <stdexcept>

namespace ppflow {

namespace {

void check_p(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("lp_norm: p must be finite and >= 1");
}

// integral of |f|^p over one row, split at the interface column
double row_power_integral(const TwoSidedField2D& f, int iz, double p) {
    int i0 = f.ix0(), nx = f.nx();
    double h = f.grid.x_axis.spacing;
    auto pw = [p](double v) { return std::pow(std::fabs(v), p); };

    double left = 0.5 * (pw(f.at(0, iz)) + pw(f.left_trace[std::size_t(iz)]));
    for (int ix = 1; ix < i0; ++ix) left += pw(f.at(ix, iz));
    double right = 0.5 * (pw(f.right_trace[std::size_t(iz)]) + pw(f.at(nx - 1, iz)));
    for (int ix = i0 + 1; ix < nx - 1; ++ix) right += pw(f.at(ix, iz));
    return h * (left + right);
}

double field2d_power_integral(const TwoSidedField2D& f, double p) {
    int nz = f.nz();
    double hz = f.grid.z_axis.spacing;
    double total = 0.5 * (row_power_integral(f, 0, p) + row_power_integral(f, nz - 1, p));
    for (int iz = 1; iz < nz - 1; ++iz) total += row_power_integral(f, iz, p);
    return hz * total;
}

} // namespace

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("trapezoid: length mismatch");
    if (x.size() < 2) throw std::invalid_argument("trapezoid: need at least two points");
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        double dx = x[i + 1] - x[i];
        if (!(dx > 0.0)) throw std::invalid_argument("trapezoid: abscissa must increase strictly");
        total += 0.5 * dx * (y[i] + y[i + 1]);
    }
    return total;
}

double lp_norm(const Field1D& f, double p) {
    check_p(p);
    double h = f.grid.spacing;
    int n = f.size();
    double total = 0.5 * (std::pow(std::fabs(f[0]), p) + std::pow(std::fabs(f[n - 1]), p));
    for (int i = 1; i < n - 1; ++i) total += std::pow(std::fabs(f[i]), p);
    return std::pow(h * total, 1.0 / p);
}

double lp_norm(const TwoSidedField2D& f, double p) {
    check_p(p);
    return std::pow(field2d_power_integral(f, p), 1.0 / p);
}

double w1p_norm(const Field1D& f, double p) {
    check_p(p);
    double a = lp_norm(f, p), b = lp_norm(fd_derivative(f, 1), p);
    return std::pow(std::pow(a, p) + std::pow(b, p), 1.0 / p);
}

double w1p_norm(const TwoSidedField2D& f, double p) {
    check_p(p);
    double a = field2d_power_integral(f, p);
    double b = field2d_power_integral(fd_derivative(f, Axis::X, 1), p);
    double c = field2d_power_integral(fd_derivative(f, Axis::Z, 1), p);
    return std::pow(a + b + c, 1.0 / p);
}

} // namespace ppflow
