#include "ppflow/fd.hpp"

#include <functional>
#include <stdexcept>

namespace ppflow {

namespace {

// derivative of one uniformly spaced segment accessed through `v`, writing
// through `out`; centered in the interior, one-sided 2nd-order at both ends
void segment_derivative(const std::function<double(int)>& v, const std::function<void(int, double)>& out, int n,
                        double h, int order) {
    if (order == 1) {
        if (n < 3) throw std::invalid_argument("fd_derivative: order 1 needs >= 3 nodes per segment");
        out(0, (-3.0 * v(0) + 4.0 * v(1) - v(2)) / (2.0 * h));
        for (int i = 1; i < n - 1; ++i) out(i, (v(i + 1) - v(i - 1)) / (2.0 * h));
        out(n - 1, (3.0 * v(n - 1) - 4.0 * v(n - 2) + v(n - 3)) / (2.0 * h));
    } else if (order == 2) {
        if (n < 4) throw std::invalid_argument("fd_derivative: order 2 needs >= 4 nodes per segment");
        double h2 = h * h;
        out(0, (2.0 * v(0) - 5.0 * v(1) + 4.0 * v(2) - v(3)) / h2);
        for (int i = 1; i < n - 1; ++i) out(i, (v(i + 1) - 2.0 * v(i) + v(i - 1)) / h2);
        out(n - 1, (2.0 * v(n - 1) - 5.0 * v(n - 2) + 4.0 * v(n - 3) - v(n - 4)) / h2);
    } else {
        throw std::invalid_argument("fd_derivative: order must be 1 or 2");
    }
}

} // namespace

Field1D fd_derivative(const Field1D& f, int order) {
    Field1D g(f.grid);
    segment_derivative([&](int i) { return f[i]; }, [&](int i, double d) { g[i] = d; }, f.size(), f.grid.spacing,
                       order);
    return g;
}

TwoSidedField2D fd_derivative(const TwoSidedField2D& f, Axis axis, int order) {
    TwoSidedField2D g(f.grid);
    int nx = f.nx(), nz = f.nz(), i0 = f.ix0();

    if (axis == Axis::Z) {
        double h = f.grid.z_axis.spacing;
        for (int ix = 0; ix < nx; ++ix)
            segment_derivative([&](int iz) { return f.at(ix, iz); }, [&](int iz, double d) { g.at(ix, iz) = d; }, nz,
                               h, order);
        auto along = [&](const std::vector<double>& src, std::vector<double>& dst) {
            segment_derivative([&](int iz) { return src[std::size_t(iz)]; },
                               [&](int iz, double d) { dst[std::size_t(iz)] = d; }, nz, h, order);
        };
        along(f.left_trace, g.left_trace);
        along(f.right_trace, g.right_trace);
        along(f.left_xderiv_trace, g.left_xderiv_trace);
        along(f.right_xderiv_trace, g.right_xderiv_trace);
        g.refresh_interface_column();
        g.declared_continuous = f.declared_continuous;
        return g;
    }

    // axis == Axis::X: differentiate per side, never across the interface
    double h = f.grid.x_axis.spacing;
    int nleft = i0 + 1, nright = nx - i0;
    for (int iz = 0; iz < nz; ++iz) {
        auto vleft = [&](int i) { return i == i0 ? f.left_trace[std::size_t(iz)] : f.at(i, iz); };
        auto vright = [&](int i) { return i == 0 ? f.right_trace[std::size_t(iz)] : f.at(i + i0, iz); };
        segment_derivative(
            vleft,
            [&](int i, double d) {
                if (i == i0)
                    g.left_trace[std::size_t(iz)] = d;
                else
                    g.at(i, iz) = d;
            },
            nleft, h, order);
        segment_derivative(
            vright,
            [&](int i, double d) {
                if (i == 0)
                    g.right_trace[std::size_t(iz)] = d;
                else
                    g.at(i + i0, iz) = d;
            },
            nright, h, order);
        // one-sided next derivative at the interface, per side
        auto gleft = [&](int i) { return i == i0 ? g.left_trace[std::size_t(iz)] : g.at(i, iz); };
        auto gright = [&](int i) { return i == 0 ? g.right_trace[std::size_t(iz)] : g.at(i + i0, iz); };
        g.left_xderiv_trace[std::size_t(iz)] =
            (3.0 * gleft(i0) - 4.0 * gleft(i0 - 1) + gleft(i0 - 2)) / (2.0 * h);
        g.right_xderiv_trace[std::size_t(iz)] = (-3.0 * gright(0) + 4.0 * gright(1) - gright(2)) / (2.0 * h);
    }
    g.refresh_interface_column();
    g.declared_continuous = false;
    return g;
}

void solve_tridiagonal(const double* a, const double* b, const double* c, double* d, double* scratch, int n) {
    // forward elimination with the super-diagonal rescaled into scratch
    scratch[0] = c[0] / b[0];
    d[0] = d[0] / b[0];
    for (int i = 1; i < n; ++i) {
        double m = 1.0 / (b[i] - a[i] * scratch[i - 1]);
        scratch[i] = c[i] * m;
        d[i] = (d[i] - a[i] * d[i - 1]) * m;
    }
    for (int i = n - 2; i >= 0; --i) d[i] -= scratch[i] * d[i + 1];
}

} // namespace ppflow
