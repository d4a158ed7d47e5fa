#pragma once

#include <cmath>
#include <cstddef>

namespace ppflow {

/// Uniform 1D grid: node(i) = origin + i*spacing, i = 0 .. n_points-1.
struct Grid1D {
    int n_points = 0;
    double spacing = 0.0;
    double origin = 0.0;

    Grid1D() = default;
    Grid1D(int n, double h, double x0); // validates n >= 2, h > 0

    int size() const { return n_points; }
    double node(int i) const { return origin + i * spacing; }
    double last() const { return node(n_points - 1); }
    double length() const { return (n_points - 1) * spacing; }

    /// Index of the cell [node(i), node(i+1)] containing x, clamped to valid range.
    int cell_of(double x) const;
    bool has_node_at(double x, double tol = 1e-12) const;
};

/// Half-line grid on [0, L].
Grid1D make_halfline_grid(double length, int n_points);

/// Symmetric grid on [-L, L] with a node exactly at 0. Total node count is odd.
Grid1D make_symmetric_grid(double half_length, int n_points_total);

/// Tensor grid; the first axis is the one that may carry the x = 0 interface.
/// Construction requires a node exactly at x = 0 on the first axis.
struct Grid2D {
    Grid1D x_axis;
    Grid1D z_axis;
    int interface_index = -1;

    Grid2D() = default;
    Grid2D(const Grid1D& xa, const Grid1D& za);

    int nx() const { return x_axis.n_points; }
    int nz() const { return z_axis.n_points; }
    std::size_t n_nodes() const { return std::size_t(nx()) * std::size_t(nz()); }
    std::size_t index(int ix, int iz) const { return std::size_t(iz) * std::size_t(nx()) + std::size_t(ix); }
};

} // namespace ppflow
