#include "ppflow/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ppflow {

Grid1D::Grid1D(int n, double h, double x0) : n_points(n), spacing(h), origin(x0) {
    if (n < 2) throw std::invalid_argument("Grid1D: need at least 2 nodes, got " + std::to_string(n));
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("Grid1D: spacing must be positive and finite");
    if (!std::isfinite(x0)) throw std::invalid_argument("Grid1D: origin must be finite");
}

int Grid1D::cell_of(double x) const {
    int i = int(std::floor((x - origin) / spacing));
    if (i < 0) i = 0;
    if (i > n_points - 2) i = n_points - 2;
    return i;
}

bool Grid1D::has_node_at(double x, double tol) const {
    double u = (x - origin) / spacing;
    double r = u - std::round(u);
    return std::round(u) >= 0 && std::round(u) < n_points && std::abs(r) * spacing <= tol;
}

Grid1D make_halfline_grid(double length, int n_points) {
    if (!(length > 0.0)) throw std::invalid_argument("make_halfline_grid: length must be positive");
    if (n_points < 2) throw std::invalid_argument("make_halfline_grid: need at least 2 nodes");
    return Grid1D(n_points, length / (n_points - 1), 0.0);
}

Grid1D make_symmetric_grid(double half_length, int n_points_total) {
    if (!(half_length > 0.0)) throw std::invalid_argument("make_symmetric_grid: half_length must be positive");
    if (n_points_total < 3 || n_points_total % 2 == 0)
        throw std::invalid_argument("make_symmetric_grid: node count must be odd and >= 3 so that 0 is a node");
    return Grid1D(n_points_total, 2.0 * half_length / (n_points_total - 1), -half_length);
}

Grid2D::Grid2D(const Grid1D& xa, const Grid1D& za) : x_axis(xa), z_axis(za) {
    // locate the x = 0 node; fields with an interface rely on it being exact
    double u = -xa.origin / xa.spacing;
    int i = int(std::llround(u));
    if (i < 0 || i >= xa.n_points || xa.node(i) != 0.0)
        throw std::invalid_argument("Grid2D: first axis must contain x = 0 as an exact node");
    interface_index = i;
}

} // namespace ppflow
