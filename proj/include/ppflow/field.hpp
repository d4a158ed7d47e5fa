#pragma once

#include "ppflow/grid.hpp"

#include <vector>

namespace ppflow {

/// Scalar samples on a Grid1D.
struct Field1D {
    Grid1D grid;
    std::vector<double> values;

    Field1D() = default;
    explicit Field1D(const Grid1D& g) : grid(g), values(std::size_t(g.n_points), 0.0) {}
    Field1D(const Grid1D& g, std::vector<double> v);

    int size() const { return grid.n_points; }
    double& operator[](int i) { return values[std::size_t(i)]; }
    double operator[](int i) const { return values[std::size_t(i)]; }
    bool all_finite() const;
};

/// 2D field that may jump across x = 0 (first axis). `values` holds one entry per
/// node; at the interface column it stores the average of the one-sided limits.
/// The true limits of the field and of its x-derivative sit in the trace arrays,
/// indexed by the z-node. Fields known to be continuous carry equal traces.
struct TwoSidedField2D {
    Grid2D grid;
    std::vector<double> values;
    std::vector<double> left_trace;
    std::vector<double> right_trace;
    std::vector<double> left_xderiv_trace;
    std::vector<double> right_xderiv_trace;
    bool declared_continuous = false;

    TwoSidedField2D() = default;
    explicit TwoSidedField2D(const Grid2D& g);

    int nx() const { return grid.nx(); }
    int nz() const { return grid.nz(); }
    int ix0() const { return grid.interface_index; }
    double& at(int ix, int iz) { return values[grid.index(ix, iz)]; }
    double at(int ix, int iz) const { return values[grid.index(ix, iz)]; }

    /// Value seen from one side; only the interface column is two-valued.
    /// side < 0 means the limit from x < 0, side > 0 from x > 0.
    double value_from(int ix, int iz, int side) const;

    double jump(int iz) const { return right_trace[std::size_t(iz)] - left_trace[std::size_t(iz)]; }
    double xderiv_jump(int iz) const {
        return right_xderiv_trace[std::size_t(iz)] - left_xderiv_trace[std::size_t(iz)];
    }

    /// Overwrite the interface column with the trace average (canonical storage).
    void refresh_interface_column();
    /// Copy the interface column into both traces and estimate the x-derivative
    /// traces by one-sided stencils; marks the field continuous.
    void adopt_continuous_traces();
    bool all_finite() const;
    /// Max of |jump| and |xderiv jump| over z, for continuity checks.
    double max_interface_defect() const;
};

} // namespace ppflow
