#pragma once

#include <vector>

namespace ppflow {

/// Least-squares fit of log(err) against log(eps): err ~ C * eps^slope.
struct RateFit {
    double slope = 0.0;
    double intercept = 0.0; // log C
    double r_squared = 0.0;
};

RateFit fit_loglog_rate(const std::vector<double>& eps, const std::vector<double>& err);

} // namespace ppflow
