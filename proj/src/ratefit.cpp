#include "ppflow/ratefit.hpp"

#include <cmath>
#include <stdexcept>

namespace ppflow {

RateFit fit_loglog_rate(const std::vector<double>& eps, const std::vector<double>& err) {
    std::size_t n = eps.size();
    if (err.size() != n) throw std::invalid_argument("fit_loglog_rate: length mismatch");
    if (n < 2) throw std::invalid_argument("fit_loglog_rate: need at least two samples");

    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(eps[i] > 0.0) || !(err[i] > 0.0))
            throw std::invalid_argument("fit_loglog_rate: samples must be positive");
        lx[i] = std::log(eps[i]);
        ly[i] = std::log(err[i]);
    }

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= double(n);
    my /= double(n);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = lx[i] - mx, dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_loglog_rate: eps values must differ");

    RateFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = syy - sxy * sxy / sxx;
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    if (fit.r_squared < 0.0) fit.r_squared = 0.0;
    return fit;
}

} // namespace ppflow
