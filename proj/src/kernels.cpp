#include "ppflow/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ppflow {

namespace {
constexpr double kInvSqrtPi = 0.5641895835477562869; // 1/sqrt(pi)

void require_finite_time(double t, const char* who) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::domain_error(std::string(who) + ": t must be >= 0 and finite");
}
} // namespace

double heat_kernel_free(double t, double X) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::domain_error("heat_kernel_free: t must be positive");
    double s = 4.0 * t;
    return std::exp(-X * X / s) / std::sqrt(M_PI * s);
}

double heat_kernel_halfline(double t, double Z, double Zp) {
    if (Z < 0.0 || Zp < 0.0) throw std::domain_error("heat_kernel_halfline: Z, Zp must be >= 0");
    return heat_kernel_free(t, Z - Zp) - heat_kernel_free(t, Z + Zp);
}

double erfcx_positive(double x) {
    if (!(x >= 0.0)) throw std::domain_error("erfcx_positive: x must be >= 0");
    if (x < 26.0) return std::exp(x * x) * std::erfc(x); // erfc well above underflow here
    // asymptotic series 1/(x sqrt(pi)) * sum (-1)^k (2k-1)!!/(2x^2)^k
    double ix2 = 1.0 / (2.0 * x * x);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 5; ++k) {
        term *= -(2.0 * k - 1.0) * ix2;
        sum += term;
    }
    return sum * kInvSqrtPi / x;
}

double exp_erfc(double c, double x) {
    if (x <= 0.0) return std::exp(c) * std::erfc(x); // erfc in [1,2], exp(c) small in all uses
    return std::exp(c - x * x) * erfcx_positive(x);
}

double halfline_exp_evolution(double t, double Z) {
    require_finite_time(t, "halfline_exp_evolution");
    if (Z < 0.0) throw std::domain_error("halfline_exp_evolution: Z must be >= 0");
    if (t == 0.0) return std::exp(-Z);
    double rt = std::sqrt(t);
    double a = (2.0 * t - Z) / (2.0 * rt);
    double b = (2.0 * t + Z) / (2.0 * rt);
    return 0.5 * (exp_erfc(t - Z, a) - exp_erfc(t + Z, b));
}

double unit_layer_value(double t, double Z) {
    require_finite_time(t, "unit_layer_value");
    if (Z < 0.0) throw std::domain_error("unit_layer_value: Z must be >= 0");
    if (t == 0.0) return std::exp(-Z);
    return std::erfc(Z / (2.0 * std::sqrt(t))) + halfline_exp_evolution(t, Z);
}

double unit_layer_slope(double t, double Z) {
    require_finite_time(t, "unit_layer_slope");
    if (Z < 0.0) throw std::domain_error("unit_layer_slope: Z must be >= 0");
    if (t == 0.0) return -std::exp(-Z);
    double rt = std::sqrt(t);
    double a = (2.0 * t - Z) / (2.0 * rt);
    double b = (2.0 * t + Z) / (2.0 * rt);
    return -0.5 * (exp_erfc(t - Z, a) + exp_erfc(t + Z, b));
}

double duhamel_exponential(double t, double Z, int decay_sign, int panels) {
    require_finite_time(t, "duhamel_exponential");
    if (decay_sign != 1 && decay_sign != -1) throw std::invalid_argument("duhamel_exponential: decay_sign must be +-1");
    double Zr = decay_sign > 0 ? Z : -Z;
    if (Zr < 0.0) throw std::domain_error("duhamel_exponential: Z must lie on the selected half-line");
    if (panels < 2 || panels % 2 != 0) throw std::invalid_argument("duhamel_exponential: panels must be even and >= 2");
    if (t == 0.0) return 0.0;

    // s = t - sigma^2 turns the (t-s)^(-1/2) concentration into a smooth
    // integrand 2*sigma*H(sigma^2, Z) on [0, sqrt(t)]; Simpson converges fast.
    double smax = std::sqrt(t);
    double h = smax / panels;
    auto f = [Zr](double sigma) {
        if (sigma == 0.0) return 0.0;
        return 2.0 * sigma * halfline_exp_evolution(sigma * sigma, Zr);
    };
    double sum = f(0.0) + f(smax);
    for (int i = 1; i < panels; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f(i * h);
    return sum * h / 3.0;
}

} // namespace ppflow
