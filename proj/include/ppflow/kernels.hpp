#pragma once

namespace ppflow {

/// Whole-line heat kernel (4*pi*t)^(-1/2) * exp(-X^2/(4t)), t > 0.
double heat_kernel_free(double t, double X);

/// Dirichlet half-line kernel via the image method:
/// G(t, Z - Zp) - G(t, Z + Zp) for Z, Zp >= 0, t > 0.
double heat_kernel_halfline(double t, double Z, double Zp);

/// Scaled complementary error function exp(x^2)*erfc(x) for x >= 0,
/// stable for all magnitudes (no overflow in the exp factor).
double erfcx_positive(double x);

/// exp(c) * erfc(x) evaluated without overflow or 0*inf indeterminacy.
double exp_erfc(double c, double x);

/// H(t,Z) = integral over Zp in (0,inf) of heat_kernel_halfline(t,Z,Zp)*exp(-Zp).
/// Closed form via erfc; H(0,Z) is defined as the limit exp(-Z).
double halfline_exp_evolution(double t, double Z);

/// Solution at (t,Z) of the half-line heat equation with boundary value 1 at
/// Z=0, initial data exp(-Z), and decay at infinity. Equals
/// erfc(Z/(2 sqrt(t))) + halfline_exp_evolution(t,Z); value 1 at Z=0, in [0,1].
double unit_layer_value(double t, double Z);

/// dZ of unit_layer_value, closed form. Equals -exp(-Z) at t=0.
double unit_layer_slope(double t, double Z);

/// Duhamel integral int_0^t int_0^inf K(t-s,Z;Zp) exp(-sgn*Zp) dZp ds on the
/// half-line {sgn*Z >= 0} with Dirichlet kernel K, by the substitution
/// s = t - sigma^2 and composite Simpson in sigma (`panels` even, >= 2).
/// decay_sign selects the half-line and the source orientation: +1 gives the
/// source exp(-Zp) on Zp > 0; -1 the mirrored problem on Zp < 0.
double duhamel_exponential(double t, double Z, int decay_sign = +1, int panels = 192);

} // namespace ppflow
