#pragma once

#include "specdet/numerics.hpp"

namespace specdet {

// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Gamma function with explicit pole detection at non-positive integers.
double gamma_fn(double s);

// Riemann zeta via Euler-Maclaurin, valid for s != 1 on a wide real range
// (|s| up to a few hundred is far more than the library needs).
double riemann_zeta(double s);

// d/ds of the Riemann zeta at real s != 1, from the term-by-term derivative
// of the same Euler-Maclaurin representation.
double riemann_zeta_deriv(double s);

// Upper incomplete gamma Gamma(w, x) for x > 0 and real w.  Half-integer and
// non-positive-integer w use closed recurrences seeded by erfc and E1, the
// generic case a series (x <= 1.5) or a continued fraction (x > 1.5).
double upper_incomplete_gamma(double w, double x);

// Exponential integral E1(x), x > 0.
double exp_integral_e1(double x);

// Evaluation record of the two-argument Bessel-type integral
//   K_s(a, b) = (b/a)^s * Integral over u in R of exp(-2ab cosh u + s u) du,
// so K_s(a, b) = 2 (b/a)^s K_s(2ab) in terms of the usual modified Bessel
// function of the second kind.  Computed by trapezoidal sums with step
// halving, which converge superalgebraically for this integrand.
struct BesselEval {
  double s = 0.0;
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double abs_error_bound = 0.0;
};

BesselEval incomplete_bessel(double s, double a, double b);

}  // namespace specdet
