#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace specdet {

// A numeric result together with a certified absolute error bound.  Every
// quantity the library reports carries one of these unless it is explicitly
// tagged as heuristic.
struct ValueWithError {
  double value = 0.0;
  double error = 0.0;
};

// Adaptive Gauss-Kronrod 7-15 quadrature of f on [a, b].  The interval is
// bisected until the Kronrod error estimate of every panel passes
//   err <= max(abs_tol, rel_tol * |I|) * (panel width / (b - a)).
// Throws accuracy_error if max_depth bisection levels do not suffice.
ValueWithError integrate_gk15(const std::function<double(double)>& f, double a,
                              double b, double abs_tol = 1e-14,
                              double rel_tol = 1e-12, int max_depth = 48);

// log(1 - exp(-x)) for x > 0, stable for both tiny and large x.
double log1mexp(double x);

// log(1 + exp(-x)) for x >= 0, stable for large x.
double log1pexp_neg(double x);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

// Least-squares straight line through (x_i, y_i).
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Aitken delta-squared acceleration; returns the last accelerated value.
// Falls back to the last raw entry when the sequence is too short or the
// acceleration is numerically degenerate.
double aitken_limit(const std::vector<double>& seq);

// Neville polynomial extrapolation of (x_i, y_i) to x = 0.  Used for
// sequences converging with an asymptotic expansion in x = 1/r.
double neville_extrapolate(const std::vector<double>& x,
                           const std::vector<double>& y);

}  // namespace specdet
