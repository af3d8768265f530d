#include "specdet/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "specdet/errors.hpp"

namespace specdet {

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].  xgk holds the Kronrod
// abscissae (positive half, xgk[7] = 0), wgk the Kronrod weights and wg the
// weights of the embedded 7-point Gauss rule.
const double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

const double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

const double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
  double kronrod = 0.0;
  double err = 0.0;
};

PanelResult gk15_panel(const std::function<double(double)>& f, double a,
                       double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);

  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);

  double resk = kWgk[7] * fv[7];
  double resg = kWg[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    resk += kWgk[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) resg += kWg[i / 2] * (fv[i] + fv[14 - i]);
  }

  PanelResult out;
  out.kronrod = resk * h;
  const double diff = std::fabs((resk - resg) * h);
  // Quadpack-style sharpened estimate: the raw Gauss/Kronrod difference
  // usually overestimates once the rule has started to converge.
  out.err = diff;
  if (diff > 0.0) {
    double resabs = 0.0;
    for (int i = 0; i < 7; ++i) resabs += kWgk[i] * (std::fabs(fv[i]) + std::fabs(fv[14 - i]));
    resabs += kWgk[7] * std::fabs(fv[7]);
    resabs *= std::fabs(h);
    if (resabs > 0.0) {
      const double scaled = std::pow(200.0 * diff / resabs, 1.5);
      if (scaled < 1.0) out.err = resabs * scaled;
    }
  }
  return out;
}

void integrate_recursive(const std::function<double(double)>& f, double a,
                         double b, double tol_per_width, int depth,
                         int max_depth, double& sum, double& err_sum) {
  const PanelResult p = gk15_panel(f, a, b);
  const double width = b - a;
  if (p.err <= tol_per_width * width || depth >= max_depth) {
    if (depth >= max_depth && p.err > tol_per_width * width * 64.0) {
      throw accuracy_error("integrate_gk15: bisection depth exhausted");
    }
    sum += p.kronrod;
    err_sum += p.err;
    return;
  }
  const double c = 0.5 * (a + b);
  integrate_recursive(f, a, c, tol_per_width, depth + 1, max_depth, sum, err_sum);
  integrate_recursive(f, c, b, tol_per_width, depth + 1, max_depth, sum, err_sum);
}

}  // namespace

ValueWithError integrate_gk15(const std::function<double(double)>& f, double a,
                              double b, double abs_tol, double rel_tol,
                              int max_depth) {
  if (!(b > a)) {
    if (a == b) return {0.0, 0.0};
    throw degenerate_input_error("integrate_gk15: reversed interval");
  }
  const PanelResult whole = gk15_panel(f, a, b);
  const double scale = std::max(std::fabs(whole.kronrod), 1e-300);
  const double tol = std::max(abs_tol, rel_tol * scale);
  double sum = 0.0;
  double err_sum = 0.0;
  integrate_recursive(f, a, b, tol / (b - a), 0, max_depth, sum, err_sum);
  return {sum, err_sum};
}

double log1mexp(double x) {
  if (!(x > 0.0)) throw domain_error("log1mexp requires x > 0");
  static const double kLn2 = 0.6931471805599453094172321214581766;
  if (x > kLn2) return std::log1p(-std::exp(-x));
  return std::log(-std::expm1(-x));
}

double log1pexp_neg(double x) {
  if (x < 0.0) throw domain_error("log1pexp_neg requires x >= 0");
  return std::log1p(std::exp(-x));
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw degenerate_input_error("fit_line needs at least two points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (std::fabs(det) < 1e-300) {
    throw degenerate_input_error("fit_line: degenerate abscissae");
  }
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy * sxx - sx * sxy) / det;
  for (std::size_t i = 0; i < x.size(); ++i) {
    fit.max_residual = std::max(
        fit.max_residual, std::fabs(y[i] - fit.slope * x[i] - fit.intercept));
  }
  return fit;
}

double aitken_limit(const std::vector<double>& seq) {
  if (seq.empty()) throw degenerate_input_error("aitken_limit: empty sequence");
  if (seq.size() < 3) return seq.back();
  double best = seq.back();
  for (std::size_t i = 0; i + 2 < seq.size(); ++i) {
    const double d1 = seq[i + 1] - seq[i];
    const double d2 = seq[i + 2] - seq[i + 1];
    const double denom = d2 - d1;
    if (std::fabs(denom) > 1e-14 * (std::fabs(d1) + std::fabs(d2))) {
      best = seq[i + 2] - d2 * d2 / denom;
    } else {
      best = seq[i + 2];
    }
  }
  return best;
}

double neville_extrapolate(const std::vector<double>& x,
                           const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty()) {
    throw degenerate_input_error("neville_extrapolate: size mismatch");
  }
  std::vector<double> p = y;
  const std::size_t n = x.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      const double denom = x[i] - x[i + level];
      if (std::fabs(denom) < 1e-300) {
        throw degenerate_input_error("neville_extrapolate: repeated node");
      }
      // Value at 0 of the interpolant through (x_i .. x_{i+level}).
      p[i] = (0.0 - x[i + level]) * p[i] / denom +
             (x[i] - 0.0) * p[i + 1] / denom;
    }
  }
  return p[0];
}

}  // namespace specdet
