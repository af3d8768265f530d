#include "specdet/cylinder.hpp"

#include <cmath>

#include "specdet/errors.hpp"
#include "specdet/special_fn.hpp"
#include "specdet/zeta_det.hpp"

namespace specdet {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
const double kBeta = 2.0 - 2.0 * std::log(2.0);  // psi(-1/2) + gamma

struct XiPrime {
  double value = 0.0;
  double error = 0.0;
};

XiPrime xi_prime_with_error(const CrossSectionSpectrum& spec) {
  const LaurentAtMinusHalf l = SpectralZeta(spec).laurent_minus_half();
  return {-2.0 * (l.finite_part + kBeta * l.residue), 2.0 * l.error};
}

// log prod (1 - e^{-2 L nu})^mult over positive modes, with a certified
// bound on the dropped tail.
ValueWithError log_product_term(const CrossSectionSpectrum& spec, double L,
                                bool plus_sign) {
  double acc = 0.0;
  double err = 0.0;
  for_each_mode(spec, [&](double mu, int mult) {
    if (mu <= 0.0) return true;
    const double x = 2.0 * L * std::sqrt(mu);
    if (x > 46.0) {
      // Remaining modes contribute less than mult * e^{-x} each, summable
      // against the spectral growth; twice the first dropped term bounds it.
      err += 2.0 * mult * std::exp(-x);
      return false;
    }
    acc += mult * (plus_sign ? log1pexp_neg(x) : log1mexp(x));
    return true;
  });
  return {acc, err + 1e-15 * std::fabs(acc)};
}

ValueWithError assemble(double log_zero_part, int h, double L, double xi_p,
                        double xi_err, double w_logdet,
                        const CrossSectionSpectrum& spec, bool plus_sign) {
  const ValueWithError logdet_y =
      (w_logdet != 0.0) ? log_det_zeta(spec) : ValueWithError{0.0, 0.0};
  const ValueWithError prod = log_product_term(spec, L, plus_sign);
  const double log_val = h * log_zero_part - 0.5 * L * xi_p +
                         w_logdet * logdet_y.value + prod.value;
  const double log_err = 0.5 * L * xi_err + std::fabs(w_logdet) * logdet_y.error +
                         prod.error + 1e-14;
  const double val = std::exp(log_val);
  return {val, val * log_err};
}

}  // namespace

ValueWithError cylinder_det_closed(const CylinderModel& m) {
  if (!(m.r > 0.0)) throw degenerate_input_error("cylinder: r <= 0");
  const XiPrime xi = xi_prime_with_error(m.spectrum);
  return assemble(std::log(2.0 * m.r), m.spectrum.h(), m.r, xi.value, xi.error,
                  -0.5, m.spectrum, false);
}

ValueWithError cylinder_det_closed_alt(const CylinderModel& m) {
  if (!(m.r > 0.0)) throw degenerate_input_error("cylinder: r <= 0");
  const XiPrime xi = xi_prime_with_error(m.spectrum);
  // exp(-r xi') instead of exp(-r xi'/2): double the xi slope.
  return assemble(std::log(2.0 * m.r), m.spectrum.h(), m.r, 2.0 * xi.value,
                  2.0 * xi.error, -0.5, m.spectrum, false);
}

ValueWithError cylinder_det_direct(const CylinderModel& m) {
  if (!(m.r > 0.0)) throw degenerate_input_error("cylinder: r <= 0");
  const double r = m.r;
  const CrossSectionSpectrum& spec = m.spectrum;

  // Kernel tower h * sum_k ((pi k / r)^2)^{-s}: derivative at 0 through the
  // Euler-Maclaurin Riemann zeta.
  const int h = spec.h();
  const double kernel_part =
      h * (2.0 * std::log(kPi / r) * riemann_zeta(0.0) -
           2.0 * riemann_zeta_deriv(0.0));

  // Cross-section determinant, weight -1/2 in log space.
  const ValueWithError logdet_y = log_det_zeta(spec);

  // Interface slope: numeric xi'(0).
  const double xi_num = xi_prime_zero_numeric(spec);

  // Mode series T(0) = (r/sqrt(pi)) sum_l mult_l sum_k K_{-1/2}(sqrt(mu_l), r k),
  // each term evaluated by Bessel-integral quadrature.
  double t0 = 0.0;
  double t0_err = 0.0;
  for_each_mode(spec, [&](double mu, int mult) {
    if (mu <= 0.0) return true;
    const double nu = std::sqrt(mu);
    if (2.0 * nu * r > 48.0) {
      t0_err += 2.0 * mult * std::exp(-2.0 * nu * r);
      return false;
    }
    for (int k = 1; k <= 2000; ++k) {
      if (2.0 * nu * r * k > 48.0) {
        t0_err += 2.0 * mult * std::exp(-2.0 * nu * r * k);
        break;
      }
      const BesselEval be = incomplete_bessel(-0.5, nu, r * k);
      t0 += mult * be.value;
      t0_err += mult * be.abs_error_bound;
    }
    return true;
  });
  t0 *= r / std::sqrt(kPi);
  t0_err *= r / std::sqrt(kPi);

  const double log_val =
      kernel_part - 0.5 * logdet_y.value - 0.5 * r * xi_num - t0;
  // The Richardson difference scheme dominates the bound.
  const double log_err =
      0.5 * logdet_y.error + t0_err + 0.5 * r * 1e-9 + 1e-13;
  const double val = std::exp(log_val);
  return {val, val * log_err};
}

CylinderAdjudication adjudicate_cylinder_convention(const CylinderModel& m) {
  CylinderAdjudication out;
  out.closed = cylinder_det_closed(m).value;
  out.closed_alt = cylinder_det_closed_alt(m).value;
  out.direct = cylinder_det_direct(m).value;
  out.closed_vs_direct = std::fabs(out.closed / out.direct - 1.0);
  out.closed_alt_vs_direct = std::fabs(out.closed_alt / out.direct - 1.0);
  out.chosen = (out.closed_vs_direct <= out.closed_alt_vs_direct) ? "half" : "full";
  return out;
}

ValueWithError cylinder_det_mixed(const CrossSectionSpectrum& spec, double L,
                                  EndBC left, EndBC right) {
  if (!(L > 0.0)) throw degenerate_input_error("cylinder_det_mixed: L <= 0");
  const XiPrime xi = xi_prime_with_error(spec);
  const int h = spec.h();
  const bool mixed = (left != right);
  if (mixed) {
    return assemble(std::log(2.0), h, L, xi.value, xi.error, 0.0, spec, true);
  }
  const double w = (left == EndBC::dirichlet) ? -0.5 : 0.5;
  return assemble(std::log(2.0 * L), h, L, xi.value, xi.error, w, spec, false);
}

}  // namespace specdet
