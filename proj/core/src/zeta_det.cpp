#include "specdet/zeta_det.hpp"

#include <cmath>
#include <string>

#include "specdet/errors.hpp"
#include "specdet/special_fn.hpp"

namespace specdet {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
// Gamma(-1/2) and psi(-1/2).
const double kGammaMinusHalf = -2.0 * std::sqrt(kPi);
const double kPsiMinusHalf = 2.0 - kEulerGamma - 2.0 * std::log(2.0);

bool is_finite_spectrum(const CrossSectionSpectrum& s) {
  return s.generator == Generator::point ||
         (s.generator == Generator::explicit_list && s.complete);
}

}  // namespace

SpectralZeta::SpectralZeta(const CrossSectionSpectrum& spec) : spec_(spec) {
  if (is_finite_spectrum(spec)) {
    finite_ = true;
    return;
  }
  if (spec.generator == Generator::explicit_list) {
    throw unsupported_model_error(
        "SpectralZeta: incomplete explicit spectrum has no continuation");
  }
  SmallTimeModel model = small_time_model(spec);
  powers_ = model.powers;
  const double b0 = static_cast<double>(spec.h());
  if (b0 != 0.0) powers_.push_back({-b0, 0.0});
  remainder_ = model.remainder;
  t0_ = model.t0_max;
}

ValueWithError SpectralZeta::remainder_integral(double s) const {
  auto integrand = [this, s](double t) {
    if (t <= 0.0) return 0.0;
    const double rho = remainder_(t);
    if (rho == 0.0) return 0.0;
    return std::pow(t, s - 1.0) * rho;
  };
  return integrate_gk15(integrand, 0.0, t0_, 1e-15, 5e-13);
}

ValueWithError SpectralZeta::large_time_tail(double s) const {
  double acc = 0.0;
  double last = 0.0;
  for_each_mode(spec_, [&](double mu, int mult) {
    if (mu <= 0.0) return true;
    const double x = mu * t0_;
    const double term = mult * std::pow(mu, -s) * upper_incomplete_gamma(s, x);
    acc += term;
    last = std::fabs(term);
    return !(last < 1e-19 * (std::fabs(acc) + 1e-300) && x > 5.0);
  });
  return {acc, 2.0 * last + 1e-18 * std::fabs(acc)};
}

ValueWithError SpectralZeta::mellin_B_rest(double s,
                                           double excluded_power) const {
  // Power terms of B(s) except the one with q == excluded_power, plus the
  // remainder integral and the large-time tail.
  double val = 0.0;
  for (const auto& pw : powers_) {
    if (std::fabs(pw.power - excluded_power) < 1e-12) continue;
    val += pw.coef * std::pow(t0_, s + pw.power) / (s + pw.power);
  }
  const ValueWithError j = remainder_integral(s);
  const ValueWithError tail = large_time_tail(s);
  return {val + j.value + tail.value, j.error + tail.error};
}

double SpectralZeta::zeta0() const {
  if (finite_) {
    double n = 0.0;
    for (const auto& e : spec_.entries) {
      if (e.mu > 0.0) n += e.mult;
    }
    return n;
  }
  for (const auto& pw : powers_) {
    if (std::fabs(pw.power) < 1e-12) return pw.coef;
  }
  return 0.0;
}

ValueWithError SpectralZeta::deriv0() const {
  if (finite_) {
    double sum = 0.0;
    for (const auto& e : spec_.entries) {
      if (e.mu > 0.0) sum -= e.mult * std::log(e.mu);
    }
    return {sum, 1e-15 * std::fabs(sum) + 1e-300};
  }
  // zeta(s) = (c0/s + Btilde(s)) / Gamma(s) gives
  // zeta'(0) = gamma c0 + Btilde(0).
  const double c0 = zeta0();
  double btilde = c0 * std::log(t0_);
  for (const auto& pw : powers_) {
    if (std::fabs(pw.power) < 1e-12) continue;
    btilde += pw.coef * std::pow(t0_, pw.power) / pw.power;
  }
  const ValueWithError j = remainder_integral(0.0);
  const ValueWithError tail = large_time_tail(0.0);
  return {kEulerGamma * c0 + btilde + j.value + tail.value,
          j.error + tail.error + 1e-14 * (std::fabs(btilde) + 1.0)};
}

LaurentAtMinusHalf SpectralZeta::laurent_minus_half() const {
  LaurentAtMinusHalf out;
  if (finite_) {
    double sum = 0.0;
    for (const auto& e : spec_.entries) {
      if (e.mu > 0.0) sum += e.mult * std::sqrt(e.mu);
    }
    out.finite_part = sum;
    out.error = 1e-15 * std::fabs(sum);
    return out;
  }
  double c_half = 0.0;
  for (const auto& pw : powers_) {
    if (std::fabs(pw.power - 0.5) < 1e-12) c_half = pw.coef;
  }
  const ValueWithError rest = mellin_B_rest(-0.5, 0.5);
  out.residue = c_half / kGammaMinusHalf;
  out.finite_part =
      (c_half * (std::log(t0_) - kPsiMinusHalf) + rest.value) / kGammaMinusHalf;
  out.error = rest.error / std::fabs(kGammaMinusHalf) + 1e-15;
  return out;
}

ValueWithError SpectralZeta::at(double s) const {
  if (finite_) {
    double sum = 0.0;
    for (const auto& e : spec_.entries) {
      if (e.mu > 0.0) sum += e.mult * std::pow(e.mu, -s);
    }
    return {sum, 1e-15 * std::fabs(sum) + 1e-300};
  }

  if (std::fabs(s) < 1e-12) {
    return {zeta0(), 1e-15 * (std::fabs(zeta0()) + 1.0)};
  }

  // Non-integer pole powers of B(s) are genuine poles of zeta.
  for (const auto& pw : powers_) {
    const double q = pw.power;
    const bool integer_q = std::fabs(q - std::nearbyint(q)) < 1e-12;
    if (!integer_q && std::fabs(s + q) < 1e-9 && std::fabs(pw.coef) > 1e-300) {
      throw domain_error("zeta_at: pole at s = " + std::to_string(-q));
    }
  }

  // At negative integers the simple zero of 1/Gamma cancels the power-term
  // pole:  zeta(-k) = (-1)^k k! c_k.
  const double k_round = std::nearbyint(-s);
  if (s < 0.5 && std::fabs(s + k_round) < 1e-9 && k_round >= 0.0) {
    const int k = static_cast<int>(k_round);
    double ck = 0.0;
    for (const auto& pw : powers_) {
      if (std::fabs(pw.power - k_round) < 1e-12) ck = pw.coef;
    }
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    const double val = (k % 2 == 0 ? 1.0 : -1.0) * fact * ck;
    return {val, 1e-14 * (std::fabs(val) + 1.0)};
  }

  double bval = 0.0;
  for (const auto& pw : powers_) {
    bval += pw.coef * std::pow(t0_, s + pw.power) / (s + pw.power);
  }
  const ValueWithError j = remainder_integral(s);
  const ValueWithError tail = large_time_tail(s);
  const double g = gamma_fn(s);
  const double val = (bval + j.value + tail.value) / g;
  return {val, (j.error + tail.error) / std::fabs(g) +
                   1e-14 * (std::fabs(val) + 1.0)};
}

ValueWithError zeta_at(const CrossSectionSpectrum& spec, double s) {
  return SpectralZeta(spec).at(s);
}

ValueWithError log_det_zeta(const CrossSectionSpectrum& spec) {
  const ValueWithError d = SpectralZeta(spec).deriv0();
  return {-d.value, d.error};
}

double det_zeta(const CrossSectionSpectrum& spec) {
  const ValueWithError ld = log_det_zeta(spec);
  return std::exp(ld.value);
}

double xi_zero(const CrossSectionSpectrum& spec) {
  return -2.0 * SpectralZeta(spec).laurent_minus_half().residue;
}

double xi_prime_zero(const CrossSectionSpectrum& spec) {
  const LaurentAtMinusHalf l = SpectralZeta(spec).laurent_minus_half();
  const double beta = kPsiMinusHalf + kEulerGamma;  // 2 - 2 log 2
  return -2.0 * (l.finite_part + beta * l.residue);
}

double xi_prime_zero_numeric(const CrossSectionSpectrum& spec) {
  SpectralZeta zeta(spec);
  auto xi = [&](double s) {
    const double g = gamma_fn(s - 0.5) / (std::sqrt(kPi) * gamma_fn(s));
    return g * zeta.at(s - 0.5).value;
  };
  auto central4 = [&](double d) {
    return (8.0 * (xi(d) - xi(-d)) - (xi(2.0 * d) - xi(-2.0 * d))) /
           (12.0 * d);
  };
  const double d1 = central4(0.02);
  const double d2 = central4(0.01);
  return (16.0 * d2 - d1) / 15.0;
}

}  // namespace specdet
