#include "specdet/relative_det.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <nlohmann/json.hpp>

#include "specdet/errors.hpp"
#include "specdet/zeta_det.hpp"

namespace specdet {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
const double kBeta = 2.0 - 2.0 * std::log(2.0);

ValueWithError half_log_det(const CrossSectionSpectrum& spec) {
  const ValueWithError ld = log_det_zeta(spec);
  return {0.5 * ld.value, 0.5 * ld.error};
}

ValueWithError xi_slope_log(const CrossSectionSpectrum& spec, double a) {
  const LaurentAtMinusHalf l = SpectralZeta(spec).laurent_minus_half();
  const double xi_p = -2.0 * (l.finite_part + kBeta * l.residue);
  return {-0.5 * a * xi_p, a * l.error};
}

}  // namespace

std::string relative_pair_kind_name(RelativePairKind k) {
  switch (k) {
    case RelativePairKind::identical: return "identical";
    case RelativePairKind::neumann_vs_dirichlet: return "neumann_vs_dirichlet";
    case RelativePairKind::translate: return "translate";
    case RelativePairKind::neumann_cap: return "neumann_cap";
  }
  return "?";
}

RelativePair make_relative_pair(RelativePairKind kind,
                                const CrossSectionSpectrum& spectrum,
                                double a) {
  const bool needs_a = (kind == RelativePairKind::translate ||
                        kind == RelativePairKind::neumann_cap);
  if (needs_a && !(a > 0.0)) {
    throw degenerate_input_error("make_relative_pair: length a must be > 0");
  }
  RelativePair p;
  p.kind = kind;
  p.spectrum = spectrum;
  p.a = needs_a ? a : 0.0;
  return p;
}

double RelativePair::b0() const {
  switch (kind) {
    case RelativePairKind::identical:
    case RelativePairKind::translate:
      return 0.0;
    case RelativePairKind::neumann_vs_dirichlet:
    case RelativePairKind::neumann_cap:
      return 0.5 * spectrum.h();
  }
  return 0.0;
}

double RelativePair::rho() const {
  return (kind == RelativePairKind::identical) ? 0.0 : 0.5;
}

double RelativePair::rel_heat_trace(double t) const {
  if (kind == RelativePairKind::identical) return 0.0;
  const double theta = heat_trace(spectrum, t);
  double out = 0.0;
  if (kind == RelativePairKind::translate ||
      kind == RelativePairKind::neumann_cap) {
    out += a / std::sqrt(4.0 * kPi * t) * theta;
  }
  if (kind == RelativePairKind::neumann_vs_dirichlet ||
      kind == RelativePairKind::neumann_cap) {
    out += 0.5 * theta;
  }
  return out;
}

std::vector<PowerTerm> RelativePair::small_t_coeffs() const {
  std::vector<PowerTerm> out;
  if (kind == RelativePairKind::identical) return out;
  const SmallTimeModel model = small_time_model(spectrum);
  if (kind == RelativePairKind::translate ||
      kind == RelativePairKind::neumann_cap) {
    for (const auto& pw : model.powers) {
      out.push_back({a * pw.coef / (2.0 * std::sqrt(kPi)), pw.power - 0.5});
    }
  }
  if (kind == RelativePairKind::neumann_vs_dirichlet ||
      kind == RelativePairKind::neumann_cap) {
    for (const auto& pw : model.powers) {
      out.push_back({0.5 * pw.coef, pw.power});
    }
  }
  return out;
}

RelativePair RelativePair::shifted(double lambda) const {
  RelativePair p = *this;
  p.spectrum = shift_spectrum(spectrum, lambda);
  return p;
}

ValueWithError relative_det(const RelativePair& p) {
  double log_val = 0.0;
  double log_err = 0.0;
  switch (p.kind) {
    case RelativePairKind::identical:
      return {1.0, 0.0};
    case RelativePairKind::neumann_vs_dirichlet: {
      const ValueWithError t = half_log_det(p.spectrum);
      log_val = t.value;
      log_err = t.error;
      break;
    }
    case RelativePairKind::translate: {
      const ValueWithError t = xi_slope_log(p.spectrum, p.a);
      log_val = t.value;
      log_err = t.error;
      break;
    }
    case RelativePairKind::neumann_cap: {
      const ValueWithError t1 = xi_slope_log(p.spectrum, p.a);
      const ValueWithError t2 = half_log_det(p.spectrum);
      log_val = t1.value + t2.value;
      log_err = t1.error + t2.error;
      break;
    }
  }
  const double val = std::exp(log_val);
  return {val, val * (log_err + 1e-14)};
}

double b0_from_scattering(int k, double trace_S0, int h_Y) {
  if (k < 0) throw degenerate_input_error("b0_from_scattering: k < 0");
  if (h_Y < 0) throw degenerate_input_error("b0_from_scattering: h_Y < 0");
  if (std::fabs(trace_S0) > h_Y + 1e-9) {
    throw degenerate_input_error(
        "b0_from_scattering: |Tr S(0)| exceeds dim ker Delta_Y");
  }
  const double two_l = trace_S0 + h_Y;
  if (std::fabs(two_l - 2.0 * std::nearbyint(two_l / 2.0)) > 1e-9) {
    throw degenerate_input_error(
        "b0_from_scattering: Tr S(0) + h_Y must be an even integer");
  }
  return k + two_l / 4.0;
}

SmallLambdaProbe small_lambda_probe(const RelativePair& p,
                                    const std::vector<double>& grid) {
  if (grid.size() < 2) {
    throw degenerate_input_error("small_lambda_probe: need at least 2 shifts");
  }
  std::vector<double> lambdas = grid;
  std::sort(lambdas.begin(), lambdas.end(), std::greater<double>());
  for (double l : lambdas) {
    if (!(l > 0.0)) {
      throw degenerate_input_error("small_lambda_probe: shifts must be > 0");
    }
  }

  std::vector<double> logl, logd, errs;
  for (double l : lambdas) {
    const ValueWithError det = relative_det(p.shifted(l));
    if (!(det.value > 0.0)) {
      throw numeric_error("small_lambda_probe: nonpositive determinant");
    }
    logl.push_back(std::log(l));
    logd.push_back(std::log(det.value));
    errs.push_back(det.error / det.value);  // error of the log
  }

  SmallLambdaProbe out;
  out.lambdas = lambdas;
  out.log_dets = logd;

  // Drop the smallest shift when its certified error is not clearly below
  // the increment it adds to the fit.
  const std::size_t n = logl.size();
  const double incr = std::fabs(logd[n - 1] - logd[n - 2]);
  if (n > 2 && errs[n - 1] > 0.1 * incr) {
    logl.pop_back();
    logd.pop_back();
    out.dropped_smallest = true;
  }

  const LineFit fit = fit_line(logl, logd);
  out.slope = fit.slope;
  out.constant = std::exp(fit.intercept);
  return out;
}

nlohmann::json relative_pair_to_json(const RelativePair& p) {
  nlohmann::json j;
  j["kind"] = relative_pair_kind_name(p.kind);
  j["a"] = p.a;
  j["spectrum"] = spectrum_to_json(p.spectrum);
  return j;
}

RelativePair relative_pair_from_json(const nlohmann::json& j) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() != "kind" && it.key() != "a" && it.key() != "spectrum") {
      throw degenerate_input_error("relative pair: unknown field \"" +
                                   it.key() + "\"");
    }
  }
  const std::string kind = j.at("kind").get<std::string>();
  RelativePairKind k;
  if (kind == "identical") {
    k = RelativePairKind::identical;
  } else if (kind == "neumann_vs_dirichlet") {
    k = RelativePairKind::neumann_vs_dirichlet;
  } else if (kind == "translate") {
    k = RelativePairKind::translate;
  } else if (kind == "neumann_cap") {
    k = RelativePairKind::neumann_cap;
  } else {
    throw degenerate_input_error("relative pair: unknown kind \"" + kind +
                                 "\"");
  }
  return make_relative_pair(k, spectrum_from_json(j.at("spectrum")),
                            j.value("a", 0.0));
}

}  // namespace specdet
