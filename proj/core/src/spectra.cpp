#include "specdet/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "specdet/errors.hpp"

namespace specdet {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr int kTaylorOrder = 30;

double circle_eigenvalue(double l, int k) {
  const double w = 2.0 * kPi * k / l;
  return w * w;
}

double interval_eigenvalue(double L, int k) {
  const double w = kPi * k / L;
  return w * w;
}

void materialize_shift(CrossSectionSpectrum& s) {
  s.entries = s.base_entries;
  if (s.shift != 0.0) {
    for (auto& e : s.entries) e.mu += s.shift;
  }
}

// exp(x) minus its Taylor polynomial of order kTaylorOrder, |x| <= 1.
double taylor_tail(double x) {
  double term = 1.0;
  for (int m = 1; m <= kTaylorOrder; ++m) term *= x / m;
  // term = x^M / M!; continue the series a few steps.
  double tail = 0.0;
  for (int m = kTaylorOrder + 1; m <= kTaylorOrder + 8; ++m) {
    term *= x / m;
    tail += term;
  }
  return tail;
}

void check_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw degenerate_input_error("unknown field \"" + it.key() + "\" in " +
                                   where);
    }
  }
}

}  // namespace

std::string generator_name(Generator g) {
  switch (g) {
    case Generator::circle: return "circle";
    case Generator::interval: return "interval";
    case Generator::point: return "point";
    case Generator::explicit_list: return "explicit";
  }
  return "?";
}

int CrossSectionSpectrum::h() const {
  int n = 0;
  for (const auto& e : entries) {
    if (e.mu == 0.0) n += e.mult;
  }
  return n;
}

int CrossSectionSpectrum::base_h() const {
  int n = 0;
  for (const auto& e : base_entries) {
    if (e.mu == 0.0) n += e.mult;
  }
  return n;
}

CrossSectionSpectrum circle_spectrum(double l, double cutoff) {
  if (!(l > 0.0)) throw degenerate_input_error("circle_spectrum: length <= 0");
  if (!(cutoff > 0.0)) throw degenerate_input_error("circle_spectrum: cutoff <= 0");
  CrossSectionSpectrum s;
  s.generator = Generator::circle;
  s.length = l;
  s.cutoff = cutoff;
  s.base_entries.push_back({0.0, 1});
  for (int k = 1;; ++k) {
    const double mu = circle_eigenvalue(l, k);
    if (mu > cutoff) break;
    s.base_entries.push_back({mu, 2});
  }
  materialize_shift(s);
  return s;
}

CrossSectionSpectrum interval_spectrum(double L, double cutoff) {
  if (!(L > 0.0)) throw degenerate_input_error("interval_spectrum: length <= 0");
  if (!(cutoff > 0.0)) throw degenerate_input_error("interval_spectrum: cutoff <= 0");
  CrossSectionSpectrum s;
  s.generator = Generator::interval;
  s.length = L;
  s.cutoff = cutoff;
  for (int k = 1;; ++k) {
    const double mu = interval_eigenvalue(L, k);
    if (mu > cutoff) break;
    s.base_entries.push_back({mu, 1});
  }
  materialize_shift(s);
  return s;
}

CrossSectionSpectrum point_spectrum(int n) {
  if (n < 1) throw degenerate_input_error("point_spectrum: count < 1");
  CrossSectionSpectrum s;
  s.generator = Generator::point;
  s.count = n;
  s.complete = true;
  s.base_entries.push_back({0.0, n});
  materialize_shift(s);
  return s;
}

CrossSectionSpectrum explicit_spectrum(std::vector<SpectrumEntry> entries,
                                       bool complete) {
  if (entries.empty()) {
    throw degenerate_input_error("explicit_spectrum: empty list");
  }
  std::sort(entries.begin(), entries.end(),
            [](const SpectrumEntry& a, const SpectrumEntry& b) {
              return a.mu < b.mu;
            });
  for (const auto& e : entries) {
    if (e.mu < 0.0) throw degenerate_input_error("explicit_spectrum: mu < 0");
    if (e.mult < 1) throw degenerate_input_error("explicit_spectrum: mult < 1");
  }
  CrossSectionSpectrum s;
  s.generator = Generator::explicit_list;
  s.complete = complete;
  s.cutoff = entries.back().mu;
  s.base_entries = std::move(entries);
  materialize_shift(s);
  return s;
}

CrossSectionSpectrum shift_spectrum(const CrossSectionSpectrum& s, double z) {
  if (!(z >= 0.0)) throw degenerate_input_error("shift_spectrum: z < 0");
  CrossSectionSpectrum out = s;
  out.shift = s.shift + z;
  materialize_shift(out);
  return out;
}

void for_each_mode(const CrossSectionSpectrum& s,
                   const std::function<bool(double, int)>& f) {
  for (const auto& e : s.entries) {
    if (!f(e.mu, e.mult)) return;
  }
  if (s.complete) return;
  if (s.generator == Generator::circle) {
    int k = static_cast<int>(s.base_entries.size());  // entries were k = 0..size-1
    for (;; ++k) {
      if (!f(circle_eigenvalue(s.length, k) + s.shift, 2)) return;
    }
  } else if (s.generator == Generator::interval) {
    int k = static_cast<int>(s.base_entries.size()) + 1;
    for (;; ++k) {
      if (!f(interval_eigenvalue(s.length, k) + s.shift, 1)) return;
    }
  }
  // point and explicit lists cannot be extended
}

double heat_trace(const CrossSectionSpectrum& s, double t) {
  if (!(t > 0.0)) throw domain_error("heat_trace requires t > 0");
  const double damp = std::exp(-s.shift * t);

  if (s.generator == Generator::point) {
    return s.count * damp;
  }

  if (s.generator == Generator::circle && t < s.length * s.length / (4.0 * kPi)) {
    // Jacobi theta inversion: sum over the dual lattice.
    const double l = s.length;
    double theta = 1.0;
    for (int n = 1; n <= 400; ++n) {
      const double ex = l * l * n * n / (4.0 * t);
      if (ex > 700.0) break;
      const double term = 2.0 * std::exp(-ex);
      theta += term;
      if (term < 1e-18 * theta) break;
    }
    return damp * l / std::sqrt(4.0 * kPi * t) * theta;
  }

  if (s.generator == Generator::interval && t < s.length * s.length / kPi) {
    const double L = s.length;
    double dual = 0.0;
    for (int n = 1; n <= 400; ++n) {
      const double ex = L * L * n * n / t;
      if (ex > 700.0) break;
      dual += std::exp(-ex);
    }
    return damp * (L / (2.0 * std::sqrt(kPi * t)) - 0.5 +
                   L / std::sqrt(kPi * t) * dual);
  }

  // Direct mode sum, extended through the generator.
  double acc = 0.0;
  bool truncated = false;
  double last_term = 0.0;
  for_each_mode(s, [&](double mu, int mult) {
    const double term = mult * std::exp(-mu * t);
    acc += term;
    last_term = term;
    if (term < 1e-18 * (acc + 1e-300) && mu * t > 3.0) return false;
    return true;
  });
  if (s.generator == Generator::explicit_list && !s.complete) {
    truncated = last_term > 1e-16 * (acc + 1e-300);
  }
  if (truncated) {
    throw accuracy_error("heat_trace: truncated explicit spectrum dominates at this t");
  }
  return acc;
}

SmallTimeModel small_time_model(const CrossSectionSpectrum& s) {
  SmallTimeModel base;
  switch (s.generator) {
    case Generator::circle: {
      const double l = s.length;
      base.powers.push_back({l / (2.0 * std::sqrt(kPi)), -0.5});
      base.remainder = [l](double t) {
        double sum = 0.0;
        for (int n = 1; n <= 400; ++n) {
          const double ex = l * l * n * n / (4.0 * t);
          if (ex > 700.0) break;
          sum += std::exp(-ex);
        }
        return l / std::sqrt(kPi * t) * sum;
      };
      break;
    }
    case Generator::interval: {
      const double L = s.length;
      base.powers.push_back({L / (2.0 * std::sqrt(kPi)), -0.5});
      base.powers.push_back({-0.5, 0.0});
      base.remainder = [L](double t) {
        double sum = 0.0;
        for (int n = 1; n <= 400; ++n) {
          const double ex = L * L * n * n / t;
          if (ex > 700.0) break;
          sum += std::exp(-ex);
        }
        return L / std::sqrt(kPi * t) * sum;
      };
      break;
    }
    case Generator::point: {
      base.powers.push_back({static_cast<double>(s.count), 0.0});
      base.remainder = [](double) { return 0.0; };
      break;
    }
    case Generator::explicit_list:
      throw unsupported_model_error(
          "small_time_model: explicit spectra have no small-time expansion");
  }
  base.t0_max = 1.0;

  const double z = s.shift;
  if (z == 0.0) return base;

  // Multiply the exact base expansion by exp(-z t): the Taylor polynomial of
  // exp(-z t) shifts every power upward, the Taylor tail joins the
  // superpolynomially small remainder.
  SmallTimeModel out;
  out.t0_max = std::min(base.t0_max, 1.0 / std::max(1.0, z));
  for (const auto& pw : base.powers) {
    double coef = pw.coef;  // c * (-z)^m / m!
    out.powers.push_back({coef, pw.power});
    for (int m = 1; m <= kTaylorOrder; ++m) {
      coef *= -z / m;
      out.powers.push_back({coef, pw.power + m});
    }
  }
  auto base_powers = base.powers;
  auto base_remainder = base.remainder;
  out.remainder = [base_powers, base_remainder, z](double t) {
    double power_part = 0.0;
    for (const auto& pw : base_powers) {
      power_part += pw.coef * std::pow(t, pw.power);
    }
    return power_part * taylor_tail(-z * t) +
           std::exp(-z * t) * base_remainder(t);
  };
  return out;
}

nlohmann::json spectrum_to_json(const CrossSectionSpectrum& s) {
  nlohmann::json params;
  params["shift"] = s.shift;
  switch (s.generator) {
    case Generator::circle:
    case Generator::interval:
      params["length"] = s.length;
      break;
    case Generator::point:
      params["count"] = s.count;
      break;
    case Generator::explicit_list:
      params["complete"] = s.complete;
      break;
  }
  nlohmann::json j;
  j["generator"] = generator_name(s.generator);
  j["params"] = params;
  j["h_Y"] = s.h();
  j["cutoff"] = s.cutoff;
  // Entries are the unshifted generator eigenvalues; params.shift is
  // reapplied on load so that shift composition stays exact.
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : s.base_entries) {
    entries.push_back(nlohmann::json::array({e.mu, e.mult}));
  }
  j["entries"] = entries;
  return j;
}

CrossSectionSpectrum spectrum_from_json(const nlohmann::json& j) {
  check_keys(j, {"generator", "params", "h_Y", "cutoff", "entries"},
             "spectrum");
  for (const auto& key : {"generator", "params", "h_Y", "cutoff", "entries"}) {
    if (!j.contains(key)) {
      throw degenerate_input_error(std::string("spectrum: missing field \"") +
                                   key + "\"");
    }
  }
  const std::string gen = j.at("generator").get<std::string>();
  const nlohmann::json& params = j.at("params");
  const double shift = params.value("shift", 0.0);
  if (shift < 0.0) throw degenerate_input_error("spectrum: shift < 0");

  CrossSectionSpectrum s;
  if (gen == "circle" || gen == "interval") {
    check_keys(params, {"shift", "length"}, "spectrum params");
    const double length = params.at("length").get<double>();
    const double cutoff = j.at("cutoff").get<double>();
    s = (gen == "circle") ? circle_spectrum(length, cutoff)
                          : interval_spectrum(length, cutoff);
  } else if (gen == "point") {
    check_keys(params, {"shift", "count"}, "spectrum params");
    s = point_spectrum(params.at("count").get<int>());
  } else if (gen == "explicit") {
    check_keys(params, {"shift", "complete"}, "spectrum params");
    std::vector<SpectrumEntry> entries;
    for (const auto& e : j.at("entries")) {
      if (!e.is_array() || e.size() != 2) {
        throw degenerate_input_error("spectrum: entry is not [mu, mult]");
      }
      entries.push_back({e[0].get<double>(), e[1].get<int>()});
    }
    s = explicit_spectrum(std::move(entries),
                          params.value("complete", true));
  } else {
    throw degenerate_input_error("spectrum: unknown generator \"" + gen + "\"");
  }

  if (shift > 0.0) s = shift_spectrum(s, shift);

  // Cross-check the stored entries and kernel dimension against the
  // regenerated spectrum.
  if (gen != "explicit") {
    const auto& stored = j.at("entries");
    if (stored.size() != s.base_entries.size()) {
      throw degenerate_input_error(
          "spectrum: stored entries disagree with generator");
    }
    for (std::size_t i = 0; i < s.base_entries.size(); ++i) {
      const double mu = stored[i][0].get<double>();
      const int mult = stored[i][1].get<int>();
      if (mult != s.base_entries[i].mult ||
          std::fabs(mu - s.base_entries[i].mu) >
              1e-9 * std::max(1.0, std::fabs(mu))) {
        throw degenerate_input_error(
            "spectrum: stored entries disagree with generator");
      }
    }
  }
  if (j.at("h_Y").get<int>() != s.h()) {
    throw degenerate_input_error("spectrum: h_Y disagrees with entries");
  }
  return s;
}

}  // namespace specdet
