#pragma once

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace specdet {

struct SpectrumEntry {
  double mu = 0.0;  // eigenvalue
  int mult = 1;     // multiplicity
};

enum class Generator { circle, interval, point, explicit_list };

std::string generator_name(Generator g);

// One additive power term coef * t^power of a small-time expansion.
struct PowerTerm {
  double coef = 0.0;
  double power = 0.0;
};

// Exact small-time decomposition of a heat trace,
//   Tr exp(-t Delta) = sum_j coef_j t^{power_j} + remainder(t),
// valid on (0, t0_max] with a remainder that vanishes faster than any power
// of t as t -> 0 (theta-function tails, Taylor tails of exp(-z t)).
struct SmallTimeModel {
  std::vector<PowerTerm> powers;
  std::function<double(double)> remainder;
  double t0_max = 1.0;
};

// Spectrum of a model cross section: a nonnegative eigenvalue list with
// multiplicities, produced by a generator so that enumeration can be
// extended past the stored cutoff on demand.  An additive shift z >= 0
// (mass term, spectral parameter) is tracked separately and composed
// exactly, so shift_spectrum(shift_spectrum(s, a), b) enumerates the same
// base eigenvalues as shift_spectrum(s, a + b).
struct CrossSectionSpectrum {
  Generator generator = Generator::explicit_list;
  double length = 0.0;  // circle circumference or interval length
  int count = 0;        // point multiplicity
  double shift = 0.0;   // accumulated additive shift
  double cutoff = 0.0;  // base eigenvalues are enumerated up to this value
  bool complete = false;
  std::vector<SpectrumEntry> base_entries;  // unshifted, ascending
  std::vector<SpectrumEntry> entries;       // shifted, ascending

  // Multiplicity of the eigenvalue 0 of the shifted spectrum.
  int h() const;
  // Multiplicity of the eigenvalue 0 of the base spectrum.
  int base_h() const;
};

// Circle of circumference l: eigenvalues (2 pi k / l)^2, k >= 0, the
// nonzero ones with multiplicity 2.
CrossSectionSpectrum circle_spectrum(double l, double cutoff = 4000.0);

// Interval [0, L] with Dirichlet ends: eigenvalues (pi k / L)^2, k >= 1.
CrossSectionSpectrum interval_spectrum(double L, double cutoff = 4000.0);

// n-fold point: eigenvalue 0 with multiplicity n.
CrossSectionSpectrum point_spectrum(int n);

CrossSectionSpectrum explicit_spectrum(std::vector<SpectrumEntry> entries,
                                       bool complete = true);

CrossSectionSpectrum shift_spectrum(const CrossSectionSpectrum& s, double z);

// Visits (mu, mult) in ascending order, continuing past the cutoff through
// the generator when the spectrum is not complete.  Stops when the callback
// returns false or the spectrum is exhausted.
void for_each_mode(const CrossSectionSpectrum& s,
                   const std::function<bool(double mu, int mult)>& f);

// Tr exp(-t Delta) over the full (shifted) spectrum, theta-identity based
// for small t and direct summation otherwise.
double heat_trace(const CrossSectionSpectrum& s, double t);

SmallTimeModel small_time_model(const CrossSectionSpectrum& s);

nlohmann::json spectrum_to_json(const CrossSectionSpectrum& s);
CrossSectionSpectrum spectrum_from_json(const nlohmann::json& j);

}  // namespace specdet
