#pragma once

#include "specdet/numerics.hpp"
#include "specdet/spectra.hpp"

namespace specdet {

struct LaurentAtMinusHalf {
  double residue = 0.0;      // residue of zeta at s = -1/2
  double finite_part = 0.0;  // constant Laurent coefficient there
  double error = 0.0;        // bound on the finite part
};

// Spectral zeta function over the positive part of a cross-section
// spectrum,
//   zeta(s) = sum_{mu > 0} mult(mu) mu^{-s},
// meromorphically continued through the Mellin transform of the heat trace.
// With f(t) = Tr exp(-t Delta) - h and B(s) the Mellin integral of f,
//
//   B(s) = sum_j c_j t0^{s+q_j} / (s+q_j) + J(s) + tail(s),
//   zeta(s) = B(s) / Gamma(s),
//
// where the c_j t^{q_j} are the exact small-time powers of f, J(s) is the
// Mellin integral of the theta-type remainder over (0, t0], and tail(s)
// sums incomplete-gamma mode integrals over [t0, infinity).  Complete
// finite spectra bypass the machinery with exact sums.
class SpectralZeta {
public:
  explicit SpectralZeta(const CrossSectionSpectrum& spec);

  // Meromorphic continuation at real s; throws domain_error at a pole.
  ValueWithError at(double s) const;

  // zeta(0), exact small-time coefficient.
  double zeta0() const;

  // zeta'(0) with certified quadrature and tail bounds.
  ValueWithError deriv0() const;

  LaurentAtMinusHalf laurent_minus_half() const;

  bool finite() const { return finite_; }

private:
  ValueWithError mellin_B_rest(double s, double excluded_power) const;
  ValueWithError remainder_integral(double s) const;
  ValueWithError large_time_tail(double s) const;

  CrossSectionSpectrum spec_;
  bool finite_ = false;
  std::vector<PowerTerm> powers_;  // small-time powers of f = Tr - h
  std::function<double(double)> remainder_;
  double t0_ = 1.0;
};

ValueWithError zeta_at(const CrossSectionSpectrum& spec, double s);

// log det_zeta(Delta) = -zeta'(0) over the positive spectrum.
ValueWithError log_det_zeta(const CrossSectionSpectrum& spec);
double det_zeta(const CrossSectionSpectrum& spec);

// xi(s) = Gamma(s - 1/2) / (sqrt(pi) Gamma(s)) * zeta(s - 1/2) vanishes at
// s = 0 when zeta is regular at -1/2; its derivative there drives every
// cylinder determinant.  With R and FP the residue and finite part of zeta
// at -1/2,
//   xi(0)  = -2 R,
//   xi'(0) = -2 (FP + beta R),  beta = psi(-1/2) + gamma = 2 - 2 log 2,
// which reduces to -2 zeta(-1/2) in the regular case.
double xi_zero(const CrossSectionSpectrum& spec);
double xi_prime_zero(const CrossSectionSpectrum& spec);

// Independent cross-check: Richardson-extrapolated central differences of
// xi(s) evaluated through zeta_at away from s = 0.
double xi_prime_zero_numeric(const CrossSectionSpectrum& spec);

}  // namespace specdet
