#include <cmath>

#include "doctest.h"
#include "specdet/errors.hpp"
#include "specdet/special_fn.hpp"
#include "specdet/spectra.hpp"
#include "specdet/zeta_det.hpp"

using namespace specdet;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Oracle for the unshifted circle of circumference 1: eigenvalues (2 pi k)^2
// with multiplicity 2 give
//   zeta_Y(s) = 2 (2 pi)^{-2s} zeta_R(2s),
// a closed form independent of the Mellin machinery.
double circle_zeta_closed(double s) {
  return 2.0 * std::pow(2.0 * kPi, -2.0 * s) * riemann_zeta(2.0 * s);
}

}  // namespace

TEST_SUITE("zeta_det") {

TEST_CASE("circle zeta against the closed continuation") {
  const SpectralZeta zeta(circle_spectrum(1.0));
  for (double s : {-1.5, -1.0, -0.25, 0.25, 0.75, 2.0, 3.5}) {
    const ValueWithError v = zeta.at(s);
    const double closed = circle_zeta_closed(s);
    CHECK(std::fabs(v.value - closed) <= v.error + 1e-9);
  }
  CHECK(zeta.zeta0() == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::fabs(zeta.at(-0.5).value + kPi / 3.0) <= 1e-9);
  // zeta'(0) = 0, det = 1 for the unit circle.
  const ValueWithError d0 = zeta.deriv0();
  CHECK(std::fabs(d0.value) <= d0.error + 1e-9);
  CHECK(det_zeta(circle_spectrum(1.0)) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("interval determinant equals 2L") {
  // Eigenvalues (pi k / L)^2 give zeta(s) = (pi/L)^{-2s} zeta_R(2s), so
  // zeta'(0) = 2 log(L/pi) zeta_R(0) + 2 zeta_R'(0) = -log(2L).
  for (double L : {0.5, 1.0, 2.0}) {
    const ValueWithError det = log_det_zeta(interval_spectrum(L));
    CHECK(std::fabs(det.value - std::log(2.0 * L)) <= det.error + 1e-10);
  }
}

TEST_CASE("massive circle determinant equals 4 sinh^2(m l / 2)") {
  for (double m : {1.0, 2.5}) {
    const CrossSectionSpectrum s = shift_spectrum(circle_spectrum(1.0), m * m);
    const ValueWithError det = log_det_zeta(s);
    const double closed = 2.0 * std::log(2.0 * std::sinh(m / 2.0));
    CHECK(std::fabs(det.value - closed) <= det.error + 1e-8);
  }
}

TEST_CASE("finite spectra bypass exactly") {
  const CrossSectionSpectrum s = explicit_spectrum({{2.0, 1}, {3.0, 2}});
  const SpectralZeta zeta(s);
  CHECK(zeta.finite());
  CHECK(zeta.zeta0() == doctest::Approx(3.0));
  CHECK(zeta.at(1.3).value ==
        doctest::Approx(std::pow(2.0, -1.3) + 2.0 * std::pow(3.0, -1.3))
            .epsilon(1e-14));
  CHECK(log_det_zeta(s).value ==
        doctest::Approx(std::log(18.0)).epsilon(1e-14));

  const CrossSectionSpectrum p = shift_spectrum(point_spectrum(3), 2.0);
  CHECK(log_det_zeta(p).value == doctest::Approx(3.0 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("xi derivative at zero, regular case") {
  const CrossSectionSpectrum s = circle_spectrum(1.0);
  // xi'(0) = -2 zeta_Y(-1/2) = 2 pi / 3 on the unit circle.
  CHECK(xi_prime_zero(s) == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-8));
  CHECK(std::fabs(xi_zero(s)) <= 1e-10);
  CHECK(xi_prime_zero_numeric(s) ==
        doctest::Approx(xi_prime_zero(s)).epsilon(1e-6));
}

TEST_CASE("shifted circle has a genuine pole at -1/2") {
  const double z = 1.0;
  const CrossSectionSpectrum s = shift_spectrum(circle_spectrum(1.0), z);
  const SpectralZeta zeta(s);
  CHECK_THROWS_AS(zeta.at(-0.5), domain_error);

  // Residue z l / (4 pi) from the t^{1/2} heat coefficient -z l / sqrt(4 pi)
  // divided by Gamma(-1/2) = -2 sqrt(pi).
  const LaurentAtMinusHalf laurent = zeta.laurent_minus_half();
  CHECK(laurent.residue == doctest::Approx(z / (4.0 * kPi)).epsilon(1e-10));
  CHECK(xi_zero(s) == doctest::Approx(-2.0 * laurent.residue).epsilon(1e-10));

  // The pole-aware xi'(0) agrees with Richardson-extrapolated differences
  // of xi(s) = Gamma(s-1/2) zeta(s-1/2) / (sqrt(pi) Gamma(s)).
  CHECK(xi_prime_zero(s) == doctest::Approx(xi_prime_zero_numeric(s)).epsilon(1e-6));
}

TEST_CASE("values of zeta at negative integers follow the heat coefficients") {
  // zeta(-k) = (-1)^k k! c_k; the unit circle trace has no positive powers,
  // so zeta_Y(-1) = 0, matching 2 (2 pi)^2 zeta_R(-2) = 0.
  const SpectralZeta zeta(circle_spectrum(1.0));
  CHECK(std::fabs(zeta.at(-1.0).value) <= zeta.at(-1.0).error + 1e-10);

  // In the convergent half-plane the continuation must reduce to the plain
  // mode sum; check a shifted spectrum at s = 2, 3 against direct summation.
  const CrossSectionSpectrum sz = shift_spectrum(circle_spectrum(1.0), 0.7);
  const SpectralZeta zz(sz);
  for (double s : {2.0, 3.0}) {
    double direct = 0.0;
    for_each_mode(sz, [&](double mu, int mult) {
      const double term = mult * std::pow(mu, -s);
      direct += term;
      return term > 1e-17 * direct;
    });
    const ValueWithError v = zz.at(s);
    CHECK(std::fabs(v.value - direct) <= v.error + 1e-11);
  }
}

}  // TEST_SUITE
