#include <cmath>

#include "doctest.h"
#include "specdet/cylinder.hpp"
#include "specdet/dtn.hpp"
#include "specdet/oned_oracle.hpp"
#include "specdet/spectra.hpp"
#include "specdet/zeta_det.hpp"

using namespace specdet;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Oracle for the Dirichlet cylinder over the unit circle: assemble the
// closed product from scratch with scalar arithmetic only,
//   det = (2r)^h e^{-r xi'/2} det(Delta_Y)^{-1/2} prod (1 - e^{-2 r nu})^mult
// with h = 1, xi' = 2 pi / 3, det(Delta_Y) = 1 frozen for circumference 1.
double unit_circle_cylinder_oracle(double r) {
  double det = 2.0 * r * std::exp(-r * kPi / 3.0);
  for (int k = 1; k < 40; ++k) {
    const double nu = 2.0 * kPi * k;
    det *= std::pow(1.0 - std::exp(-2.0 * r * nu), 2);
  }
  return det;
}

}  // namespace

TEST_SUITE("cylinder") {

TEST_CASE("closed form over the unit circle") {
  for (double r : {0.5, 1.0, 2.0}) {
    const ValueWithError det = cylinder_det_closed({circle_spectrum(1.0), r});
    CHECK(det.value == doctest::Approx(unit_circle_cylinder_oracle(r)).epsilon(1e-12));
  }
  // Frozen six-digit anchor at r = 1 for quick visual regression.
  const ValueWithError det = cylinder_det_closed({circle_spectrum(1.0), 1.0});
  CHECK(det.value == doctest::Approx(0.701835).epsilon(1e-5));
}

TEST_CASE("convention adjudication prefers the half exponent") {
  for (double r : {0.5, 1.0, 2.0}) {
    const CylinderAdjudication adj =
        adjudicate_cylinder_convention({circle_spectrum(1.0), r});
    CHECK(adj.chosen == "half");
    CHECK(adj.closed_vs_direct <= 1e-6);
    // The alternative convention misses by the non-negligible factor
    // e^{-(r/2) xi'}, so the adjudication is never a coin flip.
    CHECK(adj.closed_alt_vs_direct > 100.0 * adj.closed_vs_direct);
  }

  const CylinderAdjudication shifted = adjudicate_cylinder_convention(
      {shift_spectrum(circle_spectrum(1.0), 1.0), 1.0});
  CHECK(shifted.chosen == "half");
  CHECK(shifted.closed_vs_direct <= 1e-6);
}

TEST_CASE("single mode cylinders match the 1d oracle") {
  const double m = 1.0, L = 1.0;
  const CrossSectionSpectrum point = shift_spectrum(point_spectrum(1), m * m);

  SchrodingerProblem p;
  p.b = L;
  p.shift = m * m;

  p.left = BC1D::dirichlet;
  p.right = BC1D::dirichlet;
  CHECK(cylinder_det_mixed(point, L, EndBC::dirichlet, EndBC::dirichlet).value ==
        doctest::Approx(gy_det(p).value).epsilon(1e-11));

  p.right = BC1D::neumann;
  CHECK(cylinder_det_mixed(point, L, EndBC::dirichlet, EndBC::neumann).value ==
        doctest::Approx(gy_det(p).value).epsilon(1e-11));

  p.left = BC1D::neumann;
  CHECK(cylinder_det_mixed(point, L, EndBC::neumann, EndBC::neumann).value ==
        doctest::Approx(gy_det(p).value).epsilon(1e-11));
}

TEST_CASE("mixed determinant ratios reduce to DtN determinants") {
  // Per mode, 2 cosh(nu L) / (2 sinh(nu L)/nu) = nu coth(nu L) and
  // 2 nu sinh(nu L) / (2 cosh(nu L)) = nu tanh(nu L), so the assembled
  // ratios must equal the zeta determinants of the cap operators.
  const CrossSectionSpectrum s = shift_spectrum(circle_spectrum(1.0), 1.0);
  const double L = 0.8;

  const double dd = cylinder_det_mixed(s, L, EndBC::dirichlet, EndBC::dirichlet).value;
  const double dn = cylinder_det_mixed(s, L, EndBC::dirichlet, EndBC::neumann).value;
  const double nn = cylinder_det_mixed(s, L, EndBC::neumann, EndBC::neumann).value;

  const ValueWithError det_coth = det_zeta_block(cap_dtn(L, OuterBC::dirichlet, s));
  const ValueWithError det_tanh = det_zeta_block(cap_dtn(L, OuterBC::neumann, s));

  CHECK(dn / dd == doctest::Approx(det_coth.value).epsilon(1e-8));
  CHECK(nn / dn == doctest::Approx(det_tanh.value).epsilon(1e-8));
  // Their product telescopes to det(Delta_Y + z), Gelfand-Yaglom style.
  CHECK(nn / dd ==
        doctest::Approx(det_zeta(shift_spectrum(circle_spectrum(1.0), 1.0)))
            .epsilon(1e-8));
}

TEST_CASE("neumann ends over a kernel agree with the dirichlet closed form") {
  // Over circle(1) the positive-spectrum Neumann-Neumann determinant equals
  // the Dirichlet one: per mode the ratio is nu^2, whose regularized product
  // det Delta_Y is 1, and both kernel towers contribute 2L.
  const CrossSectionSpectrum s = circle_spectrum(1.0);
  for (double L : {0.6, 1.0}) {
    const double nn = cylinder_det_mixed(s, L, EndBC::neumann, EndBC::neumann).value;
    const double dd = cylinder_det_closed({s, L}).value;
    CHECK(nn == doctest::Approx(dd).epsilon(1e-10));
  }
}

}  // TEST_SUITE
