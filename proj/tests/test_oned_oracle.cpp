#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "specdet/oned_oracle.hpp"

using namespace specdet;

namespace {

SchrodingerProblem free_problem(double L, BC1D left, BC1D right, double shift) {
  SchrodingerProblem p;
  p.a = 0.0;
  p.b = L;
  p.left = left;
  p.right = right;
  p.shift = shift;
  p.kind = PotentialKind::constant;
  p.w_const = 0.0;
  return p;
}

SchrodingerProblem random_piecewise(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  SchrodingerProblem p;
  p.a = 0.0;
  p.b = 1.0;
  p.left = (u01(rng) < 0.5) ? BC1D::dirichlet : BC1D::neumann;
  p.right = (u01(rng) < 0.5) ? BC1D::dirichlet : BC1D::neumann;
  p.kind = PotentialKind::piecewise;
  const double x1 = 0.2 + 0.3 * u01(rng);
  const double x2 = x1 + 0.2 + 0.3 * u01(rng);
  p.segments = {{0.0, x1, 4.0 * u01(rng)},
                {x1, x2, 4.0 * u01(rng)},
                {x2, 1.0, 4.0 * u01(rng)}};
  p.shift = 0.2 + 2.0 * u01(rng);
  return p;
}

}  // namespace

TEST_SUITE("oned_oracle") {

TEST_CASE("transfer matrix is unimodular") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const SchrodingerProblem p = random_piecewise(rng);
    const Matrix2 m = transfer_matrix(p, p.a, p.b);
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    CHECK(det == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("constant potential determinants match closed forms") {
  // Dirichlet-Dirichlet: 2 sinh(mL)/m; mixed: 2 cosh(mL);
  // Neumann-Neumann: 2 m sinh(mL); all from the (0,1)/(1,0) solutions.
  const double m = 1.0, L = 1.0;
  SchrodingerProblem p = free_problem(L, BC1D::dirichlet, BC1D::dirichlet, m * m);
  CHECK(gy_det(p).value == doctest::Approx(2.0 * std::sinh(m * L) / m).epsilon(1e-12));

  p.right = BC1D::neumann;
  CHECK(gy_det(p).value == doctest::Approx(2.0 * std::cosh(m * L)).epsilon(1e-12));

  p.left = BC1D::neumann;
  CHECK(gy_det(p).value == doctest::Approx(2.0 * m * std::sinh(m * L)).epsilon(1e-12));

  p.left = BC1D::dirichlet;
  p.right = BC1D::dirichlet;
  p.shift = 0.0;
  CHECK(gy_det(p).value == doctest::Approx(2.0 * L).epsilon(1e-13));
}

TEST_CASE("periodic determinant") {
  SchrodingerProblem p = free_problem(1.0, BC1D::dirichlet, BC1D::dirichlet, 1.0);
  const double closed = 4.0 * std::pow(std::sinh(0.5), 2);
  CHECK(gy_det_periodic(p).value == doctest::Approx(closed).epsilon(1e-12));
}

TEST_CASE("callable potential agrees with the exact transfer matrix") {
  SchrodingerProblem exact = free_problem(1.0, BC1D::dirichlet, BC1D::dirichlet, 0.0);
  exact.kind = PotentialKind::piecewise;
  exact.segments = {{0.0, 0.4, 2.0}, {0.4, 1.0, 0.5}};
  exact.shift = 0.7;

  SchrodingerProblem ode = exact;
  ode.kind = PotentialKind::callable;
  ode.w_fn = [](double x) { return x < 0.4 ? 2.0 : 0.5; };

  const ValueWithError a = gy_det(exact);
  const ValueWithError b = gy_det(ode);
  CHECK(b.value == doctest::Approx(a.value).epsilon(1e-9));
  CHECK(std::fabs(a.value - b.value) <= a.error + b.error + 1e-9 * a.value);
}

TEST_CASE("determinant grows with the spectral shift") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    SchrodingerProblem p = random_piecewise(rng);
    p.left = BC1D::dirichlet;
    p.right = BC1D::dirichlet;
    double prev = 0.0;
    for (double z : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      p.shift = z;
      const double det = gy_det(p).value;
      CHECK(det > prev);
      prev = det;
    }
  }
}

TEST_CASE("one dimensional DtN closed forms") {
  // Free problem with mass m, Dirichlet outer ends, cut at c: the one-sided
  // maps are m coth(mc) and m coth(m(L-c)).
  const double m = 1.3, L = 1.0, c = 0.4;
  SchrodingerProblem p = free_problem(L, BC1D::dirichlet, BC1D::dirichlet, 0.0);
  const Matrix2 q = dtn_1d(p, c, m * m);
  CHECK(q[0][0] == doctest::Approx(m / std::tanh(m * c)).epsilon(1e-12));
  CHECK(q[1][1] == doctest::Approx(m / std::tanh(m * (L - c))).epsilon(1e-12));
  CHECK(q[0][1] == doctest::Approx(0.0));
  CHECK(q[1][0] == doctest::Approx(0.0));

  // Neumann outer end turns coth into tanh on that side.
  p.left = BC1D::neumann;
  const Matrix2 qn = dtn_1d(p, c, m * m);
  CHECK(qn[0][0] == doctest::Approx(m * std::tanh(m * c)).epsilon(1e-12));

  // Positive definiteness for z > 0.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const SchrodingerProblem rp = random_piecewise(rng);
    const Matrix2 rq = dtn_1d(rp, 0.5, 0.9);
    CHECK(rq[0][0] > 0.0);
    CHECK(rq[1][1] > 0.0);
  }
}

TEST_CASE("two-cut DtN of the free problem") {
  // Cuts at c1 < c2 with Dirichlet outer ends: diagonal entries
  // nu coth(nu a_i) + nu coth(nu d), off-diagonal -nu / sinh(nu d) with
  // d = c2 - c1 the middle length and a_i the outer lengths.
  const double nu = 1.1, c1 = 0.9, c2 = 2.3, L = 3.4;
  SchrodingerProblem p = free_problem(L, BC1D::dirichlet, BC1D::dirichlet, 0.0);
  const Matrix2 q = dtn_1d_pair(p, c1, c2, nu * nu);
  const double d = c2 - c1;
  CHECK(q[0][0] ==
        doctest::Approx(nu / std::tanh(nu * c1) + nu / std::tanh(nu * d)).epsilon(1e-12));
  CHECK(q[1][1] ==
        doctest::Approx(nu / std::tanh(nu * (L - c2)) + nu / std::tanh(nu * d))
            .epsilon(1e-12));
  CHECK(q[0][1] == doctest::Approx(-nu / std::sinh(nu * d)).epsilon(1e-12));
  CHECK(q[0][1] == doctest::Approx(q[1][0]).epsilon(1e-14));
}

TEST_CASE("one dimensional gluing constant is 1/2") {
  // Closed-form instance: sinh(m) = 2 sinh(m/2) cosh(m/2) forces the
  // constant; then V-independence over random data.
  SchrodingerProblem p = free_problem(1.0, BC1D::dirichlet, BC1D::dirichlet, 0.0);
  const Bfk1DResult base = bfk_1d_check(p, 0.5, 1.0);
  CHECK(base.ratio == doctest::Approx(0.5).epsilon(1e-10));

  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> cut(0.2, 0.8);
  std::uniform_real_distribution<double> zdist(0.1, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const SchrodingerProblem rp = random_piecewise(rng);
    const Bfk1DResult r = bfk_1d_check(rp, cut(rng), zdist(rng));
    CHECK(std::fabs(r.ratio - 0.5) <= 1e-8);
    CHECK(r.lhs == doctest::Approx(0.5 * r.rhs_product).epsilon(1e-8));
  }
}

TEST_CASE("continuity of the gluing constant in the shift") {
  SchrodingerProblem p = free_problem(1.0, BC1D::dirichlet, BC1D::dirichlet, 0.0);
  for (double z : {1.0, 1e-2, 1e-4, 1e-6}) {
    CHECK(bfk_1d_check(p, 0.5, z).ratio == doctest::Approx(0.5).epsilon(1e-7));
  }
}

}  // TEST_SUITE
