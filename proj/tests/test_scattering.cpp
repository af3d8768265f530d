#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "specdet/errors.hpp"
#include "specdet/scattering.hpp"

using namespace specdet;

TEST_SUITE("scattering") {

TEST_CASE("aligned involutions") {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
  const InvolutionPair same = make_involution_pair(id, id);
  CHECK(same.h12 == 2);
  CHECK(same.h == 0);
  CHECK(same.W.cols() == 0);
  CHECK(det_half_id_minus_c12(same) == doctest::Approx(1.0));

  const InvolutionPair opposite = make_involution_pair(id, -id);
  CHECK(opposite.h12 == 0);
  CHECK(opposite.h == 2);
  CHECK(opposite.W.cols() == 2);
  // C12 = -Id on W, so det((Id - C12)/2) = 1.
  CHECK(det_half_id_minus_c12(opposite) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rotated reflection pair") {
  // S1 reflects across the x axis, S2 across the line at angle t/2.  S1 S2
  // is the rotation by t, so det(Id - C12) = 2 - 2 cos t = 4 sin^2(t/2)
  // and halving each of the two dimensions leaves sin^2(t/2).
  const double t = 0.73;
  Eigen::MatrixXd s1(2, 2), s2(2, 2);
  s1 << 1, 0, 0, -1;
  s2 << std::cos(t), std::sin(t), std::sin(t), -std::cos(t);
  const InvolutionPair p = make_involution_pair(s1, s2);
  CHECK(p.h12 == 0);
  CHECK(p.h == 2);
  const double expected = std::pow(std::sin(t / 2.0), 2);
  CHECK(det_half_id_minus_c12(p) == doctest::Approx(expected).epsilon(1e-10));
  // The block-operator route must agree: its Gram cross term is
  // cos(t/2) = <e1, v2+>, giving det = 1 - cos^2(t/2).
  CHECK(det_S_block(p) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("involution validation") {
  Eigen::MatrixXd not_involution = 2.0 * Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(make_involution_pair(not_involution, not_involution), domain_error);

  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, 0, 0;
  CHECK_THROWS_AS(
      make_involution_pair(asym, Eigen::MatrixXd::Identity(2, 2)), domain_error);
}

TEST_CASE("random involutions are involutions") {
  std::mt19937_64 rng(5);
  for (int dim : {1, 3, 6}) {
    const Eigen::MatrixXd s = random_involution(rng, dim);
    CHECK((s - s.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((s * s - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff() <=
          1e-12);
  }
}

TEST_CASE("block determinant identity on random pairs") {
  std::mt19937_64 rng(42);
  double max_dev = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const InvolutionPair p = random_involution_pair(rng, 1 + trial % 8);
    const double lhs = det_S_block(p);
    const double rhs = det_half_id_minus_c12(p);
    max_dev = std::max(max_dev, std::fabs(lhs - rhs));
    CHECK(rhs >= -1e-12);
    CHECK(rhs <= 1.0 + 1e-12);
  }
  CHECK(max_dev <= 1e-11);
}

TEST_CASE("gram matrices") {
  Eigen::MatrixXd ortho(3, 2);
  ortho << 1, 0, 0, 1, 0, 0;
  CHECK(gram_det(gram_A(ortho)) == doctest::Approx(1.0).epsilon(1e-14));

  // Empty basis: det of the 0 x 0 Gram matrix is 1 by convention.
  CHECK(gram_det(gram_A(Eigen::MatrixXd(3, 0))) == doctest::Approx(1.0));

  Eigen::MatrixXd deficient(3, 2);
  deficient << 1, 2, 1, 2, 0, 0;
  CHECK_THROWS_AS(gram_A(deficient), degenerate_input_error);
}

TEST_CASE("synthetic kernel basis deficit") {
  Eigen::VectorXd d(2);
  d << 0.3, 0.4;
  const double r = 10.0;
  const Eigen::MatrixXd traces = synthetic_kernel_traces(d, r);
  const Eigen::MatrixXd b = gram_B_r(traces, r);
  // Exact: r^q det B_r = prod_k (1 + d_k^2 / r).
  const double expected = (1.0 + 0.09 / r) * (1.0 + 0.16 / r);
  CHECK(std::pow(r, 2) * b.determinant() == doctest::Approx(expected).epsilon(1e-12));

  const double slope = gram_b_deficit_slope(d, {8.0, 16.0, 32.0, 64.0});
  CHECK(std::fabs(slope + 1.0) <= 0.05);
}

}  // TEST_SUITE
