#pragma once

#include <array>
#include <functional>
#include <vector>

#include "specdet/numerics.hpp"

namespace specdet {

enum class BC1D { dirichlet, neumann };

enum class PotentialKind { constant, piecewise, callable };

struct PotentialSegment {
  double x0 = 0.0;
  double x1 = 0.0;
  double w = 0.0;
};

// One-dimensional Schrodinger operator -y'' + (W(x) + shift) y on [a, b]
// with Dirichlet or Neumann conditions at each end.  Constant and piecewise
// constant potentials propagate through exact transfer matrices, callable
// potentials through an adaptive Runge-Kutta integrator.
struct SchrodingerProblem {
  double a = 0.0;
  double b = 1.0;
  BC1D left = BC1D::dirichlet;
  BC1D right = BC1D::dirichlet;
  double shift = 0.0;
  PotentialKind kind = PotentialKind::constant;
  double w_const = 0.0;
  std::vector<PotentialSegment> segments;  // must tile [a, b]
  std::function<double(double)> w_fn;
};

using Matrix2 = std::array<std::array<double, 2>, 2>;

// Fundamental transfer matrix: (y, y') at x1 = M * (y, y') at x0 for
// solutions of -y'' + (W + shift) y = 0.
Matrix2 transfer_matrix(const SchrodingerProblem& p, double x0, double x1);

// Gelfand-Yaglom functional determinant, normalized as
//   det = 2 y(b)   (Dirichlet at b)   or   2 y'(b)  (Neumann at b)
// for the solution with (y, y')(a) = (0, 1) or (1, 0) matching the left
// condition.  This normalization agrees with the zeta determinant of the
// same boundary value problem.
ValueWithError gy_det(const SchrodingerProblem& p);

// Periodic determinant tr M(b) - 2 (= 4 sinh^2(m (b-a) / 2) for W = m^2).
ValueWithError gy_det_periodic(const SchrodingerProblem& p);

// Dirichlet-to-Neumann data of the two complementary pieces at an interior
// cut c: returns diag(qL, qR), the outward normal derivative maps of the
// left and right piece.  The glued one-point operator is the sum qL + qR.
Matrix2 dtn_1d(const SchrodingerProblem& p, double c, double z);

// Full 2x2 Dirichlet-to-Neumann operator for two interior cuts c1 < c2.
Matrix2 dtn_1d_pair(const SchrodingerProblem& p, double c1, double c2,
                    double z);

struct Bfk1DResult {
  double lhs = 0.0;        // det of the glued problem
  double rhs_product = 0.0;  // product of piece dets times det R
  double ratio = 0.0;      // lhs / rhs_product, the gluing constant
};

// One-cut gluing identity in one dimension; the ratio is 1/2 independently
// of potential, cut position, shift and outer boundary conditions.
Bfk1DResult bfk_1d_check(const SchrodingerProblem& p, double c, double z);

}  // namespace specdet
