#include "specdet/oned_oracle.hpp"

#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "specdet/errors.hpp"

namespace specdet {

namespace {

Matrix2 identity2() {
  return {{{1.0, 0.0}, {0.0, 1.0}}};
}

Matrix2 mul(const Matrix2& A, const Matrix2& B) {
  Matrix2 C{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      C[i][j] = A[i][0] * B[0][j] + A[i][1] * B[1][j];
    }
  }
  return C;
}

// Exact propagator over a segment of length d with constant q = W + shift.
Matrix2 constant_propagator(double q, double d) {
  Matrix2 M{};
  if (q > 0.0) {
    const double w = std::sqrt(q);
    M[0][0] = std::cosh(w * d);
    M[0][1] = std::sinh(w * d) / w;
    M[1][0] = w * std::sinh(w * d);
    M[1][1] = M[0][0];
  } else if (q < 0.0) {
    const double w = std::sqrt(-q);
    M[0][0] = std::cos(w * d);
    M[0][1] = std::sin(w * d) / w;
    M[1][0] = -w * std::sin(w * d);
    M[1][1] = M[0][0];
  } else {
    M[0][0] = 1.0;
    M[0][1] = d;
    M[1][0] = 0.0;
    M[1][1] = 1.0;
  }
  return M;
}

using State = std::array<double, 2>;

Matrix2 ode_propagator(const std::function<double(double)>& q, double x0,
                       double x1) {
  namespace odeint = boost::numeric::odeint;
  auto rhs = [&q](const State& y, State& dydx, double x) {
    dydx[0] = y[1];
    dydx[1] = q(x) * y[0];
  };
  Matrix2 M{};
  for (int col = 0; col < 2; ++col) {
    State y{col == 0 ? 1.0 : 0.0, col == 0 ? 0.0 : 1.0};
    auto stepper = odeint::make_controlled(
        1e-13, 1e-13, odeint::runge_kutta_dopri5<State>());
    odeint::integrate_adaptive(stepper, rhs, y, x0, x1, (x1 - x0) / 64.0);
    M[0][col] = y[0];
    M[1][col] = y[1];
  }
  return M;
}

}  // namespace

Matrix2 transfer_matrix(const SchrodingerProblem& p, double x0, double x1) {
  if (!(x1 >= x0) || x0 < p.a - 1e-12 || x1 > p.b + 1e-12) {
    throw degenerate_input_error("transfer_matrix: bad subinterval");
  }
  if (x1 == x0) return identity2();

  switch (p.kind) {
    case PotentialKind::constant:
      return constant_propagator(p.w_const + p.shift, x1 - x0);
    case PotentialKind::piecewise: {
      if (p.segments.empty()) {
        throw degenerate_input_error("transfer_matrix: no segments");
      }
      Matrix2 M = identity2();
      double pos = x0;
      for (const auto& seg : p.segments) {
        const double lo = std::max(seg.x0, x0);
        const double hi = std::min(seg.x1, x1);
        if (hi > lo) {
          if (lo > pos + 1e-12) {
            throw degenerate_input_error("transfer_matrix: gap in segments");
          }
          M = mul(constant_propagator(seg.w + p.shift, hi - lo), M);
          pos = hi;
        }
      }
      if (pos < x1 - 1e-12) {
        throw degenerate_input_error("transfer_matrix: segments do not cover interval");
      }
      return M;
    }
    case PotentialKind::callable: {
      if (!p.w_fn) throw degenerate_input_error("transfer_matrix: missing potential");
      const double shift = p.shift;
      auto w = p.w_fn;
      return ode_propagator([w, shift](double x) { return w(x) + shift; }, x0, x1);
    }
  }
  throw numeric_error("transfer_matrix: unreachable");
}

ValueWithError gy_det(const SchrodingerProblem& p) {
  const Matrix2 M = transfer_matrix(p, p.a, p.b);
  // Initial data (0,1) for Dirichlet, (1,0) for Neumann at the left end.
  const int col = (p.left == BC1D::dirichlet) ? 1 : 0;
  const int row = (p.right == BC1D::dirichlet) ? 0 : 1;
  const double val = 2.0 * M[row][col];
  const double rel = (p.kind == PotentialKind::callable) ? 1e-10 : 1e-13;
  return {val, rel * (std::fabs(val) + 1.0)};
}

ValueWithError gy_det_periodic(const SchrodingerProblem& p) {
  const Matrix2 M = transfer_matrix(p, p.a, p.b);
  const double val = M[0][0] + M[1][1] - 2.0;
  const double rel = (p.kind == PotentialKind::callable) ? 1e-10 : 1e-13;
  return {val, rel * (std::fabs(val) + 1.0)};
}

Matrix2 dtn_1d(const SchrodingerProblem& p, double c, double z) {
  if (!(c > p.a && c < p.b)) {
    throw degenerate_input_error("dtn_1d: cut outside the interval");
  }
  SchrodingerProblem q = p;
  q.shift = p.shift + z;

  const Matrix2 S = transfer_matrix(q, q.a, c);
  const Matrix2 T = transfer_matrix(q, c, q.b);

  // Left piece: solution obeying the outer condition at a, normalized to 1
  // at the cut; qL is its outward (+x) derivative there.
  double qL;
  if (p.left == BC1D::dirichlet) {
    if (std::fabs(S[0][1]) < 1e-300) {
      throw singular_operator_error("dtn_1d: left piece is singular");
    }
    qL = S[1][1] / S[0][1];
  } else {
    if (std::fabs(S[0][0]) < 1e-300) {
      throw singular_operator_error("dtn_1d: left piece is singular");
    }
    qL = S[1][0] / S[0][0];
  }

  // Right piece: outward direction is -x.
  double qR;
  if (p.right == BC1D::dirichlet) {
    if (std::fabs(T[0][1]) < 1e-300) {
      throw singular_operator_error("dtn_1d: right piece is singular");
    }
    qR = T[0][0] / T[0][1];
  } else {
    if (std::fabs(T[1][1]) < 1e-300) {
      throw singular_operator_error("dtn_1d: right piece is singular");
    }
    qR = T[1][0] / T[1][1];
  }

  Matrix2 R{};
  R[0][0] = qL;
  R[1][1] = qR;
  return R;
}

Matrix2 dtn_1d_pair(const SchrodingerProblem& p, double c1, double c2,
                    double z) {
  if (!(c1 > p.a && c2 > c1 && c2 < p.b)) {
    throw degenerate_input_error("dtn_1d_pair: cuts must satisfy a < c1 < c2 < b");
  }
  SchrodingerProblem q = p;
  q.shift = p.shift + z;

  // Outer pieces, computed directly from transfer matrices.
  const Matrix2 S = transfer_matrix(q, q.a, c1);
  const Matrix2 T = transfer_matrix(q, c2, q.b);
  double qL, qR;
  if (p.left == BC1D::dirichlet) {
    qL = S[1][1] / S[0][1];
  } else {
    qL = S[1][0] / S[0][0];
  }
  if (p.right == BC1D::dirichlet) {
    qR = T[0][0] / T[0][1];
  } else {
    qR = T[1][0] / T[1][1];
  }

  // Middle piece [c1, c2] contributes the symmetric two-sided map
  //   [[U11/U12, -1/U12], [-1/U12, U22/U12]]
  // (Wronskian det U = 1 makes the off-diagonal entries equal).
  const Matrix2 U = transfer_matrix(q, c1, c2);
  if (std::fabs(U[0][1]) < 1e-300) {
    throw singular_operator_error("dtn_1d_pair: middle piece is singular");
  }
  Matrix2 R{};
  R[0][0] = qL + U[0][0] / U[0][1];
  R[0][1] = -1.0 / U[0][1];
  R[1][0] = -1.0 / U[0][1];
  R[1][1] = qR + U[1][1] / U[0][1];
  return R;
}

Bfk1DResult bfk_1d_check(const SchrodingerProblem& p, double c, double z) {
  SchrodingerProblem whole = p;
  whole.shift = p.shift + z;

  SchrodingerProblem left = whole;
  left.b = c;
  left.right = BC1D::dirichlet;
  SchrodingerProblem right = whole;
  right.a = c;
  right.left = BC1D::dirichlet;

  const Matrix2 R = dtn_1d(p, c, z);

  Bfk1DResult out;
  out.lhs = gy_det(whole).value;
  out.rhs_product =
      gy_det(left).value * gy_det(right).value * (R[0][0] + R[1][1]);
  if (out.rhs_product == 0.0) {
    throw singular_operator_error("bfk_1d_check: singular factorization");
  }
  out.ratio = out.lhs / out.rhs_product;
  return out;
}

}  // namespace specdet
