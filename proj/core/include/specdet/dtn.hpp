#pragma once

#include <functional>
#include <string>
#include <vector>

#include "specdet/numerics.hpp"
#include "specdet/spectra.hpp"

namespace specdet {

enum class OuterBC { dirichlet, neumann };

// Operator acting diagonally on the mode decomposition of L^2(Y): scalar
// symbol(mu) on each positive eigenspace, zero_mode_value on ker Delta_Y.
// reference_scale c records the large-mu behaviour symbol ~ c sqrt(mu),
// which fixes the zeta regularization of log det.
struct ModeOperator {
  CrossSectionSpectrum spectrum;
  std::function<double(double)> symbol;
  double zero_mode_value = 0.0;
  double reference_scale = 1.0;
  std::string tag;
};

struct Block2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a22 = 0.0;
};

// Symmetric 2x2 block per mode, for the two-interface Dirichlet-to-Neumann
// operators; det block ~ (c sqrt(mu))^2 with c = reference_scale.
struct BlockModeOperator {
  CrossSectionSpectrum spectrum;
  std::function<Block2(double)> block;
  Block2 zero_block;
  double reference_scale = 1.0;
  std::string tag;
};

// Dirichlet-to-Neumann symbol of a cylinder cap [0, a] x Y seen from the
// cut, with the given condition at the outer end:
//   dirichlet: nu coth(a nu), zero mode 1/a
//   neumann:   nu tanh(a nu), zero mode 0
// evaluated in overflow-free exponential form.
ModeOperator cap_dtn(double a, OuterBC outer, const CrossSectionSpectrum& spec);

// Half-infinite cylinder: symbol sqrt(mu), zero mode 0.
ModeOperator half_cylinder_dtn(const CrossSectionSpectrum& spec);

// Single-interface operator of a cap with an infinite cylinder attached on
// the other side of the cut: Q_cap + sqrt(Delta_Y).
ModeOperator cap_plus_half_cylinder(const ModeOperator& cap);

// Two-interface operator at neck length infinity: diag(Q_1 + nu, Q_2 + nu).
BlockModeOperator assemble_R_infinity(const ModeOperator& cap1,
                                      const ModeOperator& cap2,
                                      const CrossSectionSpectrum& spec);

// Neck contribution of the finite cylinder [-r, r] x Y:
//   diag entries  2 nu e^{-4 nu r} / (1 - e^{-4 nu r})
//   off-diagonal -2 nu e^{-2 nu r} / (1 - e^{-4 nu r})
//   zero block   (1/2r) [[1, -1], [-1, 1]].
BlockModeOperator assemble_K_r(const CrossSectionSpectrum& spec, double r);

// R_r = R_infinity + K_r.
BlockModeOperator assemble_R_r(const BlockModeOperator& r_inf,
                               const CrossSectionSpectrum& spec, double r);

// Single-cut operator of cap + neck [0, r] with a Dirichlet far end:
//   Q_cap + nu coth(r nu) = (Q_cap + nu) + L_r,
//   L_r = 2 nu e^{-2 nu r} / (1 - e^{-2 nu r}),  L_r(0) = 1/r.
ModeOperator assemble_L_r(const ModeOperator& cap,
                          const CrossSectionSpectrum& spec, double r);

// Zeta-regularized determinant of a mode operator with symbol ~ c sqrt(mu):
//   log det = h log(zero part)
//           + copies (zeta_Y(0) log c - zeta_Y'(0) / 2)
//           + sum_{mu>0} mult (log det block(mu) - copies log(c sqrt(mu))),
// the correction series converging exponentially.  Throws
// singular_operator_error on a non-positive mode (naming the mode) and on a
// vanishing zero part; use det_zeta_block_full for operators with kernel.
ValueWithError det_zeta_block(const ModeOperator& op);
ValueWithError det_zeta_block(const BlockModeOperator& op);

struct BlockDetResult {
  int kernel_dim = 0;            // zero eigenvalues of the zero-mode block
  std::vector<double> zero_eigen;  // its nonzero eigenvalues (with h-fold copies collapsed)
  double log_det = 0.0;          // log det including zero-mode factors; NaN if kernel_dim > 0
  double log_det_prime = 0.0;    // log det over the kernel complement
  double error = 0.0;
};

BlockDetResult det_zeta_block_full(const ModeOperator& op);
BlockDetResult det_zeta_block_full(const BlockModeOperator& op);

struct KernelSplit {
  int kernel_dim = 0;
  std::vector<double> nonzero_eigen;
};

// Eigenvalue split of the zero-mode block of an operator, with kernel
// tolerance 1e-11 relative to 1/r.
KernelSplit kernel_split(const BlockModeOperator& op, double r);
KernelSplit kernel_split(const ModeOperator& op, double r);

struct DtnProbeResult {
  double slope = 0.0;      // fitted power of lambda in det R(lambda)
  double log_constant = 0.0;  // fitted intercept, the extrapolated constant
  std::vector<double> lambdas;
  std::vector<double> log_dets;
};

// Small-shift expansion of the single-boundary operator
//
//   R(lambda) = Q_cap(lambda) + sqrt(Delta_Y + lambda),
//
// the cap glued to a half-infinite cylinder, with every symbol evaluated on
// the shifted spectrum mu -> mu + lambda.  For a Neumann-outer cap the zero
// mode contributes sqrt(lambda) tanh(a sqrt(lambda)) + sqrt(lambda), which
// vanishes like sqrt(lambda), so the fitted slope of log det R(lambda)
// against log lambda tends to (dim ker R(0)) / 2.  A Dirichlet-outer cap
// leaves R(0) invertible and the slope tends to 0.  The intercept
// extrapolates log det of R(0) restricted to the kernel complement.
DtnProbeResult detR_small_lambda_probe(double a, OuterBC outer,
                                       const CrossSectionSpectrum& spec,
                                       const std::vector<double>& grid);

}  // namespace specdet
