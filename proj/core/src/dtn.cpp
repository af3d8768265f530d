#include "specdet/dtn.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "specdet/errors.hpp"
#include "specdet/zeta_det.hpp"

namespace specdet {

namespace {

// 1 - e^{-x} with full relative precision for small x.
double one_minus_exp(double x) { return -std::expm1(-x); }

// nu coth(a nu) and nu tanh(a nu) without hyperbolic overflow.
double nu_coth(double a, double nu) {
  const double e = std::exp(-2.0 * a * nu);
  return nu * (1.0 + 2.0 * e / one_minus_exp(2.0 * a * nu));
}

double nu_tanh(double a, double nu) {
  const double e = std::exp(-2.0 * a * nu);
  return nu * (1.0 - 2.0 * e / (1.0 + e));
}

struct ZeroEigen {
  double lo = 0.0;
  double hi = 0.0;
};

ZeroEigen sym2_eigen(const Block2& b) {
  const double mean = 0.5 * (b.a11 + b.a22);
  const double rad =
      std::sqrt(0.25 * (b.a11 - b.a22) * (b.a11 - b.a22) + b.a12 * b.a12);
  return {mean - rad, mean + rad};
}

// Common regularized assembly over the positive modes.  det_log(mu) must
// return log det of the mode block, copies is the block dimension.
ValueWithError regularized_log_det(
    const CrossSectionSpectrum& spec, double scale, int copies,
    const std::function<double(double)>& det_log) {
  SpectralZeta zeta(spec);
  const ValueWithError d0 = zeta.deriv0();
  const double reg = copies * (zeta.zeta0() * std::log(scale) - 0.5 * d0.value);
  const double reg_err = copies * 0.5 * d0.error;

  double corr = 0.0;
  double err = 0.0;
  int small_streak = 0;
  double last = 0.0;
  for_each_mode(spec, [&](double mu, int mult) {
    if (mu <= 0.0) return true;
    const double term =
        mult * (det_log(mu) - copies * std::log(scale * std::sqrt(mu)));
    corr += term;
    last = std::fabs(term);
    if (last < 1e-17 * (1.0 + std::fabs(corr))) {
      ++small_streak;
    } else {
      small_streak = 0;
    }
    return small_streak < 3;
  });
  err += 4.0 * last;
  return {reg + corr, reg_err + err + 1e-14};
}

constexpr double kKernelTol = 1e-11;

}  // namespace

ModeOperator cap_dtn(double a, OuterBC outer,
                     const CrossSectionSpectrum& spec) {
  if (!(a > 0.0)) throw degenerate_input_error("cap_dtn: cap length <= 0");
  ModeOperator op;
  op.spectrum = spec;
  op.reference_scale = 1.0;
  if (outer == OuterBC::dirichlet) {
    op.symbol = [a](double mu) { return nu_coth(a, std::sqrt(mu)); };
    op.zero_mode_value = 1.0 / a;
    op.tag = "cap_dirichlet";
  } else {
    op.symbol = [a](double mu) { return nu_tanh(a, std::sqrt(mu)); };
    op.zero_mode_value = 0.0;
    op.tag = "cap_neumann";
  }
  return op;
}

ModeOperator half_cylinder_dtn(const CrossSectionSpectrum& spec) {
  ModeOperator op;
  op.spectrum = spec;
  op.symbol = [](double mu) { return std::sqrt(mu); };
  op.zero_mode_value = 0.0;
  op.reference_scale = 1.0;
  op.tag = "half_cylinder";
  return op;
}

ModeOperator cap_plus_half_cylinder(const ModeOperator& cap) {
  ModeOperator op;
  op.spectrum = cap.spectrum;
  auto q = cap.symbol;
  op.symbol = [q](double mu) { return q(mu) + std::sqrt(mu); };
  op.zero_mode_value = cap.zero_mode_value;
  op.reference_scale = 2.0;
  op.tag = cap.tag + "+half_cylinder";
  return op;
}

BlockModeOperator assemble_R_infinity(const ModeOperator& cap1,
                                      const ModeOperator& cap2,
                                      const CrossSectionSpectrum& spec) {
  BlockModeOperator op;
  op.spectrum = spec;
  auto q1 = cap1.symbol;
  auto q2 = cap2.symbol;
  op.block = [q1, q2](double mu) {
    const double nu = std::sqrt(mu);
    return Block2{q1(mu) + nu, 0.0, q2(mu) + nu};
  };
  op.zero_block = {cap1.zero_mode_value, 0.0, cap2.zero_mode_value};
  op.reference_scale = 2.0;
  op.tag = "R_infinity";
  return op;
}

BlockModeOperator assemble_K_r(const CrossSectionSpectrum& spec, double r) {
  if (!(r > 0.0)) throw degenerate_input_error("assemble_K_r: r <= 0");
  BlockModeOperator op;
  op.spectrum = spec;
  op.block = [r](double mu) {
    const double nu = std::sqrt(mu);
    const double e2 = std::exp(-2.0 * nu * r);
    const double denom = one_minus_exp(4.0 * nu * r);
    return Block2{2.0 * nu * e2 * e2 / denom, -2.0 * nu * e2 / denom,
                  2.0 * nu * e2 * e2 / denom};
  };
  const double inv2r = 1.0 / (2.0 * r);
  op.zero_block = {inv2r, -inv2r, inv2r};
  op.reference_scale = 1.0;
  op.tag = "K_r";
  return op;
}

BlockModeOperator assemble_R_r(const BlockModeOperator& r_inf,
                               const CrossSectionSpectrum& spec, double r) {
  BlockModeOperator op;
  op.spectrum = spec;
  auto base = r_inf.block;
  auto kr = assemble_K_r(spec, r);
  auto neck = kr.block;
  op.block = [base, neck](double mu) {
    const Block2 b = base(mu);
    const Block2 k = neck(mu);
    return Block2{b.a11 + k.a11, b.a12 + k.a12, b.a22 + k.a22};
  };
  op.zero_block = {r_inf.zero_block.a11 + kr.zero_block.a11,
                   r_inf.zero_block.a12 + kr.zero_block.a12,
                   r_inf.zero_block.a22 + kr.zero_block.a22};
  op.reference_scale = 2.0;
  op.tag = "R_r";
  return op;
}

ModeOperator assemble_L_r(const ModeOperator& cap,
                          const CrossSectionSpectrum& spec, double r) {
  if (!(r > 0.0)) throw degenerate_input_error("assemble_L_r: r <= 0");
  ModeOperator op;
  op.spectrum = spec;
  auto q = cap.symbol;
  op.symbol = [q, r](double mu) {
    const double nu = std::sqrt(mu);
    return q(mu) + nu_coth(r, nu);
  };
  op.zero_mode_value = cap.zero_mode_value + 1.0 / r;
  op.reference_scale = 2.0;
  op.tag = cap.tag + "+neck_dirichlet";
  return op;
}

BlockDetResult det_zeta_block_full(const ModeOperator& op) {
  BlockDetResult out;
  const int h = op.spectrum.h();
  if (h > 0) {
    const double z = op.zero_mode_value;
    if (std::fabs(z) <= kKernelTol) {
      out.kernel_dim = h;
    } else if (z < 0.0) {
      throw singular_operator_error(
          "det_zeta_block: negative zero-mode value");
    } else {
      out.zero_eigen.push_back(z);
      out.log_det_prime += h * std::log(z);
    }
  }
  auto symbol = op.symbol;
  const ValueWithError reg = regularized_log_det(
      op.spectrum, op.reference_scale, 1, [&symbol](double mu) {
        const double s = symbol(mu);
        if (!(s > 0.0)) {
          throw singular_operator_error(
              "det_zeta_block: non-positive symbol at mode mu = " +
              std::to_string(mu));
        }
        return std::log(s);
      });
  out.log_det_prime += reg.value;
  out.error = reg.error;
  out.log_det = (out.kernel_dim == 0)
                    ? out.log_det_prime
                    : std::numeric_limits<double>::quiet_NaN();
  return out;
}

BlockDetResult det_zeta_block_full(const BlockModeOperator& op) {
  BlockDetResult out;
  const int h = op.spectrum.h();
  if (h > 0) {
    const ZeroEigen ze = sym2_eigen(op.zero_block);
    for (double lambda : {ze.lo, ze.hi}) {
      if (std::fabs(lambda) <= kKernelTol) {
        out.kernel_dim += h;
      } else if (lambda < 0.0) {
        throw singular_operator_error(
            "det_zeta_block: negative zero-block eigenvalue");
      } else {
        out.zero_eigen.push_back(lambda);
        out.log_det_prime += h * std::log(lambda);
      }
    }
  }
  auto block = op.block;
  const ValueWithError reg = regularized_log_det(
      op.spectrum, op.reference_scale, 2, [&block](double mu) {
        const Block2 b = block(mu);
        const double det = b.a11 * b.a22 - b.a12 * b.a12;
        if (!(det > 0.0) || !(b.a11 > 0.0)) {
          throw singular_operator_error(
              "det_zeta_block: non-positive block at mode mu = " +
              std::to_string(mu));
        }
        return std::log(det);
      });
  out.log_det_prime += reg.value;
  out.error = reg.error;
  out.log_det = (out.kernel_dim == 0)
                    ? out.log_det_prime
                    : std::numeric_limits<double>::quiet_NaN();
  return out;
}

namespace {

ValueWithError exp_of(const BlockDetResult& r, const std::string& tag) {
  if (r.kernel_dim > 0) {
    throw singular_operator_error("det_zeta_block: " + tag +
                                  " has a kernel; use det_zeta_block_full");
  }
  const double v = std::exp(r.log_det);
  return {v, v * (r.error + 1e-14)};
}

}  // namespace

ValueWithError det_zeta_block(const ModeOperator& op) {
  return exp_of(det_zeta_block_full(op), op.tag);
}

ValueWithError det_zeta_block(const BlockModeOperator& op) {
  return exp_of(det_zeta_block_full(op), op.tag);
}

KernelSplit kernel_split(const BlockModeOperator& op, double r) {
  KernelSplit out;
  const double tol = kKernelTol * std::max(1.0, 1.0 / r);
  const ZeroEigen ze = sym2_eigen(op.zero_block);
  for (double lambda : {ze.lo, ze.hi}) {
    if (std::fabs(lambda) <= tol) {
      ++out.kernel_dim;
    } else {
      out.nonzero_eigen.push_back(lambda);
    }
  }
  return out;
}

KernelSplit kernel_split(const ModeOperator& op, double r) {
  KernelSplit out;
  const double tol = kKernelTol * std::max(1.0, 1.0 / r);
  if (std::fabs(op.zero_mode_value) <= tol) {
    out.kernel_dim = 1;
  } else {
    out.nonzero_eigen.push_back(op.zero_mode_value);
  }
  return out;
}

DtnProbeResult detR_small_lambda_probe(double a, OuterBC outer,
                                       const CrossSectionSpectrum& spec,
                                       const std::vector<double>& grid) {
  if (grid.size() < 2) {
    throw degenerate_input_error("detR_small_lambda_probe: need >= 2 shifts");
  }
  DtnProbeResult out;
  std::vector<double> logl, logd;
  for (double lambda : grid) {
    if (!(lambda > 0.0)) {
      throw degenerate_input_error("detR_small_lambda_probe: shift <= 0");
    }
    const CrossSectionSpectrum sl = shift_spectrum(spec, lambda);
    const ModeOperator op = cap_plus_half_cylinder(cap_dtn(a, outer, sl));
    const BlockDetResult det = det_zeta_block_full(op);
    out.lambdas.push_back(lambda);
    out.log_dets.push_back(det.log_det);
    logl.push_back(std::log(lambda));
    logd.push_back(det.log_det);
  }
  const LineFit fit = fit_line(logl, logd);
  out.slope = fit.slope;
  out.log_constant = fit.intercept;
  return out;
}

}  // namespace specdet
