#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "specdet/numerics.hpp"
#include "specdet/spectra.hpp"

namespace specdet {

// Model relative pairs (Delta_1, Delta_0) on a manifold with cylindrical
// end over the cross section Y.  The relative heat trace
// Tr(exp(-t Delta_1) - exp(-t Delta_0)) of each pair has a closed product
// form in the cross-section theta function:
//   identical             0
//   neumann_vs_dirichlet  (1/2) theta(t)
//   translate(a)          a (4 pi t)^{-1/2} theta(t)
//   neumann_cap(a)        sum of the two above
// The translate pair compares a cylinder lengthened by a against the
// original (equivalently a Dirichlet cap of length a against the half
// cylinder); neumann_cap swaps the cap condition to Neumann, which adds the
// boundary-condition pair on top.
enum class RelativePairKind {
  identical,
  neumann_vs_dirichlet,
  translate,
  neumann_cap
};

std::string relative_pair_kind_name(RelativePairKind k);

struct RelativePair {
  RelativePairKind kind = RelativePairKind::identical;
  CrossSectionSpectrum spectrum;
  double a = 0.0;  // translation / cap length, unused for the first two kinds

  double b0() const;   // large-time constant of the relative heat trace
  double rho() const;  // leading small-time power t^{-rho}
  double rel_heat_trace(double t) const;
  std::vector<PowerTerm> small_t_coeffs() const;
  RelativePair shifted(double lambda) const;
};

RelativePair make_relative_pair(RelativePairKind kind,
                                const CrossSectionSpectrum& spectrum,
                                double a = 0.0);

// Zeta-regularized relative determinant det(Delta_1, Delta_0) of the pair,
// computed from the meromorphic continuation of the relative zeta function:
//   identical             1
//   neumann_vs_dirichlet  det(Delta_Y)^{1/2}
//   translate(a)          exp(-a xi'(0) / 2)
//   neumann_cap(a)        exp(-a xi'(0) / 2) det(Delta_Y)^{1/2}
// with the pole-aware xi'(0) of the (possibly shifted) cross section.
ValueWithError relative_det(const RelativePair& p);

// b0 = k + l/2 from the kernel dimension k of Delta and the scattering
// matrix trace at zero, Tr S(0) = 2l - h_Y.
double b0_from_scattering(int k, double trace_S0, int h_Y);

struct SmallLambdaProbe {
  double slope = 0.0;     // fitted power of lambda, the b0 of the pair
  double constant = 0.0;  // limiting modified determinant
  std::vector<double> lambdas;
  std::vector<double> log_dets;
  bool dropped_smallest = false;
};

// Fits log det(lambda) = slope * log lambda + log constant over the grid of
// shifts; the smallest lambda is dropped when its certified determinant
// error exceeds a tenth of the increment it contributes to the fit.
SmallLambdaProbe small_lambda_probe(const RelativePair& p,
                                    const std::vector<double>& grid);

nlohmann::json relative_pair_to_json(const RelativePair& p);
RelativePair relative_pair_from_json(const nlohmann::json& j);

}  // namespace specdet
