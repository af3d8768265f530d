#include "specdet/scattering.hpp"

#include <cmath>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "specdet/errors.hpp"
#include "specdet/numerics.hpp"

namespace specdet {

namespace {

// Singular value above this marks a principal angle of (numerically) zero,
// i.e. a common direction of the two subspaces.
constexpr double kIntersectionSigma = 1.0 - 1e-9;

void check_involution(const Eigen::MatrixXd& S, const char* name) {
  if (S.rows() != S.cols() || S.rows() == 0) {
    throw domain_error(std::string(name) + " must be square and nonempty");
  }
  const double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) {
    throw domain_error(std::string(name) + " is not symmetric");
  }
  const Eigen::MatrixXd S2 = S * S;
  const double dev =
      (S2 - Eigen::MatrixXd::Identity(S.rows(), S.cols())).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    throw domain_error(std::string(name) + " does not square to the identity");
  }
}

// Columns of V spanning the +1 (plus = true) or -1 eigenspace.
Eigen::MatrixXd eigenspace(const Eigen::MatrixXd& S, bool plus) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  const Eigen::VectorXd& ev = es.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(std::abs(ev[i]) - 1.0) > 1e-8) {
      throw numeric_error("involution eigenvalue away from +-1");
    }
  }
  int nm = 0;
  while (nm < ev.size() && ev[nm] < 0.0) ++nm;
  if (plus) {
    return es.eigenvectors().rightCols(ev.size() - nm);
  }
  return es.eigenvectors().leftCols(nm);
}

// Orthonormal basis of U cap V via principal angles: the left singular
// vectors of U^T V with singular value exceeding kIntersectionSigma, mapped
// back through U.
Eigen::MatrixXd subspace_intersection(const Eigen::MatrixXd& U,
                                      const Eigen::MatrixXd& V) {
  const int n = static_cast<int>(U.rows());
  if (U.cols() == 0 || V.cols() == 0) return Eigen::MatrixXd(n, 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(U.transpose() * V,
                                        Eigen::ComputeFullU);
  int k = 0;
  while (k < svd.singularValues().size() &&
         svd.singularValues()[k] > kIntersectionSigma) {
    ++k;
  }
  return U * svd.matrixU().leftCols(k);
}

// Orthonormal basis of the complement of span(inter) inside span(V); both
// inputs have orthonormal columns and inter is a subspace of span(V).
Eigen::MatrixXd complement_within(const Eigen::MatrixXd& V,
                                  const Eigen::MatrixXd& inter) {
  const int d = static_cast<int>(V.cols()) - static_cast<int>(inter.cols());
  if (d <= 0) return Eigen::MatrixXd(V.rows(), 0);
  if (inter.cols() == 0) return V;
  const Eigen::MatrixXd projected =
      V - inter * (inter.transpose() * V);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(projected, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(d);
}

}  // namespace

InvolutionPair make_involution_pair(const Eigen::MatrixXd& S1,
                                    const Eigen::MatrixXd& S2) {
  check_involution(S1, "S1");
  check_involution(S2, "S2");
  if (S1.rows() != S2.rows()) {
    throw domain_error("S1 and S2 act on different spaces");
  }
  const int n = static_cast<int>(S1.rows());

  InvolutionPair p;
  p.S1 = S1;
  p.S2 = S2;
  p.V1p = eigenspace(S1, true);
  p.V1m = eigenspace(S1, false);
  p.V2p = eigenspace(S2, true);
  p.V2m = eigenspace(S2, false);

  const Eigen::MatrixXd inter_pp = subspace_intersection(p.V1p, p.V2p);
  const Eigen::MatrixXd inter_mm = subspace_intersection(p.V1m, p.V2m);
  p.h12 = static_cast<int>(inter_pp.cols());
  p.h = static_cast<int>(p.V1p.cols() + p.V2p.cols()) - 2 * p.h12;

  const int k = static_cast<int>(inter_pp.cols() + inter_mm.cols());
  if (k == 0) {
    p.W = Eigen::MatrixXd::Identity(n, n);
  } else if (k == n) {
    p.W = Eigen::MatrixXd(n, 0);
  } else {
    Eigen::MatrixXd both(n, k);
    both << inter_pp, inter_mm;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(both);
    const Eigen::MatrixXd Q =
        qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    p.W = Q.rightCols(n - k);
  }

  p.C12 = p.W.transpose() * S1 * S2 * p.W;
  if (p.W.cols() > 0) {
    const double ortho_dev =
        (p.C12.transpose() * p.C12 -
         Eigen::MatrixXd::Identity(p.C12.rows(), p.C12.cols()))
            .cwiseAbs()
            .maxCoeff();
    if (ortho_dev > 1e-8) {
      throw numeric_error(
          "S1 S2 does not restrict orthogonally to the complement; "
          "the intersection split failed");
    }
    // A zero eigenvalue of (Id - C12)/2 would mean a common direction
    // escaped the split above.
    if (!(det_half_id_minus_c12(p) > 0.0)) {
      throw numeric_error("intersection split left a common direction behind");
    }
  }
  return p;
}

double det_half_id_minus_c12(const InvolutionPair& p) {
  const int m = static_cast<int>(p.C12.rows());
  if (m == 0) return 1.0;
  const Eigen::MatrixXd M =
      0.5 * (Eigen::MatrixXd::Identity(m, m) - p.C12);
  return M.determinant();
}

double det_S_block(const InvolutionPair& p) {
  const Eigen::MatrixXd inter_pp = subspace_intersection(p.V1p, p.V2p);
  const Eigen::MatrixXd B1 = complement_within(p.V1p, inter_pp);
  const Eigen::MatrixXd B2 = complement_within(p.V2p, inter_pp);
  const int d1 = static_cast<int>(B1.cols());
  const int d2 = static_cast<int>(B2.cols());
  if (d1 + d2 == 0) return 1.0;
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(d1 + d2, d1 + d2);
  if (d1 > 0 && d2 > 0) {
    const Eigen::MatrixXd cross = B1.transpose() * B2;
    M.topRightCorner(d1, d2) = -cross;
    M.bottomLeftCorner(d2, d1) = -cross.transpose();
  }
  return M.determinant();
}

Eigen::MatrixXd gram_A(const Eigen::MatrixXd& trace_columns) {
  const int q = static_cast<int>(trace_columns.cols());
  if (q == 0) return Eigen::MatrixXd(0, 0);
  if (trace_columns.rows() < trace_columns.cols()) {
    throw degenerate_input_error("more traces than ambient dimensions");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(trace_columns);
  const double smax = svd.singularValues()[0];
  const double smin = svd.singularValues()[q - 1];
  if (smax <= 0.0 || smin < 1e-12 * smax) {
    throw degenerate_input_error("trace vectors are linearly dependent");
  }
  return trace_columns.transpose() * trace_columns;
}

Eigen::MatrixXd gram_B_r(const Eigen::MatrixXd& trace_columns, double r) {
  if (!(r > 0.0)) throw domain_error("gram_B_r requires r > 0");
  return gram_A(trace_columns);
}

double gram_det(const Eigen::MatrixXd& gram) {
  if (gram.rows() == 0) return 1.0;
  return gram.determinant();
}

Eigen::MatrixXd synthetic_kernel_traces(const Eigen::VectorXd& d, double r) {
  if (!(r > 0.0)) throw domain_error("synthetic traces require r > 0");
  const int q = static_cast<int>(d.size());
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(2 * q, q);
  for (int k = 0; k < q; ++k) {
    T(k, k) = 1.0 / std::sqrt(r);
    T(q + k, k) = d[k] / r;
  }
  return T;
}

double gram_b_deficit_slope(const Eigen::VectorXd& d,
                            const std::vector<double>& r_grid) {
  if (r_grid.size() < 2) throw domain_error("slope fit needs >= 2 radii");
  const int q = static_cast<int>(d.size());
  std::vector<double> log_r, log_deficit;
  log_r.reserve(r_grid.size());
  log_deficit.reserve(r_grid.size());
  for (const double r : r_grid) {
    const Eigen::MatrixXd B = gram_B_r(synthetic_kernel_traces(d, r), r);
    const double deficit = std::pow(r, q) * gram_det(B) - 1.0;
    if (!(deficit > 0.0)) {
      throw numeric_error("kernel Gram deficit is not positive");
    }
    log_r.push_back(std::log(r));
    log_deficit.push_back(std::log(deficit));
  }
  return fit_line(log_r, log_deficit).slope;
}

Eigen::MatrixXd random_involution(std::mt19937_64& rng, int dim) {
  if (dim <= 0) throw domain_error("involution dimension must be positive");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd G(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) G(i, j) = gauss(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  const Eigen::MatrixXd Q =
      qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim);
  Eigen::VectorXd signs(dim);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < dim; ++i) signs[i] = coin(rng) == 0 ? -1.0 : 1.0;
  Eigen::MatrixXd S = Q * signs.asDiagonal() * Q.transpose();
  return 0.5 * (S + S.transpose());
}

InvolutionPair random_involution_pair(std::mt19937_64& rng, int dim) {
  const Eigen::MatrixXd S1 = random_involution(rng, dim);
  const Eigen::MatrixXd S2 = random_involution(rng, dim);
  return make_involution_pair(S1, S2);
}

}  // namespace specdet
