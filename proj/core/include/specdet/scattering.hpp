#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

namespace specdet {

// Finite-dimensional scattering data on ker Delta_Y: two real symmetric
// involutions S1, S2 with their +-1 eigenspace geometry.
//
// The derived pieces follow the zero-energy calculus of glued manifolds:
// V_i^+- are the eigenspaces, W is the orthogonal complement of
// (V1+ cap V2+) oplus (V1- cap V2-), C12 the restriction of S1 S2 to W,
// h = dim V1+ + dim V2+ - 2 h12 and h12 = dim(V1+ cap V2+).
struct InvolutionPair {
  Eigen::MatrixXd S1;
  Eigen::MatrixXd S2;
  Eigen::MatrixXd V1p, V1m, V2p, V2m;  // orthonormal eigenbasis columns
  Eigen::MatrixXd W;                   // complement basis, possibly 0 columns
  Eigen::MatrixXd C12;                 // W^T S1 S2 W
  int h = 0;
  int h12 = 0;
};

InvolutionPair make_involution_pair(const Eigen::MatrixXd& S1,
                                    const Eigen::MatrixXd& S2);

// det((Id - C12)/2) on W; an empty W gives 1.  Lies in [0, 1] since C12 is
// orthogonal.
double det_half_id_minus_c12(const InvolutionPair& p);

// Determinant of the block operator (x1, x2) -> (x1 - P1 x2, x2 - P2 x1) on
// X1 oplus X2, where X_i is the complement of V1+ cap V2+ inside V_i^+ and
// P_i the orthogonal projection onto X_i.  Equal to det((Id - C12)/2).
double det_S_block(const InvolutionPair& p);

// Gram matrix T^T T of trace vectors given as columns; throws on
// rank-deficient input.  An empty input yields the 0x0 matrix whose
// determinant is 1 by convention.
Eigen::MatrixXd gram_A(const Eigen::MatrixXd& trace_columns);

// Gram matrix of an r-dependent kernel basis (same inner product; r is
// recorded for the deficit diagnostics r^q det B_r - 1 = O(1/r)).
Eigen::MatrixXd gram_B_r(const Eigen::MatrixXd& trace_columns, double r);

// det of a Gram matrix with the empty convention det(0x0) = 1.
double gram_det(const Eigen::MatrixXd& gram);

// Synthetic kernel basis of the adiabatic model: psi_k = e_k / sqrt(r)
// + (d_k / r) f_k with orthonormal e_k, f_k, so that
// r^q det B_r - 1 = |d|^2 / r + O(r^{-2}).
Eigen::MatrixXd synthetic_kernel_traces(const Eigen::VectorXd& d, double r);

// Log-log slope of r^q det B_r - 1 over the grid; the model predicts -1.
double gram_b_deficit_slope(const Eigen::VectorXd& d,
                            const std::vector<double>& r_grid);

// Random symmetric involution Q diag(+-1) Q^T with Q from the QR of a
// Gaussian matrix.
Eigen::MatrixXd random_involution(std::mt19937_64& rng, int dim);

InvolutionPair random_involution_pair(std::mt19937_64& rng, int dim);

}  // namespace specdet
