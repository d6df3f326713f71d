#pragma once

// Circulant-tridiagonal Gaussian matrices, their imaginary diagonal
// perturbations, and principal-minor (LDU) machinery.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ncho/special_functions.hpp"

namespace ncho {

using Complex = std::complex<double>;

/// A subset of {1, ..., n}, 1-based and strictly increasing.
using Subset = std::vector<int>;

/// Throws DomainError unless j is strictly increasing inside {1..n}.
void validate_subset(std::span<const int> j, int n);

struct DeltaMatrix {
  int n = 0;
  std::vector<double> u;
  Eigen::MatrixXd entries;
};

/// Delta_n(u). Each u_i must lie in the open interval (0, 1).
DeltaMatrix build_delta(std::span<const double> u);

/// Entries of Delta_n(u) for u_i in [0, 1); no domain check on the lower end.
/// For n = 2 both wrap-around contributions land on the single off-diagonal.
Eigen::MatrixXd delta_entries(std::span<const double> u);

/// (1 - u_1^2 ... u_n^2)^2 / prod (1 - u_i^4).
double delta_det_closed_form(std::span<const double> u);

struct XiDiagonal {
  int n = 0;
  Subset j;
  std::vector<int> signs;  ///< -1, +1, -1, ... on the sorted positions of j, 0 elsewhere
};

/// Xi_n(j) = i * sum_r (-1)^r E_{j_r j_r}. j must be an even-size subset of {1..n}.
XiDiagonal build_xi(int n, std::span<const int> j);

/// Dense Delta_n(u) + q Xi_n(j).
Eigen::MatrixXcd perturbed_delta(std::span<const double> u, double q, const XiDiagonal& xi);

struct MinorChain {
  std::vector<Complex> d;       ///< d[0] = 1, d[m] = m-th leading principal minor
  std::vector<Complex> pivots;  ///< pivots[m-1] = d[m] / d[m-1], the diagonal of D in L D L'
};

/// Leading principal minors of Delta_n(u) + q Xi_n(j) by one O(n) elimination
/// pass over the tridiagonal-plus-corner structure. An empty j gives the
/// unperturbed matrix.
MinorChain minor_chain(std::span<const double> u, double q, std::span<const int> j);

struct LduFactors {
  Eigen::MatrixXcd lower;  ///< unit lower triangular
  Eigen::VectorXcd diag;   ///< D = diag(d_1, d_2/d_1, ..., d_n/d_{n-1})
};

/// A = L D L' for a complex symmetric A whose leading principal minors are
/// all nonzero. Dense O(n^3), used as a reference for minor_chain.
LduFactors ldu_decompose(const Eigen::MatrixXcd& a);

/// Re prod_m (d_m / d_{m-1})^{-1/2}, each root on the branch with positive
/// real part. Throws NumericError if the imaginary residual exceeds 1e-8
/// relative to the result.
double inv_sqrt_det(const MinorChain& chain);

/// tr(B(x_1,x_2) B(x_2,x_3) ... B(x_n,x_1)) from the explicit 2x2 matrices.
double trace_B_direct(std::span<const double> x, const Params& p);

/// The even-subset cosine expansion of the same trace. n <= 20.
double trace_B_expansion(std::span<const double> x, const Params& p);

}  // namespace ncho
