#pragma once

// Hermite-basis truncation of Q and the eigenvalue route to Tr Q^{-n}.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ncho/special_functions.hpp"

namespace ncho {

/// Matrix of x d/dx + 1/2 on psi_0..psi_{N-1}:
/// entry (k, k+2) = sqrt((k+1)(k+2))/2, entry (k+2, k) = -sqrt((k+1)(k+2))/2.
Eigen::MatrixXd dilation_matrix(int N);

struct TruncatedQ {
  int N = 0;  ///< Hermite modes per component
  double alpha = 0.0;
  double beta = 0.0;
  Eigen::MatrixXd even;  ///< [[alpha H, C], [C', beta H]] over even Hermite indices
  Eigen::MatrixXd odd;   ///< same over odd indices
};

/// C = -(x d/dx + 1/2) restricted to the sector, so C(k, k+2) = -sqrt((k+1)(k+2))/2.
/// N >= 16.
TruncatedQ build_truncated_q(const Params& p, int N);

/// No parameter-domain check; for probing invalid (alpha, beta).
TruncatedQ build_truncated_q(double alpha, double beta, int N);

/// Ascending eigenvalues of a real symmetric matrix.
std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m);

/// Merged ascending spectrum of both parity blocks. Throws NumericError when
/// require_positive and the smallest eigenvalue is <= 0.
std::vector<double> eigenvalues(const TruncatedQ& tq, bool require_positive = true);

/// 1 / (sum over both branches of the angular mean of 1/mu(theta)): the
/// phase-space slope of lambda_i against i.
double semiclassical_slope(double alpha, double beta);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  double max_relative_residual = 0.0;
};

/// Least-squares lambda_i = slope i + intercept over 1-based i in [first, last].
LinearFit fit_spectrum(const std::vector<double>& lambda, int first, int last);

struct OracleValue {
  double value = 0.0;
  double tail_bound = 0.0;
  double partial_sum = 0.0;
  double tail = 0.0;
  int trusted = 0;  ///< L
  LinearFit fit;
  bool warning = false;
  std::string message;
};

/// Sum of lambda^{-n} over the lowest L = N/2 eigenvalues plus the integral of
/// the linear tail model; warning set when tail_bound > tolerance * value.
OracleValue trace_inverse_power(const Params& p, int n, int N, double tolerance = 1e-5);

}  // namespace ncho
