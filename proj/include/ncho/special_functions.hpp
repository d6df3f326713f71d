#pragma once

// Scalar special functions and the oscillator parameter set.

namespace ncho {

/// Parameters of the operator Q = diag(alpha, beta) H + J (x d/dx + 1/2),
/// together with the quantities derived from them.
struct Params {
  double alpha = 0.0;
  double beta = 0.0;
  double epsilon = 0.0;      ///< 1 / sqrt(alpha beta), in (0, 1)
  double q = 0.0;            ///< 1 / sqrt(alpha beta - 1)
  double mean_factor = 0.0;  ///< (alpha + beta) / (2 sqrt(alpha beta (alpha beta - 1)))
  double skew_factor = 0.0;  ///< ((alpha - beta) / (alpha + beta))^2, in [0, 1)
};

/// Throws DomainError unless alpha > 0, beta > 0 and alpha beta > 1.
Params derive_params(double alpha, double beta);

/// Riemann zeta at an integer argument n >= 2.
double riemann_zeta(int n);

/// zeta(n, 1/2) = sum_{k>=0} (k + 1/2)^{-n} = (2^n - 1) zeta(n), n >= 2.
double hurwitz_zeta_half(int n);

/// 2F1(1/4, 3/4; 1; -q^2) for q >= 0.
double gauss_2f1_quarter(double q);

/// Generalized binomial coefficient C(-1/2, m).
double binom_half(int m);

}  // namespace ncho
