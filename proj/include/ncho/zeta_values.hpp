#pragma once

// Special values zeta_Q(n) assembled from the R_{n,k}(q) integrals, the
// Apery-like series for the (n-1, 1) integrals, and the closed forms.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ncho/expansion.hpp"
#include "ncho/quadrature.hpp"
#include "ncho/special_functions.hpp"

namespace ncho {

/// 2^(16+n) points split over 16 batches.
QuadConfig default_config(int n);

/// Seed for the orbit with index `orbit` of R_{n,k}; depends only on the inputs listed.
std::uint64_t orbit_seed(std::uint64_t seed, int n, int k, int orbit);

struct OrbitIntegral {
  Composition representative;
  Subset subset;  ///< gaps_to_subset(representative)
  int weight = 0;
  QuadEstimate estimate;
};

struct RnkResult {
  int n = 0;
  int k = 0;
  double q = 0.0;
  double value = 0.0;
  double std_error = 0.0;
  std::vector<OrbitIntegral> orbits;
};

/// integral over [0,1]^n of 2^n / sqrt(den_n(u; q; j)).
QuadEstimate orbit_integral(int n, std::span<const int> j, double q, const QuadConfig& cfg);

/// R_{n,k}(q) as the weighted sum over cyclic orbits of gap patterns. 2 <= 2k <= n <= 10.
RnkResult R_nk(int n, int k, double q, const QuadConfig& cfg);

struct RTerm {
  int k = 0;
  double value = 0.0;
  double std_error = 0.0;
  bool evaluated = false;  ///< false when the skew factor vanishes
  std::vector<OrbitIntegral> orbits;
};

struct SpecialValueResult {
  int n = 0;
  Params params;
  double zeta_half = 0.0;
  std::vector<RTerm> R;  ///< k = 1 .. n/2
  double value = 0.0;
  double std_error = 0.0;
  bool exact = false;  ///< alpha == beta closed form
  QuadConfig config;
};

SpecialValueResult zeta_Q(int n, double alpha, double beta, const QuadConfig& cfg);

/// 2 (alpha^2 - 1)^(-n/2) zeta(n, 1/2). Requires alpha > 1.
double zeta_Q_degenerate(int n, double alpha);

/// 3 zeta(2) 2F1(1/4, 3/4; 1; -q^2)^2.
double R21_closed_form(double q);

/// (pi (alpha+beta) / (2 sqrt(alpha beta (alpha beta - 1))))^2 (1 + skew 2F1^2).
double zeta_Q2_closed_form(double alpha, double beta);

struct AperySeries {
  int n = 0;
  std::vector<double> J;      ///< J_n(0..M)
  std::vector<double> ratio;  ///< J_n(m) / J_n(0)
  bool seeded = false;        ///< odd chain built on fitted J_3 values
};

/// J_n(0..M). n = 2 or even n >= 4 use the recurrences from J_2; n = 3 and odd
/// n >= 5 need seed_J3 covering 0..M.
AperySeries apery_series(int n, int M, std::optional<std::span<const double>> seed_J3 = std::nullopt);

/// Least-squares J_3(1..degree) from values of the (2,1) integral at small q,
/// with J_3(0) = zeta(3, 1/2) held fixed. Rows are weighted by 1/error.
std::vector<double> fit_j3_seed(std::span<const double> q, std::span<const double> values,
                                std::span<const double> errors, int degree);

struct SeriesValue {
  double value = 0.0;
  double truncation_estimate = 0.0;  ///< magnitude of the last term
  bool converged = false;
};

/// sum_{m <= M} C(-1/2, m) J_n(m) q^(2m). Requires 0 <= q < 1.
SeriesValue R_n1_series(int n, double q, int M, double tolerance = 1e-10);
SeriesValue R_n1_series(const AperySeries& series, double q, double tolerance = 1e-10);

/// Largest |coefficient| of the Heun operator applied to sum_{m<=M} c_m t^m,
/// over degrees 0..M-1. The first overload uses c = J_2.
double heun_residual(int M);
double heun_residual(std::span<const double> coefficients);

struct LimitCheck {
  int n = 0;
  double omega = 0.0;
  double limit = 0.0;  ///< (omega^n + omega^-n) zeta(n, 1/2)
  std::vector<double> epsilon;
  std::vector<double> scaled;  ///< zeta_Q(n) / epsilon^n
  std::vector<double> std_error;
};

/// zeta_Q(n)/epsilon^n at alpha = omega/epsilon, beta = 1/(omega epsilon).
LimitCheck epsilon_limit_check(int n, double omega, std::span<const double> eps_list,
                               const QuadConfig& cfg);

}  // namespace ncho
