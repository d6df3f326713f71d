#pragma once

// Randomized quasi-Monte Carlo integration over the open unit cube.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ncho/expansion.hpp"

namespace ncho {

enum class Transform { none, corner };

std::string to_string(Transform t);
Transform transform_from_string(const std::string& name);

struct QuadConfig {
  std::int64_t samples = 1 << 14;  ///< Sobol points per batch
  int batches = 16;                ///< independent digital shifts
  Transform transform = Transform::corner;
  int corner_power = 2;            ///< p in u = 1 - (1 - v)^p
  bool use_control_variate = true;
  std::uint64_t seed = 20090401;
  int threads = 1;                 ///< 0 = hardware concurrency

  /// Throws DomainError unless samples >= 1024, batches >= 8, corner_power >= 1.
  void validate() const;
};

struct QuadEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples_used = 0;
  bool cv_applied = false;
};

/// What an integrand sees at each node: u, its complement w = 1 - u (exact
/// for the generated nodes), and the log-form point used by the factor code.
struct Sample {
  std::span<const double> u;
  std::span<const double> w;
  const CubePoint& point;
};

using Integrand = std::function<double(const Sample&)>;

struct CornerPoint {
  std::vector<double> u;
  std::vector<double> w;
  double jacobian = 1.0;
};

/// u_i = 1 - (1 - v_i)^p with jacobian prod p (1 - v_i)^{p-1}. p = 1 is the identity.
CornerPoint corner_transform(std::span<const double> v, int power);

/// Mean of f over the cube from cfg.batches digitally shifted Sobol nets of
/// cfg.samples points each; std_error is the standard error of the batch means.
/// Throws NumericError on non-finite integrand values, or on divergence, which is
/// checked once samples >= 2^(n+6).
QuadEstimate qmc_integrate(const Integrand& f, int n, const QuadConfig& cfg);

/// exact_g + integral of (f - g) on shared nodes. Falls back to the plain
/// estimate of f (cv_applied = false) when f - g has the larger batch variance.
QuadEstimate integrate_with_control_variate(const Integrand& f, const Integrand& g,
                                            double exact_g, int n, const QuadConfig& cfg);

/// 2^n / (1 - u_1^2 ... u_n^2), whose integral is zeta(n, 1/2).
double hurwitz_integrand(const Sample& s);

}  // namespace ncho
