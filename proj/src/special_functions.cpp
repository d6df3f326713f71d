#include "ncho/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "ncho/errors.hpp"

namespace ncho {

namespace {

// B_2, B_4, ..., B_22
constexpr std::array<double, 11> kBernoulliEven = {
    1.0 / 6.0,          -1.0 / 30.0,        1.0 / 42.0,       -1.0 / 30.0,
    5.0 / 66.0,         -691.0 / 2730.0,    7.0 / 6.0,        -3617.0 / 510.0,
    43867.0 / 798.0,    -174611.0 / 330.0,  854513.0 / 138.0};

struct ZetaSum {
  double value;
  double tail_bound;
};

// Euler-Maclaurin summation of zeta(s) with cut-off N and the first
// kBernoulliEven.size() - 1 correction terms; the last available correction
// term bounds the remainder.
ZetaSum zeta_euler_maclaurin(int s) {
  const int cutoff = 16 + s / 2;
  const double N = cutoff;
  const double ds = s;

  double head = 0.0;
  for (int k = cutoff - 1; k >= 1; --k) head += std::pow(static_cast<double>(k), -ds);

  double tail = std::pow(N, 1.0 - ds) / (ds - 1.0) + 0.5 * std::pow(N, -ds);
  // rising = s (s+1) ... (s+2j-2), factorial = (2j)!
  double rising = ds;
  double factorial = 2.0;
  double power = std::pow(N, -ds - 1.0);
  double last = 0.0;
  for (std::size_t j = 1; j <= kBernoulliEven.size(); ++j) {
    const double term = kBernoulliEven[j - 1] / factorial * rising * power;
    if (j == kBernoulliEven.size()) {
      last = std::abs(term);
      break;
    }
    tail += term;
    rising *= (ds + 2.0 * j - 1.0) * (ds + 2.0 * j);
    factorial *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    power /= N * N;
  }
  return {head + tail, last};
}

// Power series of 2F1(a, b; c; x) for 0 <= x < 1.
double hyp2f1_series(double a, double b, double c, double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 100000; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

Params derive_params(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw DomainError("alpha and beta must be positive");
  }
  const double product = alpha * beta;
  if (!(product > 1.0)) {
    throw DomainError("alpha*beta must exceed 1 (got " + std::to_string(product) + ")");
  }
  Params p;
  p.alpha = alpha;
  p.beta = beta;
  p.epsilon = 1.0 / std::sqrt(product);
  p.q = 1.0 / std::sqrt(product - 1.0);
  p.mean_factor = (alpha + beta) / (2.0 * std::sqrt(product * (product - 1.0)));
  const double ratio = (alpha - beta) / (alpha + beta);
  p.skew_factor = ratio * ratio;
  return p;
}

double riemann_zeta(int n) {
  if (n < 2) throw DomainError("riemann_zeta: n must be >= 2");
  if (n % 2 == 0 && n / 2 <= static_cast<int>(kBernoulliEven.size())) {
    // zeta(2m) = (-1)^{m+1} B_{2m} (2 pi)^{2m} / (2 (2m)!)
    const int m = n / 2;
    double factorial = 1.0;
    for (int i = 2; i <= n; ++i) factorial *= i;
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;
    return sign * kBernoulliEven[m - 1] * std::pow(2.0 * std::numbers::pi, n) /
           (2.0 * factorial);
  }
  const ZetaSum z = zeta_euler_maclaurin(n);
  if (z.tail_bound > 1e-15 * z.value) {
    throw NumericError("riemann_zeta: Euler-Maclaurin remainder too large");
  }
  return z.value;
}

double hurwitz_zeta_half(int n) {
  if (n < 2) throw DomainError("hurwitz_zeta_half: n must be >= 2");
  return (std::ldexp(1.0, n) - 1.0) * riemann_zeta(n);
}

double gauss_2f1_quarter(double q) {
  if (!(q >= 0.0)) throw DomainError("gauss_2f1_quarter: q must be >= 0");
  // Pfaff: 2F1(1/4, 3/4; 1; z) = (1 - z)^{-1/4} 2F1(1/4, 1/4; 1; z / (z - 1)).
  const double q2 = q * q;
  const double x = q2 / (1.0 + q2);
  const double prefactor = std::pow(1.0 + q2, -0.25);
  if (x <= 0.9) return prefactor * hyp2f1_series(0.25, 0.25, 1.0, x);

  // Near x = 1 use the connection formula to 1 - x (c - a - b = 1/2).
  const double y = 1.0 / (1.0 + q2);
  const double g34 = std::tgamma(0.75);
  const double g14 = std::tgamma(0.25);
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  const double first = sqrt_pi / (g34 * g34) * hyp2f1_series(0.25, 0.25, 0.5, y);
  const double second =
      std::sqrt(y) * (-2.0 * sqrt_pi) / (g14 * g14) * hyp2f1_series(0.75, 0.75, 1.5, y);
  return prefactor * (first + second);
}

double binom_half(int m) {
  if (m < 0) throw DomainError("binom_half: m must be >= 0");
  double c = 1.0;
  for (int i = 1; i <= m; ++i) c *= (-0.5 - (i - 1)) / i;
  return c;
}

}  // namespace ncho
