#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ncho/errors.hpp"
#include "ncho/spectral_oracle.hpp"

using namespace ncho;

namespace {

constexpr double kPi = std::numbers::pi;

// Hermite functions psi_0..psi_{K-1} sampled on a uniform grid.
struct Grid {
  std::vector<double> x;
  std::vector<std::vector<double>> psi;
  double h = 0.0;
};

Grid hermite_grid(int K, double half_width, int points) {
  Grid g;
  g.h = 2.0 * half_width / (points - 1);
  g.psi.assign(K, std::vector<double>(points));
  for (int i = 0; i < points; ++i) {
    const double x = -half_width + i * g.h;
    g.x.push_back(x);
    double prev = 0.0;
    double cur = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    for (int k = 0; k < K; ++k) {
      g.psi[k][i] = cur;
      const double next = std::sqrt(2.0 / (k + 1.0)) * x * cur - std::sqrt(k / (k + 1.0)) * prev;
      prev = cur;
      cur = next;
    }
  }
  return g;
}

// <psi_j, (x d/dx + 1/2) psi_k> by five-point differences and the trapezoid rule.
Eigen::MatrixXd dilation_by_quadrature(int K) {
  const Grid g = hermite_grid(K, 14.0, 8001);
  const int P = static_cast<int>(g.x.size());
  Eigen::MatrixXd d(K, K);
  for (int k = 0; k < K; ++k) {
    std::vector<double> applied(P, 0.0);
    const auto& f = g.psi[k];
    for (int i = 2; i + 2 < P; ++i) {
      const double deriv = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * g.h);
      applied[i] = g.x[i] * deriv + 0.5 * g.psi[k][i];
    }
    for (int j = 0; j < K; ++j) {
      double s = 0.0;
      for (int i = 0; i < P; ++i) s += g.psi[j][i] * applied[i];
      d(j, k) = s * g.h;
    }
  }
  return d;
}

// Q on the full Hermite basis of both components: [[alpha H, -D], [D, beta H]].
Eigen::MatrixXd full_q(double alpha, double beta, const Eigen::MatrixXd& d) {
  const int N = static_cast<int>(d.rows());
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(2 * N, 2 * N);
  for (int k = 0; k < N; ++k) {
    q(k, k) = alpha * (k + 0.5);
    q(N + k, N + k) = beta * (k + 0.5);
  }
  q.topRightCorner(N, N) = -d;
  q.bottomLeftCorner(N, N) = d;
  return q;
}

}  // namespace

TEST_CASE("dilation matrix against grid quadrature of x d/dx + 1/2") {
  const int K = 20;
  const Eigen::MatrixXd oracle = dilation_by_quadrature(K);
  const Eigen::MatrixXd d = dilation_matrix(K);
  CHECK((oracle - d).cwiseAbs().maxCoeff() < 1e-7);
  CHECK((d + d.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(d(0, 2) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
  CHECK(d(2, 0) == doctest::Approx(-std::sqrt(2.0) / 2.0).epsilon(1e-15));
}

TEST_CASE("parity blocks reproduce the spectrum of the unsplit truncation") {
  const int N = 40;
  const double alpha = 3.0, beta = 2.0;
  const auto dense = symmetric_eigenvalues(full_q(alpha, beta, dilation_matrix(N)));
  const auto split = eigenvalues(build_truncated_q(alpha, beta, N));
  REQUIRE(dense.size() == split.size());
  for (std::size_t i = 0; i < dense.size(); ++i) CHECK(split[i] == doctest::Approx(dense[i]).epsilon(1e-12));
}

TEST_CASE("truncated blocks are symmetric with the oscillator diagonal") {
  const TruncatedQ tq = build_truncated_q(derive_params(3.0, 2.0), 64);
  CHECK(tq.even.rows() == 64);
  CHECK(tq.odd.rows() == 64);
  for (const Eigen::MatrixXd* b : {&tq.even, &tq.odd}) {
    CHECK((*b - b->transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK(tq.even(0, 0) == 1.5);
  CHECK(tq.even(32, 32) == 1.0);
  CHECK(tq.odd(1, 1) == doctest::Approx(3.0 * 3.5).epsilon(1e-15));
  // C(k, k+2) = -sqrt((k+1)(k+2))/2 at k = 0
  CHECK(tq.even(0, 33) == doctest::Approx(-std::sqrt(2.0) / 2.0).epsilon(1e-15));
  CHECK(tq.even(1, 32) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(build_truncated_q(3.0, 2.0, 8), DomainError);
}

TEST_CASE("degenerate spectrum is sqrt(alpha^2 - 1)(k + 1/2), doubled") {
  const auto lambda = eigenvalues(build_truncated_q(2.0, 2.0, 400));
  for (int k = 0; k < 40; ++k) {
    const double exact = std::sqrt(3.0) * (k + 0.5);
    CAPTURE(k);
    CHECK(std::abs(lambda[2 * k] - exact) < 1e-8);
    CHECK(std::abs(lambda[2 * k + 1] - exact) < 1e-8);
  }
}

TEST_CASE("low eigenvalues are stable under a larger truncation") {
  const auto a = eigenvalues(build_truncated_q(3.0, 2.0, 300));
  const auto b = eigenvalues(build_truncated_q(3.0, 2.0, 400));
  for (int i = 0; i < 60; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-9 * b[i]);
}

TEST_CASE("spectral slope matches the phase-space count") {
  const auto lambda = eigenvalues(build_truncated_q(3.0, 2.0, 400));
  const LinearFit fit = fit_spectrum(lambda, 100, 200);
  CHECK(fit.slope == doctest::Approx(semiclassical_slope(3.0, 2.0)).epsilon(1e-3));
  // at alpha = beta the two branches merge into sqrt(alpha^2 - 1) / 2
  CHECK(semiclassical_slope(2.0, 2.0) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-10));
}

TEST_CASE("fit_spectrum on exact linear data") {
  std::vector<double> lambda;
  for (int i = 1; i <= 50; ++i) lambda.push_back(0.7 * i + 0.2);
  const LinearFit fit = fit_spectrum(lambda, 10, 50);
  CHECK(fit.slope == doctest::Approx(0.7).epsilon(1e-13));
  CHECK(fit.intercept == doctest::Approx(0.2).epsilon(1e-11));
  CHECK(fit.max_residual < 1e-12);
  CHECK_THROWS_AS(fit_spectrum(lambda, 10, 60), DomainError);
}

TEST_CASE("trace of Q^{-n} in the degenerate case") {
  const Params p = derive_params(2.0, 2.0);
  for (int n : {2, 3, 4}) {
    double hurwitz = 0.0;
    for (int k = 200000; k >= 0; --k) hurwitz += std::pow(k + 0.5, -n);
    hurwitz += std::pow(200000.5, 1.0 - n) / (n - 1.0);
    const double exact = 2.0 * std::pow(3.0, -0.5 * n) * hurwitz;
    const OracleValue v = trace_inverse_power(p, n, 400);
    CAPTURE(n);
    CHECK(std::abs(v.value - exact) <= v.tail_bound);
    CHECK(std::abs(v.value - exact) <= 1e-6);
    CHECK(v.trusted == 200);
  }
}

TEST_CASE("oracle flags a coarse truncation") {
  const OracleValue v = trace_inverse_power(derive_params(3.0, 2.0), 2, 32, 1e-9);
  CHECK(v.warning);
  CHECK_FALSE(v.message.empty());
  CHECK_THROWS_AS(trace_inverse_power(derive_params(3.0, 2.0), 1, 400), DomainError);
}

TEST_CASE("alpha beta < 1 loses positivity") {
  const TruncatedQ tq = build_truncated_q(0.5, 1.5, 200);
  const auto lambda = eigenvalues(tq, false);
  CHECK(lambda.front() <= 0.0);
  CHECK_THROWS_AS(eigenvalues(tq), NumericError);
}
