#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>

#include "ncho/errors.hpp"
#include "ncho/matrixcore.hpp"

using namespace ncho;

namespace {

// sum_i (E_ii + E_{i+1,i+1}) (1/(1-u_i^4) - 1/2) + (E_{i,i+1} + E_{i+1,i}) (-u_i^2/(1-u_i^4)), indices mod n
Eigen::MatrixXd delta_from_matrix_units(const std::vector<double>& u) {
  const int n = static_cast<int>(u.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int a = i;
    const int b = (i + 1) % n;
    const double u4 = std::pow(u[i], 4);
    m(a, a) += 1.0 / (1.0 - u4) - 0.5;
    m(b, b) += 1.0 / (1.0 - u4) - 0.5;
    m(a, b) += -u[i] * u[i] / (1.0 - u4);
    m(b, a) += -u[i] * u[i] / (1.0 - u4);
  }
  return m;
}

Eigen::MatrixXcd perturbed(const std::vector<double>& u, double q, const Subset& j) {
  Eigen::MatrixXcd m = delta_from_matrix_units(u).cast<Complex>();
  for (std::size_t r = 1; r <= j.size(); ++r) {
    m(j[r - 1] - 1, j[r - 1] - 1) += Complex(0.0, q * ((r % 2 == 0) ? 1.0 : -1.0));
  }
  return m;
}

Complex leading_minor(const Eigen::MatrixXcd& m, int size) {
  if (size == 0) return 1.0;
  return m.topLeftCorner(size, size).determinant();
}

std::vector<double> random_u(std::mt19937_64& rng, int n, double lo = 0.01, double hi = 0.99) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> u(n);
  for (auto& x : u) x = d(rng);
  return u;
}

Subset random_even_subset(std::mt19937_64& rng, int n) {
  std::uint32_t mask = 0;
  while (mask == 0 || std::popcount(mask) % 2) {
    mask = std::uniform_int_distribution<std::uint32_t>(1, (1u << n) - 1)(rng);
  }
  Subset j;
  for (int i = 0; i < n; ++i) {
    if (mask & (1u << i)) j.push_back(i + 1);
  }
  return j;
}

// Sum over k in {1,2}^n of prod a_{k_m} cos(t_m - t_{m+1} + (k_{m+1} - k_m) pi / 2), t = q x^2 / 2.
double trace_by_index_sum(const std::vector<double>& x, const Params& p) {
  const int n = static_cast<int>(x.size());
  const double a[2] = {1.0 / p.alpha, 1.0 / p.beta};
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double prod = 1.0;
    for (int m = 0; m < n; ++m) {
      const int next = (m + 1) % n;
      const int km = (mask >> m) & 1;
      const int kn = (mask >> next) & 1;
      const double tm = 0.5 * p.q * x[m] * x[m];
      const double tn = 0.5 * p.q * x[next] * x[next];
      prod *= a[km] * std::cos(tm - tn + (kn - km) * std::numbers::pi / 2.0);
    }
    total += prod;
  }
  return total;
}

}  // namespace

TEST_CASE("build_delta matches the matrix-unit definition") {
  std::mt19937_64 rng(1);
  for (int n = 2; n <= 9; ++n) {
    const auto u = random_u(rng, n);
    const DeltaMatrix d = build_delta(u);
    CHECK(d.n == n);
    CHECK((d.entries - delta_from_matrix_units(u)).cwiseAbs().maxCoeff() <= 1e-14 * d.entries.cwiseAbs().maxCoeff());
    CHECK((d.entries - d.entries.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("n = 2 wrap-around entries add on the single off-diagonal") {
  const std::vector<double> u{0.3, 0.6};
  const Eigen::MatrixXd m = build_delta(u).entries;
  const double off = -0.09 / (1.0 - std::pow(0.3, 4)) - 0.36 / (1.0 - std::pow(0.6, 4));
  CHECK(m(0, 1) == doctest::Approx(off).epsilon(1e-15));
  CHECK(m(1, 0) == doctest::Approx(off).epsilon(1e-15));
}

TEST_CASE("det Delta_n closed form") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 300; ++i) {
    const int n = 2 + i % 7;
    const auto u = random_u(rng, n, 0.001, 0.999);
    const double direct = delta_from_matrix_units(u).determinant();
    CAPTURE(n);
    CHECK(delta_det_closed_form(u) == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("Delta_n is positive definite on the open cube") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto u = random_u(rng, 2 + i % 8);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_delta(u).entries);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("build_delta and build_xi domain errors") {
  CHECK_THROWS_AS(build_delta(std::vector<double>{0.5, 1.0}), DomainError);
  CHECK_THROWS_AS(build_delta(std::vector<double>{0.0, 0.5}), DomainError);
  CHECK_THROWS_AS(build_delta(std::vector<double>{0.5}), DomainError);
  CHECK_THROWS_AS(build_xi(4, Subset{1, 2, 3}), DomainError);
  CHECK_THROWS_AS(build_xi(4, Subset{}), DomainError);
  CHECK_THROWS_AS(build_xi(4, Subset{2, 1}), DomainError);
  CHECK_THROWS_AS(build_xi(4, Subset{1, 5}), DomainError);
}

TEST_CASE("Xi signs alternate starting with -1") {
  const XiDiagonal xi = build_xi(6, Subset{2, 3, 5, 6});
  CHECK(xi.signs == std::vector<int>{0, -1, 1, 0, -1, 1});
}

TEST_CASE("perturbed determinant is real and even in q") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + i % 7;
    const auto u = random_u(rng, n);
    const Subset j = random_even_subset(rng, n);
    const double q = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
    const Complex plus = perturbed(u, q, j).determinant();
    const Complex minus = perturbed(u, -q, j).determinant();
    CHECK(std::abs(plus.imag()) <= 1e-10 * std::abs(plus));
    CHECK(std::abs(plus - minus) <= 1e-10 * std::abs(plus));
  }
}

TEST_CASE("perturbed_delta matches the reference construction") {
  const std::vector<double> u{0.2, 0.4, 0.6, 0.8};
  const Subset j{1, 3};
  const Eigen::MatrixXcd a = perturbed_delta(u, 0.7, build_xi(4, j));
  CHECK((a - perturbed(u, 0.7, j)).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("minor_chain reproduces dense leading principal minors") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + i % 9;
    const auto u = random_u(rng, n);
    const Subset j = (i % 5 == 0) ? Subset{} : random_even_subset(rng, n);
    const double q = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
    const Eigen::MatrixXcd a = perturbed(u, q, j);
    const MinorChain chain = minor_chain(u, q, j);
    REQUIRE(chain.d.size() == static_cast<std::size_t>(n + 1));
    CHECK(chain.d[0] == Complex(1.0));
    for (int m = 1; m <= n; ++m) {
      const Complex ref = leading_minor(a, m);
      CAPTURE(n);
      CAPTURE(m);
      CHECK(std::abs(chain.d[m] - ref) <= 1e-10 * std::abs(ref));
    }
  }
}

TEST_CASE("ldu_decompose gives A = L D L' with D from the minor ratios") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    const int n = 2 + i % 7;
    const auto u = random_u(rng, n);
    const Subset j = random_even_subset(rng, n);
    const Eigen::MatrixXcd a = perturbed(u, 1.3, j);
    const LduFactors f = ldu_decompose(a);
    for (int r = 0; r < n; ++r) {
      CHECK(f.lower(r, r) == Complex(1.0));
      for (int c = r + 1; c < n; ++c) CHECK(f.lower(r, c) == Complex(0.0));
      const Complex ratio = leading_minor(a, r + 1) / leading_minor(a, r);
      CHECK(std::abs(f.diag(r) - ratio) <= 1e-10 * std::abs(ratio));
    }
    const Eigen::MatrixXcd rebuilt = f.lower * f.diag.asDiagonal() * f.lower.transpose();
    CHECK((rebuilt - a).norm() <= 1e-12 * a.norm());
  }
}

TEST_CASE("successive minors satisfy Re(d_{m+1} conj d_m) > 0") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const int n = 2 + i % 9;
    const auto u = random_u(rng, n, 1e-3, 1.0 - 1e-3);
    const Subset j = random_even_subset(rng, n);
    const double q = std::uniform_real_distribution<double>(0.0, 10.0)(rng);
    const MinorChain chain = minor_chain(u, q, j);
    for (int m = 0; m < n; ++m) CHECK((chain.d[m + 1] * std::conj(chain.d[m])).real() > 0.0);
  }
}

TEST_CASE("inv_sqrt_det equals det^{-1/2} of the real determinant") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + i % 9;
    const auto u = random_u(rng, n);
    const Subset j = random_even_subset(rng, n);
    const double q = std::uniform_real_distribution<double>(0.0, 5.0)(rng);
    const double det = perturbed(u, q, j).determinant().real();
    CHECK(inv_sqrt_det(minor_chain(u, q, j)) == doctest::Approx(1.0 / std::sqrt(det)).epsilon(1e-10));
  }
}

TEST_CASE("inv_sqrt_det rejects a non-real product") {
  MinorChain chain;
  chain.pivots = {Complex(0.0, 1.0)};
  chain.d = {1.0, Complex(0.0, 1.0)};
  CHECK_THROWS_AS(inv_sqrt_det(chain), NumericError);
}

TEST_CASE("trace identity: direct product, expansion and index sum agree") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> xd(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + i % 10;
    const double alpha = std::uniform_real_distribution<double>(0.6, 4.0)(rng);
    const double beta = std::uniform_real_distribution<double>(1.0 / alpha + 0.1, 4.0)(rng);
    const Params p = derive_params(alpha, beta);
    std::vector<double> x(n);
    for (auto& v : x) v = xd(rng);
    const double oracle = trace_by_index_sum(x, p);
    CAPTURE(n);
    CHECK(trace_B_direct(x, p) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(trace_B_expansion(x, p) == doctest::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("trace identity at alpha = beta has no cosine terms") {
  const Params p = derive_params(2.0, 2.0);
  const std::vector<double> x{0.3, -1.1, 0.7};
  CHECK(trace_B_expansion(x, p) == doctest::Approx(2.0 * std::pow(0.5, 3)).epsilon(1e-15));
}
