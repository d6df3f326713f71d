// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ncho/errors.hpp"
#include "ncho/expansion.hpp"
#include "ncho/matrixcore.hpp"
#include "ncho/quadrature.hpp"
#include "ncho/spectral_oracle.hpp"
#include "ncho/zeta_values.hpp"

using namespace ncho;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double time_limit;  // seconds
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// Riemann zeta by summation with an Euler-Maclaurin tail.
double zeta_oracle(int s) {
  const int K = 100000;
  double sum = 0.0;
  for (int k = K; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  const double a = K;
  return sum + std::pow(a, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(a, -s) + s / 12.0 * std::pow(a, -s - 1.0);
}

double hurwitz_half_oracle(int n) { return (std::pow(2.0, n) - 1.0) * zeta_oracle(n); }

// 2F1(1/4, 3/4; 1; -q^2) by its power series, q < 1.
double hyp_series(double q) {
  double s = 0.0, t = 1.0;
  for (int k = 0; k < 2000; ++k) {
    s += t;
    t *= -(0.25 + k) * (0.75 + k) / ((k + 1.0) * (k + 1.0)) * q * q;
  }
  return s;
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

std::vector<double> random_u(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> d(0.0, 1.0);
  std::vector<double> u(n);
  for (auto& x : u) {
    do {
      x = d(rng);
    } while (x == 0.0);
  }
  return u;
}

Outcome determinant_identity() {
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto u = random_u(rng, 2 + i % 7);
    double p2 = 1.0, p4 = 1.0;
    for (double x : u) {
      p2 *= x * x;
      p4 *= 1.0 - std::pow(x, 4);
    }
    const double expected = (1.0 - p2) * (1.0 - p2) / p4;
    const double det = build_delta(u).entries.determinant();
    worst = std::max(worst, std::abs(det - expected) / expected);
  }
  return {worst <= 1e-10, "max relative error " + fmt("%.2e", worst)};
}

// Sum over k in {1,2}^n of prod a_{k_m} cos(t_m - t_{m+1} + (k_{m+1} - k_m) pi/2).
double trace_index_sum(const std::vector<double>& x, const Params& p) {
  const int n = static_cast<int>(x.size());
  const double a[2] = {1.0 / p.alpha, 1.0 / p.beta};
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double prod = 1.0;
    for (int m = 0; m < n; ++m) {
      const int next = (m + 1) % n;
      const int km = (mask >> m) & 1, kn = (mask >> next) & 1;
      const double tm = 0.5 * p.q * x[m] * x[m], tn = 0.5 * p.q * x[next] * x[next];
      prod *= a[km] * std::cos(tm - tn + (kn - km) * kPi / 2.0);
    }
    total += prod;
  }
  return total;
}

Outcome trace_identity() {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> xd(-2.0, 2.0);
  double worst = 0.0, worst_oracle = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double alpha = std::uniform_real_distribution<double>(0.5, 4.0)(rng);
    const double beta = std::uniform_real_distribution<double>(1.0 / alpha + 0.05, 4.0)(rng);
    const Params p = derive_params(alpha, beta);
    std::vector<double> x(1 + i % 10);
    for (auto& v : x) v = xd(rng);
    const double direct = trace_B_direct(x, p);
    worst = std::max(worst, std::abs(direct - trace_B_expansion(x, p)));
    worst_oracle = std::max(worst_oracle, std::abs(direct - trace_index_sum(x, p)));
  }
  return {worst <= 1e-12 && worst_oracle <= 1e-12,
          "max |direct - expansion| " + fmt("%.2e", worst) + ", vs index sum " + fmt("%.2e", worst_oracle)};
}

Outcome den_equivalence() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> qd(0.0, 2.0);
  double worst = 0.0;
  int cases = 0;
  for (int n = 2; n <= 8; ++n) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) % 2) continue;
      Subset j;
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) j.push_back(i + 1);
      }
      const DenExpansion e = den_expansion(n, j);
      for (int r = 0; r < 50; ++r) {
        const auto u = random_u(rng, n);
        const double q = qd(rng);
        double p4 = 1.0;
        for (double x : u) p4 *= 1.0 - std::pow(x, 4);
        const double reference = minor_chain(u, q, j).d[n].real() * p4;
        worst = std::max(worst, std::abs(e.evaluate(u, q) - reference) / std::abs(reference));
        ++cases;
      }
    }
  }
  return {worst <= 1e-10, std::to_string(cases) + " cases, max relative error " + fmt("%.2e", worst)};
}

Outcome known_integral() {
  bool ok = true;
  std::string detail;
  for (int n = 2; n <= 6; ++n) {
    QuadConfig cfg = default_config(n);
    const QuadEstimate est = qmc_integrate(hurwitz_integrand, n, cfg);
    const double exact = hurwitz_half_oracle(n);
    const double z = (est.value - exact) / est.std_error;
    const double rel = est.std_error / exact;
    ok = ok && std::abs(z) <= 3.0 && rel <= 5e-4;
    detail += (n > 2 ? "; " : "") + std::string("n=") + std::to_string(n) + " err/se " + fmt("%.2f", z) +
              " rel se " + fmt("%.1e", rel);
  }
  return {ok, detail};
}

Outcome closed_form_zeta2() {
  bool ok = true;
  std::string detail;
  for (auto [alpha, beta] : {std::pair{3.0, 2.0}, std::pair{2.0, 1.5}, std::pair{5.0, 1.0}}) {
    const auto r = zeta_Q(2, alpha, beta, default_config(2));
    const Params p = derive_params(alpha, beta);
    const double f = hyp_series(p.q);
    const double exact = std::pow(kPi * p.mean_factor, 2) * (1.0 + p.skew_factor * f * f);
    const double z = (r.value - exact) / r.std_error;
    const double rel = r.std_error / exact;
    ok = ok && std::abs(z) <= 3.0 && rel <= 1e-4;
    detail += (detail.empty() ? "" : "; ") + fmt("(%g,", alpha) + fmt("%g)", beta) + " dev/se " +
              fmt("%.2f", z) + " rel se " + fmt("%.1e", rel);
  }
  return {ok, detail};
}

Outcome spectral_oracle_agreement() {
  bool ok = true;
  std::string detail;
  const Params p = derive_params(3.0, 2.0);
  for (int n = 2; n <= 5; ++n) {
    const auto z = zeta_Q(n, 3.0, 2.0, default_config(n));
    const OracleValue o = trace_inverse_power(p, n, 400);
    const double diff = std::abs(z.value - o.value);
    const double rel = diff / o.value;
    const bool within = diff <= 3.0 * z.std_error + o.tail_bound;
    const bool digits = rel <= 5e-5;
    ok = ok && within && digits;
    detail += (n > 2 ? "; " : "") + std::string("n=") + std::to_string(n) + " rel diff " + fmt("%.1e", rel) +
              " budget " + fmt("%.1e", (3.0 * z.std_error + o.tail_bound) / o.value);
  }
  return {ok, detail};
}

Outcome degenerate_case() {
  const auto r = zeta_Q(2, 2.0, 2.0, default_config(2));
  const double exact = kPi * kPi / 3.0;
  const OracleValue o = trace_inverse_power(derive_params(2.0, 2.0), 2, 400);
  const double path_err = std::abs(r.value - exact);
  const double oracle_err = std::abs(o.value - exact);
  return {r.exact && path_err <= 1e-14 * exact && oracle_err <= 1e-6,
          "exact path error " + fmt("%.1e", path_err) + ", oracle error " + fmt("%.1e", oracle_err)};
}

Outcome series_engine() {
  const AperySeries s = apery_series(2, 20);
  bool ok = s.ratio[1] == 0.75 && s.ratio[2] == 41.0 / 64.0;
  const double heun = heun_residual(20);
  ok = ok && heun < 1e-10;
  std::string detail = "ratios exact: " + std::string(ok ? "yes" : "no") + ", Heun " + fmt("%.1e", heun);
  for (int n : {2, 4}) {
    for (double q : {0.2, 0.5}) {
      const SeriesValue series = R_n1_series(n, q, 80);
      const QuadEstimate quad = orbit_integral(n, Subset{1, n}, q, default_config(n));
      const double diff = std::abs(series.value - quad.value);
      ok = ok && diff <= 3.0 * quad.std_error + series.truncation_estimate;
      detail += "; n=" + std::to_string(n) + fmt(" q=%g", q) + " diff/se " + fmt("%.2f", diff / quad.std_error);
    }
  }
  return {ok, detail};
}

Outcome orbit_combinatorics() {
  bool ok = true;
  for (int n = 2; n <= 12; ++n) {
    for (int m : {2, 4}) {
      if (m > n) continue;
      int total = 0;
      for (const auto& o : cyclic_orbits(compositions(m, n))) total += o.weight;
      ok = ok && total == static_cast<int>(binomial(n, m));
    }
  }
  const auto r41 = cyclic_orbits(compositions(2, 4));
  const bool r41_ok = r41.size() == 2 && r41[0].weight == 4 && r41[1].weight == 2 &&
                      r41[0].representative.parts == std::vector<int>{1, 3} &&
                      r41[1].representative.parts == std::vector<int>{2, 2};
  const auto r52 = cyclic_orbits(compositions(4, 5));
  const bool r52_ok = r52.size() == 1 && r52[0].weight == 5;
  return {ok && r41_ok && r52_ok, std::string("weight sums ") + (ok ? "match" : "differ") + ", R_{4,1} " +
                                      (r41_ok ? "4,2" : "wrong") + ", R_{5,2} " + (r52_ok ? "5" : "wrong")};
}

Outcome epsilon_limit() {
  const std::vector<double> eps{0.2, 0.1, 0.05};
  const LimitCheck lc = epsilon_limit_check(2, std::sqrt(1.5), eps, default_config(2));
  const double limit = (1.5 + 1.0 / 1.5) * hurwitz_half_oracle(2);
  std::vector<double> dev;
  for (double s : lc.scaled) dev.push_back(std::abs(s / limit - 1.0));
  return {dev[2] <= 0.02 && dev[2] < dev[0],
          "deviation " + fmt("%.2e", dev[0]) + " at 0.2, " + fmt("%.2e", dev[1]) + " at 0.1, " +
              fmt("%.2e", dev[2]) + " at 0.05"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "determinant identity", 1.0, determinant_identity},
      {2, "trace identity", 5.0, trace_identity},
      {3, "den expansion equivalence", 30.0, den_equivalence},
      {4, "known-integral calibration", 60.0, known_integral},
      {5, "closed-form zeta_Q(2)", 60.0, closed_form_zeta2},
      {6, "spectral oracle agreement", 600.0, spectral_oracle_agreement},
      {7, "degenerate case", 60.0, degenerate_case},
      {8, "series engine", 120.0, series_engine},
      {9, "orbit combinatorics", 5.0, orbit_combinatorics},
      {10, "epsilon limit", 60.0, epsilon_limit},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.time_limit) {
      out.passed = false;
      out.detail += fmt("; over the %.0f s limit", c.time_limit);
    }
    if (!out.passed) ++failures;
    std::printf("%s  %2d  %-28s %8.2f s  %s\n", out.passed ? "PASS" : "FAIL", c.id, c.title.c_str(), seconds,
                out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
