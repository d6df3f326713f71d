#include "ncho/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "ncho/errors.hpp"
#include "ncho/expansion.hpp"
#include "ncho/matrixcore.hpp"
#include "ncho/spectral_oracle.hpp"
#include "ncho/zeta_values.hpp"

namespace ncho {

namespace {

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string format(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

CheckResult check(std::string name, double error, double tolerance, std::string detail = {}) {
  return CheckResult{std::move(name), error, tolerance, error <= tolerance, std::move(detail)};
}

QuadConfig quad_for(const SuiteOptions& opts, int n) {
  return opts.quad_is_default ? default_config(n) : opts.quad;
}

std::vector<double> random_u(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> u(n);
  for (auto& x : u) {
    do {
      x = dist(rng);
    } while (x == 0.0);
  }
  return u;
}

Subset subset_from_mask(std::uint32_t mask, int n) {
  Subset j;
  for (int i = 0; i < n; ++i) {
    if (mask & (1u << i)) j.push_back(i + 1);
  }
  return j;
}

double one_minus_u4_product(const std::vector<double>& u) {
  double p = 1.0;
  for (double x : u) p *= 1.0 - x * x * x * x;
  return p;
}

std::vector<CheckResult> suite_det(const SuiteOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> dim(2, 8);
  std::uniform_real_distribution<double> qdist(0.0, 2.0);
  const int instances = opts.instances > 0 ? opts.instances : 1000;

  double worst_det = 0.0;
  for (int i = 0; i < instances; ++i) {
    const auto u = random_u(rng, dim(rng));
    const double direct = build_delta(u).entries.determinant();
    worst_det = std::max(worst_det, relative(direct, delta_det_closed_form(u)));
  }

  double worst_den = 0.0;
  int cases = 0;
  const int per_subset = opts.instances > 0 ? std::max(1, opts.instances / 20) : 50;
  for (int n = 2; n <= 8; ++n) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) % 2 != 0) continue;
      const Subset j = subset_from_mask(mask, n);
      const DenExpansion e = den_expansion(n, j);
      for (int r = 0; r < per_subset; ++r) {
        const auto u = random_u(rng, n);
        const double q = qdist(rng);
        const MinorChain chain = minor_chain(u, q, j);
        const double reference = chain.d[n].real() * one_minus_u4_product(u);
        worst_den = std::max(worst_den, relative(e.evaluate(u, q), reference));
        ++cases;
      }
    }
  }
  return {check("det Delta_n closed form, " + std::to_string(instances) + " instances", worst_det, 1e-10),
          check("den expansion vs minor chain, " + std::to_string(cases) + " cases", worst_den, 1e-10)};
}

std::vector<CheckResult> suite_trace(const SuiteOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> dim(1, 10);
  std::uniform_real_distribution<double> xdist(-2.0, 2.0);
  std::uniform_real_distribution<double> adist(0.5, 4.0);
  const int instances = opts.instances > 0 ? opts.instances : 500;
  double worst = 0.0;
  for (int i = 0; i < instances; ++i) {
    const double alpha = adist(rng);
    const double beta = std::uniform_real_distribution<double>(1.0 / alpha + 0.05, 4.0)(rng);
    const Params p = derive_params(alpha, beta);
    std::vector<double> x(dim(rng));
    for (auto& v : x) v = xdist(rng);
    worst = std::max(worst, std::abs(trace_B_direct(x, p) - trace_B_expansion(x, p)));
  }
  return {check("trace identity, " + std::to_string(instances) + " instances (absolute)", worst, 1e-12)};
}

std::vector<CheckResult> suite_ldu(const SuiteOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> dim(2, 8);
  std::uniform_real_distribution<double> qdist(0.0, 2.0);
  const int instances = opts.instances > 0 ? opts.instances : 200;
  double worst_factor = 0.0;
  double worst_pivot = 0.0;
  double worst_root = 0.0;
  double min_positivity = 1e300;
  for (int i = 0; i < instances; ++i) {
    const int n = dim(rng);
    const auto u = random_u(rng, n);
    const double q = qdist(rng);
    std::uint32_t mask = 0;
    while (mask == 0 || std::popcount(mask) % 2 != 0) {
      mask = std::uniform_int_distribution<std::uint32_t>(1, (1u << n) - 1)(rng);
    }
    const Subset j = subset_from_mask(mask, n);
    const Eigen::MatrixXcd a = perturbed_delta(u, q, build_xi(n, j));
    const LduFactors f = ldu_decompose(a);
    const Eigen::MatrixXcd rebuilt = f.lower * f.diag.asDiagonal() * f.lower.transpose();
    worst_factor = std::max(worst_factor, (rebuilt - a).norm() / a.norm());

    const MinorChain chain = minor_chain(u, q, j);
    for (int m = 0; m < n; ++m) {
      worst_pivot = std::max(worst_pivot, std::abs(chain.pivots[m] - f.diag(m)) / std::abs(f.diag(m)));
    }
    for (int m = 0; m < n; ++m) {
      const double re = (chain.d[m + 1] * std::conj(chain.d[m])).real();
      min_positivity = std::min(min_positivity, re / (std::abs(chain.d[m + 1]) * std::abs(chain.d[m])));
    }
    const double expected = 1.0 / std::sqrt(chain.d[n].real());
    worst_root = std::max(worst_root, relative(inv_sqrt_det(chain), expected));
  }
  return {check("L D L' reconstruction", worst_factor, 1e-12),
          check("minor chain pivots vs dense LDU", worst_pivot, 1e-10),
          check("Re(d_{m+1} conj d_m) > 0 (normalized minimum)", min_positivity > 0.0 ? 0.0 : 1.0, 0.0,
                "min " + format(min_positivity)),
          check("principal-branch inverse square root", worst_root, 1e-10)};
}

std::vector<CheckResult> suite_series(const SuiteOptions& opts) {
  std::vector<CheckResult> out;
  const AperySeries s = apery_series(2, 4);
  out.push_back(check("J_2(1)/J_2(0) = 3/4", std::abs(s.ratio[1] - 0.75), 0.0));
  out.push_back(check("J_2(2)/J_2(0) = 41/64", std::abs(s.ratio[2] - 41.0 / 64.0), 0.0));
  out.push_back(check("Heun residual, M = 20", heun_residual(20), 1e-10));
  for (int n : {2, 4}) {
    for (double q : {0.2, 0.5}) {
      const SeriesValue series = R_n1_series(n, q, 80);
      const Subset j{1, n};
      const QuadEstimate quad = orbit_integral(n, j, q, quad_for(opts, n));
      out.push_back(check("series vs quadrature, n = " + std::to_string(n) + ", q = " + format(q),
                          std::abs(series.value - quad.value),
                          3.0 * quad.std_error + series.truncation_estimate,
                          "series " + format(series.value) + ", quadrature " + format(quad.value)));
    }
  }
  return out;
}

std::vector<CheckResult> suite_closedform(const SuiteOptions& opts) {
  std::vector<CheckResult> out;
  const QuadEstimate r21 = orbit_integral(2, Subset{1, 2}, opts.q, quad_for(opts, 2));
  const double closed = R21_closed_form(opts.q);
  out.push_back(check("R_{2,1} quadrature vs 2F1 closed form, q = " + format(opts.q),
                      std::abs(r21.value - closed), 3.0 * r21.std_error,
                      "quadrature " + format(r21.value) + ", closed form " + format(closed)));
  const SpecialValueResult z = zeta_Q(2, opts.alpha, opts.beta, quad_for(opts, 2));
  const double zc = zeta_Q2_closed_form(opts.alpha, opts.beta);
  out.push_back(check("zeta_Q(2) vs closed form", std::abs(z.value - zc), 3.0 * z.std_error,
                      "assembled " + format(z.value) + ", closed form " + format(zc)));
  return out;
}

std::vector<CheckResult> suite_oracle(const SuiteOptions& opts) {
  const Params p = derive_params(opts.alpha, opts.beta);
  const SpecialValueResult z = zeta_Q(opts.n, opts.alpha, opts.beta, quad_for(opts, opts.n));
  const OracleValue o = trace_inverse_power(p, opts.n, opts.oracle_N);
  const double diff = std::abs(z.value - o.value);
  const std::string detail = "formula " + format(z.value) + " +- " + format(z.std_error) + ", oracle " +
                             format(o.value) + " +- " + format(o.tail_bound);
  return {check("formula vs Tr Q^-" + std::to_string(opts.n), diff, 3.0 * z.std_error + o.tail_bound, detail),
          check("four significant digits", diff / std::abs(o.value), 5e-5, detail)};
}

std::vector<CheckResult> suite_limit(const SuiteOptions& opts) {
  const double omega = std::sqrt(1.5);
  const std::vector<double> eps{0.2, 0.1, 0.05};
  const LimitCheck lc = epsilon_limit_check(2, omega, eps, quad_for(opts, 2));
  std::vector<double> dev;
  for (double s : lc.scaled) dev.push_back(std::abs(s - lc.limit) / lc.limit);
  std::string detail;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    detail += (i ? ", " : "") + std::string("eps ") + format(eps[i]) + ": " + format(dev[i]);
  }
  const bool decreasing = dev[0] > dev[1] && dev[1] > dev[2];
  return {check("relative deviation at eps = 0.05", dev[2], 0.02, detail),
          check("deviations decrease with eps", decreasing ? 0.0 : 1.0, 0.0, detail)};
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"det", "trace", "ldu", "series", "closedform", "oracle", "limit"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, const SuiteOptions& opts) {
  if (suite == "det") return suite_det(opts);
  if (suite == "trace") return suite_trace(opts);
  if (suite == "ldu") return suite_ldu(opts);
  if (suite == "series") return suite_series(opts);
  if (suite == "closedform") return suite_closedform(opts);
  if (suite == "oracle") return suite_oracle(opts);
  if (suite == "limit") return suite_limit(opts);
  throw DomainError("unknown verify suite '" + suite + "'");
}

bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

}  // namespace ncho
