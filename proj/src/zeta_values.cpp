#include "ncho/zeta_values.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "ncho/errors.hpp"

namespace ncho {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Ratios r(m) = J(m) / J(0) of
// 4m^2 J(m) - (8m^2 - 8m + 3) J(m-1) + 4(m-1)^2 J(m-2) = rhs(m), J(-1) = 0.
std::vector<double> recurrence_ratios(int M, const std::vector<double>& rhs_ratio) {
  std::vector<double> r(M + 1, 0.0);
  r[0] = 1.0;
  for (int m = 1; m <= M; ++m) {
    const double mm = m;
    double next = (8.0 * mm * mm - 8.0 * mm + 3.0) * r[m - 1] + rhs_ratio[m];
    if (m >= 2) next -= 4.0 * (mm - 1.0) * (mm - 1.0) * r[m - 2];
    r[m] = next / (4.0 * mm * mm);
  }
  return r;
}

AperySeries from_ratios(int n, double j0, std::vector<double> ratio, bool seeded) {
  AperySeries s;
  s.n = n;
  s.seeded = seeded;
  s.ratio = std::move(ratio);
  s.J.reserve(s.ratio.size());
  for (double r : s.ratio) s.J.push_back(j0 * r);
  return s;
}

AperySeries chain_up(AperySeries base, int n, int M) {
  while (base.n < n) {
    const int next_n = base.n + 2;
    const double j0 = hurwitz_zeta_half(next_n);
    std::vector<double> rhs(M + 1, 0.0);
    for (int m = 1; m <= M; ++m) rhs[m] = base.J[m] / j0;
    base = from_ratios(next_n, j0, recurrence_ratios(M, rhs), base.seeded);
  }
  return base;
}

}  // namespace

QuadConfig default_config(int n) {
  QuadConfig cfg;
  cfg.samples = std::int64_t{1} << (12 + n);
  cfg.batches = 16;
  return cfg;
}

std::uint64_t orbit_seed(std::uint64_t seed, int n, int k, int orbit) {
  std::uint64_t h = splitmix(seed);
  h = splitmix(h ^ static_cast<std::uint64_t>(n));
  h = splitmix(h ^ (static_cast<std::uint64_t>(k) << 16));
  return splitmix(h ^ (static_cast<std::uint64_t>(orbit) << 32));
}

QuadEstimate orbit_integral(int n, std::span<const int> j, double q, const QuadConfig& cfg) {
  if (!(q >= 0.0) || !std::isfinite(q)) throw DomainError("orbit_integral: q must be finite and >= 0");
  const IntegrandDenominator den(n, j);
  const double scale = std::ldexp(1.0, n);
  const Integrand f = [&den, scale, q](const Sample& s) { return scale / std::sqrt(den(s.point, q)); };
  if (!cfg.use_control_variate) return qmc_integrate(f, n, cfg);
  return integrate_with_control_variate(f, hurwitz_integrand, hurwitz_zeta_half(n), n, cfg);
}

RnkResult R_nk(int n, int k, double q, const QuadConfig& cfg) {
  if (k < 1 || 2 * k > n || n > 10) {
    throw DomainError("R_nk: need 2 <= 2k <= n <= 10 (n=" + std::to_string(n) +
                      ", k=" + std::to_string(k) + ")");
  }
  RnkResult r;
  r.n = n;
  r.k = k;
  r.q = q;
  const auto comps = compositions(2 * k, n);
  const auto orbits = cyclic_orbits(comps);
  double variance = 0.0;
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    OrbitIntegral oi;
    oi.representative = orbits[i].representative;
    oi.subset = gaps_to_subset(oi.representative);
    oi.weight = orbits[i].weight;
    QuadConfig orbit_cfg = cfg;
    orbit_cfg.seed = orbit_seed(cfg.seed, n, k, static_cast<int>(i));
    oi.estimate = orbit_integral(n, oi.subset, q, orbit_cfg);
    r.value += oi.weight * oi.estimate.value;
    variance += std::pow(oi.weight * oi.estimate.std_error, 2);
    r.orbits.push_back(std::move(oi));
  }
  r.std_error = std::sqrt(variance);
  return r;
}

double zeta_Q_degenerate(int n, double alpha) {
  if (n < 2) throw DomainError("zeta_Q_degenerate: n must be >= 2");
  if (!(alpha > 1.0)) throw DomainError("zeta_Q_degenerate: alpha must exceed 1");
  return 2.0 * std::pow(alpha * alpha - 1.0, -0.5 * n) * hurwitz_zeta_half(n);
}

SpecialValueResult zeta_Q(int n, double alpha, double beta, const QuadConfig& cfg) {
  if (n < 2) throw DomainError("zeta_Q: n must be >= 2");
  SpecialValueResult res;
  res.n = n;
  res.params = derive_params(alpha, beta);
  res.zeta_half = hurwitz_zeta_half(n);
  res.config = cfg;
  for (int k = 1; 2 * k <= n; ++k) {
    RTerm term;
    term.k = k;
    res.R.push_back(std::move(term));
  }

  if (alpha == beta) {
    res.exact = true;
    res.value = zeta_Q_degenerate(n, alpha);
    return res;
  }
  if (n > 10) throw DomainError("zeta_Q: n above 10 is only available for alpha == beta");
  cfg.validate();

  const Params& p = res.params;
  double bracket = res.zeta_half;
  double variance = 0.0;
  double skew_power = 1.0;
  for (RTerm& term : res.R) {
    skew_power *= p.skew_factor;
    RnkResult r = R_nk(n, term.k, p.q, cfg);
    term.value = r.value;
    term.std_error = r.std_error;
    term.evaluated = true;
    term.orbits = std::move(r.orbits);
    bracket += skew_power * term.value;
    variance += std::pow(skew_power * term.std_error, 2);
  }
  const double prefactor = 2.0 * std::pow(p.mean_factor, n);
  res.value = prefactor * bracket;
  res.std_error = prefactor * std::sqrt(variance);
  return res;
}

double R21_closed_form(double q) {
  const double f = gauss_2f1_quarter(q);
  return 3.0 * riemann_zeta(2) * f * f;
}

double zeta_Q2_closed_form(double alpha, double beta) {
  const Params p = derive_params(alpha, beta);
  const double f = gauss_2f1_quarter(p.q);
  const double scale = std::numbers::pi * p.mean_factor;
  return scale * scale * (1.0 + p.skew_factor * f * f);
}

AperySeries apery_series(int n, int M, std::optional<std::span<const double>> seed_J3) {
  if (M < 0) throw DomainError("apery_series: M must be >= 0");
  if (n < 2) throw DomainError("apery_series: n must be >= 2");
  if (n % 2 == 0) {
    AperySeries base =
        from_ratios(2, hurwitz_zeta_half(2), recurrence_ratios(M, std::vector<double>(M + 1, 0.0)), false);
    return chain_up(std::move(base), n, M);
  }
  if (!seed_J3) {
    throw DomainError("apery_series: odd n = " + std::to_string(n) + " needs seeded J_3 values");
  }
  if (static_cast<int>(seed_J3->size()) < M + 1) {
    throw DomainError("apery_series: J_3 seed covers m <= " + std::to_string(seed_J3->size() - 1) +
                      ", need " + std::to_string(M));
  }
  const double j0 = (*seed_J3)[0];
  std::vector<double> ratio;
  for (int m = 0; m <= M; ++m) ratio.push_back((*seed_J3)[m] / j0);
  AperySeries base = from_ratios(3, j0, std::move(ratio), true);
  return chain_up(std::move(base), n, M);
}

std::vector<double> fit_j3_seed(std::span<const double> q, std::span<const double> values,
                                std::span<const double> errors, int degree) {
  const Eigen::Index rows = static_cast<Eigen::Index>(q.size());
  if (degree < 1) throw DomainError("fit_j3_seed: degree must be >= 1");
  if (values.size() != q.size() || errors.size() != q.size()) {
    throw DomainError("fit_j3_seed: q, values and errors differ in length");
  }
  if (rows < degree) throw DomainError("fit_j3_seed: need at least `degree` data points");
  const double j0 = hurwitz_zeta_half(3);
  Eigen::MatrixXd a(rows, degree);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!(errors[i] > 0.0)) throw DomainError("fit_j3_seed: errors must be positive");
    if (!(q[i] >= 0.0 && q[i] < 1.0)) throw DomainError("fit_j3_seed: q must lie in [0, 1)");
    const double weight = 1.0 / errors[i];
    const double q2 = q[i] * q[i];
    double power = 1.0;
    for (int m = 1; m <= degree; ++m) {
      power *= q2;
      a(i, m - 1) = weight * binom_half(m) * power;
    }
    b(i) = weight * (values[i] - j0);
  }
  const Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
  std::vector<double> seed{j0};
  for (int m = 0; m < degree; ++m) seed.push_back(x(m));
  return seed;
}

SeriesValue R_n1_series(const AperySeries& series, double q, double tolerance) {
  if (!(q >= 0.0 && q < 1.0)) throw DomainError("R_n1_series: q must lie in [0, 1)");
  SeriesValue out;
  const double q2 = q * q;
  double power = 1.0;
  double last = 0.0;
  for (std::size_t m = 0; m < series.J.size(); ++m) {
    last = binom_half(static_cast<int>(m)) * series.J[m] * power;
    out.value += last;
    power *= q2;
  }
  out.truncation_estimate = std::abs(last);
  if (q == 0.0) out.truncation_estimate = 0.0;
  out.converged = out.truncation_estimate <= tolerance * std::abs(out.value);
  return out;
}

SeriesValue R_n1_series(int n, double q, int M, double tolerance) {
  if (!(q >= 0.0 && q < 1.0)) throw DomainError("R_n1_series: q must lie in [0, 1)");
  return R_n1_series(apery_series(n, M), q, tolerance);
}

double heun_residual(std::span<const double> c) {
  const int M = static_cast<int>(c.size()) - 1;
  if (M < 1) throw DomainError("heun_residual: need at least two coefficients");
  double worst = 0.0;
  for (int m = 0; m <= M - 1; ++m) {
    const double mm = m;
    double coefficient = (mm + 1.0) * (mm + 1.0) * c[m + 1] - (2.0 * mm * mm + 2.0 * mm + 0.75) * c[m];
    if (m >= 1) coefficient += mm * mm * c[m - 1];
    worst = std::max(worst, std::abs(coefficient));
  }
  return worst;
}

double heun_residual(int M) {
  if (M < 5) throw DomainError("heun_residual: M must be >= 5");
  return heun_residual(apery_series(2, M).J);
}

LimitCheck epsilon_limit_check(int n, double omega, std::span<const double> eps_list,
                               const QuadConfig& cfg) {
  if (!(omega > 0.0)) throw DomainError("epsilon_limit_check: omega must be positive");
  LimitCheck out;
  out.n = n;
  out.omega = omega;
  out.limit = (std::pow(omega, n) + std::pow(omega, -n)) * hurwitz_zeta_half(n);
  for (double eps : eps_list) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("epsilon_limit_check: epsilon must lie in (0, 1)");
    const double alpha = omega / eps;
    const double beta = 1.0 / (omega * eps);
    const SpecialValueResult r = zeta_Q(n, alpha, beta, cfg);
    const double scale = std::pow(eps, n);
    out.epsilon.push_back(eps);
    out.scaled.push_back(r.value / scale);
    out.std_error.push_back(r.std_error / scale);
  }
  return out;
}

}  // namespace ncho
