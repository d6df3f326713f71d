#include "ncho/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include <boost/random/sobol.hpp>

#include "ncho/errors.hpp"

namespace ncho {

namespace {

constexpr double kDivergenceGrowth = 0.05;
constexpr int kDivergenceMinExcess = 6;  // check only when samples >= 2^(n + 6)

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Prefix means of one batch at 1/16, 1/4 and all of its nodes. Levels four
// apart keep the parity of log2(count), which matters for nets near the corner.
struct PrefixMeans {
  double sixteenth = 0.0;
  double quarter = 0.0;
  double full = 0.0;
};

struct BatchResult {
  PrefixMeans f;
  PrefixMeans diff;  // f - g, only filled with a control variate
};

struct Moments {
  double mean = 0.0;
  double std_error = 0.0;
  double variance = 0.0;  // of the batch means
};

Moments moments(const std::vector<double>& values) {
  Moments m;
  const double count = static_cast<double>(values.size());
  CompensatedSum sum;
  for (double v : values) sum.add(v);
  m.mean = sum.value() / count;
  double ss = 0.0;
  for (double v : values) ss += (v - m.mean) * (v - m.mean);
  m.variance = ss / (count - 1.0);
  m.std_error = std::sqrt(m.variance / count);
  return m;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<std::uint64_t> digital_shifts(std::uint64_t seed, int batches, int n) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> shifts(static_cast<std::size_t>(batches) * n);
  for (auto& s : shifts) s = rng();
  return shifts;
}

BatchResult run_batch(int n, const QuadConfig& cfg, std::span<const std::uint64_t> shift,
                      const Integrand& f, const Integrand* g) {
  boost::random::sobol engine(n);
  std::array<std::uint64_t, kMaxDimension> raw{};  // index 0 of the net is the origin
  std::array<double, kMaxDimension> u{};
  std::array<double, kMaxDimension> w{};
  const std::span<const double> u_view(u.data(), n);
  const std::span<const double> w_view(w.data(), n);
  const bool corner = cfg.transform == Transform::corner && cfg.corner_power > 1;
  const int p = cfg.corner_power;

  const std::int64_t sixteenth = cfg.samples / 16;
  const std::int64_t quarter = cfg.samples / 4;
  CompensatedSum f_sum;
  CompensatedSum d_sum;
  BatchResult result;

  for (std::int64_t i = 0; i < cfg.samples; ++i) {
    if (i > 0) {
      for (int d = 0; d < n; ++d) raw[d] = engine();
    }
    double jacobian = 1.0;
    for (int d = 0; d < n; ++d) {
      // 52 significant bits at odd multiples of 2^-53: v and 1 - v are both exact.
      const std::uint64_t k = (raw[d] ^ shift[d]) >> 12;
      const double v = std::ldexp(static_cast<double>(2 * k + 1), -53);
      const double vc = 1.0 - v;
      if (corner) {
        const double vc_pow = std::pow(vc, p - 1);
        w[d] = vc_pow * vc;
        u[d] = 1.0 - w[d];
        jacobian *= p * vc_pow;
      } else {
        u[d] = v;
        w[d] = vc;
      }
    }
    const CubePoint point(u_view, w_view);
    const Sample sample{u_view, w_view, point};
    const double fv = f(sample) * jacobian;
    if (!std::isfinite(fv)) throw NumericError("qmc_integrate: integrand is not finite");
    f_sum.add(fv);
    if (g != nullptr) {
      const double gv = (*g)(sample) * jacobian;
      if (!std::isfinite(gv)) throw NumericError("qmc_integrate: control variate is not finite");
      d_sum.add(fv - gv);
    }
    if (i + 1 == sixteenth) {
      result.f.sixteenth = f_sum.value() / static_cast<double>(sixteenth);
      result.diff.sixteenth = d_sum.value() / static_cast<double>(sixteenth);
    }
    if (i + 1 == quarter) {
      result.f.quarter = f_sum.value() / static_cast<double>(quarter);
      result.diff.quarter = d_sum.value() / static_cast<double>(quarter);
    }
  }
  result.f.full = f_sum.value() / static_cast<double>(cfg.samples);
  result.diff.full = d_sum.value() / static_cast<double>(cfg.samples);
  return result;
}

std::vector<BatchResult> run_all_batches(int n, const QuadConfig& cfg, const Integrand& f,
                                         const Integrand* g) {
  const std::vector<std::uint64_t> shifts = digital_shifts(cfg.seed, cfg.batches, n);
  std::vector<BatchResult> results(cfg.batches);
  auto batch_shift = [&](int b) {
    return std::span<const std::uint64_t>(shifts.data() + static_cast<std::size_t>(b) * n, n);
  };

  int threads = cfg.threads > 0 ? cfg.threads
                                : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, cfg.batches);
  if (threads <= 1) {
    for (int b = 0; b < cfg.batches; ++b) results[b] = run_batch(n, cfg, batch_shift(b), f, g);
    return results;
  }

  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int b = next++; b < cfg.batches; b = next++) {
          results[b] = run_batch(n, cfg, batch_shift(b), f, g);
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

// Steady growth of the median batch mean across the 1/16, 1/4 and full
// prefixes means the integral diverges.
void check_divergence(const std::vector<PrefixMeans>& prefixes, int n, std::int64_t samples) {
  if (samples < (std::int64_t{1} << (n + kDivergenceMinExcess))) return;
  std::vector<double> s, q, f;
  for (const auto& p : prefixes) {
    s.push_back(p.sixteenth);
    q.push_back(p.quarter);
    f.push_back(p.full);
  }
  const double ms = median(s);
  const double mq = median(q);
  const double mf = median(f);
  const double growth = mf - ms;
  if (ms < mq && mq < mf && growth > kDivergenceGrowth * std::abs(mf)) {
    throw NumericError("qmc_integrate: batch means grow with sample count (" +
                       std::to_string(ms) + " -> " + std::to_string(mq) + " -> " +
                       std::to_string(mf) + "); integrand is not integrable");
  }
}

void check_dimension(int n) {
  if (n < 2 || n > 10) throw DomainError("qmc_integrate: dimension must be in [2, 10]");
}

}  // namespace

std::string to_string(Transform t) { return t == Transform::corner ? "corner" : "none"; }

Transform transform_from_string(const std::string& name) {
  if (name == "corner") return Transform::corner;
  if (name == "none") return Transform::none;
  throw DomainError("unknown transform '" + name + "' (expected none or corner)");
}

void QuadConfig::validate() const {
  if (samples < 1024) throw DomainError("QuadConfig: samples must be >= 1024");
  if (batches < 8) throw DomainError("QuadConfig: batches must be >= 8");
  if (corner_power < 1) throw DomainError("QuadConfig: corner_power must be >= 1");
  if (threads < 0) throw DomainError("QuadConfig: threads must be >= 0");
}

CornerPoint corner_transform(std::span<const double> v, int power) {
  if (power < 1) throw DomainError("corner_transform: power must be >= 1");
  CornerPoint out;
  for (double vi : v) {
    if (!(vi > 0.0 && vi < 1.0)) throw DomainError("corner_transform: v must be in the open cube");
    const double vc = 1.0 - vi;
    const double vc_pow = std::pow(vc, power - 1);
    const double w = vc_pow * vc;
    out.w.push_back(w);
    out.u.push_back(power == 1 ? vi : 1.0 - w);
    out.jacobian *= power * vc_pow;
  }
  return out;
}

QuadEstimate qmc_integrate(const Integrand& f, int n, const QuadConfig& cfg) {
  cfg.validate();
  check_dimension(n);
  const auto batches = run_all_batches(n, cfg, f, nullptr);
  std::vector<double> means;
  std::vector<PrefixMeans> prefixes;
  for (const auto& b : batches) {
    means.push_back(b.f.full);
    prefixes.push_back(b.f);
  }
  const Moments m = moments(means);
  check_divergence(prefixes, n, cfg.samples);
  return QuadEstimate{m.mean, m.std_error, cfg.samples * cfg.batches, false};
}

QuadEstimate integrate_with_control_variate(const Integrand& f, const Integrand& g,
                                            double exact_g, int n, const QuadConfig& cfg) {
  cfg.validate();
  check_dimension(n);
  const auto batches = run_all_batches(n, cfg, f, &g);
  std::vector<double> f_means, d_means;
  std::vector<PrefixMeans> f_prefixes;
  for (const auto& b : batches) {
    f_means.push_back(b.f.full);
    d_means.push_back(b.diff.full);
    f_prefixes.push_back(b.f);
  }
  const Moments plain = moments(f_means);
  const Moments diff = moments(d_means);
  check_divergence(f_prefixes, n, cfg.samples);
  const std::int64_t used = cfg.samples * cfg.batches;
  if (diff.variance > plain.variance) return QuadEstimate{plain.mean, plain.std_error, used, false};
  return QuadEstimate{exact_g + diff.mean, diff.std_error, used, true};
}

double hurwitz_integrand(const Sample& s) {
  return std::ldexp(1.0, s.point.dimension()) / s.point.one_minus_product_sq();
}

}  // namespace ncho
