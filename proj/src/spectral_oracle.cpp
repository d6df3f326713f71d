#include "ncho/spectral_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ncho/errors.hpp"

namespace ncho {

namespace {

Eigen::MatrixXd sector_block(double alpha, double beta, int N, int parity) {
  std::vector<int> index;
  for (int k = parity; k < N; k += 2) index.push_back(k);
  const int m = static_cast<int>(index.size());
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    const double h = index[i] + 0.5;
    b(i, i) = alpha * h;
    b(m + i, m + i) = beta * h;
    if (i + 1 < m) {
      const double k = index[i];
      const double c = 0.5 * std::sqrt((k + 1.0) * (k + 2.0));
      // upper right C = -D, lower left C'
      b(i, m + i + 1) = -c;
      b(m + i + 1, i) = -c;
      b(i + 1, m + i) = c;
      b(m + i, i + 1) = c;
    }
  }
  return b;
}

double tail_integral(double a, double b, double from, int n) {
  return std::pow(a * from + b, 1.0 - n) / (a * (n - 1.0));
}

}  // namespace

Eigen::MatrixXd dilation_matrix(int N) {
  if (N < 1) throw DomainError("dilation_matrix: N must be >= 1");
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(N, N);
  for (int k = 0; k + 2 < N; ++k) {
    const double c = 0.5 * std::sqrt((k + 1.0) * (k + 2.0));
    d(k, k + 2) = c;
    d(k + 2, k) = -c;
  }
  return d;
}

TruncatedQ build_truncated_q(double alpha, double beta, int N) {
  if (N < 16) throw DomainError("build_truncated_q: N must be >= 16");
  TruncatedQ tq;
  tq.N = N;
  tq.alpha = alpha;
  tq.beta = beta;
  tq.even = sector_block(alpha, beta, N, 0);
  tq.odd = sector_block(alpha, beta, N, 1);
  return tq;
}

TruncatedQ build_truncated_q(const Params& p, int N) { return build_truncated_q(p.alpha, p.beta, N); }

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw DomainError("symmetric_eigenvalues: matrix must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("symmetric_eigenvalues: QR iteration failed");
  std::vector<double> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> eigenvalues(const TruncatedQ& tq, bool require_positive) {
  std::vector<double> all = symmetric_eigenvalues(tq.even);
  const std::vector<double> odd = symmetric_eigenvalues(tq.odd);
  all.insert(all.end(), odd.begin(), odd.end());
  std::sort(all.begin(), all.end());
  if (require_positive && !(all.front() > 0.0)) {
    throw NumericError("eigenvalues: lowest eigenvalue " + std::to_string(all.front()) +
                       " is not positive");
  }
  return all;
}

double semiclassical_slope(double alpha, double beta) {
  // The integrand has period pi/2 in theta; midpoint rule is spectrally accurate.
  const int steps = 4096;
  const double mean = 0.5 * (alpha + beta);
  const double half_gap = 0.5 * (alpha - beta);
  double sum = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double theta = (i + 0.5) * (0.5 * std::numbers::pi) / steps;
    const double s = std::sin(2.0 * theta);
    const double root = std::sqrt(half_gap * half_gap + s * s);
    const double lower = mean - root;
    const double upper = mean + root;
    if (!(lower > 0.0)) throw DomainError("semiclassical_slope: symbol is not positive definite");
    sum += 1.0 / lower + 1.0 / upper;
  }
  return 1.0 / (sum / steps);
}

LinearFit fit_spectrum(const std::vector<double>& lambda, int first, int last) {
  if (first < 1 || last > static_cast<int>(lambda.size()) || last - first < 2) {
    throw DomainError("fit_spectrum: invalid window");
  }
  const int count = last - first + 1;
  double sx = 0.0, sy = 0.0;
  for (int i = first; i <= last; ++i) {
    sx += i;
    sy += lambda[i - 1];
  }
  const double mx = sx / count;
  const double my = sy / count;
  double sxx = 0.0, sxy = 0.0;
  for (int i = first; i <= last; ++i) {
    sxx += (i - mx) * (i - mx);
    sxy += (i - mx) * (lambda[i - 1] - my);
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (int i = first; i <= last; ++i) {
    const double r = std::abs(lambda[i - 1] - (fit.slope * i + fit.intercept));
    fit.max_residual = std::max(fit.max_residual, r);
    fit.max_relative_residual = std::max(fit.max_relative_residual, r / lambda[i - 1]);
  }
  return fit;
}

OracleValue trace_inverse_power(const Params& p, int n, int N, double tolerance) {
  if (n < 2) throw DomainError("trace_inverse_power: n must be >= 2");
  const std::vector<double> lambda = eigenvalues(build_truncated_q(p, N));
  OracleValue out;
  const int L = N / 2;
  out.trusted = L;
  // Sum from the top so that small terms are added first.
  for (int i = L; i >= 1; --i) out.partial_sum += std::pow(lambda[i - 1], -n);

  out.fit = fit_spectrum(lambda, L / 2, L);
  const LinearFit narrow = fit_spectrum(lambda, (3 * L) / 4, L);
  const double from = L + 0.5;
  const double a = out.fit.slope;
  const double b = out.fit.intercept;
  out.tail = tail_integral(a, b, from, n);
  out.value = out.partial_sum + out.tail;

  const double model_spread = std::abs(tail_integral(narrow.slope, narrow.intercept, from, n) - out.tail);
  const double midpoint = n * a / 24.0 * std::pow(a * from + b, -n - 1.0);
  // Residuals oscillate about the fit: a boundary term plus the second-order term.
  const double r = out.fit.max_residual;
  const double boundary = r * n * std::pow(a * from + b, -n - 1.0);
  const double second_order =
      0.5 * r * r * n * (n + 1.0) * std::pow(a * from + b, -n - 1.0) / (a * (n + 1.0));
  out.tail_bound = model_spread + midpoint + boundary + second_order;
  if (out.tail_bound > tolerance * out.value) {
    out.warning = true;
    out.message = "tail bound " + std::to_string(out.tail_bound) + " exceeds tolerance";
  }
  return out;
}

}  // namespace ncho
