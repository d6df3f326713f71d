#include "ncho/matrixcore.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "ncho/errors.hpp"

namespace ncho {

namespace {

constexpr double kMinorFloor = 1e-280;

struct Coefficients {
  std::vector<double> diag_part;  // 1/(1-u^4) - 1/2
  std::vector<double> off_part;   // -u^2/(1-u^4)
};

Coefficients coefficients(std::span<const double> u) {
  Coefficients c;
  c.diag_part.reserve(u.size());
  c.off_part.reserve(u.size());
  for (double ui : u) {
    const double u2 = ui * ui;
    const double inv = 1.0 / (1.0 - u2 * u2);
    c.diag_part.push_back(inv - 0.5);
    c.off_part.push_back(-u2 * inv);
  }
  return c;
}

}  // namespace

void validate_subset(std::span<const int> j, int n) {
  int previous = 0;
  for (int index : j) {
    if (index <= previous || index > n) {
      throw DomainError("subset must be strictly increasing within 1.." + std::to_string(n));
    }
    previous = index;
  }
}

Eigen::MatrixXd delta_entries(std::span<const double> u) {
  const int n = static_cast<int>(u.size());
  if (n < 2) throw DomainError("Delta_n needs n >= 2");
  for (double ui : u) {
    if (!(ui >= 0.0 && ui < 1.0)) throw DomainError("Delta_n entries need u_i in [0, 1)");
  }
  const Coefficients c = coefficients(u);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int next = (i + 1) % n;
    m(i, i) += c.diag_part[i];
    m(next, next) += c.diag_part[i];
    m(i, next) += c.off_part[i];
    m(next, i) += c.off_part[i];
  }
  return m;
}

DeltaMatrix build_delta(std::span<const double> u) {
  for (double ui : u) {
    if (!(ui > 0.0 && ui < 1.0)) throw DomainError("build_delta: every u_i must lie in (0, 1)");
  }
  return DeltaMatrix{static_cast<int>(u.size()), std::vector<double>(u.begin(), u.end()),
                     delta_entries(u)};
}

double delta_det_closed_form(std::span<const double> u) {
  double product = 1.0;
  double denominator = 1.0;
  for (double ui : u) {
    const double u2 = ui * ui;
    product *= u2;
    denominator *= 1.0 - u2 * u2;
  }
  const double v = 1.0 - product;
  return v * v / denominator;
}

XiDiagonal build_xi(int n, std::span<const int> j) {
  validate_subset(j, n);
  if (j.size() < 2 || j.size() % 2 != 0) {
    throw DomainError("build_xi: subset size must be even and >= 2");
  }
  XiDiagonal xi;
  xi.n = n;
  xi.j.assign(j.begin(), j.end());
  xi.signs.assign(n, 0);
  for (std::size_t r = 0; r < j.size(); ++r) {
    // r is 0-based here, so (-1)^{r+1}
    xi.signs[j[r] - 1] = (r % 2 == 0) ? -1 : 1;
  }
  return xi;
}

Eigen::MatrixXcd perturbed_delta(std::span<const double> u, double q, const XiDiagonal& xi) {
  if (static_cast<int>(u.size()) != xi.n) throw DomainError("perturbed_delta: size mismatch");
  Eigen::MatrixXcd m = delta_entries(u).cast<Complex>();
  for (int i = 0; i < xi.n; ++i) m(i, i) += Complex(0.0, q * xi.signs[i]);
  return m;
}

MinorChain minor_chain(std::span<const double> u, double q, std::span<const int> j) {
  const int n = static_cast<int>(u.size());
  if (n < 2) throw DomainError("minor_chain: n must be >= 2");
  for (double ui : u) {
    if (!(ui > 0.0 && ui < 1.0)) throw DomainError("minor_chain: every u_i must lie in (0, 1)");
  }
  validate_subset(j, n);
  if (j.size() % 2 != 0) throw DomainError("minor_chain: subset size must be even");

  const Coefficients c = coefficients(u);
  std::vector<Complex> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = c.diag_part[(i + n - 1) % n] + c.diag_part[i];
  for (std::size_t r = 0; r < j.size(); ++r) {
    diag[j[r] - 1] += Complex(0.0, (r % 2 == 0) ? -q : q);
  }

  // Row n-1 holds the wrap-around entry in column 0 and the band entry in
  // column n-2; for n = 2 these coincide and add.
  std::vector<double> last_row(n - 1, 0.0);
  last_row[0] += c.off_part[n - 1];
  last_row[n - 2] += c.off_part[n - 2];

  std::vector<Complex> pivot(n);
  std::vector<Complex> band_l(n, 0.0);  // L(m, m-1) for m <= n-2
  std::vector<Complex> last_l(n - 1);   // L(n-1, k)

  pivot[0] = diag[0];
  for (int m = 1; m <= n - 2; ++m) {
    band_l[m] = c.off_part[m - 1] / pivot[m - 1];
    pivot[m] = diag[m] - band_l[m] * c.off_part[m - 1];
  }
  Complex schur = diag[n - 1];
  for (int k = 0; k <= n - 2; ++k) {
    Complex e = last_row[k];
    if (k >= 1) e -= last_l[k - 1] * pivot[k - 1] * band_l[k];
    last_l[k] = e / pivot[k];
    schur -= last_l[k] * last_l[k] * pivot[k];
  }
  pivot[n - 1] = schur;

  MinorChain chain;
  chain.pivots = pivot;
  chain.d.resize(n + 1);
  chain.d[0] = 1.0;
  for (int m = 1; m <= n; ++m) {
    chain.d[m] = chain.d[m - 1] * pivot[m - 1];
    const double magnitude = std::abs(chain.d[m]);
    if (!std::isfinite(magnitude) || magnitude < kMinorFloor) {
      throw NumericError("minor_chain: principal minor " + std::to_string(m) +
                         " underflowed or overflowed; u is too close to the boundary");
    }
  }
  return chain;
}

LduFactors ldu_decompose(const Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw DomainError("ldu_decompose: matrix must be square");
  LduFactors f;
  f.lower = Eigen::MatrixXcd::Identity(n, n);
  f.diag = Eigen::VectorXcd::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Complex dk = a(k, k);
    for (Eigen::Index i = 0; i < k; ++i) dk -= f.lower(k, i) * f.lower(k, i) * f.diag(i);
    if (std::abs(dk) == 0.0) throw NumericError("ldu_decompose: singular leading minor");
    f.diag(k) = dk;
    for (Eigen::Index r = k + 1; r < n; ++r) {
      Complex v = a(r, k);
      for (Eigen::Index i = 0; i < k; ++i) v -= f.lower(r, i) * f.lower(k, i) * f.diag(i);
      f.lower(r, k) = v / dk;
    }
  }
  return f;
}

double inv_sqrt_det(const MinorChain& chain) {
  Complex product = 1.0;
  for (const Complex& pivot : chain.pivots) product /= std::sqrt(pivot);
  const double value = product.real();
  if (std::abs(product.imag()) > 1e-8 * std::abs(value)) {
    throw NumericError("inv_sqrt_det: imaginary residual " + std::to_string(product.imag()) +
                       " exceeds tolerance");
  }
  return value;
}

double trace_B_direct(std::span<const double> x, const Params& p) {
  const std::size_t n = x.size();
  if (n == 0) throw DomainError("trace_B_direct: need at least one point");
  Eigen::Matrix2d product = Eigen::Matrix2d::Identity();
  for (std::size_t i = 0; i < n; ++i) {
    const double a = x[i];
    const double b = x[(i + 1) % n];
    const double theta = 0.5 * p.q * (a * a - b * b);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Eigen::Matrix2d factor;
    factor << c / p.alpha, -s / p.alpha, s / p.beta, c / p.beta;
    product = product * factor;
  }
  return product.trace();
}

double trace_B_expansion(std::span<const double> x, const Params& p) {
  const int n = static_cast<int>(x.size());
  if (n < 1 || n > 20) throw DomainError("trace_B_expansion: need 1 <= n <= 20");
  const double ratio = (p.alpha - p.beta) / (p.alpha + p.beta);
  double bracket = 1.0;
  if (ratio != 0.0) {
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      const int size = std::popcount(mask);
      if (size % 2 != 0) continue;
      double phase = 0.0;
      int rank = 0;
      for (int i = 0; i < n; ++i) {
        if (!(mask & (1u << i))) continue;
        ++rank;
        phase += (rank % 2 == 0 ? 1.0 : -1.0) * x[i] * x[i];
      }
      bracket += std::pow(ratio, size) * std::cos(p.q * phase);
    }
  }
  const double base = (p.alpha + p.beta) / (2.0 * p.alpha * p.beta);
  return 2.0 * std::pow(base, n) * bracket;
}

}  // namespace ncho
