#include "ncho/expansion.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <string>

#include "ncho/errors.hpp"

namespace ncho {

namespace {

void append_compositions(int m, int remaining, std::vector<int>& prefix,
                         std::vector<Composition>& out) {
  if (m == 1) {
    prefix.push_back(remaining);
    out.push_back(Composition{prefix});
    prefix.pop_back();
    return;
  }
  for (int first = 1; first <= remaining - (m - 1); ++first) {
    prefix.push_back(first);
    append_compositions(m - 1, remaining - first, prefix, out);
    prefix.pop_back();
  }
}

Composition rotate(const Composition& t, int shift) {
  Composition r;
  const int m = t.length();
  r.parts.reserve(m);
  for (int i = 0; i < m; ++i) r.parts.push_back(t.parts[(i + shift) % m]);
  return r;
}

// (0-based start, length) of each cyclic gap block of a sorted nonempty subset.
std::vector<std::pair<int, int>> gap_blocks(std::span<const int> j, int n) {
  std::vector<std::pair<int, int>> blocks;
  blocks.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const int next = (i + 1 < j.size()) ? j[i + 1] : n + j[0];
    blocks.emplace_back(j[i] - 1, next - j[i]);
  }
  return blocks;
}

double block_product(const CubePoint& point, const std::vector<std::pair<int, int>>& blocks) {
  double product = 1.0;
  for (const auto& [start, length] : blocks) product *= point.block_factor(start, length);
  return product;
}

void check_open_cube(std::span<const double> u) {
  for (double ui : u) {
    if (!(ui > 0.0 && ui < 1.0)) throw DomainError("every u_i must lie in (0, 1)");
  }
}

}  // namespace

int Composition::total() const {
  int sum = 0;
  for (int p : parts) sum += p;
  return sum;
}

std::vector<Composition> compositions(int m, int n) {
  if (m < 1 || m > n) {
    throw DomainError("compositions: need 1 <= m <= n (m=" + std::to_string(m) +
                      ", n=" + std::to_string(n) + ")");
  }
  std::vector<Composition> out;
  std::vector<int> prefix;
  prefix.reserve(m);
  append_compositions(m, n, prefix, out);
  return out;
}

std::vector<CompositionOrbit> cyclic_orbits(std::span<const Composition> comps) {
  std::vector<CompositionOrbit> orbits;
  if (comps.empty()) return orbits;
  const int m = comps.front().length();
  std::vector<bool> assigned(comps.size(), false);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].length() != m) throw DomainError("cyclic_orbits: compositions differ in length");
    if (assigned[i]) continue;

    CompositionOrbit orbit;
    orbit.representative = comps[i];
    int stabilizer = 0;
    for (int shift = 0; shift < m; ++shift) {
      const Composition r = rotate(comps[i], shift);
      if (r == comps[i]) ++stabilizer;
      orbit.representative = std::min(orbit.representative, r);
    }
    for (std::size_t k = i; k < comps.size(); ++k) {
      if (assigned[k]) continue;
      for (int shift = 0; shift < m; ++shift) {
        if (rotate(comps[i], shift) == comps[k]) {
          assigned[k] = true;
          orbit.members.push_back(comps[k]);
          break;
        }
      }
    }
    orbit.stabilizer_size = stabilizer;
    orbit.weight = comps[i].total() / stabilizer;
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

Composition subset_to_gaps(std::span<const int> j, int n) {
  if (j.empty()) throw DomainError("subset_to_gaps: subset must be nonempty");
  validate_subset(j, n);
  Composition t;
  for (const auto& block : gap_blocks(j, n)) t.parts.push_back(block.second);
  return t;
}

Subset gaps_to_subset(const Composition& t) {
  Subset j;
  int position = 1;
  for (int part : t.parts) {
    if (part < 1) throw DomainError("gaps_to_subset: parts must be positive");
    j.push_back(position);
    position += part;
  }
  return j;
}

CubePoint::CubePoint(std::span<const double> u, std::span<const double> w)
    : n_(static_cast<int>(u.size())) {
  if (n_ < 1 || n_ > kMaxDimension || w.size() != u.size()) {
    throw DomainError("CubePoint: dimension must be in 1.." + std::to_string(kMaxDimension));
  }
  prefix_[0] = 0.0;
  for (int i = 0; i < 2 * n_; ++i) {
    const int idx = i % n_;
    const double log_u = (w[idx] < 0.5) ? std::log1p(-w[idx]) : std::log(u[idx]);
    prefix_[i + 1] = prefix_[i] + log_u;
  }
}

CubePoint CubePoint::from_u(std::span<const double> u) {
  std::array<double, kMaxDimension> w{};
  if (u.size() > w.size()) throw DomainError("CubePoint: dimension too large");
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = 1.0 - u[i];
  return CubePoint(u, std::span<const double>(w.data(), u.size()));
}

double CubePoint::block_factor(int start, int length) const {
  return -std::expm1(4.0 * block_log(start, length));
}

double CubePoint::one_minus_product_sq() const { return -std::expm1(2.0 * prefix_[n_]); }

double CubePoint::v_factor() const {
  const double v = one_minus_product_sq();
  return v * v;
}

double V_factor(std::span<const double> u) {
  check_open_cube(u);
  return CubePoint::from_u(u).v_factor();
}

double C_factor(const CubePoint& point, std::span<const int> j) {
  if (j.empty()) return point.v_factor();
  validate_subset(j, point.dimension());
  return block_product(point, gap_blocks(j, point.dimension()));
}

double C_factor(std::span<const double> u, std::span<const int> j) {
  check_open_cube(u);
  return C_factor(CubePoint::from_u(u), j);
}

double U_factor(const Composition& t, std::span<const double> u) {
  check_open_cube(u);
  if (t.total() != static_cast<int>(u.size())) throw DomainError("U_factor: |t| != n");
  const CubePoint point = CubePoint::from_u(u);
  double product = 1.0;
  int start = 0;
  for (int part : t.parts) {
    product *= point.block_factor(start, part);
    start += part;
  }
  return product;
}

std::vector<double> DenExpansion::block_factors(const CubePoint& point) const {
  std::vector<double> factors;
  factors.reserve(distinct_blocks.size());
  for (const auto& [start, length] : distinct_blocks) factors.push_back(point.block_factor(start, length));
  return factors;
}

double DenExpansion::degree_value(int d, const CubePoint& point,
                                  std::span<const double> factors) const {
  double sum = 0.0;
  for (const DenTerm& term : by_degree.at(d)) {
    if (term.subset.empty()) {
      sum += term.sign * point.v_factor();
      continue;
    }
    double product = 1.0;
    for (int id : term.block_ids) product *= factors[id];
    sum += term.sign * product;
  }
  return sum;
}

double DenExpansion::degree_value(int d, const CubePoint& point) const {
  return degree_value(d, point, block_factors(point));
}

double DenExpansion::evaluate(const CubePoint& point, double q) const {
  const std::vector<double> factors = block_factors(point);
  const double minus_q2 = -q * q;
  double power = 1.0;
  double sum = 0.0;
  for (int d = 0; d <= max_degree(); ++d) {
    sum += power * degree_value(d, point, factors);
    power *= minus_q2;
  }
  return sum;
}

double DenExpansion::evaluate(std::span<const double> u, double q) const {
  check_open_cube(u);
  if (static_cast<int>(u.size()) != n) throw DomainError("DenExpansion: dimension mismatch");
  return evaluate(CubePoint::from_u(u), q);
}

DenExpansion den_expansion(int n, std::span<const int> j) {
  validate_subset(j, n);
  const int size = static_cast<int>(j.size());
  if (size % 2 != 0) throw DomainError("den_expansion: subset size must be even");
  if (size > 12) throw DomainError("den_expansion: subset size above 12 is not supported");

  DenExpansion e;
  e.n = n;
  e.j.assign(j.begin(), j.end());
  e.by_degree.resize(size / 2 + 1);
  for (std::uint32_t mask = 0; mask < (1u << size); ++mask) {
    const int count = std::popcount(mask);
    if (count % 2 != 0) continue;
    DenTerm term;
    int sum = 0;
    for (int s = 1; s <= size; ++s) {
      if (!(mask & (1u << (s - 1)))) continue;
      term.s.push_back(s);
      term.subset.push_back(j[s - 1]);
      sum += s;
    }
    term.sign = (sum % 2 == 0) ? 1 : -1;
    if (!term.subset.empty()) term.blocks = gap_blocks(term.subset, n);
    for (const auto& block : term.blocks) {
      auto it = std::find(e.distinct_blocks.begin(), e.distinct_blocks.end(), block);
      if (it == e.distinct_blocks.end()) it = e.distinct_blocks.insert(it, block);
      term.block_ids.push_back(static_cast<int>(it - e.distinct_blocks.begin()));
    }
    e.by_degree[count / 2].push_back(std::move(term));
  }
  for (auto& terms : e.by_degree) {
    std::sort(terms.begin(), terms.end(),
              [](const DenTerm& a, const DenTerm& b) { return a.s < b.s; });
  }
  return e;
}

IntegrandDenominator::IntegrandDenominator(int n, std::span<const int> j)
    : n_(n), k_(static_cast<int>(j.size()) / 2), j_(j.begin(), j.end()) {
  validate_subset(j, n);
  if (j.empty() || j.size() % 2 != 0) {
    throw DomainError("IntegrandDenominator: subset size must be even and >= 2");
  }
  blocks_ = gap_blocks(j, n);
  if (k_ >= 3) expansion_ = den_expansion(n, j);
}

double IntegrandDenominator::operator()(const CubePoint& point, double q) const {
  const double q2 = q * q;
  double den = 0.0;
  if (k_ == 1) {
    den = point.v_factor() + q2 * block_product(point, blocks_);
  } else if (k_ == 2) {
    const double l1 = point.block_log(blocks_[0].first, blocks_[0].second);
    const double l2 = point.block_log(blocks_[1].first, blocks_[1].second);
    const double l3 = point.block_log(blocks_[2].first, blocks_[2].second);
    const double l4 = point.block_log(blocks_[3].first, blocks_[3].second);
    const double paired = std::expm1(4.0 * (l1 + l3)) * std::expm1(4.0 * (l2 + l4));
    const double all = std::expm1(4.0 * l1) * std::expm1(4.0 * l2) * std::expm1(4.0 * l3) *
                       std::expm1(4.0 * l4);
    den = point.v_factor() + q2 * paired + (q2 + q2 * q2) * all;
  } else {
    den = expansion_.evaluate(point, q);
  }
  if (!(den > 0.0) || !std::isfinite(den)) {
    throw NumericError("den_n(u;q;j) = " + std::to_string(den) + " is not positive (n=" +
                       std::to_string(n_) + ", |j|=" + std::to_string(2 * k_) + ")");
  }
  return den;
}

double integrand_denominator(int n, std::span<const int> j, std::span<const double> u, double q) {
  check_open_cube(u);
  if (static_cast<int>(u.size()) != n) throw DomainError("integrand_denominator: |u| != n");
  return IntegrandDenominator(n, j)(CubePoint::from_u(u), q);
}

double grouped_form_contiguous(const Composition& t, std::span<const double> u, double q) {
  if (t.length() != 4) throw DomainError("grouped_form_contiguous: t must have four parts");
  const Composition halves{{t.parts[0] + t.parts[2], t.parts[1] + t.parts[3]}};
  const double q2 = q * q;
  return V_factor(u) + q2 * U_factor(halves, u) + (q2 + q2 * q2) * U_factor(t, u);
}

}  // namespace ncho
