#pragma once

// Combinatorics of the determinant expansion: compositions, cyclic orbits,
// cyclic block products and the polynomial-in-q^2 expansion of den_n.

#include <array>
#include <compare>
#include <span>
#include <vector>

#include "ncho/matrixcore.hpp"

namespace ncho {

struct Composition {
  std::vector<int> parts;

  int total() const;
  int length() const { return static_cast<int>(parts.size()); }
  auto operator<=>(const Composition&) const = default;
};

struct CompositionOrbit {
  Composition representative;        ///< lexicographically smallest rotation
  std::vector<Composition> members;  ///< distinct rotations, in input order
  int stabilizer_size = 0;           ///< rotations fixing the representative
  int weight = 0;                    ///< n / stabilizer_size = subsets of [n] with this gap pattern
};

/// All compositions of n into m positive parts, lexicographically ordered.
std::vector<Composition> compositions(int m, int n);

/// Partition equal-length compositions into orbits of the cyclic group C_m.
std::vector<CompositionOrbit> cyclic_orbits(std::span<const Composition> comps);

/// Cyclic gaps of a sorted subset of [n]; the last gap wraps through n.
Composition subset_to_gaps(std::span<const int> j, int n);

/// The subset {1, 1 + t_1, 1 + t_1 + t_2, ...} realizing the gap pattern t.
Subset gaps_to_subset(const Composition& t);

/// Maximum dimension supported by the cube-point evaluators.
inline constexpr int kMaxDimension = 24;

/// A point of the open unit cube, carried as log u_i so that products of
/// u's near (1, ..., 1) and the factors 1 - prod u^4 stay accurate.
class CubePoint {
 public:
  CubePoint() = default;
  /// u and its complement w = 1 - u; w is used when u is close to 1.
  CubePoint(std::span<const double> u, std::span<const double> w);
  static CubePoint from_u(std::span<const double> u);

  int dimension() const { return n_; }
  /// sum of log u over the cyclic block of `length` indices starting at 0-based `start`.
  double block_log(int start, int length) const {
    return prefix_[start + length] - prefix_[start];
  }
  /// 1 - prod_{block} u^4
  double block_factor(int start, int length) const;
  /// V_n(u) = (1 - u_1^2 ... u_n^2)^2
  double v_factor() const;
  /// 1 - u_1^2 ... u_n^2
  double one_minus_product_sq() const;

 private:
  int n_ = 0;
  std::array<double, 2 * kMaxDimension + 1> prefix_{};  // doubled cyclic prefix sums
};

/// V_n(u) = (1 - u_1^2 ... u_n^2)^2.
double V_factor(std::span<const double> u);

/// C_n(u; j): product over the cyclic gap blocks of j of (1 - prod u^4);
/// the empty subset gives V_n(u).
double C_factor(std::span<const double> u, std::span<const int> j);
double C_factor(const CubePoint& point, std::span<const int> j);

/// U_t(u) for a composition t of n: contiguous blocks starting at u_1.
double U_factor(const Composition& t, std::span<const double> u);

struct DenTerm {
  std::vector<int> s;                         ///< S, 1-based positions into j
  Subset subset;                              ///< j(S)
  int sign = 1;                               ///< (-1)^{sum S}
  std::vector<std::pair<int, int>> blocks;    ///< (0-based start, length) of the gap blocks of j(S)
  std::vector<int> block_ids;                 ///< indices into DenExpansion::distinct_blocks
};

/// den_n(u; q; j) = sum_d (-q^2)^d den_{n,d}(u; j).
struct DenExpansion {
  int n = 0;
  Subset j;
  std::vector<std::vector<DenTerm>> by_degree;  ///< index d
  std::vector<std::pair<int, int>> distinct_blocks;

  int max_degree() const { return static_cast<int>(by_degree.size()) - 1; }
  double degree_value(int d, const CubePoint& point) const;
  double evaluate(const CubePoint& point, double q) const;
  double evaluate(std::span<const double> u, double q) const;

 private:
  double degree_value(int d, const CubePoint& point, std::span<const double> factors) const;
  std::vector<double> block_factors(const CubePoint& point) const;
};

/// Builds the expansion for an even subset j of [n], |j| <= 12.
DenExpansion den_expansion(int n, std::span<const int> j);

/// den_n(u; q; j) for a nonempty even subset j. Uses the grouped forms for
/// |j| = 2 and |j| = 4 and the general expansion otherwise. Throws
/// NumericError when the value is not strictly positive.
class IntegrandDenominator {
 public:
  IntegrandDenominator(int n, std::span<const int> j);

  int n() const { return n_; }
  int k() const { return k_; }
  const Subset& subset() const { return j_; }
  double operator()(const CubePoint& point, double q) const;

 private:
  int n_;
  int k_;
  Subset j_;
  std::vector<std::pair<int, int>> blocks_;  // gap blocks of j
  DenExpansion expansion_;                   // used when k >= 3
};

double integrand_denominator(int n, std::span<const int> j, std::span<const double> u, double q);

/// The k = 2 three-term form with contiguous blocks, as commonly written for
/// R_{n,2}: V + q^2 U_{(t1+t3, t2+t4)} + (q^2 + q^4) U_{(t1,t2,t3,t4)}.
/// Equals den at a permuted u only when the permutation exists.
double grouped_form_contiguous(const Composition& t, std::span<const double> u, double q);

}  // namespace ncho
