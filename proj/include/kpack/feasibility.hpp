#pragma once

// Arithmetic of extremal k-packings on non-orientable surfaces of genus g:
// radius bound, divisibility, the lines L_N of (k, g) pairs sharing a cell
// size N, dual extremality and the arithmetic uniqueness list.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace kpack {

struct PackingSpec {
  std::int64_t k = 1;  // number of discs
  std::int64_t g = 3;  // non-orientable genus

  friend bool operator==(const PackingSpec&, const PackingSpec&) = default;
  friend auto operator<=>(const PackingSpec&, const PackingSpec&) = default;
};

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw DomainError("integer overflow");
  return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw DomainError("integer overflow");
  return out;
}

inline void require_spec(const PackingSpec& s) {
  if (s.k < 1) throw DomainError("k must be >= 1 (got " + std::to_string(s.k) + ")");
  if (s.g < 3) throw DomainError("g must be >= 3 (got " + std::to_string(s.g) + ")");
}

inline void require_cell_size(std::int64_t N) {
  if (N < 7) throw DomainError("N must be >= 7 (got " + std::to_string(N) + ")");
}

}  // namespace detail

/// 6(g-2), the quantity k has to divide.
inline std::int64_t six_g_minus_two(std::int64_t g) { return detail::checked_mul(6, g - 2); }

struct ExtremalParams {
  double cosh_R = 0;
  double R = 0;
  /// kN = 6g + 6k - 12 as a fraction num/den (den = k); N is integral iff k | 6(g-2).
  std::int64_t N_num = 0;
  std::int64_t N_den = 1;
  bool integral = false;
  std::optional<std::int64_t> N;      // set when integral
  std::optional<std::int64_t> index;  // 2kN = 12g + 12k - 24, set when integral

  double N_value() const { return static_cast<double>(N_num) / static_cast<double>(N_den); }
};

/// Upper bound for the radius of k disjoint discs on a genus-g non-orientable surface:
/// cosh R <= 1 / (2 sin(k pi / (6g + 6k - 12))).
inline ExtremalParams packing_radius_bound(const PackingSpec& s) {
  detail::require_spec(s);
  const std::int64_t denom = detail::checked_add(detail::checked_mul(6, s.g), detail::checked_mul(6, s.k) - 12);
  ExtremalParams p;
  const double angle = std::numbers::pi * static_cast<double>(s.k) / static_cast<double>(denom);
  p.cosh_R = 1.0 / (2.0 * std::sin(angle));
  p.R = std::acosh(p.cosh_R);
  const std::int64_t d = std::gcd(denom, s.k);
  p.N_num = denom / d;
  p.N_den = s.k / d;
  p.integral = (p.N_den == 1);
  if (p.integral) {
    p.N = p.N_num;
    p.index = detail::checked_mul(2 * s.k, p.N_num);
  }
  return p;
}

/// Extremal k-packings exist in genus g iff k | 6(g-2).
inline bool is_feasible(const PackingSpec& s) {
  detail::require_spec(s);
  return six_g_minus_two(s.g) % s.k == 0;
}

/// N = 6 + 6(g-2)/k for a feasible pair.
inline std::int64_t cell_size(const PackingSpec& s) {
  if (!is_feasible(s)) {
    throw InfeasibleError("infeasible: " + std::to_string(s.k) + " does not divide 6(g-2) = " +
                          std::to_string(six_g_minus_two(s.g)));
  }
  return 6 + six_g_minus_two(s.g) / s.k;
}

/// The k for which every genus g >= 3 is feasible.
inline std::set<std::int64_t> universal_k() { return {1, 2, 3, 6}; }

inline bool is_universal_k(std::int64_t k) { return universal_k().count(k) != 0; }

struct CongruenceClass {
  std::int64_t modulus = 1;
  std::int64_t residue = 2;  // reduced into [0, modulus)

  bool contains(std::int64_t g) const { return ((g - residue) % modulus + modulus) % modulus == 0; }
};

/// g == 2 (mod k / gcd(k, 6)) guarantees feasibility of (k, g).
inline CongruenceClass feasible_genus_progression(std::int64_t k) {
  if (k < 1) throw DomainError("k must be >= 1");
  CongruenceClass c;
  c.modulus = k / std::gcd(k, std::int64_t{6});
  c.residue = 2 % c.modulus;
  return c;
}

/// Number of k >= 1 dividing 6(g-2), i.e. the divisor count of 6(g-2).
inline std::int64_t count_feasible_k(std::int64_t g) {
  if (g < 3) throw DomainError("g must be >= 3");
  std::int64_t n = six_g_minus_two(g);
  std::int64_t count = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    std::int64_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    count *= (e + 1);
  }
  if (n > 1) count *= 2;
  return count;
}

/// All feasible k for genus g, ascending.
inline std::vector<std::int64_t> feasible_ks(std::int64_t g) {
  if (g < 3) throw DomainError("g must be >= 3");
  const std::int64_t n = six_g_minus_two(g);
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct LineLN {
  std::int64_t N = 7;
  std::vector<PackingSpec> entries;  // entries[j-1] is the pair for j
};

/// Step of the line L_N: the pair for j is (j * k_step, 2 + j * g_step).
inline std::pair<std::int64_t, std::int64_t> line_step(std::int64_t N) {
  detail::require_cell_size(N);
  switch (((N % 6) + 6) % 6) {
    case 0: return {1, (N - 6) / 6};
    case 1:
    case 5: return {6, N - 6};
    case 2:
    case 4: return {3, (N - 6) / 2};
    default: return {2, (N - 6) / 3};  // N == 3 (mod 6)
  }
}

inline LineLN line_LN(std::int64_t N, std::int64_t j_max) {
  detail::require_cell_size(N);
  if (j_max < 1) throw DomainError("j_max must be >= 1");
  const auto [dk, dg] = line_step(N);
  LineLN line;
  line.N = N;
  line.entries.reserve(static_cast<std::size_t>(j_max));
  for (std::int64_t j = 1; j <= j_max; ++j) {
    line.entries.push_back({detail::checked_mul(j, dk), detail::checked_add(2, detail::checked_mul(j, dg))});
  }
  return line;
}

/// (k_N, g_N): the j = 1 entry of L_N.
inline PackingSpec primitive_pair(std::int64_t N) { return line_LN(N, 1).entries.front(); }

inline bool is_primitive(const PackingSpec& s) { return primitive_pair(cell_size(s)) == s; }

/// Position j of a feasible pair on its line L_N (the cover degree over the primitive pair).
inline std::int64_t line_position(const PackingSpec& s) { return s.k / primitive_pair(cell_size(s)).k; }

/// Unordered pairs {k1 < k2} such that some genus-g surface is both k1- and k2-extremal.
inline std::set<std::pair<std::int64_t, std::int64_t>> dual_extremal_pairs(std::int64_t g) {
  if (g < 3) throw DomainError("g must be >= 3");
  std::set<std::pair<std::int64_t, std::int64_t>> out;
  if (g % 2 == 0 && g >= 4) out.insert({(g - 2) / 2, 2 * g - 4});
  if (g % 4 == 2) out.insert({(3 * g - 6) / 4, 6 * g - 12});
  return out;
}

/// N for which Delta+(2,3,N) is arithmetic.
inline constexpr std::array<std::int64_t, 11> kArithmeticCellSizes = {7, 8, 9, 10, 11, 12, 14, 16, 18, 24, 30};

enum class Uniqueness { Unique, PossiblyMultiple };

inline Uniqueness uniqueness_class(const PackingSpec& s) {
  const std::int64_t N = cell_size(s);
  const bool arithmetic =
      std::find(kArithmeticCellSizes.begin(), kArithmeticCellSizes.end(), N) != kArithmeticCellSizes.end();
  return arithmetic ? Uniqueness::PossiblyMultiple : Uniqueness::Unique;
}

inline const char* to_string(Uniqueness u) { return u == Uniqueness::Unique ? "Unique" : "PossiblyMultiple"; }

}  // namespace kpack
