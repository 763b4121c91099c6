#pragma once

// Finitely presented groups, Todd-Coxeter coset enumeration and a Sims-style
// low-index subgroup search, specialised where it matters to extended
// triangle groups <r0, r1, r2 | ri^2, (r0 r1)^p, (r1 r2)^q, (r2 r0)^r>.
//
// Flags of a trivalent map with N-gon faces are acted on by D(2,3,N):
// r0 swaps the two ends of an edge side, r2 swaps the two edge sides at a
// polygon corner and r1 crosses the edge into the neighbouring polygon.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"

namespace kpack {

/// Letters are +(i+1) for generator i and -(i+1) for its inverse.
using Word = std::vector<int>;

inline Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

inline Word power(const Word& w, int e) {
  Word out;
  const Word base = e < 0 ? inverse(w) : w;
  for (int i = 0; i < std::abs(e); ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Word free_reduce(const Word& w) {
  Word out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

inline Word cyclic_reduce(const Word& w) {
  Word out = free_reduce(w);
  std::size_t lo = 0, hi = out.size();
  while (hi - lo >= 2 && out[lo] == -out[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(out.begin() + static_cast<long>(lo), out.begin() + static_cast<long>(hi));
}

/// Builds a word from (generator, exponent) syllables.
inline Word syllables(std::initializer_list<std::pair<int, int>> parts) {
  Word out;
  for (auto [gen, exp] : parts) out = concat(out, power(Word{gen + 1}, exp));
  return free_reduce(out);
}

struct Presentation {
  int generators = 0;
  std::vector<Word> relators;
  std::vector<std::string> names;

  Presentation() = default;
  Presentation(int gens, std::vector<Word> rels, std::vector<std::string> gen_names = {})
      : generators(gens), names(std::move(gen_names)) {
    for (auto& r : rels) {
      Word red = cyclic_reduce(r);
      for (int l : red) {
        if (l == 0 || std::abs(l) > gens) throw DomainError("relator letter out of range");
      }
      if (!red.empty()) relators.push_back(std::move(red));
    }
    if (names.empty()) {
      for (int i = 0; i < gens; ++i) names.push_back("g" + std::to_string(i));
    }
  }
};

struct TriangleParams {
  int p = 2;
  int q = 3;
  int r = 7;

  friend bool operator==(const TriangleParams&, const TriangleParams&) = default;
};

/// Extended: <r0,r1,r2 | ri^2, (r0r1)^p, (r1r2)^q, (r2r0)^r>.  Otherwise <x,y | x^p, y^q, (xy)^r>.
inline Presentation triangle_presentation(int p, int q, int r, bool extended) {
  if (p < 2 || q < 2 || r < 2) throw DomainError("triangle parameters must be >= 2");
  if (extended) {
    return Presentation(3,
                        {syllables({{0, 2}}), syllables({{1, 2}}), syllables({{2, 2}}),
                         power(syllables({{0, 1}, {1, 1}}), p), power(syllables({{1, 1}, {2, 1}}), q),
                         power(syllables({{2, 1}, {0, 1}}), r)},
                        {"r0", "r1", "r2"});
  }
  return Presentation(2, {syllables({{0, p}}), syllables({{1, q}}), power(syllables({{0, 1}, {1, 1}}), r)}, {"x", "y"});
}

inline Presentation triangle_presentation(const TriangleParams& t, bool extended = true) {
  return triangle_presentation(t.p, t.q, t.r, extended);
}

/// 1 - 1/p - 1/q - 1/r as an exact fraction num/den.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

inline Rational reduced(std::int64_t num, std::int64_t den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

inline Rational area_defect(const TriangleParams& t) {
  const std::int64_t p = t.p, q = t.q, r = t.r;
  return reduced(p * q * r - q * r - p * r - p * q, p * q * r);
}

/// mu(a) / mu(b) as a fraction.
inline Rational area_ratio(const TriangleParams& a, const TriangleParams& b) {
  const Rational x = area_defect(a), y = area_defect(b);
  return reduced(x.num * y.den, x.den * y.num);
}

// ---------------------------------------------------------------------------
// coset tables

struct CosetTable {
  int index = 0;
  /// action[i][c]: image of coset c under generator i (0-based cosets; coset 0 is the subgroup).
  std::vector<std::vector<int>> action;
  std::vector<Word> subgroup_generators;
};

inline int apply_letter(const std::vector<std::vector<int>>& action, int c, int letter) {
  const auto& perm = action[static_cast<std::size_t>(std::abs(letter) - 1)];
  if (letter > 0) return perm[static_cast<std::size_t>(c)];
  for (int d = 0; d < static_cast<int>(perm.size()); ++d) {
    if (perm[static_cast<std::size_t>(d)] == c) return d;
  }
  return -1;
}

inline int apply_word(const CosetTable& t, int c, const Word& w) {
  for (int l : w) c = apply_letter(t.action, c, l);
  return c;
}

/// Relabel points so that 0 stays fixed and the others appear in scan order
/// (rows in order, generators in order). Requires a transitive action.
inline std::vector<std::vector<int>> standardize(const std::vector<std::vector<int>>& action, int base = 0) {
  const int n = static_cast<int>(action.front().size());
  std::vector<int> rename(static_cast<std::size_t>(n), -1), order{base};
  rename[static_cast<std::size_t>(base)] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& perm : action) {
      const int d = perm[static_cast<std::size_t>(order[i])];
      if (rename[static_cast<std::size_t>(d)] < 0) {
        rename[static_cast<std::size_t>(d)] = static_cast<int>(order.size());
        order.push_back(d);
      }
    }
  }
  if (static_cast<int>(order.size()) != n) throw PreconditionError("action is not transitive");
  std::vector<std::vector<int>> out(action.size(), std::vector<int>(static_cast<std::size_t>(n)));
  for (std::size_t g = 0; g < action.size(); ++g) {
    for (int c = 0; c < n; ++c) {
      out[g][static_cast<std::size_t>(rename[static_cast<std::size_t>(c)])] =
          rename[static_cast<std::size_t>(action[g][static_cast<std::size_t>(c)])];
    }
  }
  return out;
}

/// Schreier generators of the stabiliser of point 0 (one per non-tree edge).
inline std::vector<Word> schreier_generators(const std::vector<std::vector<int>>& action) {
  const int n = static_cast<int>(action.front().size());
  std::vector<Word> rep(static_cast<std::size_t>(n));
  std::vector<bool> reached(static_cast<std::size_t>(n), false);
  std::vector<std::vector<bool>> tree(action.size(), std::vector<bool>(static_cast<std::size_t>(n), false));
  std::vector<int> order{0};
  reached[0] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int c = order[i];
    for (std::size_t g = 0; g < action.size(); ++g) {
      const int d = action[g][static_cast<std::size_t>(c)];
      if (!reached[static_cast<std::size_t>(d)]) {
        reached[static_cast<std::size_t>(d)] = true;
        rep[static_cast<std::size_t>(d)] = concat(rep[static_cast<std::size_t>(c)], Word{static_cast<int>(g) + 1});
        tree[g][static_cast<std::size_t>(c)] = true;
        order.push_back(d);
      }
    }
  }
  std::vector<Word> gens;
  for (int c = 0; c < n; ++c) {
    for (std::size_t g = 0; g < action.size(); ++g) {
      if (tree[g][static_cast<std::size_t>(c)]) continue;
      const int d = action[g][static_cast<std::size_t>(c)];
      // tree edges traversed backwards are not new generators either
      if (action[g][static_cast<std::size_t>(d)] == c && tree[g][static_cast<std::size_t>(d)]) continue;
      Word w = free_reduce(concat(concat(rep[static_cast<std::size_t>(c)], Word{static_cast<int>(g) + 1}),
                                  inverse(rep[static_cast<std::size_t>(d)])));
      if (!w.empty()) gens.push_back(std::move(w));
    }
  }
  return gens;
}

/// Standard table that is least over all base points: equal exactly for conjugate subgroups.
inline std::vector<std::vector<int>> conjugacy_canonical(const std::vector<std::vector<int>>& action) {
  const int n = static_cast<int>(action.front().size());
  auto row_major = [n](const std::vector<std::vector<int>>& a) {
    std::vector<int> v;
    v.reserve(static_cast<std::size_t>(n) * a.size());
    for (int c = 0; c < n; ++c) {
      for (const auto& g : a) v.push_back(g[static_cast<std::size_t>(c)]);
    }
    return v;
  };
  auto best = standardize(action, 0);
  auto best_key = row_major(best);
  for (int b = 1; b < n; ++b) {
    auto cand = standardize(action, b);
    auto key = row_major(cand);
    if (key < best_key) {
      best_key = std::move(key);
      best = std::move(cand);
    }
  }
  return best;
}

inline bool relators_hold(const Presentation& pres, const CosetTable& t) {
  for (int c = 0; c < t.index; ++c) {
    for (const auto& r : pres.relators) {
      if (apply_word(t, c, r) != c) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Todd-Coxeter (HLT with coincidence processing)

namespace detail {

class ToddCoxeter {
 public:
  ToddCoxeter(const Presentation& pres, std::size_t cap) : pres_(pres), cols_(2 * pres.generators), cap_(cap) {
    new_coset();
  }

  CosetTable run(const std::vector<Word>& subgens) {
    for (const auto& w : subgens) scan_and_fill(0, free_reduce(w));
    for (int c = 0; c < static_cast<int>(parent_.size()); ++c) {
      for (const auto& r : pres_.relators) {
        if (!live(c)) break;
        scan_and_fill(c, r);
      }
      if (!live(c)) continue;
      for (int x = 0; x < cols_; ++x) {
        if (!live(c)) break;
        if (entry(c, x) < 0) define(c, x);
      }
    }
    return compact(subgens);
  }

 private:
  int col(int letter) const { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }
  static int inv(int x) { return x ^ 1; }
  int& entry(int c, int x) { return table_[static_cast<std::size_t>(c) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(x)]; }
  bool live(int c) const { return parent_[static_cast<std::size_t>(c)] == c; }

  int new_coset() {
    if (parent_.size() >= cap_) throw CapExceeded("coset enumeration exceeded " + std::to_string(cap_) + " cosets");
    const int n = static_cast<int>(parent_.size());
    parent_.push_back(n);
    table_.insert(table_.end(), static_cast<std::size_t>(cols_), -1);
    return n;
  }

  void define(int c, int x) {
    const int d = new_coset();
    entry(c, x) = d;
    entry(d, inv(x)) = c;
  }

  int rep(int c) {
    int r = c;
    while (parent_[static_cast<std::size_t>(r)] != r) r = parent_[static_cast<std::size_t>(r)];
    while (parent_[static_cast<std::size_t>(c)] != r) {
      const int next = parent_[static_cast<std::size_t>(c)];
      parent_[static_cast<std::size_t>(c)] = r;
      c = next;
    }
    return r;
  }

  void merge(int a, int b, std::vector<int>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    const int lo = std::min(a, b), hi = std::max(a, b);
    parent_[static_cast<std::size_t>(hi)] = lo;
    queue.push_back(hi);
  }

  void coincidence(int a, int b) {
    std::vector<int> queue;
    merge(a, b, queue);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const int e = queue[i];
      for (int x = 0; x < cols_; ++x) {
        const int f = entry(e, x);
        if (f < 0) continue;
        if (entry(f, inv(x)) == e) entry(f, inv(x)) = -1;
        const int e1 = rep(e), f1 = rep(f);
        if (entry(e1, x) >= 0) {
          merge(f1, entry(e1, x), queue);
        } else if (entry(f1, inv(x)) >= 0) {
          merge(e1, entry(f1, inv(x)), queue);
        } else {
          entry(e1, x) = f1;
          entry(f1, inv(x)) = e1;
        }
      }
    }
  }

  void scan_and_fill(int c, const Word& w) {
    if (w.empty()) return;
    int f = c, b = c;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    for (;;) {
      while (i <= j && entry(f, col(w[static_cast<std::size_t>(i)])) >= 0) f = entry(f, col(w[static_cast<std::size_t>(i++)]));
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && entry(b, inv(col(w[static_cast<std::size_t>(j)]))) >= 0) b = entry(b, inv(col(w[static_cast<std::size_t>(j--)])));
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        entry(f, col(w[static_cast<std::size_t>(i)])) = b;
        entry(b, inv(col(w[static_cast<std::size_t>(i)]))) = f;
        return;
      }
      define(f, col(w[static_cast<std::size_t>(i)]));
    }
  }

  CosetTable compact(const std::vector<Word>& subgens) {
    std::vector<int> alive;
    std::vector<int> rename(parent_.size(), -1);
    for (int c = 0; c < static_cast<int>(parent_.size()); ++c) {
      if (live(c)) {
        rename[static_cast<std::size_t>(c)] = static_cast<int>(alive.size());
        alive.push_back(c);
      }
    }
    CosetTable t;
    t.index = static_cast<int>(alive.size());
    t.action.assign(static_cast<std::size_t>(pres_.generators), std::vector<int>(alive.size()));
    for (std::size_t i = 0; i < alive.size(); ++i) {
      for (int g = 0; g < pres_.generators; ++g) {
        const int d = entry(alive[i], 2 * g);
        if (d < 0) throw CapExceeded("incomplete coset table");
        t.action[static_cast<std::size_t>(g)][i] = rename[static_cast<std::size_t>(rep(d))];
      }
    }
    t.action = standardize(t.action);
    t.subgroup_generators = subgens;
    return t;
  }

  const Presentation& pres_;
  int cols_;
  std::size_t cap_;
  std::vector<int> parent_;
  std::vector<int> table_;
};

}  // namespace detail

inline constexpr std::size_t kDefaultCosetCap = 1000000;

/// Coset table of the subgroup generated by `subgens`; CapExceeded when more than `cap` cosets get defined.
inline CosetTable coset_enumerate(const Presentation& pres, const std::vector<Word>& subgens,
                                  std::size_t cap = kDefaultCosetCap) {
  if (cap < 1) throw DomainError("cap must be >= 1");
  return detail::ToddCoxeter(pres, cap).run(subgens);
}

// ---------------------------------------------------------------------------
// low-index subgroups

struct SubgroupFilters {
  /// No coset may be fixed by any of these words (elements of finite order).
  std::vector<Word> torsion_words;
  /// Orientation character: parity per generator (1 = orientation reversing).
  std::vector<int> generator_parity;
  /// Subgroup must contain an element of odd parity.
  bool require_proper = false;
  /// Stop after this many results (0 = enumerate everything).
  std::size_t max_results = 0;
  /// Resource cap on search nodes.
  std::uint64_t node_cap = 2000000000ULL;
};

/// Orientation character parity of every element of the subgroup? True if some
/// closed loop at coset 0 has odd parity.
inline bool contains_odd_element(const CosetTable& t, const std::vector<int>& parity) {
  std::vector<int> side(static_cast<std::size_t>(t.index), -1);
  std::vector<int> order{0};
  side[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int c = order[i];
    for (std::size_t g = 0; g < t.action.size(); ++g) {
      const int d = t.action[g][static_cast<std::size_t>(c)];
      const int want = side[static_cast<std::size_t>(c)] ^ parity[g];
      if (side[static_cast<std::size_t>(d)] < 0) {
        side[static_cast<std::size_t>(d)] = want;
        order.push_back(d);
      } else if (side[static_cast<std::size_t>(d)] != want) {
        return true;
      }
    }
  }
  return false;
}

namespace detail {

class LowIndexSearch {
 public:
  LowIndexSearch(const Presentation& pres, int index, const SubgroupFilters& filters)
      : pres_(pres), n_(index), filters_(filters) {
    // one column per involution, two otherwise
    std::vector<bool> involution(static_cast<std::size_t>(pres.generators), false);
    for (const auto& r : pres.relators) {
      if (r.size() == 2 && r[0] == r[1]) involution[static_cast<std::size_t>(std::abs(r[0]) - 1)] = true;
    }
    for (int g = 0; g < pres.generators; ++g) {
      col_of_letter_[g + 1] = cols_;
      if (involution[static_cast<std::size_t>(g)]) {
        col_of_letter_[-(g + 1)] = cols_;
        inv_col_.push_back(cols_);
        gen_col_.push_back(cols_);
        cols_ += 1;
      } else {
        col_of_letter_[-(g + 1)] = cols_ + 1;
        inv_col_.push_back(cols_ + 1);
        inv_col_.push_back(cols_);
        gen_col_.push_back(cols_);
        cols_ += 2;
      }
    }
    auto to_cols = [&](const Word& w) {
      std::vector<int> out;
      for (int l : w) out.push_back(col_of_letter_.at(l));
      return out;
    };
    conj_.assign(static_cast<std::size_t>(cols_), {});
    for (const auto& r : pres.relators) {
      if (r.size() == 2 && r[0] == r[1] && involution[static_cast<std::size_t>(std::abs(r[0]) - 1)]) continue;
      for (const Word& w : {r, inverse(r)}) {
        const auto cw = to_cols(w);
        for (std::size_t i = 0; i < cw.size(); ++i) {
          std::vector<int> rot(cw.begin() + static_cast<long>(i), cw.end());
          rot.insert(rot.end(), cw.begin(), cw.begin() + static_cast<long>(i));
          conj_[static_cast<std::size_t>(rot[0])].push_back(rot);
        }
      }
      relator_cols_.push_back(to_cols(r));
    }
    for (const auto& w : filters.torsion_words) torsion_cols_.push_back(to_cols(w));
  }

  std::vector<CosetTable> run() {
    if (n_ < 1) throw DomainError("index must be >= 1");
    std::vector<int> table(static_cast<std::size_t>(n_ * cols_), -1);
    search(table, 1);
    return std::move(results_);
  }

 private:
  using Table = std::vector<int>;

  int& at(Table& t, int c, int x) const { return t[static_cast<std::size_t>(c * cols_ + x)]; }
  int at(const Table& t, int c, int x) const { return t[static_cast<std::size_t>(c * cols_ + x)]; }

  bool set(Table& t, int c, int x, int d, std::vector<std::pair<int, int>>& queue) const {
    const int ix = inv_col_[static_cast<std::size_t>(x)];
    if (at(t, c, x) >= 0 || at(t, d, ix) >= 0) return at(t, c, x) == d && at(t, d, ix) == c;
    at(t, c, x) = d;
    at(t, d, ix) = c;
    queue.emplace_back(c, x);
    return true;
  }

  bool propagate(Table& t, std::vector<std::pair<int, int>>& queue) const {
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const auto [c0, x0] = queue[qi];
      const int d0 = at(t, c0, x0);
      for (const auto& [c, x] : {std::pair{c0, x0}, std::pair{d0, inv_col_[static_cast<std::size_t>(x0)]}}) {
        for (const auto& w : conj_[static_cast<std::size_t>(x)]) {
          int f = c, b = c;
          int i = 0, j = static_cast<int>(w.size()) - 1;
          while (i <= j && at(t, f, w[static_cast<std::size_t>(i)]) >= 0) f = at(t, f, w[static_cast<std::size_t>(i++)]);
          if (i > j) {
            if (f != b) return false;
            continue;
          }
          while (j >= i && at(t, b, inv_col_[static_cast<std::size_t>(w[static_cast<std::size_t>(j)])]) >= 0) {
            b = at(t, b, inv_col_[static_cast<std::size_t>(w[static_cast<std::size_t>(j--)])]);
          }
          if (j < i) {
            if (f != b) return false;
            continue;
          }
          if (i == j && !set(t, f, w[static_cast<std::size_t>(i)], b, queue)) return false;
        }
      }
    }
    queue.clear();
    return true;
  }

  bool torsion_ok(const Table& t, int count) const {
    for (const auto& w : torsion_cols_) {
      for (int c = 0; c < count; ++c) {
        int f = c;
        std::size_t i = 0;
        while (i < w.size() && f >= 0) f = at(t, f, w[i++]);
        if (f == c && i == w.size()) return false;
      }
    }
    return true;
  }

  // False if some other base point gives a lexicographically smaller standard table.
  bool minimal(const Table& t, int count) const {
    std::vector<int> rename(static_cast<std::size_t>(n_), -1), order;
    for (int base = 1; base < count; ++base) {
      std::fill(rename.begin(), rename.end(), -1);
      order.assign(1, base);
      rename[static_cast<std::size_t>(base)] = 0;
      bool decided = false;
      for (int row = 0; row < count && !decided; ++row) {
        if (row >= static_cast<int>(order.size())) break;
        const int orig = order[static_cast<std::size_t>(row)];
        for (int x = 0; x < cols_; ++x) {
          const int img = at(t, orig, x), ours = at(t, row, x);
          if (img < 0 || ours < 0) {
            decided = true;
            break;
          }
          if (rename[static_cast<std::size_t>(img)] < 0) {
            rename[static_cast<std::size_t>(img)] = static_cast<int>(order.size());
            order.push_back(img);
          }
          const int val = rename[static_cast<std::size_t>(img)];
          if (val < ours) return false;
          if (val > ours) {
            decided = true;
            break;
          }
        }
      }
    }
    return true;
  }

  void search(Table& t, int count) {
    if (done_) return;
    if (++nodes_ > filters_.node_cap) throw CapExceeded("low-index search exceeded node cap");
    // first undefined entry in scan order
    int c = -1, x = -1;
    for (int row = 0; row < count && c < 0; ++row) {
      for (int col = 0; col < cols_; ++col) {
        if (at(t, row, col) < 0) {
          c = row;
          x = col;
          break;
        }
      }
    }
    if (c < 0) {
      if (count == n_) emit(t);
      return;
    }
    const int ix = inv_col_[static_cast<std::size_t>(x)];
    for (int d = c; d <= count && d < n_; ++d) {
      if (d < count && at(t, d, ix) >= 0) continue;
      Table next = t;
      std::vector<std::pair<int, int>> queue;
      const int next_count = d == count ? count + 1 : count;
      if (!set(next, c, x, d, queue)) continue;
      if (!propagate(next, queue)) continue;
      if (!torsion_ok(next, next_count)) continue;
      if (!minimal(next, next_count)) continue;
      search(next, next_count);
      if (done_) return;
    }
  }

  void emit(const Table& t) {
    CosetTable out;
    out.index = n_;
    out.action.assign(static_cast<std::size_t>(pres_.generators), std::vector<int>(static_cast<std::size_t>(n_)));
    for (int g = 0; g < pres_.generators; ++g) {
      for (int c = 0; c < n_; ++c) {
        out.action[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)] = at(t, c, gen_col_[static_cast<std::size_t>(g)]);
      }
    }
    if (!relators_hold(pres_, out)) return;
    if (filters_.require_proper && !contains_odd_element(out, filters_.generator_parity)) return;
    out.subgroup_generators = schreier_generators(out.action);
    results_.push_back(std::move(out));
    if (filters_.max_results != 0 && results_.size() >= filters_.max_results) done_ = true;
  }

  const Presentation& pres_;
  int n_;
  SubgroupFilters filters_;
  int cols_ = 0;
  std::map<int, int> col_of_letter_;
  std::vector<int> inv_col_;
  std::vector<int> gen_col_;
  std::vector<std::vector<std::vector<int>>> conj_;
  std::vector<std::vector<int>> relator_cols_;
  std::vector<std::vector<int>> torsion_cols_;
  std::vector<CosetTable> results_;
  std::uint64_t nodes_ = 0;
  bool done_ = false;
};

}  // namespace detail

/// Subgroups of exactly the given index, one per conjugacy class, in
/// lexicographic order of their standard coset tables.
inline std::vector<CosetTable> low_index_tables(const Presentation& pres, int index, const SubgroupFilters& filters = {}) {
  return detail::LowIndexSearch(pres, index, filters).run();
}

// ---------------------------------------------------------------------------
// classification for extended triangle groups

/// Representatives of the conjugacy classes of torsion: the reflections and
/// the nontrivial powers of the three vertex rotations.
inline std::vector<Word> triangle_torsion_words(const TriangleParams& t) {
  std::vector<Word> out = {Word{1}, Word{2}, Word{3}};
  const std::array<std::pair<Word, int>, 3> rotations = {
      std::pair{Word{1, 2}, t.p}, std::pair{Word{2, 3}, t.q}, std::pair{Word{3, 1}, t.r}};
  for (const auto& [w, order] : rotations) {
    for (int a = 1; a < order; ++a) out.push_back(power(w, a));
  }
  return out;
}

inline SubgroupFilters triangle_filters(const TriangleParams& t, bool torsion_free, bool proper, std::size_t max_results = 0) {
  SubgroupFilters f;
  if (torsion_free) f.torsion_words = triangle_torsion_words(t);
  f.generator_parity = {1, 1, 1};
  f.require_proper = proper;
  f.max_results = max_results;
  return f;
}

struct SubgroupRecord {
  TriangleParams triangle;
  CosetTable table;
  bool torsion_free = false;
  bool proper = false;
  bool quotient_orientable = true;
  std::optional<int> genus;  // non-orientable genus if proper, orientable genus otherwise; torsion-free only
};

inline SubgroupRecord classify(const CosetTable& table, const TriangleParams& t) {
  if (table.action.size() != 3) throw PreconditionError("classify expects an extended triangle group table");
  SubgroupRecord rec;
  rec.triangle = t;
  rec.table = table;
  rec.torsion_free = true;
  for (const auto& w : triangle_torsion_words(t)) {
    for (int c = 0; c < table.index && rec.torsion_free; ++c) {
      if (apply_word(table, c, w) == c) rec.torsion_free = false;
    }
  }
  rec.proper = contains_odd_element(table, {1, 1, 1});
  rec.quotient_orientable = !rec.proper;
  if (rec.torsion_free) {
    const Rational mu = area_defect(t);
    // non-orientable: g = 2 + index*mu/2; orientable: g = 1 + index*mu/4
    const std::int64_t scale = rec.proper ? 2 : 4;
    const std::int64_t num = static_cast<std::int64_t>(table.index) * mu.num;
    const std::int64_t den = mu.den * scale;
    if (num % den != 0) throw PreconditionError("classification inconsistency: non-integral genus");
    rec.genus = static_cast<int>((rec.proper ? 2 : 1) + num / den);
  }
  return rec;
}

inline std::vector<SubgroupRecord> low_index_subgroups(const TriangleParams& t, int index, bool torsion_free, bool proper,
                                                       std::size_t max_results = 0) {
  const auto pres = triangle_presentation(t, true);
  std::vector<SubgroupRecord> out;
  for (const auto& table : low_index_tables(pres, index, triangle_filters(t, torsion_free, proper, max_results))) {
    out.push_back(classify(table, t));
  }
  return out;
}

/// K+ = K intersected with the orientation-preserving half: the action on (coset, parity).
inline SubgroupRecord canonical_fuchsian(const SubgroupRecord& rec) {
  if (!rec.proper) throw PreconditionError("canonical Fuchsian subgroup needs a proper (orientation-reversing) subgroup");
  const int n = rec.table.index;
  std::vector<std::vector<int>> action(3, std::vector<int>(static_cast<std::size_t>(2 * n)));
  for (int g = 0; g < 3; ++g) {
    for (int c = 0; c < n; ++c) {
      const int d = rec.table.action[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)];
      action[static_cast<std::size_t>(g)][static_cast<std::size_t>(2 * c)] = 2 * d + 1;
      action[static_cast<std::size_t>(g)][static_cast<std::size_t>(2 * c + 1)] = 2 * d;
    }
  }
  CosetTable t;
  t.index = 2 * n;
  t.action = standardize(action);
  t.subgroup_generators = schreier_generators(t.action);
  return classify(t, rec.triangle);
}

/// A subgroup K of D(3,3,r) seen inside D(2,3,2r), where D(3,3,r) is generated
/// by s0 = r2, s1 = r1 and s2 = r0 r2 r0 (the triangle doubled across the
/// mirror of r0): s0 s1 and s1 s2 have order 3 and s2 s0 = (r0 r2)^2 order r.
inline SubgroupRecord embed_in_double_triangle(const SubgroupRecord& rec) {
  const TriangleParams t = rec.triangle;
  if (t.p != 3 || t.q != 3) throw PreconditionError("expected a subgroup of D(3,3,r)");
  const int n = rec.table.index;
  const auto& s = rec.table.action;
  std::vector<std::vector<int>> action(3, std::vector<int>(static_cast<std::size_t>(2 * n)));
  for (int x = 0; x < n; ++x) {
    const auto X = static_cast<std::size_t>(x);
    action[0][2 * X] = 2 * x + 1;
    action[0][2 * X + 1] = 2 * x;
    action[1][2 * X] = 2 * s[1][X];
    action[1][2 * X + 1] = 2 * s[1][X] + 1;
    action[2][2 * X] = 2 * s[0][X];
    action[2][2 * X + 1] = 2 * s[2][X] + 1;
  }
  CosetTable table;
  table.index = 2 * n;
  table.action = standardize(action);
  table.subgroup_generators = schreier_generators(table.action);
  const TriangleParams big{2, 3, 2 * t.r};
  if (!relators_hold(triangle_presentation(big), table)) throw PreconditionError("induced action violates relators");
  return classify(table, big);
}

// ---------------------------------------------------------------------------
// bridge to polygon complexes

/// Flag numbering of a complex: edge side (polygon p, position i) has flags
/// 2*(offset(p)+i) at its tail and 2*(offset(p)+i)+1 at its head.
inline CosetTable flag_action(const PolygonComplex& c) {
  std::vector<int> offset(static_cast<std::size_t>(c.polygon_count()) + 1, 0);
  for (int p = 0; p < c.polygon_count(); ++p) offset[static_cast<std::size_t>(p) + 1] = offset[static_cast<std::size_t>(p)] + c.polygon_size(p);
  const int sides = offset.back();
  auto flag = [&](int p, int i, bool head) { return 2 * (offset[static_cast<std::size_t>(p)] + i) + (head ? 1 : 0); };
  std::vector<std::vector<int>> action(3, std::vector<int>(static_cast<std::size_t>(2 * sides)));
  for (int p = 0; p < c.polygon_count(); ++p) {
    const int n = c.polygon_size(p);
    for (int i = 0; i < n; ++i) {
      const int tail = flag(p, i, false), head = flag(p, i, true);
      action[0][static_cast<std::size_t>(tail)] = head;
      action[0][static_cast<std::size_t>(head)] = tail;
      const int next_tail = flag(p, (i + 1) % n, false);
      action[2][static_cast<std::size_t>(head)] = next_tail;
      action[2][static_cast<std::size_t>(next_tail)] = head;
      const Occurrence o{p, i};
      const Occurrence q = c.partner(o);
      const bool keep = c.preserving(c.label_at(o));
      // preserving pairs glue tail to head, reversing pairs tail to tail
      action[1][static_cast<std::size_t>(tail)] = flag(q.polygon, q.position, keep);
      action[1][static_cast<std::size_t>(head)] = flag(q.polygon, q.position, !keep);
    }
  }
  CosetTable t;
  t.index = 2 * sides;
  t.action = standardize(action);
  t.subgroup_generators = schreier_generators(t.action);
  return t;
}

inline SubgroupRecord complex_to_subgroup(const PolygonComplex& c) {
  const auto report = verify_extremal(c);
  if (!report.ok) throw PreconditionError("complex_to_subgroup needs an extremal complex");
  return classify(flag_action(c), {2, 3, report.N});
}

inline PolygonComplex subgroup_to_complex(const SubgroupRecord& rec) {
  const auto& t = rec.triangle;
  if (t.p != 2 || t.q != 3) throw PreconditionError("subgroup_to_complex expects a subgroup of D(2,3,N)");
  if (!rec.torsion_free || !rec.proper) throw PreconditionError("subgroup must be torsion free and proper");
  const int n = rec.table.index;
  const int N = t.r;
  if (N < 7 || n % (2 * N) != 0) throw PreconditionError("index must be 2kN with N >= 7");
  const auto& r0 = rec.table.action[0];
  const auto& r1 = rec.table.action[1];
  const auto& r2 = rec.table.action[2];

  // faces: orbits of <r0, r2>, read from their least flag
  std::vector<int> poly_of(static_cast<std::size_t>(n), -1), pos_of(static_cast<std::size_t>(n), -1);
  std::vector<bool> is_head(static_cast<std::size_t>(n), false);
  int faces = 0;
  for (int f = 0; f < n; ++f) {
    if (poly_of[static_cast<std::size_t>(f)] >= 0) continue;
    int at = f;
    for (int i = 0; i < N; ++i) {
      const int head = r0[static_cast<std::size_t>(at)];
      poly_of[static_cast<std::size_t>(at)] = poly_of[static_cast<std::size_t>(head)] = faces;
      pos_of[static_cast<std::size_t>(at)] = pos_of[static_cast<std::size_t>(head)] = i;
      is_head[static_cast<std::size_t>(head)] = true;
      at = r2[static_cast<std::size_t>(head)];
    }
    if (at != f) throw PreconditionError("face orbit is not a 2N-cycle");
    ++faces;
  }
  std::vector<std::vector<int>> polys(static_cast<std::size_t>(faces), std::vector<int>(static_cast<std::size_t>(N), 0));
  int label = 0;
  for (int p = 0; p < faces; ++p) {
    for (int i = 0; i < N; ++i) {
      if (polys[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)] != 0) continue;
      // tail flag of this edge side
      int tail = -1;
      for (int f = 0; f < n; ++f) {
        if (poly_of[static_cast<std::size_t>(f)] == p && pos_of[static_cast<std::size_t>(f)] == i && !is_head[static_cast<std::size_t>(f)]) {
          tail = f;
          break;
        }
      }
      const int across = r1[static_cast<std::size_t>(tail)];
      const int q = poly_of[static_cast<std::size_t>(across)], j = pos_of[static_cast<std::size_t>(across)];
      ++label;
      polys[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)] = label;
      // tail meeting head: anti-aligned, preserving
      polys[static_cast<std::size_t>(q)][static_cast<std::size_t>(j)] = is_head[static_cast<std::size_t>(across)] ? label : -label;
    }
  }
  return PolygonComplex(std::move(polys));
}

}  // namespace kpack
