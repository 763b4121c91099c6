#pragma once

// Edge grafting: insert three new edge pairs at a trivalent vertex so that the
// vertex splits into three trivalent vertices. Euler characteristic drops by
// one, so the non-orientable genus grows by one while every polygon stays a
// regular cell of the same size (per step).
//
// Sites are described relative to a fundamental domain: the polygons glued
// along the edges of the minimum-label spanning tree of the dual graph.
// EG1/EG2 sites are vertices never crossing a tree edge (three corners on the
// domain boundary); EG3/EG4 sites cross exactly one tree edge (one corner of
// angle 2pi/3 plus the two corners flanking a shared edge, angle 4pi/3).
// EG2 and EG4 read the site in the mirrored direction.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "complex.hpp"
#include "errors.hpp"
#include "feasibility.hpp"

namespace kpack {

enum class GraftVariant { EG1, EG2, EG3, EG4 };

inline const char* to_string(GraftVariant v) {
  switch (v) {
    case GraftVariant::EG1: return "EG1";
    case GraftVariant::EG2: return "EG2";
    case GraftVariant::EG3: return "EG3";
    default: return "EG4";
  }
}

inline GraftVariant parse_variant(const std::string& s) {
  if (s == "EG1") return GraftVariant::EG1;
  if (s == "EG2") return GraftVariant::EG2;
  if (s == "EG3") return GraftVariant::EG3;
  if (s == "EG4") return GraftVariant::EG4;
  throw DomainError("unknown graft variant '" + s + "' (expected EG1..EG4)");
}

/// EG1 <-> EG2 and EG3 <-> EG4 alternate.
inline GraftVariant partner(GraftVariant v) {
  switch (v) {
    case GraftVariant::EG1: return GraftVariant::EG2;
    case GraftVariant::EG2: return GraftVariant::EG1;
    case GraftVariant::EG3: return GraftVariant::EG4;
    default: return GraftVariant::EG3;
  }
}

inline bool is_mirrored(GraftVariant v) { return v == GraftVariant::EG2 || v == GraftVariant::EG4; }

/// Number of fundamental-domain (tree) edges the vertex cycle crosses.
inline int tree_crossings_required(GraftVariant v) {
  return (v == GraftVariant::EG1 || v == GraftVariant::EG2) ? 0 : 1;
}

/// Labels of the spanning tree of the dual graph with least labels (Kruskal).
/// Labels added later never displace earlier tree edges.
inline std::set<int> domain_tree(const PolygonComplex& c) {
  std::vector<int> parent(static_cast<std::size_t>(c.polygon_count()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  std::set<int> tree;
  for (int label = 1; label <= c.edge_count(); ++label) {
    const auto& occ = c.occurrences(label);
    const int a = find(occ[0].polygon), b = find(occ[1].polygon);
    if (a != b) {
      parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
      tree.insert(label);
    }
  }
  return tree;
}

/// Label of the edge through which the walk leaves a corner.
inline int leaving_label(const PolygonComplex& c, Corner at, bool forward) {
  const int n = c.polygon_size(at.polygon);
  return std::abs(c.label_at({at.polygon, forward ? at.position : (at.position + n - 1) % n}));
}

struct GraftSite {
  GraftVariant variant = GraftVariant::EG1;
  /// The vertex cycle in the site frame: corner 0 first; for EG3/EG4 the
  /// shared (tree) edge is crossed between corners 1 and 2.
  VertexCycle cycle;
  /// Label of the shared edge for EG3/EG4, 0 otherwise.
  int shared_edge = 0;

  std::vector<int> polygons() const {
    std::vector<int> out;
    for (const auto& corner : cycle.corners) out.push_back(corner.polygon);
    return out;
  }
};

struct GraftStep {
  std::vector<GraftSite> sites;
};

/// Where new sides go: labels relative to the input (1, 2, 3, ...), in polygon reading order.
struct Insertion {
  Corner corner;
  std::vector<int> labels;
};

struct Rewrite {
  std::vector<Insertion> insertions;

  /// Lexicographic key: per corner (sorted), its position, count and labels.
  std::vector<int> key() const {
    std::vector<int> k;
    for (const auto& ins : insertions) {
      k.push_back(ins.corner.polygon);
      k.push_back(ins.corner.position);
      k.push_back(static_cast<int>(ins.labels.size()));
      k.insert(k.end(), ins.labels.begin(), ins.labels.end());
    }
    return k;
  }
};

namespace detail {

inline bool allowed_cell_count(int k) { return k == 1 || k == 2 || k == 3 || k == 6; }

/// Number of distinct polygons a grafting site must touch for cell count k.
inline int touched_polygons_required(int k) { return k <= 3 ? k : 3; }

inline std::size_t distinct(const std::vector<int>& v) { return std::set<int>(v.begin(), v.end()).size(); }

/// Renumber new labels by first occurrence (positive first), corners sorted.
inline Rewrite normalized(Rewrite r) {
  std::sort(r.insertions.begin(), r.insertions.end(),
            [](const Insertion& a, const Insertion& b) { return a.corner < b.corner; });
  std::map<int, int> rename;
  for (auto& ins : r.insertions) {
    for (int& l : ins.labels) {
      auto it = rename.find(std::abs(l));
      if (it == rename.end()) {
        const int fresh = static_cast<int>(rename.size()) + 1;
        rename[std::abs(l)] = l > 0 ? fresh : -fresh;
        l = fresh;
      } else {
        l = (l > 0 ? 1 : -1) * it->second;
      }
    }
  }
  return r;
}

}  // namespace detail

/// The unique wiring of three new edge pairs at a trivalent vertex with two
/// new sides per corner that leaves all three new vertices trivalent. Slots
/// are numbered in the site frame: corner t holds slots 2t (entry side) and
/// 2t+1 (exit side); all three pairs reverse orientation in that frame.
inline constexpr std::array<std::array<int, 2>, 3> kGraftWiring = {{{0, 3}, {1, 4}, {2, 5}}};

/// Site-frame rewrite of a single site; relative labels start at `first_label`.
inline Rewrite site_rewrite(const GraftSite& s, int first_label = 1) {
  // slot u has frame orientation +1 when its corner is walked forward
  std::array<int, 6> slot_label{};
  for (std::size_t j = 0; j < kGraftWiring.size(); ++j) {
    const int u = kGraftWiring[j][0], v = kGraftWiring[j][1];
    const int label = first_label + static_cast<int>(j);
    const bool fu = s.cycle.forward[static_cast<std::size_t>(u / 2)];
    const bool fv = s.cycle.forward[static_cast<std::size_t>(v / 2)];
    // reversing in the site frame: actual signs agree exactly when the two frames disagree
    slot_label[static_cast<std::size_t>(u)] = label;
    slot_label[static_cast<std::size_t>(v)] = fu != fv ? label : -label;
  }
  Rewrite r;
  for (int t = 0; t < 3; ++t) {
    Insertion ins{s.cycle.corners[static_cast<std::size_t>(t)],
                  {slot_label[static_cast<std::size_t>(2 * t)], slot_label[static_cast<std::size_t>(2 * t + 1)]}};
    if (!s.cycle.forward[static_cast<std::size_t>(t)]) std::reverse(ins.labels.begin(), ins.labels.end());
    r.insertions.push_back(std::move(ins));
  }
  return r;
}

/// New sides are inserted at each listed corner, before the corner's outgoing edge.
inline PolygonComplex apply_rewrite(const PolygonComplex& c, const Rewrite& r) {
  std::map<Corner, const Insertion*> at;
  for (const auto& ins : r.insertions) {
    if (ins.corner.polygon < 0 || ins.corner.polygon >= c.polygon_count() || ins.corner.position < 0 ||
        ins.corner.position >= c.polygon_size(ins.corner.polygon)) {
      throw PreconditionError("rewrite refers to a corner outside the complex");
    }
    if (!at.emplace(ins.corner, &ins).second) throw PreconditionError("rewrite lists a corner twice");
  }
  const int base = c.edge_count();
  std::vector<std::vector<int>> polys;
  for (int p = 0; p < c.polygon_count(); ++p) {
    std::vector<int> out;
    for (int i = 0; i < c.polygon_size(p); ++i) {
      if (auto it = at.find({p, i}); it != at.end()) {
        for (int l : it->second->labels) out.push_back(l > 0 ? base + l : l - base);
      }
      out.push_back(c.polygon(p)[static_cast<std::size_t>(i)]);
    }
    polys.push_back(std::move(out));
  }
  return PolygonComplex(std::move(polys), c.name());
}

/// Vertex cycles matching a variant, in deterministic order (cycle order of
/// vertex_cycles). Requires an extremal complex.
inline std::vector<GraftSite> eligible_sites(const PolygonComplex& c, GraftVariant v) {
  if (!verify_extremal(c).ok) throw PreconditionError("grafting requires an extremal complex");
  const int k = c.polygon_count();
  std::vector<GraftSite> out;
  if (!detail::allowed_cell_count(k)) return out;
  const auto tree = domain_tree(c);
  for (const auto& cyc : vertex_cycles(c)) {
    std::vector<int> crossing;
    for (int t = 0; t < 3; ++t) {
      if (tree.count(leaving_label(c, cyc.corners[static_cast<std::size_t>(t)], cyc.forward[static_cast<std::size_t>(t)]))) {
        crossing.push_back(t);
      }
    }
    if (static_cast<int>(crossing.size()) != tree_crossings_required(v)) continue;
    const int start = crossing.empty() ? 0 : (crossing[0] + 2) % 3;  // crossing between site corners 1 and 2
    GraftSite s;
    s.variant = v;
    for (int t = 0; t < 3; ++t) {
      // walking backwards keeps corner 0 and visits the other two in reverse
      const int src = is_mirrored(v) ? (start + 3 - t) % 3 : (start + t) % 3;
      s.cycle.corners.push_back(cyc.corners[static_cast<std::size_t>(src)]);
      s.cycle.forward.push_back(is_mirrored(v) ? !cyc.forward[static_cast<std::size_t>(src)] : cyc.forward[static_cast<std::size_t>(src)]);
    }
    if (!crossing.empty()) s.shared_edge = leaving_label(c, s.cycle.corners[1], s.cycle.forward[1]);
    if (static_cast<int>(detail::distinct(s.polygons())) != detail::touched_polygons_required(k)) continue;
    out.push_back(std::move(s));
  }
  return out;
}

/// Sets of sites applied together so that every polygon grows by the same
/// amount: one site for k in {1, 3}, two sites on complementary polygons for
/// k in {2, 6}.
inline std::vector<GraftStep> eligible_steps(const PolygonComplex& c, const std::vector<GraftVariant>& variants) {
  const int k = c.polygon_count();
  std::vector<GraftStep> out;
  if (!detail::allowed_cell_count(k)) return out;
  const std::size_t want = (k == 1 || k == 3) ? 1 : 2;
  if (variants.size() != want) {
    throw DomainError("a grafting step on " + std::to_string(k) + " polygons uses " + std::to_string(want) + " site(s)");
  }
  const auto first = eligible_sites(c, variants[0]);
  if (want == 1) {
    for (const auto& s : first) out.push_back({{s}});
    return out;
  }
  const auto second = eligible_sites(c, variants[1]);
  for (const auto& a : first) {
    for (const auto& b : second) {
      std::vector<int> gain(static_cast<std::size_t>(k), 0);
      for (int p : a.polygons()) gain[static_cast<std::size_t>(p)] += 2;
      for (int p : b.polygons()) gain[static_cast<std::size_t>(p)] += 2;
      if (std::all_of(gain.begin(), gain.end(), [&](int g) { return g == 12 / k; })) out.push_back({{a, b}});
    }
  }
  return out;
}

namespace detail {

inline bool same_site(const GraftSite& a, const GraftSite& b) {
  return a.variant == b.variant && a.cycle.corners == b.cycle.corners && a.cycle.forward == b.cycle.forward;
}

inline void require_eligible(const PolygonComplex& c, const GraftSite& s) {
  const auto sites = eligible_sites(c, s.variant);
  if (std::none_of(sites.begin(), sites.end(), [&](const GraftSite& e) { return same_site(e, s); })) {
    throw PreconditionError(std::string("site is not eligible for ") + to_string(s.variant));
  }
}

inline Rewrite step_rewrite(const PolygonComplex& c, const GraftStep& step) {
  Rewrite r;
  std::set<Corner> used;
  int next = 1;
  for (const auto& s : step.sites) {
    require_eligible(c, s);
    for (auto& ins : site_rewrite(s, next).insertions) {
      if (!used.insert(ins.corner).second) throw PreconditionError("grafting sites overlap");
      r.insertions.push_back(std::move(ins));
    }
    next += 3;
  }
  return r;
}

}  // namespace detail

/// Graft at one site. For k in {1, 3} the result is again extremal; for
/// k in {2, 6} a single site grows only three polygons and the result is an
/// intermediate that a second site (see apply_step) makes uniform again.
inline PolygonComplex apply(const PolygonComplex& c, const GraftSite& s) {
  return apply_rewrite(c, detail::step_rewrite(c, {{s}}));
}

inline PolygonComplex apply_step(const PolygonComplex& c, const GraftStep& step) {
  if (step.sites.empty()) throw PreconditionError("empty grafting step");
  return apply_rewrite(c, detail::step_rewrite(c, step));
}

inline std::vector<GraftVariant> partner(const std::vector<GraftVariant>& vs) {
  std::vector<GraftVariant> out;
  for (auto v : vs) out.push_back(partner(v));
  return out;
}

// ---------------------------------------------------------------------------
// brute-force oracle

namespace detail {

/// All perfect matchings of six slots, lexicographic.
inline std::vector<std::array<std::array<int, 2>, 3>> slot_matchings() {
  std::vector<std::array<std::array<int, 2>, 3>> out;
  for (int b = 1; b < 6; ++b) {
    std::vector<int> rest;
    for (int x = 1; x < 6; ++x) {
      if (x != b) rest.push_back(x);
    }
    for (int c = 1; c < 4; ++c) {
      std::vector<int> last;
      for (int i = 1; i < 4; ++i) {
        if (i != c) last.push_back(rest[static_cast<std::size_t>(i)]);
      }
      out.push_back({{{0, b}, {rest[0], rest[static_cast<std::size_t>(c)]}, {last[0], last[1]}}});
    }
  }
  return out;
}

/// Every way to insert three new pairs into the corners of one site, with
/// any split of the six sides among its three corners.
inline std::vector<Rewrite> site_candidates(const GraftSite& s) {
  std::vector<Corner> corners = s.cycle.corners;
  std::sort(corners.begin(), corners.end());
  std::vector<Rewrite> out;
  const auto matchings = slot_matchings();
  for (int m0 = 0; m0 <= 6; ++m0) {
    for (int m1 = 0; m0 + m1 <= 6; ++m1) {
      const std::array<int, 3> m = {m0, m1, 6 - m0 - m1};
      for (const auto& match : matchings) {
        for (int signs = 0; signs < 8; ++signs) {
          std::array<int, 6> slot{};
          for (int j = 0; j < 3; ++j) {
            slot[static_cast<std::size_t>(match[static_cast<std::size_t>(j)][0])] = j + 1;
            slot[static_cast<std::size_t>(match[static_cast<std::size_t>(j)][1])] = (signs >> j & 1) ? -(j + 1) : j + 1;
          }
          Rewrite r;
          int at = 0;
          for (int t = 0; t < 3; ++t) {
            if (m[static_cast<std::size_t>(t)] == 0) continue;
            Insertion ins{corners[static_cast<std::size_t>(t)], {}};
            for (int i = 0; i < m[static_cast<std::size_t>(t)]; ++i) ins.labels.push_back(slot[static_cast<std::size_t>(at++)]);
            r.insertions.push_back(std::move(ins));
          }
          out.push_back(normalized(std::move(r)));
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Rewrite& a, const Rewrite& b) { return a.key() < b.key(); });
  out.erase(std::unique(out.begin(), out.end(), [](const Rewrite& a, const Rewrite& b) { return a.key() == b.key(); }),
            out.end());
  return out;
}

/// Local conditions: all vertices trivalent, one vertex becomes three, three new edges.
inline bool locally_valid(const PolygonComplex& before, const PolygonComplex& after, int sites) {
  const auto a = invariants(before), b = invariants(after);
  if (b.E != a.E + 3 * sites || b.V != a.V + 2 * sites || b.F != a.F) return false;
  for (const auto& cyc : vertex_cycles(after)) {
    if (cyc.size() != 3) return false;
  }
  return !b.orientable && b.genus == a.genus + sites;
}

inline bool step_valid(const PolygonComplex& before, const PolygonComplex& after, const std::vector<GraftVariant>& vs) {
  if (!locally_valid(before, after, static_cast<int>(vs.size()))) return false;
  const auto r0 = verify_extremal(before), r1 = verify_extremal(after);
  if (!r1.ok || r1.N != r0.N + 6 * static_cast<int>(vs.size()) / r0.k) return false;
  return !eligible_steps(after, partner(vs)).empty();
}

}  // namespace detail

/// Lexicographically least rewrite (over all splits of six new sides among
/// the corners of each site, all pairings and all signs) whose output meets
/// the grafting postconditions. Throws SearchExhausted if none exists.
inline Rewrite discover_rewrite(const PolygonComplex& c, const GraftStep& step) {
  if (step.sites.empty() || step.sites.size() > 2) throw PreconditionError("a step has one or two sites");
  std::vector<GraftVariant> vs;
  for (const auto& s : step.sites) {
    detail::require_eligible(c, s);
    vs.push_back(s.variant);
  }
  const auto first = detail::site_candidates(step.sites[0]);
  if (step.sites.size() == 1) {
    for (const auto& r : first) {
      if (detail::step_valid(c, apply_rewrite(c, r), vs)) return r;
    }
    throw SearchExhausted("no valid rewrite at this site");
  }
  const auto second = detail::site_candidates(step.sites[1]);
  for (const auto& a : first) {
    if (!detail::locally_valid(c, apply_rewrite(c, a), 1)) continue;
    for (const auto& b : second) {
      Rewrite both = a;
      for (auto ins : b.insertions) {
        for (int& l : ins.labels) l += (l > 0 ? 3 : -3);
        both.insertions.push_back(std::move(ins));
      }
      if (detail::step_valid(c, apply_rewrite(c, both), vs)) return both;
    }
  }
  throw SearchExhausted("no valid rewrite pair for this step");
}

// ---------------------------------------------------------------------------
// schedules

struct ScheduleEntry {
  std::vector<GraftVariant> step;  // empty for the seed
  PolygonComplex complex;
};

/// Seed and alternating step pattern for cell size N.
struct Schedule {
  std::string seed;
  int seed_N = 0;
  std::vector<std::vector<GraftVariant>> phases;
};

inline Schedule schedule_for(std::int64_t N) {
  detail::require_cell_size(N);
  using V = GraftVariant;
  switch (N % 6) {
    case 0: return {"X12", 12, {{V::EG2}, {V::EG1}}};
    case 2:
    case 4: return {"X8", 8, {{V::EG1}, {V::EG2}}};
    case 3: return {"X9", 9, {{V::EG3, V::EG4}}};
    default: return {"X7", 7, {{V::EG3, V::EG1}, {V::EG4, V::EG2}}};
  }
}

/// Run a schedule from a seed until cell size N, recording every complex.
inline std::vector<ScheduleEntry> run_schedule(const PolygonComplex& seed, const Schedule& plan, std::int64_t N) {
  std::vector<ScheduleEntry> trace{{{}, seed}};
  int current = verify_extremal(seed).N;
  if (!verify_extremal(seed).ok) throw PreconditionError("seed is not extremal");
  for (std::size_t phase = 0; current < N; ++phase) {
    const auto& variants = plan.phases[phase % plan.phases.size()];
    const auto& last = trace.back().complex;
    const auto steps = eligible_steps(last, variants);
    if (steps.empty()) throw SearchExhausted("no eligible grafting step at N = " + std::to_string(current));
    auto next = apply_step(last, steps.front());
    current = verify_extremal(next).N;
    trace.push_back({variants, std::move(next)});
  }
  if (current != N) throw DomainError("schedule does not reach N = " + std::to_string(N));
  return trace;
}

inline std::vector<ScheduleEntry> build_trace(std::int64_t N) {
  const auto plan = schedule_for(N);
  return run_schedule(catalog_complex(plan.seed), plan, N);
}

/// A primitive extremal complex with cell size N: (k, g) = primitive_pair(N).
inline PolygonComplex build_primitive(std::int64_t N) {
  auto out = build_trace(N).back().complex;
  out.set_name("X" + std::to_string(N));
  return out;
}

}  // namespace kpack
