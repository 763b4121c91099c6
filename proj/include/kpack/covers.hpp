#pragma once

// Covers of polygon complexes: the orientation double cover and cyclic
// n-sheeted covers given by Z_n voltages on the edge pairings. Cyclic covers
// of the primitive complexes realise every feasible (k, g).

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"
#include "feasibility.hpp"
#include "grafting.hpp"

namespace kpack {

/// Two sheets: every polygon and its mirror image. Sheet + keeps the listing,
/// sheet - reverses it and negates every label. Preserving pairs glue within a
/// sheet, reversing pairs across sheets, so every pairing of the cover
/// preserves orientation. Polygon p of sheet s has index s * F + p.
inline PolygonComplex orientation_double_cover(const PolygonComplex& c) {
  if (is_orientable(c)) throw PreconditionError("orientation double cover needs a non-orientable complex");
  const int F = c.polygon_count(), E = c.edge_count();
  std::vector<std::vector<int>> polys(static_cast<std::size_t>(2 * F));
  for (int sheet = 0; sheet < 2; ++sheet) {
    for (int p = 0; p < F; ++p) {
      std::vector<int> out;
      for (int i = 0; i < c.polygon_size(p); ++i) {
        const Occurrence o{p, i};
        const int label = c.label_at(o);
        const int l = std::abs(label);
        const bool first = c.occurrences(l)[0] == o;
        // the first occurrence names the cover edge after its own sheet
        const int cover_sheet = first ? sheet : (c.preserving(l) ? sheet : 1 - sheet);
        const int id = cover_sheet * E + l;
        const int sign = (label > 0 ? 1 : -1) * (sheet == 0 ? 1 : -1);
        out.push_back(sign * id);
      }
      if (sheet == 1) std::reverse(out.begin(), out.end());
      polys[static_cast<std::size_t>(sheet * F + p)] = std::move(out);
    }
  }
  std::string name = c.name().empty() ? "" : c.name() + "+";
  return PolygonComplex(std::move(polys), name);
}

struct VoltageAssignment {
  int modulus = 1;
  /// voltage[l - 1] for label l, in [0, modulus).
  std::vector<int> voltage;
};

/// Net voltage around a vertex cycle: leaving through the first occurrence of
/// a label adds its voltage, through the second subtracts it.
inline int cycle_voltage(const PolygonComplex& c, const VertexCycle& cyc, const VoltageAssignment& v) {
  long long net = 0;
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    const Corner at = cyc.corners[i];
    const int n = c.polygon_size(at.polygon);
    const Occurrence leave{at.polygon, cyc.forward[i] ? at.position : (at.position + n - 1) % n};
    const int l = std::abs(c.label_at(leave));
    const int x = v.voltage[static_cast<std::size_t>(l - 1)];
    net += c.occurrences(l)[0] == leave ? x : -x;
  }
  return static_cast<int>(((net % v.modulus) + v.modulus) % v.modulus);
}

namespace detail {

inline void require_voltages(const PolygonComplex& c, const VoltageAssignment& v) {
  if (v.modulus < 1) throw DomainError("modulus must be >= 1");
  if (static_cast<int>(v.voltage.size()) != c.edge_count()) {
    throw DomainError("voltage assignment has " + std::to_string(v.voltage.size()) + " entries for " +
                      std::to_string(c.edge_count()) + " edge labels");
  }
  for (int x : v.voltage) {
    if (x < 0 || x >= v.modulus) throw DomainError("voltage out of range [0, modulus)");
  }
}

/// Classes of sheets reachable from sheet 0 through the dual graph.
inline std::vector<int> sheet_component(const PolygonComplex& c, const VoltageAssignment& v) {
  const int F = c.polygon_count(), n = v.modulus;
  std::vector<int> comp(static_cast<std::size_t>(F * n), -1);
  int next = 0;
  for (int start = 0; start < F * n; ++start) {
    if (comp[static_cast<std::size_t>(start)] >= 0) continue;
    std::vector<int> stack{start};
    comp[static_cast<std::size_t>(start)] = next;
    while (!stack.empty()) {
      const int node = stack.back();
      stack.pop_back();
      const int sheet = node / F, p = node % F;
      for (int i = 0; i < c.polygon_size(p); ++i) {
        const Occurrence o{p, i};
        const int l = std::abs(c.label_at(o));
        const Occurrence q = c.partner(o);
        const int x = v.voltage[static_cast<std::size_t>(l - 1)];
        const int to_sheet = ((sheet + (c.occurrences(l)[0] == o ? x : -x)) % n + n) % n;
        const int to = to_sheet * F + q.polygon;
        if (comp[static_cast<std::size_t>(to)] < 0) {
          comp[static_cast<std::size_t>(to)] = next;
          stack.push_back(to);
        }
      }
    }
    ++next;
  }
  return comp;
}

}  // namespace detail

/// The n-sheeted cover: the first occurrence of label l in sheet s is glued to
/// the second occurrence in sheet s + v(l). Polygon p of sheet s has index s * F + p.
inline PolygonComplex cyclic_cover(const PolygonComplex& c, const VoltageAssignment& v) {
  detail::require_voltages(c, v);
  const auto cycles = vertex_cycles(c);
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const int net = cycle_voltage(c, cycles[i], v);
    if (net != 0) {
      const Corner at = cycles[i].corners.front();
      throw PreconditionError("voltage condition fails at vertex cycle " + std::to_string(i) + " (corner " +
                              std::to_string(at.polygon) + ":" + std::to_string(at.position) + ", net voltage " +
                              std::to_string(net) + " mod " + std::to_string(v.modulus) + ")");
    }
  }
  const int F = c.polygon_count(), E = c.edge_count(), n = v.modulus;
  const auto comp = detail::sheet_component(c, v);
  if (std::any_of(comp.begin(), comp.end(), [](int x) { return x != 0; })) {
    std::string parts;
    for (int sheet = 0; sheet < n; ++sheet) {
      parts += (sheet ? "," : "") + std::to_string(comp[static_cast<std::size_t>(sheet * F)]);
    }
    throw PreconditionError("disconnected cover: sheet classes [" + parts + "]");
  }
  std::vector<std::vector<int>> polys(static_cast<std::size_t>(F * n));
  for (int sheet = 0; sheet < n; ++sheet) {
    for (int p = 0; p < F; ++p) {
      std::vector<int> out;
      for (int i = 0; i < c.polygon_size(p); ++i) {
        const Occurrence o{p, i};
        const int label = c.label_at(o);
        const int l = std::abs(label);
        const int x = v.voltage[static_cast<std::size_t>(l - 1)];
        // cover edges are named after the sheet of their first occurrence
        const int base_sheet = c.occurrences(l)[0] == o ? sheet : ((sheet - x) % n + n) % n;
        out.push_back((label > 0 ? 1 : -1) * (base_sheet * E + l));
      }
      polys[static_cast<std::size_t>(sheet * F + p)] = std::move(out);
    }
  }
  return PolygonComplex(std::move(polys), c.name().empty() ? "" : c.name() + "~" + std::to_string(n));
}

namespace detail {

/// Depth-first search over voltages in label order with values ascending.
/// Tree labels carry voltage 0; a vertex cycle with a single unknown label
/// of coefficient +-1 fixes that label.
class VoltageSearch {
 public:
  VoltageSearch(const PolygonComplex& c, int n) : c_(c), n_(n) {
    const auto tree = domain_tree(c);
    for (const auto& cyc : vertex_cycles(c)) {
      std::vector<int> coeff(static_cast<std::size_t>(c.edge_count()), 0);
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        const Corner at = cyc.corners[i];
        const int m = c.polygon_size(at.polygon);
        const Occurrence leave{at.polygon, cyc.forward[i] ? at.position : (at.position + m - 1) % m};
        const int l = std::abs(c.label_at(leave));
        coeff[static_cast<std::size_t>(l - 1)] += c.occurrences(l)[0] == leave ? 1 : -1;
      }
      Constraint con;
      for (int l = 0; l < c.edge_count(); ++l) {
        if (coeff[static_cast<std::size_t>(l)] != 0) con.terms.emplace_back(l, coeff[static_cast<std::size_t>(l)]);
      }
      constraints_.push_back(std::move(con));
    }
    initial_.assign(static_cast<std::size_t>(c.edge_count()), -1);
    for (int l : tree) initial_[static_cast<std::size_t>(l - 1)] = 0;
  }

  std::optional<VoltageAssignment> run(std::uint64_t node_cap) {
    node_cap_ = node_cap;
    auto values = initial_;
    if (!propagate(values)) return std::nullopt;
    return dfs(values);
  }

 private:
  struct Constraint {
    std::vector<std::pair<int, int>> terms;  // (label index, coefficient)
  };

  int mod(long long x) const { return static_cast<int>(((x % n_) + n_) % n_); }

  bool propagate(std::vector<int>& values) const {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& con : constraints_) {
        long long known = 0;
        int unknown = -1, unknown_coeff = 0, unknowns = 0;
        for (auto [l, a] : con.terms) {
          if (values[static_cast<std::size_t>(l)] < 0) {
            ++unknowns;
            unknown = l;
            unknown_coeff = a;
          } else {
            known += static_cast<long long>(a) * values[static_cast<std::size_t>(l)];
          }
        }
        if (unknowns == 0) {
          if (mod(known) != 0) return false;
        } else if (unknowns == 1 && (unknown_coeff == 1 || unknown_coeff == -1)) {
          values[static_cast<std::size_t>(unknown)] = mod(-known * unknown_coeff);
          changed = true;
        } else if (unknowns == 1 && std::gcd(std::abs(unknown_coeff), n_) != 1) {
          if (mod(known) % std::gcd(std::abs(unknown_coeff), n_) != 0) return false;
        }
      }
    }
    return true;
  }

  std::optional<VoltageAssignment> dfs(const std::vector<int>& values) {
    if (++nodes_ > node_cap_) throw CapExceeded("voltage search exceeded node cap");
    const auto it = std::find(values.begin(), values.end(), -1);
    if (it == values.end()) {
      VoltageAssignment v{n_, values};
      const auto comp = sheet_component(c_, v);
      if (std::any_of(comp.begin(), comp.end(), [](int x) { return x != 0; })) return std::nullopt;
      if (is_orientable(cyclic_cover(c_, v))) return std::nullopt;
      return v;
    }
    const auto at = static_cast<std::size_t>(it - values.begin());
    for (int x = 0; x < n_; ++x) {
      auto next = values;
      next[at] = x;
      if (!propagate(next)) continue;
      if (auto found = dfs(next)) return found;
    }
    return std::nullopt;
  }

  const PolygonComplex& c_;
  int n_;
  std::vector<Constraint> constraints_;
  std::vector<int> initial_;
  std::uint64_t nodes_ = 0;
  std::uint64_t node_cap_ = 0;
};

}  // namespace detail

/// Least voltage assignment (labels of the canonical form in order, values
/// ascending, tree labels 0) giving a connected non-orientable n-sheeted cover.
inline VoltageAssignment find_voltages(const PolygonComplex& c, int n, std::uint64_t node_cap = 50000000ULL) {
  if (n < 1) throw DomainError("cover degree must be >= 1");
  if (!verify_extremal(c).ok) throw PreconditionError("cyclic covers are built over extremal complexes");
  auto found = detail::VoltageSearch(c, n).run(node_cap);
  if (!found) throw SearchExhausted("no connected non-orientable cyclic cover of degree " + std::to_string(n));
  return *found;
}

inline PolygonComplex find_nonorientable_cyclic_cover(const PolygonComplex& c, int n) {
  const auto base = canonicalize(c);
  return cyclic_cover(base, find_voltages(base, n));
}

/// A complex certified as an extremal k-packing on the genus-g surface:
/// the primitive complex of its cell size, covered n times.
inline PolygonComplex realize_spec(const PackingSpec& spec) {
  const std::int64_t N = cell_size(spec);  // throws InfeasibleError
  const std::int64_t n = line_position(spec);
  auto base = build_primitive(N);
  auto out = n == 1 ? base : find_nonorientable_cyclic_cover(base, static_cast<int>(n));
  const auto report = verify_extremal(out);
  if (!report.ok || report.k != spec.k || report.g != spec.g) {
    throw SearchExhausted("construction did not certify (" + std::to_string(spec.k) + "," + std::to_string(spec.g) + ")");
  }
  out.set_name("K" + std::to_string(spec.k) + "G" + std::to_string(spec.g));
  return out;
}

}  // namespace kpack
