#pragma once

// Closed surfaces presented as polygons with signed edge pairings.
//
// Every polygon boundary is read counterclockwise. A label occurring twice
// with equal signs is an orientation-preserving identification, which glues
// the two directed occurrences anti-aligned (tail to head). Opposite signs
// are orientation-reversing and glue the occurrences aligned (tail to tail).
// Edge i of a polygon runs from its vertex i to vertex i+1; the corner at
// vertex i sits between edge i-1 (incoming) and edge i (outgoing).

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace kpack {

struct Occurrence {
  int polygon = 0;
  int position = 0;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
  friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
};

struct Corner {
  int polygon = 0;
  int position = 0;

  friend bool operator==(const Corner&, const Corner&) = default;
  friend auto operator<=>(const Corner&, const Corner&) = default;
};

/// Orbit of corners around one vertex of the surface, in walking order.
/// forward[i] is true when the walk leaves corners[i] through its outgoing edge.
struct VertexCycle {
  std::vector<Corner> corners;
  std::vector<bool> forward;

  std::size_t size() const { return corners.size(); }
};

class PolygonComplex {
 public:
  PolygonComplex() = default;

  /// Validates pairing and connectivity. Labels are compacted to 1..E keeping
  /// their relative order (so appended labels stay largest); signs are kept.
  explicit PolygonComplex(std::vector<std::vector<int>> polygons, std::string name = {})
      : polygons_(std::move(polygons)), name_(std::move(name)) {
    build_index();
  }

  const std::vector<std::vector<int>>& polygons() const { return polygons_; }
  const std::vector<int>& polygon(int p) const { return polygons_[static_cast<std::size_t>(p)]; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  int polygon_count() const { return static_cast<int>(polygons_.size()); }
  int edge_count() const { return static_cast<int>(occ_.size()); }
  int polygon_size(int p) const { return static_cast<int>(polygon(p).size()); }
  int corner_count() const { return 2 * edge_count(); }

  int label_at(Occurrence o) const { return polygon(o.polygon)[static_cast<std::size_t>(o.position)]; }

  /// The two occurrences of a label, in reading order (polygon, then position).
  const std::array<Occurrence, 2>& occurrences(int label) const {
    return occ_[static_cast<std::size_t>(std::abs(label) - 1)];
  }

  Occurrence partner(Occurrence o) const {
    const auto& pair = occurrences(label_at(o));
    return pair[0] == o ? pair[1] : pair[0];
  }

  /// Equal signs: orientation-preserving pairing.
  bool preserving(int label) const {
    const auto& pair = occurrences(label);
    return (label_at(pair[0]) > 0) == (label_at(pair[1]) > 0);
  }

  friend bool operator==(const PolygonComplex& a, const PolygonComplex& b) { return a.polygons_ == b.polygons_; }

 private:
  void build_index() {
    if (polygons_.empty()) throw ComplexError("complex has no polygons");
    std::map<int, std::vector<Occurrence>> seen;
    for (int p = 0; p < polygon_count(); ++p) {
      if (polygons_[static_cast<std::size_t>(p)].empty()) throw ComplexError("empty polygon " + std::to_string(p));
      for (int i = 0; i < polygon_size(p); ++i) {
        const int label = polygons_[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)];
        if (label == 0) throw ComplexError("ZeroLabel in polygon " + std::to_string(p));
        seen[std::abs(label)].push_back({p, i});
      }
    }
    for (const auto& [label, where] : seen) {
      if (where.size() == 1) throw ComplexError("UnpairedLabel(" + std::to_string(label) + ")");
      if (where.size() > 2) throw ComplexError("DuplicateLabel(" + std::to_string(label) + ")");
    }
    std::map<int, int> compact;
    for (const auto& [label, where] : seen) compact.emplace(label, static_cast<int>(compact.size()) + 1);
    occ_.assign(seen.size(), {});
    for (const auto& [label, where] : seen) {
      occ_[static_cast<std::size_t>(compact[label] - 1)] = {where[0], where[1]};
    }
    for (auto& poly : polygons_) {
      for (int& label : poly) label = label > 0 ? compact[label] : -compact[-label];
    }
    // connectivity over shared labels
    std::vector<int> parent(polygons_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) {
        parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        x = parent[static_cast<std::size_t>(x)];
      }
      return x;
    };
    int components = polygon_count();
    for (const auto& pair : occ_) {
      const int a = find(pair[0].polygon), b = find(pair[1].polygon);
      if (a != b) {
        parent[static_cast<std::size_t>(a)] = b;
        --components;
      }
    }
    if (components != 1) throw ComplexError("Disconnected complex (" + std::to_string(components) + " components)");
  }

  std::vector<std::vector<int>> polygons_;
  std::string name_;
  std::vector<std::array<Occurrence, 2>> occ_;
};

// ---------------------------------------------------------------------------
// vertex cycles

/// Follow the gluing from a corner. Returns the next corner and walking direction.
inline std::pair<Corner, bool> next_corner(const PolygonComplex& c, Corner at, bool forward) {
  const int n = c.polygon_size(at.polygon);
  const Occurrence leave{at.polygon, forward ? at.position : (at.position + n - 1) % n};
  const Occurrence arrive = c.partner(leave);
  const bool keep = c.preserving(c.label_at(leave));
  const int m = c.polygon_size(arrive.polygon);
  // preserving: tail meets head; reversing: tail meets tail (and head meets head)
  const bool at_head = forward == keep;
  const int vertex = at_head ? (arrive.position + 1) % m : arrive.position;
  return {{arrive.polygon, vertex}, keep ? forward : !forward};
}

/// The orbits of polygon corners under the gluing, ordered by their least corner.
inline std::vector<VertexCycle> vertex_cycles(const PolygonComplex& c) {
  std::vector<std::vector<bool>> visited(static_cast<std::size_t>(c.polygon_count()));
  for (int p = 0; p < c.polygon_count(); ++p) visited[static_cast<std::size_t>(p)].assign(c.polygon(p).size(), false);
  std::vector<VertexCycle> cycles;
  for (int p = 0; p < c.polygon_count(); ++p) {
    for (int v = 0; v < c.polygon_size(p); ++v) {
      if (visited[static_cast<std::size_t>(p)][static_cast<std::size_t>(v)]) continue;
      VertexCycle cycle;
      Corner at{p, v};
      bool forward = true;
      do {
        visited[static_cast<std::size_t>(at.polygon)][static_cast<std::size_t>(at.position)] = true;
        cycle.corners.push_back(at);
        cycle.forward.push_back(forward);
        std::tie(at, forward) = next_corner(c, at, forward);
      } while (!(at == Corner{p, v}));
      if (!forward) throw ComplexError("inconsistent vertex link at corner (" + std::to_string(p) + "," + std::to_string(v) + ")");
      cycles.push_back(std::move(cycle));
    }
  }
  return cycles;
}

// ---------------------------------------------------------------------------
// invariants

struct SurfaceInvariants {
  int V = 0;
  int E = 0;
  int F = 0;
  int euler_characteristic = 0;
  bool orientable = false;
  int genus = 0;  // non-orientable genus when !orientable
};

/// Two-sheet test: polygons x {+,-}, joined sheet-preserving across equal-sign
/// pairs and sheet-swapping across opposite-sign pairs. Orientable iff two components.
inline bool is_orientable(const PolygonComplex& c) {
  const int F = c.polygon_count();
  std::vector<int> sheet(static_cast<std::size_t>(F), 0);  // 0 unknown, +1/-1
  std::vector<int> stack{0};
  sheet[0] = 1;
  while (!stack.empty()) {
    const int p = stack.back();
    stack.pop_back();
    for (int i = 0; i < c.polygon_size(p); ++i) {
      const Occurrence o{p, i};
      const Occurrence q = c.partner(o);
      const int want = c.preserving(c.label_at(o)) ? sheet[static_cast<std::size_t>(p)] : -sheet[static_cast<std::size_t>(p)];
      int& have = sheet[static_cast<std::size_t>(q.polygon)];
      if (have == 0) {
        have = want;
        stack.push_back(q.polygon);
      } else if (have != want) {
        return false;
      }
    }
  }
  return true;
}

inline SurfaceInvariants invariants(const PolygonComplex& c) {
  SurfaceInvariants s;
  s.V = static_cast<int>(vertex_cycles(c).size());
  s.E = c.edge_count();
  s.F = c.polygon_count();
  s.euler_characteristic = s.V - s.E + s.F;
  s.orientable = is_orientable(c);
  s.genus = s.orientable ? (2 - s.euler_characteristic) / 2 : 2 - s.euler_characteristic;
  return s;
}

// ---------------------------------------------------------------------------
// extremality certificate

enum class FailureKind { NonUniformPolygon, CellTooSmall, NotTrivalent, Orientable, Disconnected, UnpairedLabel };

inline const char* to_string(FailureKind k) {
  switch (k) {
    case FailureKind::NonUniformPolygon: return "NonUniformPolygon";
    case FailureKind::CellTooSmall: return "CellTooSmall";
    case FailureKind::NotTrivalent: return "NotTrivalent";
    case FailureKind::Orientable: return "Orientable";
    case FailureKind::Disconnected: return "Disconnected";
    case FailureKind::UnpairedLabel: return "UnpairedLabel";
  }
  return "?";
}

struct Failure {
  FailureKind kind;
  std::string detail;
};

struct ExtremalityReport {
  bool ok = false;
  int k = 0;
  int g = 0;
  int N = 0;
  int chi = 0;
  bool orientable = false;
  std::vector<Failure> failures;

  bool has(FailureKind kind) const {
    return std::any_of(failures.begin(), failures.end(), [&](const Failure& f) { return f.kind == kind; });
  }
};

/// Uniform N-gons with N >= 7, every vertex cycle of length 3, non-orientable.
inline ExtremalityReport verify_extremal(const PolygonComplex& c) {
  ExtremalityReport r;
  const auto cycles = vertex_cycles(c);
  r.k = c.polygon_count();
  r.chi = static_cast<int>(cycles.size()) - c.edge_count() + c.polygon_count();
  r.orientable = is_orientable(c);
  r.g = r.orientable ? (2 - r.chi) / 2 : 2 - r.chi;

  const int N = c.polygon_size(0);
  for (int p = 1; p < c.polygon_count(); ++p) {
    if (c.polygon_size(p) != N) {
      r.failures.push_back({FailureKind::NonUniformPolygon, "polygon " + std::to_string(p) + " has " +
                                                                std::to_string(c.polygon_size(p)) + " sides, polygon 0 has " +
                                                                std::to_string(N)});
      break;
    }
  }
  if (N < 7) r.failures.push_back({FailureKind::CellTooSmall, std::to_string(N) + "-gons (need N >= 7)"});
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    if (cycles[i].size() != 3) {
      const Corner& first = cycles[i].corners.front();
      r.failures.push_back({FailureKind::NotTrivalent, "cycle " + std::to_string(i) + " at corner (" +
                                                           std::to_string(first.polygon) + "," + std::to_string(first.position) +
                                                           ") has length " + std::to_string(cycles[i].size())});
    }
  }
  if (r.orientable) r.failures.push_back({FailureKind::Orientable, "surface is orientable"});
  r.ok = r.failures.empty();
  if (r.ok) {
    r.N = N;
  } else {
    r.N = r.has(FailureKind::NonUniformPolygon) ? 0 : N;
  }
  return r;
}

// ---------------------------------------------------------------------------
// canonical form
//
// For every start (polygon, rotation, direction) the complex is read by a
// deterministic traversal: polygons are appended in the order their labels are
// first reached, each new polygon rotated so the reaching edge comes first and
// directed so that edge is glued orientation-preservingly. Labels are renumbered
// by first occurrence (first occurrence positive). The lexicographically least
// reading is the canonical form; it depends only on the combinatorial surface.

namespace detail {

struct Reading {
  std::vector<std::vector<int>> polygons;
  std::vector<int> key;
};

inline Reading read_from(const PolygonComplex& c, int start, int rot, int dir) {
  const int F = c.polygon_count();
  std::vector<int> direction(static_cast<std::size_t>(F), 0), first(static_cast<std::size_t>(F), 0);
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(F));
  direction[static_cast<std::size_t>(start)] = dir;
  first[static_cast<std::size_t>(start)] = rot;
  order.push_back(start);

  // original occurrence read at position i of a placed polygon
  auto original = [&](int p, int i) {
    const int n = c.polygon_size(p);
    const int d = direction[static_cast<std::size_t>(p)];
    const int s = first[static_cast<std::size_t>(p)];
    return Occurrence{p, d > 0 ? (s + i) % n : ((s - i) % n + n) % n};
  };

  for (std::size_t idx = 0; idx < order.size(); ++idx) {
    const int p = order[idx];
    for (int i = 0; i < c.polygon_size(p); ++i) {
      const Occurrence o = original(p, i);
      const Occurrence q = c.partner(o);
      if (direction[static_cast<std::size_t>(q.polygon)] != 0) continue;
      const int type = c.preserving(c.label_at(o)) ? 1 : -1;
      direction[static_cast<std::size_t>(q.polygon)] = type * direction[static_cast<std::size_t>(p)];
      first[static_cast<std::size_t>(q.polygon)] = q.position;
      order.push_back(q.polygon);
    }
  }

  Reading out;
  std::vector<int> renamed(static_cast<std::size_t>(c.edge_count() + 1), 0);
  int next = 0;
  for (const int p : order) {
    std::vector<int> poly;
    poly.reserve(c.polygon(p).size());
    out.key.push_back(c.polygon_size(p));
    for (int i = 0; i < c.polygon_size(p); ++i) {
      const Occurrence o = original(p, i);
      const int label = std::abs(c.label_at(o));
      int& id = renamed[static_cast<std::size_t>(label)];
      int value = 0;
      if (id == 0) {
        id = ++next;
        value = id;
      } else {
        const Occurrence q = c.partner(o);
        const int type = (c.preserving(label) ? 1 : -1) * direction[static_cast<std::size_t>(p)] *
                         direction[static_cast<std::size_t>(q.polygon)];
        value = type > 0 ? id : -id;
      }
      poly.push_back(value);
      out.key.push_back(value);
    }
    out.polygons.push_back(std::move(poly));
  }
  return out;
}

}  // namespace detail

inline PolygonComplex canonicalize(const PolygonComplex& c) {
  std::optional<detail::Reading> best;
  for (int p = 0; p < c.polygon_count(); ++p) {
    for (int r = 0; r < c.polygon_size(p); ++r) {
      for (const int dir : {1, -1}) {
        auto reading = detail::read_from(c, p, r, dir);
        if (!best || reading.key < best->key) best = std::move(reading);
      }
    }
  }
  return PolygonComplex(std::move(best->polygons), c.name());
}

inline bool is_canonical(const PolygonComplex& c) { return canonicalize(c) == c; }

// ---------------------------------------------------------------------------
// text format

inline constexpr const char* kComplexFormatHeader = "# kpack complex v1";

/// Canonical serialization.
inline std::string serialize(const PolygonComplex& c) {
  const PolygonComplex canon = canonicalize(c);
  std::ostringstream out;
  out << kComplexFormatHeader << '\n';
  if (!canon.name().empty()) out << "name " << canon.name() << '\n';
  for (const auto& poly : canon.polygons()) {
    out << "polygon";
    for (const int label : poly) out << ' ' << label;
    out << '\n';
  }
  return out.str();
}

/// Parses the complex file format; the result is in canonical form.
inline PolygonComplex parse(const std::string& text) {
  std::vector<std::vector<int>> polygons;
  std::string name;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t pos = line.find_first_not_of(" \t");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::size_t end = line.find_first_of(" \t", pos);
    const std::string keyword = line.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    if (keyword == "name") {
      const std::size_t value = end == std::string::npos ? std::string::npos : line.find_first_not_of(" \t", end);
      if (value == std::string::npos) throw ParseError("missing name", line_no, static_cast<int>(pos) + 1);
      name = line.substr(value);
      while (!name.empty() && (name.back() == ' ' || name.back() == '\t')) name.pop_back();
      continue;
    }
    if (keyword != "polygon") {
      throw ParseError("unknown keyword '" + keyword + "'", line_no, static_cast<int>(pos) + 1);
    }
    std::vector<int> poly;
    pos = end;
    while (pos != std::string::npos) {
      pos = line.find_first_not_of(" \t", pos);
      if (pos == std::string::npos) break;
      end = line.find_first_of(" \t", pos);
      const std::string token = line.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
      char* stop = nullptr;
      const long value = std::strtol(token.c_str(), &stop, 10);
      if (token.empty() || *stop != '\0' || value > 1000000000L || value < -1000000000L) {
        throw ParseError("expected signed integer, got '" + token + "'", line_no, static_cast<int>(pos) + 1);
      }
      if (value == 0) throw ParseError("ZeroLabel", line_no, static_cast<int>(pos) + 1);
      poly.push_back(static_cast<int>(value));
      pos = end;
    }
    if (poly.empty()) throw ParseError("polygon without labels", line_no, static_cast<int>(line.size()) + 1);
    polygons.push_back(std::move(poly));
  }
  if (polygons.empty()) throw ParseError("no polygon lines", line_no + 1, 1);
  return canonicalize(PolygonComplex(std::move(polygons), std::move(name)));
}

// ---------------------------------------------------------------------------
// exhaustive single-polygon enumeration

/// Calls fn(labels) for every signed pairing of the sides of one n-gon:
/// (n-1)!! perfect matchings times 2^(n/2) relative signs. Labels are numbered
/// by first occurrence and each first occurrence is positive.
template <class Fn>
void for_each_signed_pairing(int n, Fn&& fn) {
  if (n <= 0 || n % 2 != 0) throw DomainError("a single polygon needs an even positive side count");
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  int next = 1;
  auto rec = [&](auto&& self) -> void {
    const auto first = std::find(labels.begin(), labels.end(), 0);
    if (first == labels.end()) {
      fn(static_cast<const std::vector<int>&>(labels));
      return;
    }
    const int label = next++;
    *first = label;
    for (auto it = first + 1; it != labels.end(); ++it) {
      if (*it != 0) continue;
      for (const int sign : {1, -1}) {
        *it = sign * label;
        self(self);
      }
      *it = 0;
    }
    *first = 0;
    --next;
  };
  rec(rec);
}

struct SinglePolygonSearch {
  long long examined = 0;
  long long certified = 0;                 // hits before removing isomorphic duplicates
  std::vector<PolygonComplex> hits;        // distinct canonical forms, sorted
};

/// All signed pairings of one n-gon that pass verify_extremal.
inline SinglePolygonSearch exhaustive_single_polygon(int n) {
  SinglePolygonSearch out;
  std::set<std::vector<std::vector<int>>> seen;
  for_each_signed_pairing(n, [&](const std::vector<int>& labels) {
    ++out.examined;
    const PolygonComplex c({labels});
    if (!verify_extremal(c).ok) return;
    ++out.certified;
    auto canon = canonicalize(c);
    if (seen.insert(canon.polygons()).second) out.hits.push_back(std::move(canon));
  });
  std::sort(out.hits.begin(), out.hits.end(),
            [](const PolygonComplex& a, const PolygonComplex& b) { return a.polygons() < b.polygons(); });
  return out;
}

}  // namespace kpack
