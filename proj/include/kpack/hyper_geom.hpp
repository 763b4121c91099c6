#pragma once

// Numeric hyperbolic geometry in the Poincare unit disk: regular N-gons with
// interior angle 2pi/3, layouts of extremal complexes as unions of such
// polygons with their side-pairing isometries, holonomy checks and SVG output.
//
// Isometries are Moebius maps z -> (a z + b) / (c z + d) with complex
// entries normalised to determinant 1, optionally preceded by complex
// conjugation (orientation-reversing maps).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"
#include "grafting.hpp"

namespace kpack {

using Point = std::complex<double>;

inline constexpr double kGeometryTolerance = 1e-9;
inline constexpr double kIdentityTolerance = 1e-12;

struct Isometry {
  // a, b, c, d
  std::array<Point, 4> m = {Point(1), Point(0), Point(0), Point(1)};
  bool reversing = false;

  Point operator()(Point z) const {
    if (reversing) z = std::conj(z);
    return (m[0] * z + m[1]) / (m[2] * z + m[3]);
  }

  Point det() const { return m[0] * m[3] - m[1] * m[2]; }

  /// Scale to determinant 1 (the map is unchanged).
  Isometry normalized() const {
    Isometry out = *this;
    const Point s = std::sqrt(det());
    for (auto& x : out.m) x /= s;
    return out;
  }

  /// this o other
  Isometry compose(const Isometry& other) const {
    std::array<Point, 4> b = other.m;
    if (reversing) {
      for (auto& x : b) x = std::conj(x);
    }
    Isometry out;
    out.m = {m[0] * b[0] + m[1] * b[2], m[0] * b[1] + m[1] * b[3], m[2] * b[0] + m[3] * b[2], m[2] * b[1] + m[3] * b[3]};
    out.reversing = reversing != other.reversing;
    return out.normalized();
  }

  Isometry inverse() const {
    Isometry out;
    const Point d = det();
    out.m = {m[3] / d, -m[1] / d, -m[2] / d, m[0] / d};
    if (reversing) {
      for (auto& x : out.m) x = std::conj(x);
    }
    out.reversing = reversing;
    return out.normalized();
  }

  /// Distance between the matrices of two maps, up to the sign ambiguity of SL(2).
  double distance(const Isometry& o) const {
    if (reversing != o.reversing) return 1e300;
    const Isometry a = normalized(), b = o.normalized();
    double plus = 0, minus = 0;
    for (int i = 0; i < 4; ++i) {
      plus = std::max(plus, std::abs(a.m[static_cast<std::size_t>(i)] - b.m[static_cast<std::size_t>(i)]));
      minus = std::max(minus, std::abs(a.m[static_cast<std::size_t>(i)] + b.m[static_cast<std::size_t>(i)]));
    }
    return std::min(plus, minus);
  }
};

/// z -> e^{i theta} z
inline Isometry rotation(double theta) {
  Isometry r;
  r.m = {std::polar(1.0, theta / 2), Point(0), Point(0), std::polar(1.0, -theta / 2)};
  return r;
}

/// The hyperbolic translation along the diameter through p taking 0 to p.
inline Isometry translation_to(Point p) {
  if (std::abs(p) >= 1) throw DomainError("point must lie in the open unit disk");
  Isometry t;
  t.m = {Point(1), p, std::conj(p), Point(1)};
  return t.normalized();
}

/// Reflection in the diameter at angle theta: z -> e^{2 i theta} conj(z).
inline Isometry reflection_through_origin(double theta) {
  Isometry r = rotation(2 * theta);
  r.reversing = true;
  return r;
}

/// The elliptic involution (rotation by pi) fixing p.
inline Isometry rotation_pi_about(Point p) {
  const Isometry t = translation_to(p);
  Isometry half;
  half.m = {Point(0, 1), Point(0), Point(0), Point(0, -1)};
  return t.compose(half).compose(t.inverse());
}

/// Angle at vertex v between the geodesics towards a and b.
inline double geodesic_angle(Point v, Point a, Point b) {
  const Isometry to_origin = translation_to(v).inverse();
  double d = std::abs(std::arg(to_origin(a)) - std::arg(to_origin(b)));
  if (d > std::numbers::pi) d = 2 * std::numbers::pi - d;
  return d;
}

/// Hyperbolic distance in the disk.
inline double disk_distance(Point a, Point b) {
  return 2 * std::atanh(std::abs((a - b) / (Point(1) - std::conj(a) * b)));
}

/// Area of a geodesic polygon by triangulating from an interior point (Gauss-Bonnet per triangle).
inline double polygon_area(const std::vector<Point>& vertices, Point center) {
  double area = 0;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = vertices[i], b = vertices[(i + 1) % n];
    area += std::numbers::pi - geodesic_angle(center, a, b) - geodesic_angle(a, center, b) - geodesic_angle(b, a, center);
  }
  return area;
}

// ---------------------------------------------------------------------------
// regular polygons

struct NgonGeometry {
  int N = 7;
  double interior_angle = 2 * std::numbers::pi / 3;
  double inradius = 0;
  double circumradius = 0;
  double side_length = 0;
  double area = 0;  // pi (N - 6) / 3
  std::vector<Point> vertices;
};

/// Regular N-gon with all angles 2pi/3, centred at 0, vertex 0 on the positive real axis.
inline NgonGeometry regular_ngon(int N) {
  if (N < 7) throw DomainError("regular N-gons with angle 2pi/3 need N >= 7 (got " + std::to_string(N) + ")");
  const double pi = std::numbers::pi;
  NgonGeometry g;
  g.N = N;
  // right triangle centre / vertex / side midpoint with angles pi/N, pi/3, pi/2
  g.inradius = std::acosh(1.0 / (2.0 * std::sin(pi / N)));
  g.circumradius = std::acosh(1.0 / (std::tan(pi / N) * std::tan(pi / 3)));
  g.side_length = 2 * std::acosh(std::cos(pi / N) / std::sin(pi / 3));
  g.area = pi * (N - 6) / 3.0;
  const double R = std::tanh(g.circumradius / 2);
  for (int j = 0; j < N; ++j) g.vertices.push_back(std::polar(R, 2 * pi * j / N));
  return g;
}

/// The angle alpha in (0, pi/3] of the equilateral triangle with side 2r:
/// cosh r = 1 / (2 sin(alpha / 2)), solved by bisection.
inline double equilateral_angle(double r) {
  if (!(r >= 0)) throw DomainError("r must be >= 0");
  const double target = std::cosh(r);
  double lo = 0, hi = std::numbers::pi / 3;
  // f(alpha) = 1 / (2 sin(alpha/2)) decreases from +inf to 1 on (0, pi/3]
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (1.0 / (2.0 * std::sin(mid / 2)) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// |LHS - RHS| of 2pi(cosh r - 1)/A <= 3 alpha (cosh r - 1)/(pi - 3 alpha) at
/// r = inradius(N), alpha = 2pi/N, A = pi(N - 6)/3, where equality holds.
inline double boroczky_residual(int N) {
  const auto g = regular_ngon(N);
  const double pi = std::numbers::pi;
  const double c = std::cosh(g.inradius);
  const double alpha = 2 * pi / N;
  const double lhs = 2 * pi * (c - 1) / g.area;
  const double rhs = 3 * alpha * (c - 1) / (pi - 3 * alpha);
  return std::abs(lhs - rhs);
}

// ---------------------------------------------------------------------------
// layouts

namespace detail {

/// Isometries of the standard polygon used to glue neighbours.
struct StandardMoves {
  int N;
  NgonGeometry geom;

  explicit StandardMoves(int n) : N(n), geom(regular_ngon(n)) {}

  double side_angle(int i) const { return std::numbers::pi * (2 * i + 1) / N; }

  /// rotation taking vertex t to vertex t + s
  Isometry rotate(int s) const { return rotation(2 * std::numbers::pi * s / N); }

  /// reflection in the geodesic carrying side i
  Isometry side_reflection(int i) const {
    const Isometry t = translation_to(Point(std::tanh(geom.inradius / 2), 0));
    Isometry mirror = reflection_through_origin(std::numbers::pi / 2);  // z -> -conj z
    const Isometry rot = rotation(side_angle(i));
    return rot.compose(t).compose(mirror).compose(t.inverse()).compose(rot.inverse());
  }

  /// reflection fixing the polygon and swapping the ends of side i
  Isometry side_flip(int i) const { return reflection_through_origin(side_angle(i)); }

  /// Takes side j of a copy onto side i of the standard polygon, the copy
  /// landing on the far side: preserving pairs match tail to head.
  Isometry glue(int i, int j, bool preserving) const {
    const Isometry base = side_reflection(i);
    const Isometry shift = rotate(i - j);
    return preserving ? base.compose(side_flip(i)).compose(shift) : base.compose(shift);
  }

  Point side_midpoint(int i) const { return std::polar(std::tanh(geom.inradius / 2), side_angle(i)); }
};

}  // namespace detail

struct DiskLayout {
  PolygonComplex complex;
  int N = 0;
  std::set<int> tree;                            // shared interior edges
  std::vector<Isometry> placement;               // standard polygon -> polygon p
  std::vector<std::vector<Point>> vertices;      // per polygon, in listing order
  std::vector<Point> centers;
  /// pairing[l - 1] carries the polygon of the second occurrence of l onto the
  /// neighbour of the first occurrence across that side (identity on tree edges).
  std::vector<Isometry> pairing;
  double edge_residual = 0;
};

/// Accepts uniform trivalent complexes of N-gons (N >= 7), orientable or not.
/// Place polygon 0 at the origin and the others across the tree edges, then
/// compute the side pairing of every label.
inline DiskLayout realize(const PolygonComplex& c) {
  // orientable complexes (double covers) tile the disk just as well
  const auto report = verify_extremal(c);
  for (const auto& f : report.failures) {
    if (f.kind != FailureKind::Orientable) {
      throw PreconditionError("realize needs a uniform trivalent complex of N-gons, N >= 7: " + f.detail);
    }
  }
  DiskLayout L{c, report.N, domain_tree(c), {}, {}, {}, {}, 0};
  const detail::StandardMoves std_moves(L.N);
  const int F = c.polygon_count();
  std::vector<bool> placed(static_cast<std::size_t>(F), false);
  L.placement.resize(static_cast<std::size_t>(F));
  placed[0] = true;
  std::vector<int> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int p = queue[qi];
    for (int i = 0; i < c.polygon_size(p); ++i) {
      const Occurrence o{p, i};
      const int l = std::abs(c.label_at(o));
      if (!L.tree.count(l)) continue;
      const Occurrence q = c.partner(o);
      if (placed[static_cast<std::size_t>(q.polygon)]) continue;
      L.placement[static_cast<std::size_t>(q.polygon)] =
          L.placement[static_cast<std::size_t>(p)].compose(std_moves.glue(i, q.position, c.preserving(l)));
      placed[static_cast<std::size_t>(q.polygon)] = true;
      queue.push_back(q.polygon);
    }
  }
  for (int p = 0; p < F; ++p) {
    std::vector<Point> vs;
    for (const auto& v : std_moves.geom.vertices) vs.push_back(L.placement[static_cast<std::size_t>(p)](v));
    L.vertices.push_back(std::move(vs));
    L.centers.push_back(L.placement[static_cast<std::size_t>(p)](Point(0)));
  }
  for (int l = 1; l <= c.edge_count(); ++l) {
    const auto& occ = c.occurrences(l);
    const auto A = occ[0], B = occ[1];
    const bool keep = c.preserving(l);
    const Isometry g = L.placement[static_cast<std::size_t>(A.polygon)]
                           .compose(std_moves.glue(A.position, B.position, keep))
                           .compose(L.placement[static_cast<std::size_t>(B.polygon)].inverse());
    L.pairing.push_back(g);
    // endpoint matching and opposite interiors
    const int n = L.N;
    const auto& va = L.vertices[static_cast<std::size_t>(A.polygon)];
    const auto& vb = L.vertices[static_cast<std::size_t>(B.polygon)];
    const Point a0 = va[static_cast<std::size_t>(A.position)], a1 = va[static_cast<std::size_t>((A.position + 1) % n)];
    const Point b0 = g(vb[static_cast<std::size_t>(B.position)]), b1 = g(vb[static_cast<std::size_t>((B.position + 1) % n)]);
    double res = keep ? std::max(std::abs(b0 - a1), std::abs(b1 - a0)) : std::max(std::abs(b0 - a0), std::abs(b1 - a1));
    const Point far = L.placement[static_cast<std::size_t>(A.polygon)](std_moves.side_reflection(A.position)(Point(0)));
    res = std::max(res, std::abs(g(L.centers[static_cast<std::size_t>(B.polygon)]) - far));
    res = std::max(res, std::abs(std::abs(g.det()) - 1.0));
    L.edge_residual = std::max(L.edge_residual, res);
  }
  if (L.edge_residual > kGeometryTolerance) {
    throw NumericError("edge matching residual " + std::to_string(L.edge_residual) + " exceeds tolerance");
  }
  for (int p = 0; p < F; ++p) {
    for (int q = p + 1; q < F; ++q) {
      if (disk_distance(L.centers[static_cast<std::size_t>(p)], L.centers[static_cast<std::size_t>(q)]) < 1e-6) {
        throw NumericError("two polygons were placed on the same tile");
      }
    }
  }
  return L;
}

/// Carries the polygon across side o onto its neighbour: the pairing or its inverse.
inline Isometry crossing(const DiskLayout& L, Occurrence o) {
  const int l = std::abs(L.complex.label_at(o));
  const Isometry& g = L.pairing[static_cast<std::size_t>(l - 1)];
  return L.complex.occurrences(l)[0] == o ? g : g.inverse();
}

struct HolonomyReport {
  double max_residual = 0;      // displacement of the corner point
  double max_map_residual = 0;  // displacement of the polygon centre (full map check)
  double max_angle_error = 0;   // |corner angle - 2pi/3|
};

/// Compose the crossings around every vertex cycle; the result must fix the corner.
inline HolonomyReport holonomy_check(const DiskLayout& L) {
  HolonomyReport rep;
  const auto& c = L.complex;
  for (const auto& cyc : vertex_cycles(c)) {
    Isometry h;
    for (std::size_t t = 0; t < cyc.size(); ++t) {
      const Corner at = cyc.corners[t];
      const int n = c.polygon_size(at.polygon);
      const Occurrence leave{at.polygon, cyc.forward[t] ? at.position : (at.position + n - 1) % n};
      h = h.compose(crossing(L, leave));
    }
    const Corner c0 = cyc.corners.front();
    const Point x = L.vertices[static_cast<std::size_t>(c0.polygon)][static_cast<std::size_t>(c0.position)];
    const Point ctr = L.centers[static_cast<std::size_t>(c0.polygon)];
    rep.max_residual = std::max(rep.max_residual, std::abs(h(x) - x));
    rep.max_map_residual = std::max(rep.max_map_residual, std::abs(h(ctr) - ctr));
  }
  for (const auto& vs : L.vertices) {
    const std::size_t n = vs.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double a = geodesic_angle(vs[i], vs[(i + n - 1) % n], vs[(i + 1) % n]);
      rep.max_angle_error = std::max(rep.max_angle_error, std::abs(a - 2 * std::numbers::pi / 3));
    }
  }
  return rep;
}

/// Pairing isometries of every non-tree label (generators of the surface group).
inline std::vector<Isometry> pairing_generators(const DiskLayout& L) {
  std::vector<Isometry> out;
  for (int l = 1; l <= L.complex.edge_count(); ++l) {
    if (!L.tree.count(l)) out.push_back(L.pairing[static_cast<std::size_t>(l - 1)]);
  }
  return out;
}

enum class NormalizerVerdict { Normalizes, Inconclusive };

inline const char* to_string(NormalizerVerdict v) {
  return v == NormalizerVerdict::Normalizes ? "normalizes" : "inconclusive";
}

/// Best-effort test that t g t^-1 lies in the group generated by gens for
/// every g, searching words of length <= max_length. Never answers "no".
inline NormalizerVerdict normalizes(const std::vector<Isometry>& gens, const Isometry& t, double tol = kGeometryTolerance,
                                    int max_length = 4) {
  std::vector<Isometry> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(g.inverse());
  }
  std::vector<Isometry> words{Isometry{}}, frontier{Isometry{}};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<Isometry> next;
    for (const auto& w : frontier) {
      for (const auto& a : letters) next.push_back(w.compose(a));
    }
    words.insert(words.end(), next.begin(), next.end());
    frontier = std::move(next);
    if (words.size() > 2000000) break;
  }
  const Isometry ti = t.inverse();
  for (const auto& g : gens) {
    const Isometry conj = t.compose(g).compose(ti);
    const bool found = std::any_of(words.begin(), words.end(), [&](const Isometry& w) { return w.distance(conj) < tol; });
    if (!found) return NormalizerVerdict::Inconclusive;
  }
  return NormalizerVerdict::Normalizes;
}

// ---------------------------------------------------------------------------
// SVG

namespace detail {

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", std::abs(x) < 5e-7 ? 0.0 : x);
  return buf;
}

/// SVG path command drawing the geodesic from a to b (y axis flipped).
inline std::string geodesic_path(Point a, Point b, bool move = true) {
  std::string out = move ? "M " + fmt(a.real()) + " " + fmt(-a.imag()) + " " : "";
  const double cross = a.real() * b.imag() - a.imag() * b.real();
  if (std::abs(cross) < 1e-12) return out + "L " + fmt(b.real()) + " " + fmt(-b.imag());
  // circle through a, b and the inversion of a in the unit circle
  const Point pa = std::abs(a) > 1e-12 ? a : b;
  const Point inv = Point(1) / std::conj(pa);
  const Point p1 = a, p2 = b, p3 = inv;
  const double d = 2 * (p1.real() * (p2.imag() - p3.imag()) + p2.real() * (p3.imag() - p1.imag()) + p3.real() * (p1.imag() - p2.imag()));
  const double ux = (std::norm(p1) * (p2.imag() - p3.imag()) + std::norm(p2) * (p3.imag() - p1.imag()) + std::norm(p3) * (p1.imag() - p2.imag())) / d;
  const double uy = (std::norm(p1) * (p3.real() - p2.real()) + std::norm(p2) * (p1.real() - p3.real()) + std::norm(p3) * (p2.real() - p1.real())) / d;
  const double radius = std::abs(a - Point(ux, uy));
  // with y flipped, counter-clockwise turns in the disk become clockwise on screen
  const int sweep = cross > 0 ? 0 : 1;
  return out + "A " + fmt(radius) + " " + fmt(radius) + " 0 0 " + std::to_string(sweep) + " " + fmt(b.real()) + " " +
         fmt(-b.imag());
}

}  // namespace detail

/// Unit circle, polygons, one arc per drawn edge (shared interior edges once)
/// and a signed label on every side.
inline std::string render_svg(const DiskLayout& L) {
  const auto& c = L.complex;
  const detail::StandardMoves std_moves(L.N);
  std::string svg =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"-1.05 -1.05 2.1 2.1\" width=\"800\" "
      "height=\"800\">\n"
      "<circle class=\"boundary\" cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" stroke-width=\"0.004\"/>\n";
  for (int p = 0; p < c.polygon_count(); ++p) {
    const auto& vs = L.vertices[static_cast<std::size_t>(p)];
    std::string d;
    for (std::size_t i = 0; i < vs.size(); ++i) d += detail::geodesic_path(vs[i], vs[(i + 1) % vs.size()], i == 0) + " ";
    svg += "<path class=\"cell\" d=\"" + d + "Z\" fill=\"#dde8f5\" stroke=\"none\"/>\n";
  }
  std::set<int> drawn_tree;
  for (int p = 0; p < c.polygon_count(); ++p) {
    const auto& vs = L.vertices[static_cast<std::size_t>(p)];
    for (int i = 0; i < c.polygon_size(p); ++i) {
      const int l = std::abs(c.label_at({p, i}));
      if (L.tree.count(l) && !drawn_tree.insert(l).second) continue;
      svg += "<path class=\"edge\" d=\"" +
             detail::geodesic_path(vs[static_cast<std::size_t>(i)], vs[static_cast<std::size_t>((i + 1) % L.N)]) +
             "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.003\"/>\n";
    }
  }
  for (int p = 0; p < c.polygon_count(); ++p) {
    const Isometry& T = L.placement[static_cast<std::size_t>(p)];
    for (int i = 0; i < c.polygon_size(p); ++i) {
      const int label = c.label_at({p, i});
      if (L.tree.count(std::abs(label))) continue;
      const Point at = T(std_moves.side_midpoint(i) * 0.9);
      svg += "<text class=\"label\" x=\"" + detail::fmt(at.real()) + "\" y=\"" + detail::fmt(-at.imag()) +
             "\" font-size=\"0.035\" text-anchor=\"middle\" dominant-baseline=\"middle\">" + std::to_string(label) +
             "</text>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace kpack
