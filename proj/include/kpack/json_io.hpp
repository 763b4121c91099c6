#pragma once

// JSON encodings of reports, subgroup records and disk layouts.
//
// Every document carries a "format" string with a version number. Doubles
// are written in shortest round-trip form, so reading a layout back gives
// bit-identical coordinates.

#include <json.hpp>  // vendored nlohmann::json

#include <string>

#include "complex.hpp"
#include "errors.hpp"
#include "feasibility.hpp"
#include "hyper_geom.hpp"
#include "tri_group.hpp"

namespace kpack {

using json = nlohmann::json;

inline constexpr const char* kReportFormat = "kpack-report-v1";
inline constexpr const char* kSubgroupFormat = "kpack-subgroup-v1";
inline constexpr const char* kLayoutFormat = "kpack-layout-v1";

inline json to_json(const PackingSpec& s) { return {{"k", s.k}, {"g", s.g}}; }

inline json to_json(const ExtremalParams& p) {
  json j = {{"coshR", p.cosh_R}, {"R", p.R}, {"N_num", p.N_num}, {"N_den", p.N_den}, {"integral", p.integral}};
  if (p.N) j["N"] = *p.N;
  if (p.index) j["index"] = *p.index;
  return j;
}

inline json to_json(const SurfaceInvariants& inv) {
  return {{"V", inv.V}, {"E", inv.E}, {"F", inv.F}, {"chi", inv.euler_characteristic}, {"orientable", inv.orientable},
          {"genus", inv.genus}};
}

inline json to_json(const ExtremalityReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back({{"kind", to_string(f.kind)}, {"detail", f.detail}});
  return {{"format", kReportFormat}, {"ok", r.ok},   {"k", r.k},
          {"g", r.g},                {"N", r.N},     {"chi", r.chi},
          {"orientable", r.orientable}, {"failures", failures}};
}

// ---------------------------------------------------------------------------
// subgroup records

inline json to_json(const SubgroupRecord& rec) {
  json j = {{"format", kSubgroupFormat},
            {"triangle", {{"p", rec.triangle.p}, {"q", rec.triangle.q}, {"r", rec.triangle.r}}},
            {"index", rec.table.index},
            {"action", rec.table.action},
            {"subgroup_generators", rec.table.subgroup_generators},
            {"torsion_free", rec.torsion_free},
            {"proper", rec.proper},
            {"quotient_orientable", rec.quotient_orientable}};
  j["genus"] = rec.genus ? json(*rec.genus) : json(nullptr);
  return j;
}

/// Reads a record and re-derives its flags from the permutation action, so a
/// hand-edited record cannot claim properties its table does not have.
inline SubgroupRecord subgroup_from_json(const json& j) {
  try {
    if (j.at("format").get<std::string>() != kSubgroupFormat) {
      throw ParseError("unsupported subgroup record format '" + j.at("format").get<std::string>() + "'", 1, 1);
    }
    TriangleParams t{j.at("triangle").at("p").get<int>(), j.at("triangle").at("q").get<int>(),
                     j.at("triangle").at("r").get<int>()};
    CosetTable table;
    table.index = j.at("index").get<int>();
    table.action = j.at("action").get<std::vector<std::vector<int>>>();
    if (j.contains("subgroup_generators")) table.subgroup_generators = j.at("subgroup_generators").get<std::vector<Word>>();
    if (table.action.size() != 3) throw ParseError("action must list three generator permutations", 1, 1);
    for (const auto& perm : table.action) {
      if (static_cast<int>(perm.size()) != table.index) throw ParseError("permutation length differs from index", 1, 1);
      std::vector<bool> hit(perm.size(), false);
      for (int x : perm) {
        if (x < 0 || x >= table.index || hit[static_cast<std::size_t>(x)]) {
          throw ParseError("action entry is not a permutation", 1, 1);
        }
        hit[static_cast<std::size_t>(x)] = true;
      }
    }
    if (!relators_hold(triangle_presentation(t), table)) {
      throw PreconditionError("action does not satisfy the triangle group relators");
    }
    return classify(table, t);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed subgroup record: ") + e.what(), 1, 1);
  }
}

// ---------------------------------------------------------------------------
// layouts

inline json to_json(const Point& z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const Isometry& g) {
  json m = json::array();
  for (const auto& x : g.m) m.push_back(to_json(x));
  return {{"matrix", m}, {"reversing", g.reversing}};
}

inline json to_json(const DiskLayout& L) {
  json polys = json::array();
  for (std::size_t p = 0; p < L.vertices.size(); ++p) {
    json vs = json::array();
    for (const auto& v : L.vertices[p]) vs.push_back(to_json(v));
    polys.push_back({{"labels", L.complex.polygon(static_cast<int>(p))},
                     {"center", to_json(L.centers[p])},
                     {"placement", to_json(L.placement[p])},
                     {"vertices", vs}});
  }
  json pairings = json::array();
  for (std::size_t l = 0; l < L.pairing.size(); ++l) {
    json e = to_json(L.pairing[l]);
    e["label"] = static_cast<int>(l) + 1;
    e["tree"] = L.tree.count(static_cast<int>(l) + 1) != 0;
    e["preserving"] = L.complex.preserving(static_cast<int>(l) + 1);
    pairings.push_back(e);
  }
  return {{"format", kLayoutFormat},
          {"name", L.complex.name()},
          {"N", L.N},
          {"edge_residual", L.edge_residual},
          {"polygons", polys},
          {"pairings", pairings}};
}

}  // namespace kpack
