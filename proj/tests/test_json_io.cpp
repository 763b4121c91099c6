#include <gtest/gtest.h>

#include "kpack/kpack.hpp"

using namespace kpack;

TEST(JsonIo, ReportFields) {
  const json j = to_json(verify_extremal(catalog_complex("X7")));
  EXPECT_EQ(j["format"], kReportFormat);
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_EQ(j["k"], 6);
  EXPECT_EQ(j["g"], 3);
  EXPECT_EQ(j["N"], 7);
  EXPECT_TRUE(j["failures"].empty());

  const json bad = to_json(verify_extremal(orientation_double_cover(catalog_complex("X7"))));
  EXPECT_FALSE(bad["ok"].get<bool>());
  EXPECT_EQ(bad["failures"][0]["kind"], "Orientable");
}

TEST(JsonIo, BoundDocument) {
  const json j = to_json(packing_radius_bound({1, 3}));
  EXPECT_NEAR(j["coshR"].get<double>(), 1.9318516525781366, 1e-15);
  EXPECT_EQ(j["N"], 12);
  EXPECT_EQ(j["index"], 24);
}

TEST(JsonIo, SubgroupRecordRoundTrip) {
  const auto rec = complex_to_subgroup(catalog_complex("X9"));
  const auto back = subgroup_from_json(json::parse(to_json(rec).dump()));
  EXPECT_EQ(back.table.action, rec.table.action);
  EXPECT_EQ(back.torsion_free, rec.torsion_free);
  EXPECT_EQ(back.proper, rec.proper);
  EXPECT_EQ(back.genus, rec.genus);
  EXPECT_EQ(canonicalize(subgroup_to_complex(back)).polygons(), catalog_complex("X9").polygons());
}

TEST(JsonIo, SubgroupRecordValidation) {
  json j = to_json(complex_to_subgroup(catalog_complex("X12")));
  j["torsion_free"] = false;  // flags are recomputed, not trusted
  EXPECT_TRUE(subgroup_from_json(j).torsion_free);

  json wrong_format = j;
  wrong_format["format"] = "other";
  EXPECT_THROW(subgroup_from_json(wrong_format), ParseError);

  json not_perm = j;
  not_perm["action"][0][0] = not_perm["action"][0][1];
  EXPECT_THROW(subgroup_from_json(not_perm), ParseError);

  json missing = j;
  missing.erase("index");
  EXPECT_THROW(subgroup_from_json(missing), ParseError);

  json relator = j;
  std::swap(relator["action"][1], relator["action"][2]);
  EXPECT_THROW(subgroup_from_json(relator), PreconditionError);
}

TEST(JsonIo, LayoutDoublesRoundTripExactly) {
  const auto L = realize(catalog_complex("X7"));
  const json j = json::parse(to_json(L).dump());
  EXPECT_EQ(j["format"], kLayoutFormat);
  EXPECT_EQ(j["polygons"].size(), 6u);
  EXPECT_EQ(j["pairings"].size(), 21u);
  for (std::size_t p = 0; p < 6; ++p) {
    for (std::size_t v = 0; v < 7; ++v) {
      EXPECT_EQ(j["polygons"][p]["vertices"][v][0].get<double>(), L.vertices[p][v].real());
      EXPECT_EQ(j["polygons"][p]["vertices"][v][1].get<double>(), L.vertices[p][v].imag());
    }
  }
  int tree = 0;
  for (const auto& e : j["pairings"]) tree += e["tree"].get<bool>() ? 1 : 0;
  EXPECT_EQ(tree, 5);
}
