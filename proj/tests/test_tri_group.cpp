#include <gtest/gtest.h>

#include "kpack/tri_group.hpp"

using namespace kpack;

TEST(Words, Reduction) {
  EXPECT_EQ(free_reduce({1, 2, -2, 3}), (Word{1, 3}));
  EXPECT_EQ(cyclic_reduce({-1, 2, 3, 1}), (Word{2, 3}));
  EXPECT_EQ(inverse({1, -2}), (Word{2, -1}));
  EXPECT_EQ(power({1, 2}, 2), (Word{1, 2, 1, 2}));
}

TEST(ToddCoxeter, FiniteTriangleGroups) {
  // D(2,3,3) is the full symmetry group of the tetrahedron, order 24
  EXPECT_EQ(coset_enumerate(triangle_presentation(2, 3, 3, true), {}).index, 24);
  // D(2,3,4): cube, order 48; D(2,3,5): icosahedron, order 120
  EXPECT_EQ(coset_enumerate(triangle_presentation(2, 3, 4, true), {}).index, 48);
  EXPECT_EQ(coset_enumerate(triangle_presentation(2, 3, 5, true), {}).index, 120);
  // rotation subgroups
  EXPECT_EQ(coset_enumerate(triangle_presentation(2, 3, 5, false), {}).index, 60);
}

TEST(ToddCoxeter, OrientationPreservingHalf) {
  const auto pres = triangle_presentation(2, 3, 7, true);
  const auto t = coset_enumerate(pres, {{1, 2}, {2, 3}});
  EXPECT_EQ(t.index, 2);
  EXPECT_TRUE(relators_hold(pres, t));
}

TEST(ToddCoxeter, InfiniteGroupHitsCap) {
  EXPECT_THROW(coset_enumerate(triangle_presentation(3, 3, 9, true), {}, 20000), CapExceeded);
}

TEST(Triangle, AreaRatios) {
  const auto a = area_ratio({3, 3, 9}, {2, 3, 9});
  EXPECT_EQ(a.num, 4);
  EXPECT_EQ(a.den, 1);
  const auto b = area_ratio({3, 3, 7}, {2, 3, 7});
  EXPECT_EQ(b.num, 8);
  EXPECT_EQ(b.den, 1);
}

TEST(LowIndex, SmallCounts) {
  // D(2,3,7) has exactly one subgroup of index 2 containing no reflection: D+(2,3,7)
  const auto pres = triangle_presentation(2, 3, 7, true);
  const auto all2 = low_index_tables(pres, 2);
  SubgroupFilters f;
  f.torsion_words = {{1}, {2}, {3}};
  EXPECT_EQ(low_index_tables(pres, 2, f).size(), 1u);
  EXPECT_GE(all2.size(), 1u);
  for (const auto& t : all2) EXPECT_TRUE(relators_hold(pres, t));
  // the (2,3,3) group (order 24) has exactly one subgroup of index 24
  EXPECT_EQ(low_index_tables(triangle_presentation(2, 3, 3, true), 24).size(), 1u);
}

TEST(LowIndex, SurfaceSubgroupSearches) {
  for (auto [t, n] : std::vector<std::pair<TriangleParams, int>>{
           {{2, 3, 12}, 24}, {{2, 3, 9}, 36}, {{2, 3, 8}, 48}, {{3, 3, 9}, 18}, {{3, 3, 7}, 42}, {{2, 3, 7}, 84}}) {
    const auto recs = low_index_subgroups(t, n, true, true, 1);
    ASSERT_EQ(recs.size(), 1u) << t.p << t.q << t.r << " " << n;
    EXPECT_TRUE(recs[0].torsion_free);
    EXPECT_TRUE(recs[0].proper);
    EXPECT_TRUE(relators_hold(triangle_presentation(t), recs[0].table));
  }
}

TEST(Bridge, SubgroupToComplexRoundTrip) {
  for (auto [t, n] : std::vector<std::pair<TriangleParams, int>>{
           {{2, 3, 12}, 24}, {{2, 3, 9}, 36}, {{2, 3, 8}, 48}, {{2, 3, 7}, 84}, {{2, 3, 10}, 60}}) {
    for (const auto& rec : low_index_subgroups(t, n, true, true, 5)) {
      const auto c = subgroup_to_complex(rec);
      const auto rep = verify_extremal(c);
      EXPECT_TRUE(rep.ok) << t.r;
      EXPECT_EQ(rep.N, t.r);
      EXPECT_EQ(rep.g, *rec.genus);
      const auto back = complex_to_subgroup(c);
      EXPECT_EQ(conjugacy_canonical(back.table.action), conjugacy_canonical(rec.table.action));
      EXPECT_EQ(canonicalize(subgroup_to_complex(back)), canonicalize(c));
    }
  }
}

TEST(Classify, WholeGroupHasTorsion) {
  CosetTable t;
  t.index = 1;
  t.action = {{0}, {0}, {0}};
  const auto rec = classify(t, {2, 3, 7});
  EXPECT_FALSE(rec.torsion_free);
  EXPECT_FALSE(rec.genus.has_value());
}

TEST(Classify, GenusFromIndex) {
  // index 2kN: non-orientable genus g with kN = 6g + 6k - 12
  const auto rec = low_index_subgroups({2, 3, 7}, 84, true, true, 1).front();
  EXPECT_EQ(*rec.genus, 3);
  EXPECT_FALSE(rec.quotient_orientable);
  const auto plus = canonical_fuchsian(rec);
  EXPECT_EQ(plus.table.index, 168);
  EXPECT_TRUE(plus.torsion_free);
  EXPECT_FALSE(plus.proper);
  EXPECT_TRUE(plus.quotient_orientable);
  EXPECT_EQ(*plus.genus, 2);  // orientable double cover of N3 has genus g - 1
  EXPECT_THROW(canonical_fuchsian(plus), PreconditionError);
}

TEST(Classify, ConjugacyCanonicalIsBaseFree) {
  const auto rec = low_index_subgroups({2, 3, 9}, 36, true, true, 1).front();
  const auto key = conjugacy_canonical(rec.table.action);
  for (int b = 0; b < rec.table.index; ++b) EXPECT_EQ(conjugacy_canonical(standardize(rec.table.action, b)), key);
}

TEST(DoubleTriangle, DualExtremalComplexes) {
  struct Case {
    int r, index, k, N, g;
  };
  for (const auto& c : {Case{9, 18, 1, 18, 4}, Case{7, 42, 3, 14, 6}}) {
    const auto small = low_index_subgroups({3, 3, c.r}, c.index, true, true, 1).front();
    EXPECT_EQ(*small.genus, c.g);
    const auto big = embed_in_double_triangle(small);
    EXPECT_EQ(big.triangle, (TriangleParams{2, 3, 2 * c.r}));
    EXPECT_EQ(big.table.index, 2 * c.index);
    EXPECT_TRUE(big.torsion_free);
    EXPECT_EQ(*big.genus, c.g);
    const auto cx = subgroup_to_complex(big);
    const auto rep = verify_extremal(cx);
    EXPECT_TRUE(rep.ok);
    EXPECT_EQ(rep.k, c.k);
    EXPECT_EQ(rep.N, c.N);
    EXPECT_EQ(rep.g, c.g);
  }
}

TEST(Bridge, RejectsBadInput) {
  const auto whole = classify(CosetTable{1, {{0}, {0}, {0}}, {}}, {2, 3, 7});
  EXPECT_THROW(subgroup_to_complex(whole), PreconditionError);
  const auto torus = PolygonComplex({{1, 2, 1, 2}});
  EXPECT_THROW(complex_to_subgroup(torus), PreconditionError);
}
