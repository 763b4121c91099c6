#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "kpack/feasibility.hpp"

using namespace kpack;
using hp = boost::multiprecision::cpp_dec_float_50;

namespace {

// 50-digit evaluation of 1 / (2 sin(k pi / (6g + 6k - 12)))
double oracle_cosh_bound(int k, int g) {
  const hp pi = boost::multiprecision::default_ops::get_constant_pi<hp::backend_type>();
  hp angle = hp(k) * hp(pi) / hp(6 * g + 6 * k - 12);
  hp value = hp(1) / (hp(2) * sin(angle));
  return value.convert_to<double>();
}

std::int64_t divisors_by_trial(std::int64_t n) {
  std::int64_t count = 0;
  for (std::int64_t d = 1; d <= n; ++d) count += (n % d == 0);
  return count;
}

}  // namespace

TEST(RadiusBound, HighPrecisionOracle) {
  EXPECT_NEAR(packing_radius_bound({1, 3}).cosh_R, oracle_cosh_bound(1, 3), 1e-12);
  EXPECT_NEAR(packing_radius_bound({6, 3}).cosh_R, oracle_cosh_bound(6, 3), 1e-12);
  EXPECT_NEAR(packing_radius_bound({2, 3}).cosh_R, oracle_cosh_bound(2, 3), 1e-12);
  EXPECT_NEAR(packing_radius_bound({1, 3}).cosh_R, 1.9318516526, 1e-10);
  EXPECT_NEAR(packing_radius_bound({6, 3}).cosh_R, 1.1523824354, 1e-10);
  EXPECT_NEAR(packing_radius_bound({2, 3}).cosh_R, 1.4619022000, 1e-10);
}

TEST(RadiusBound, IntegralityAndIndex) {
  auto p = packing_radius_bound({6, 3});
  ASSERT_TRUE(p.integral);
  EXPECT_EQ(*p.N, 7);
  EXPECT_EQ(*p.index, 84);
  EXPECT_NEAR(p.R, std::acosh(p.cosh_R), 1e-15);

  auto q = packing_radius_bound({4, 3});  // 30/4 = 15/2
  EXPECT_FALSE(q.integral);
  EXPECT_EQ(q.N_num, 15);
  EXPECT_EQ(q.N_den, 2);
  EXPECT_FALSE(q.N.has_value());
  EXPECT_DOUBLE_EQ(q.N_value(), 7.5);
}

TEST(RadiusBound, DomainErrors) {
  EXPECT_THROW(packing_radius_bound({1, 2}), DomainError);
  EXPECT_THROW(packing_radius_bound({0, 3}), DomainError);
  EXPECT_THROW(is_feasible({1, 2}), DomainError);
}

TEST(RadiusBound, Monotonicity) {
  for (int g = 3; g <= 50; ++g) {
    for (int k = 1; k <= 50; ++k) {
      const double here = packing_radius_bound({k, g}).cosh_R;
      if (k < 50) {
        EXPECT_GT(here, packing_radius_bound({k + 1, g}).cosh_R) << k << "," << g;
      }
      if (g < 50) {
        EXPECT_LT(here, packing_radius_bound({k, g + 1}).cosh_R) << k << "," << g;
      }
    }
  }
}

TEST(RadiusBound, EqualsInradiusFormulaWhenFeasible) {
  for (int g = 3; g <= 40; ++g) {
    for (auto k : feasible_ks(g)) {
      const auto p = packing_radius_bound({k, g});
      ASSERT_TRUE(p.integral);
      EXPECT_NEAR(p.cosh_R * 2.0 * std::sin(std::numbers::pi / static_cast<double>(*p.N)), 1.0, 1e-12);
      EXPECT_EQ(k * *p.N, 6 * g + 6 * k - 12);
      EXPECT_EQ(*p.index, 12 * g + 12 * k - 24);
    }
  }
}

TEST(Feasible, Examples) {
  EXPECT_TRUE(is_feasible({4, 4}));
  EXPECT_FALSE(is_feasible({4, 3}));
  EXPECT_TRUE(is_feasible({1, 100}));
  EXPECT_THROW(cell_size({4, 3}), InfeasibleError);
  EXPECT_EQ(cell_size({4, 4}), 9);
}

TEST(UniversalK, ExactlyDivisorsOfSix) {
  EXPECT_EQ(universal_k(), (std::set<std::int64_t>{1, 2, 3, 6}));
  EXPECT_TRUE(is_universal_k(6));
  EXPECT_FALSE(is_universal_k(4));
  for (std::int64_t k = 1; k <= 60; ++k) {
    bool all = true;
    for (std::int64_t g = 3; g <= 80 && all; ++g) all = is_feasible({k, g});
    EXPECT_EQ(all, is_universal_k(k)) << k;
  }
}

TEST(GenusProgression, CrossCheckedAgainstFeasibility) {
  EXPECT_EQ(feasible_genus_progression(6).modulus, 1);
  EXPECT_EQ(feasible_genus_progression(4).modulus, 2);
  EXPECT_EQ(feasible_genus_progression(4).residue, 0);  // 2 mod 2
  EXPECT_EQ(feasible_genus_progression(9).modulus, 3);
  EXPECT_EQ(feasible_genus_progression(9).residue, 2);
  for (std::int64_t k = 1; k <= 40; ++k) {
    const auto cls = feasible_genus_progression(k);
    for (std::int64_t g = 3; g <= 50; ++g) {
      EXPECT_EQ(cls.contains(g), is_feasible({k, g})) << k << "," << g;
    }
  }
}

TEST(CountFeasibleK, DivisorCount) {
  EXPECT_EQ(count_feasible_k(3), 4);
  EXPECT_EQ(count_feasible_k(4), 6);
  EXPECT_EQ(count_feasible_k(5), 6);
  for (std::int64_t g = 3; g <= 200; ++g) {
    EXPECT_EQ(count_feasible_k(g), divisors_by_trial(6 * (g - 2))) << g;
    EXPECT_EQ(static_cast<std::int64_t>(feasible_ks(g).size()), count_feasible_k(g));
  }
}

TEST(LineLN, Examples) {
  auto as_pairs = [](const LineLN& l) {
    std::vector<std::pair<std::int64_t, std::int64_t>> v;
    for (auto e : l.entries) v.emplace_back(e.k, e.g);
    return v;
  };
  using V = std::vector<std::pair<std::int64_t, std::int64_t>>;
  EXPECT_EQ(as_pairs(line_LN(7, 2)), (V{{6, 3}, {12, 4}}));
  EXPECT_EQ(as_pairs(line_LN(12, 3)), (V{{1, 3}, {2, 4}, {3, 5}}));
  EXPECT_EQ(as_pairs(line_LN(9, 2)), (V{{2, 3}, {4, 4}}));
  EXPECT_THROW(line_LN(6, 1), DomainError);
  EXPECT_THROW(line_LN(7, 0), DomainError);
}

TEST(LineLN, EntriesFeasibleAndOnlyFirstPrimitive) {
  for (std::int64_t N = 7; N <= 60; ++N) {
    const auto line = line_LN(N, 8);
    for (std::size_t j = 0; j < line.entries.size(); ++j) {
      const auto e = line.entries[j];
      ASSERT_TRUE(is_feasible(e));
      EXPECT_EQ(e.k * N, 6 * e.g + 6 * e.k - 12);
      EXPECT_EQ(cell_size(e), N);
      EXPECT_EQ(is_primitive(e), j == 0);
      EXPECT_EQ(line_position(e), static_cast<std::int64_t>(j) + 1);
    }
  }
}

TEST(PrimitivePair, Examples) {
  EXPECT_EQ(primitive_pair(7), (PackingSpec{6, 3}));
  EXPECT_EQ(primitive_pair(10), (PackingSpec{3, 4}));
  EXPECT_EQ(primitive_pair(12), (PackingSpec{1, 3}));
  EXPECT_EQ(primitive_pair(8), (PackingSpec{3, 3}));
  EXPECT_EQ(primitive_pair(9), (PackingSpec{2, 3}));
  EXPECT_EQ(primitive_pair(11), (PackingSpec{6, 7}));
  EXPECT_EQ(primitive_pair(15), (PackingSpec{2, 5}));
  EXPECT_THROW(primitive_pair(5), DomainError);
}

TEST(IsPrimitive, Examples) {
  EXPECT_TRUE(is_primitive({2, 3}));
  EXPECT_TRUE(is_primitive({1, 3}));
  EXPECT_FALSE(is_primitive({2, 4}));
  EXPECT_THROW(is_primitive({4, 3}), InfeasibleError);
}

TEST(DualExtremal, Examples) {
  using S = std::set<std::pair<std::int64_t, std::int64_t>>;
  EXPECT_EQ(dual_extremal_pairs(4), (S{{1, 4}}));
  EXPECT_EQ(dual_extremal_pairs(6), (S{{2, 8}, {3, 24}}));
  EXPECT_TRUE(dual_extremal_pairs(5).empty());
  EXPECT_TRUE(dual_extremal_pairs(3).empty());
}

TEST(DualExtremal, MembersFeasibleWithExpectedCellSizes) {
  for (std::int64_t g = 3; g <= 80; ++g) {
    for (auto [k1, k2] : dual_extremal_pairs(g)) {
      ASSERT_TRUE(is_feasible({k1, g}));
      ASSERT_TRUE(is_feasible({k2, g}));
      const auto n1 = cell_size({k1, g}), n2 = cell_size({k2, g});
      const bool case1 = (n1 == 18 && n2 == 9);
      const bool case2 = (n1 == 14 && n2 == 7);
      EXPECT_TRUE(case1 || case2) << g << ": " << n1 << "," << n2;
    }
  }
}

TEST(Uniqueness, Examples) {
  EXPECT_EQ(uniqueness_class({6, 3}), Uniqueness::PossiblyMultiple);
  EXPECT_EQ(uniqueness_class({1, 7}), Uniqueness::Unique);
  EXPECT_EQ(uniqueness_class({1, 3}), Uniqueness::PossiblyMultiple);
  EXPECT_THROW(uniqueness_class({4, 3}), InfeasibleError);
  for (std::int64_t g = 3; g <= 40; ++g) {
    EXPECT_EQ(uniqueness_class({1, g}) == Uniqueness::Unique, g > 6) << g;
  }
}
