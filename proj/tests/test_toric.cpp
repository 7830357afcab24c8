#include "oracles.hpp"
#include "torickit/variety.hpp"

#include <gtest/gtest.h>

using namespace torickit;

namespace {

TorusInvariantDivisor divisor(std::initializer_list<long> c) {
  TorusInvariantDivisor d;
  for (auto x : c) d.coefficients.emplace_back(x);
  return d;
}

TorusInvariantDivisor single(const Fan& f, const LatticeVector& ray, long k = 1) {
  TorusInvariantDivisor d{RationalVector(f.rays().size(), Rational(0))};
  d.coefficients[*f.index_of(ray)] = k;
  return d;
}

}  // namespace

TEST(ClassGroup, Examples) {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto g = class_group(ToricVariety{projective_space_fan(n)});
    EXPECT_EQ(g.free_rank, 1u);
    EXPECT_TRUE(g.torsion_invariants.empty());
  }
  auto p1 = projective_space_fan(1);
  EXPECT_EQ(to_string(class_group(ToricVariety{product_fan(p1, p1)})), "Z^2");
  EXPECT_EQ(to_string(class_group(ToricVariety{weighted_projective_fan({1, 1, 2})})), "Z");
  EXPECT_EQ(to_string(class_group(ToricVariety{Fan(2, {{1, 0}, {1, 2}}, {{0, 1}})})), "Z/2");
}

TEST(ClassGroup, RankIsRaysMinusDimension) {
  std::vector<Fan> fans{projective_space_fan(3), hirzebruch_fan(1), hirzebruch_fan(3),
                        weighted_projective_fan({1, 4, 1, 5}), weighted_projective_fan({2, 3, 5})};
  for (const auto& f : fans)
    EXPECT_EQ(class_group(ToricVariety{f}).free_rank, f.rays().size() - f.rank());
}

TEST(DivisorClass, ProjectivePlane) {
  ToricVariety x{projective_space_fan(2)};
  auto h = divisor_class(x, divisor({1, 0, 0}));
  ASSERT_EQ(h.free_part.size(), 1u);
  EXPECT_EQ(abs(h.free_part[0]), 1);
  EXPECT_EQ(divisor_class(x, divisor({0, 1, 0})), h);
  EXPECT_EQ(divisor_class(x, divisor({0, 0, 1})), h);
  auto k = divisor_class(x, canonical_divisor(x));
  EXPECT_EQ(k.free_part[0], -3 * h.free_part[0]);
}

TEST(DivisorClass, P1xP1) {
  auto p1 = projective_space_fan(1);
  ToricVariety x{product_fan(p1, p1)};
  auto f = x.fan;
  auto a = divisor_class(x, single(f, {1, 0}));
  auto b = divisor_class(x, single(f, {0, 1}));
  EXPECT_EQ(divisor_class(x, single(f, {-1, 0})), a);
  EXPECT_EQ(divisor_class(x, single(f, {0, -1})), b);
  // a and b form a basis of Z^2.
  Integer det = a.free_part[0] * b.free_part[1] - a.free_part[1] * b.free_part[0];
  EXPECT_EQ(abs(det), 1);
  auto k = divisor_class(x, canonical_divisor(x));
  EXPECT_EQ(k.free_part[0], -2 * (a.free_part[0] + b.free_part[0]));
}

TEST(DivisorClass, PrincipalDivisorsVanish) {
  std::vector<Fan> fans{projective_space_fan(2), hirzebruch_fan(2), weighted_projective_fan({1, 2, 3}),
                        Fan(2, {{1, 0}, {1, 2}}, {{0, 1}})};
  for (const auto& f : fans) {
    ToricVariety x{f};
    auto pres = class_group_presentation(x);
    for (long m0 = -3; m0 <= 3; ++m0)
      for (long m1 = -3; m1 <= 3; ++m1) ASSERT_TRUE(divisor_class(pres, principal_divisor(x, {m0, m1})).is_zero());
  }
  ToricVariety p3{projective_space_fan(3)};
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b)
      for (long c = -3; c <= 3; ++c) ASSERT_TRUE(divisor_class(p3, principal_divisor(p3, {a, b, c})).is_zero());
}

TEST(DivisorClass, TorsionClass) {
  ToricVariety x{Fan(2, {{1, 0}, {1, 2}}, {{0, 1}})};
  auto c = divisor_class(x, divisor({1, 0}));
  EXPECT_TRUE(c.is_torsion());
  EXPECT_FALSE(c.is_zero());
  EXPECT_TRUE(divisor_class(x, divisor({2, 0})).is_zero());
  EXPECT_THROW(divisor_class(x, TorusInvariantDivisor{{Rational(1, 2), Rational(0)}}), Error);
}

TEST(Cartier, SmoothFans) {
  ToricVariety x{hirzebruch_fan(2)};
  for (long a = -2; a <= 2; ++a) {
    auto d = divisor({a, 1, -a, 3});
    EXPECT_TRUE(is_cartier(x, d));
    EXPECT_TRUE(is_qcartier(x, d));
  }
}

TEST(Cartier, WeightedProjective) {
  auto f = weighted_projective_fan({1, 1, 2});
  ToricVariety x{f};
  auto d = single(f, {-1, -2});
  EXPECT_TRUE(is_qcartier(x, d));
  EXPECT_FALSE(is_cartier(x, d));
  EXPECT_TRUE(is_cartier(x, Rational(2) * d));
}

TEST(Cartier, ConeOverSquare) {
  Fan f(3, {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}, {{0, 1, 2, 3}});
  ToricVariety x{f};
  EXPECT_FALSE(is_qcartier(x, single(f, {0, 0, 1})));
  EXPECT_TRUE(is_cartier(x, canonical_divisor(x)));
  // Cartier implies Q-Cartier on every divisor we try.
  for (long a = -1; a <= 1; ++a)
    for (long b = -1; b <= 1; ++b) {
      auto d = divisor({a, b, 1, 0});
      if (is_cartier(x, d)) { EXPECT_TRUE(is_qcartier(x, d)); }
    }
}

TEST(Canonical, Examples) {
  ToricVariety torus{Fan(2, {}, {})};
  EXPECT_TRUE(canonical_divisor(torus).coefficients.empty());
  for (std::size_t n = 1; n <= 4; ++n) {
    ToricVariety x{projective_space_fan(n)};
    auto h = divisor_class(x, single(x.fan, x.fan.ray(0)));
    auto k = divisor_class(x, canonical_divisor(x));
    EXPECT_EQ(k.free_part[0], -static_cast<long>(n + 1) * h.free_part[0]);
  }
}

TEST(WeightedProjective, Rays) {
  EXPECT_EQ(weighted_projective_fan({1, 1, 1}), projective_space_fan(2));
  auto f = weighted_projective_fan({1, 1, 2});
  EXPECT_EQ(f.rays(), (std::vector<LatticeVector>{{-1, -2}, {0, 1}, {1, 0}}));
  auto g = weighted_projective_fan({1, 4, 1, 5});
  EXPECT_TRUE(validate_fan(g).valid);
  EXPECT_TRUE(is_complete(g));
  EXPECT_TRUE(is_simplicial(g));
  // The weights are the relation among the rays.
  for (const auto& w : std::vector<std::vector<Integer>>{{1, 4, 1, 5}, {2, 3, 5}, {3, 5, 7}, {1, 1, 2}}) {
    auto fan = weighted_projective_fan(w);
    EXPECT_TRUE(validate_fan(fan).valid);
    EXPECT_TRUE(is_complete(fan));
    EXPECT_EQ(class_group(ToricVariety{fan}).free_rank, 1u);
  }
  EXPECT_THROW(weighted_projective_fan({2, 4, 6}), Error);
  EXPECT_THROW(weighted_projective_fan({1, 0, 1}), Error);
}

TEST(Fano, Examples) {
  EXPECT_TRUE(is_fano(ToricVariety{projective_space_fan(2)}));
  EXPECT_FALSE(is_fano(ToricVariety{hirzebruch_fan(2)}));
  EXPECT_TRUE(is_fano(ToricVariety{hirzebruch_fan(1)}));
  EXPECT_TRUE(is_fano(ToricVariety{weighted_projective_fan({1, 1, 2})}));
  EXPECT_TRUE(is_fano(ToricVariety{weighted_projective_fan({1, 4, 1, 5})}));
  EXPECT_THROW(is_fano(ToricVariety{Fan(2, {{1, 0}, {0, 1}}, {{0, 1}})}), Error);
}

TEST(Fano, SmoothSurfacesMatchKnownList) {
  // Hirzebruch surfaces F_a are Fano exactly for a <= 1.
  auto p1 = projective_space_fan(1);
  std::vector<std::pair<Fan, bool>> cases{{projective_space_fan(2), true}, {product_fan(p1, p1), true},
                                          {hirzebruch_fan(1), true},      {hirzebruch_fan(2), false},
                                          {hirzebruch_fan(3), false}};
  for (const auto& [f, fano] : cases) EXPECT_EQ(is_fano(ToricVariety{f}), fano);
}
