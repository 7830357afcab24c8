#include "torickit/casebook.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace torickit;

TEST(Segre, Incidences) {
  auto a = segre_arrangement();
  EXPECT_FALSE(a.problem());
  EXPECT_EQ(a.hyperplanes_through("p"), (std::set<std::string>{"H1", "H2"}));
  EXPECT_EQ(a.hyperplanes_through("q"), (std::set<std::string>{"H1", "H3"}));
  EXPECT_EQ(a.hyperplanes_through("t"), (std::set<std::string>{"H2", "H4"}));
  EXPECT_EQ(a.hyperplanes_through("u1"), (std::set<std::string>{"H1", "H2", "H3"}));
  EXPECT_EQ(a.hyperplanes_through("u2"), (std::set<std::string>{"H1", "H2", "H4"}));
  EXPECT_THROW(a.hyperplanes_through("v"), Error);
  // Blown-up points on each hyperplane.
  std::map<std::string, int> on;
  for (const auto& x : segre_blown_up_points())
    for (const auto& h : a.hyperplanes_through(x)) ++on[h];
  EXPECT_EQ(on, (std::map<std::string, int>{{"H1", 3}, {"H2", 3}, {"H3", 2}, {"H4", 2}}));
}

TEST(Segre, Certificate) {
  auto c = segre_certificate();
  ASSERT_EQ(c.coefficients.size(), 5u);
  for (const auto& [pt, coeff] : c.coefficients) EXPECT_EQ(coeff, 0) << pt;
  EXPECT_EQ(c.contracted_lines, 10u);
  EXPECT_TRUE(c.effective);
  EXPECT_TRUE(c.anomalies.empty());
}

TEST(Segre, TripleCentreContributes) {
  auto c = compute_certificate(segre_arrangement(), {"u1"});
  EXPECT_EQ(c.coefficients.front().second, 1);
  EXPECT_TRUE(c.effective);
  EXPECT_FALSE(c.anomalies.empty());
}

TEST(Segre, MutationIsDetected) {
  auto a = segre_arrangement();
  a.remove_incidence("p", "H2");
  auto c = compute_certificate(a, segre_blown_up_points());
  EXPECT_EQ(c.coefficients.front().first, "p");
  EXPECT_EQ(c.coefficients.front().second, -1);
  EXPECT_FALSE(c.effective);
  EXPECT_EQ(c.anomalies.size(), 1u);
}

TEST(Segre, MalformedArrangements) {
  auto a = segre_arrangement();
  a.incidence["p"].insert("H9");
  EXPECT_THROW(compute_certificate(a, segre_blown_up_points()), Error);
  auto b = segre_arrangement();
  b.hyperplanes.pop_back();
  b.incidence["r"].erase("H4");
  b.incidence["t"].erase("H4");
  b.incidence["u2"].erase("H4");
  EXPECT_THROW(compute_certificate(b, segre_blown_up_points()), Error);
}

TEST(Suite, BundledFans) {
  auto fans = bundled_fans();
  EXPECT_EQ(fans.size(), 27u);
  std::set<std::string> names;
  for (const auto& f : fans) {
    names.insert(f.name);
    EXPECT_TRUE(is_complete(f.fan)) << f.name;
  }
  EXPECT_EQ(names.size(), fans.size());
}

TEST(Suite, AllChecksPass) {
  auto start = std::chrono::steady_clock::now();
  auto lines = toric_boundary_suite();
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(secs, 10.0);
  EXPECT_EQ(lines.size(), 27u * 5);
  for (const auto& l : lines) EXPECT_TRUE(l.passed) << l.name << ": " << l.witness;
  auto find = [&](const std::string& name) {
    return std::find_if(lines.begin(), lines.end(), [&](const SuiteLine& l) { return l.name == name; });
  };
  EXPECT_EQ(find("F2 fano")->witness, "not fano");
  EXPECT_EQ(find("F3 fano")->witness, "not fano");
  EXPECT_EQ(find("F1 fano")->witness, "fano");
  EXPECT_EQ(find("P3 complexity")->witness, "dim 3 rho 1 norm 4 c 0");
}

TEST(Suite, RejectsIncompleteFans) {
  // The Fano report needs a complete fan.
  std::vector<NamedFan> fans{{"cone", Fan(2, {{1, 0}, {1, 2}}, {{0, 1}})}};
  EXPECT_THROW(toric_boundary_suite(fans), Error);
}
