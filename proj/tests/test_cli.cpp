#include "torickit/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace torickit;
namespace fs = std::filesystem;

namespace {

const fs::path samples = TORICKIT_SAMPLES;

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return (samples / name).string(); }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, PairClassify) {
  auto r = run({"pair", "classify", sample("p2_boundary.pair")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "lc; log CY; index 1; complexity 0\n");
  auto half = run({"pair", "classify", sample("p2_half.pair"), "--expect", "log-cy"});
  EXPECT_EQ(half.code, 1);
  EXPECT_EQ(lines(half.out).front().substr(0, 9), "canonical");
  auto a1 = run({"pair", "classify", sample("a1.pair"), "--expect", "canonical"});
  EXPECT_EQ(a1.code, 0) << a1.out << a1.err;
  auto bad = run({"pair", "classify", sample("square_cone_facet.pair")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.out.substr(0, 8), "invalid:");
  auto third = run({"pair", "classify", sample("p2_third.pair")});
  EXPECT_NE(third.out.find("index 3"), std::string::npos) << third.out;
}

TEST(Cli, FanCheck) {
  auto r = run({"fan", "check", sample("f2.fan"), "--expect", "smooth"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("not fano"), std::string::npos);
  EXPECT_NE(r.out.find("Cl = Z^2"), std::string::npos);
  EXPECT_EQ(run({"fan", "check", sample("f2.fan"), "--expect", "fano"}).code, 1);
  EXPECT_EQ(run({"fan", "check", sample("f2.fan"), "--expect", "shiny"}).code, 2);
  auto a4 = run({"fan", "check", sample("a4.fan")});
  EXPECT_NE(a4.out.find("Cl = Z/5"), std::string::npos) << a4.out;
}

TEST(Cli, FanResolveAndSubdivide) {
  auto r = run({"fan", "resolve2d", sample("a4.fan")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).front(), "# 4 rays added");
  auto body = r.out.substr(r.out.find('\n') + 1);
  auto resolved = parse_fan_file(body);
  EXPECT_TRUE(is_smooth(resolved.fan));
  auto s = run({"fan", "subdivide", sample("p2.fan"), "--cone", "1", "2"});
  EXPECT_EQ(s.code, 0) << s.err;
  auto fine = parse_fan_file(s.out).fan;
  EXPECT_TRUE(fine.index_of({1, 1}));
  EXPECT_EQ(run({"fan", "subdivide", sample("p2.fan"), "--cone", "7"}).code, 2);
}

TEST(Cli, PairDiscrepancyAndPullback) {
  auto r = run({"pair", "discrepancy", sample("p2_half.pair"), "--valuation", "1", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "(1,1): 1 (canonical place, non-terminal place)\n");
  auto all = run({"pair", "discrepancy", sample("p2_half.pair")});
  EXPECT_EQ(lines(all.out).size(), 3u);
  auto p = run({"pair", "pullback", sample("p2_boundary.pair"), "--cone", "1", "2"});
  EXPECT_EQ(p.code, 0) << p.err;
  auto pulled = parse_pair_file(p.out).pair;
  EXPECT_TRUE(is_log_cy(pulled));
  auto neg = run({"pair", "pullback", sample("p2_third.pair"), "--cone", "1", "2"});
  EXPECT_EQ(neg.code, 1);
  EXPECT_NE(neg.err.find("-1/3"), std::string::npos) << neg.err;
}

TEST(Cli, PairComplexity) {
  auto r = run({"pair", "complexity", sample("p2_boundary.pair")});
  EXPECT_EQ(r.out, "dim 2 rho 1 norm 3 c 0\n");
  auto coarse = run({"pair", "complexity", sample("p2_boundary.pair"), "--part", "1:0,1,2"});
  EXPECT_EQ(coarse.out, "dim 2 rho 1 norm 1 c 2\n");
  auto bad = run({"pair", "complexity", sample("p2_boundary.pair"), "--part", "1:0,1"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("decomposition mismatch"), std::string::npos);
}

TEST(Cli, Polytopes) {
  auto r = run({"polytope", "enumerate-reflexive", "--dim", "2", "--count-only"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "16\n");
  EXPECT_EQ(run({"polytope", "enumerate-reflexive", "--dim", "3"}).code, 2);
  auto c = run({"polytope", "check", sample("triangle_p123.poly"), "--expect", "reflexive"});
  EXPECT_EQ(c.code, 0) << c.out << c.err;
  EXPECT_EQ(run({"polytope", "check", sample("triangle_p123.poly"), "--expect", "smooth-fano"}).code, 1);
  auto cube = run({"polytope", "check", sample("cube.poly"), "--expect", "reflexive"});
  EXPECT_EQ(cube.code, 0) << cube.out << cube.err;
}

TEST(Cli, Markov) {
  auto r = run({"markov", "table", "--max", "30"});
  EXPECT_EQ(r.code, 0);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 6u);
  EXPECT_EQ(ls[3], "1 2 5 1 (1,4,1,5) 5 6 yes yes yes");
  auto a = run({"markov", "adjacent", "2", "5", "29"});
  EXPECT_EQ(a.out, "(2,5,29) -> (1,2,5)\n");
  EXPECT_EQ(run({"markov", "adjacent", "1", "2", "3"}).code, 2);
}

TEST(Cli, Casebook) {
  auto s = run({"casebook", "segre"});
  EXPECT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("contracted lines 10"), std::string::npos);
  EXPECT_NE(s.out.find("effective true"), std::string::npos);
}

TEST(Cli, JsonLines) {
  auto r = run({"--json-lines", "markov", "table", "--max", "5"});
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 3u);
  for (const auto& l : ls) {
    auto j = nlohmann::json::parse(l);
    EXPECT_TRUE(j.contains("triple"));
  }
  auto c = run({"--json-lines", "pair", "classify", sample("p2_boundary.pair")});
  auto j = nlohmann::json::parse(c.out);
  EXPECT_EQ(j["type"], "lc");
  EXPECT_EQ(j["log_cy"], true);
  EXPECT_EQ(j["index"], "1");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"fan", "check", sample("p2.fan"), "--bogus"}).code, 2);
  EXPECT_EQ(run({"fan", "check", sample("missing.fan")}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Parse, Errors) {
  try {
    parse_fan_file("dim 2\nray 1 0\nray 1 0\ncone 0 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("duplicate"), std::string::npos) << e.what();
  }
  try {
    parse_pair_file("fan inline\ndim 2\nray 1 0\nray 0 1\ncone 0 1\ncoeff 2 1/2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 6u);
  }
  EXPECT_THROW(parse_fan_file("dim 2\nray 1 x\n"), ParseError);
  EXPECT_THROW(parse_fan_file("ray 1 0\n"), ParseError);
  EXPECT_THROW(parse_fan_file("dim 2\nray 2 0\n"), ParseError);
  EXPECT_THROW(parse_pair_file("fan inline\ndim 2\nray 1 0\ncone 0\ncoeff 0 -1\n"), Error);
  EXPECT_THROW(parse_polytope_file("dim 2\nvertex 1 0\nvertex 2 0\n"), Error);
}

TEST(Parse, CanonicalSamplesRoundTrip) {
  std::size_t fans = 0, polys = 0;
  for (const auto& entry : fs::directory_iterator(samples)) {
    const auto& path = entry.path();
    auto text = slurp(path);
    if (text.rfind("#", 0) == 0) continue;  // hand-written, commented
    if (path.extension() == ".fan") {
      EXPECT_EQ(emit_fan(parse_fan_file(text).fan), text) << path;
      ++fans;
    } else if (path.extension() == ".poly") {
      EXPECT_EQ(emit_polytope(parse_polytope_file(text)), text) << path;
      ++polys;
    }
  }
  EXPECT_GE(fans, 12u);
  EXPECT_GE(polys, 16u);
}

TEST(Parse, PairRoundTrip) {
  for (const auto& name : {"p2_boundary.pair", "p2_third.pair", "f2_boundary.pair", "p2_blowup_boundary.pair"}) {
    auto pf = load_pair_file(samples / name);
    auto again = parse_pair_file(emit_pair(pf.pair));
    EXPECT_EQ(again.pair, pf.pair) << name;
  }
}
