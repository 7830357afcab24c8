// Worked examples: the hyperplane arrangement in P^3 whose blow-up at five
// points gives a small resolution of the Segre cubic, and the reduced
// boundary checks over the bundled complete fans.
#pragma once

#include "torickit/complexity.hpp"
#include "torickit/polytope.hpp"

#include <map>

namespace torickit {

/// Points and hyperplanes of an arrangement with point -> hyperplane incidence.
struct IncidenceArrangement {
  std::size_t ambient_dim = 0;
  std::vector<std::string> points;
  std::vector<std::string> hyperplanes;
  std::map<std::string, std::set<std::string>> incidence;

  const std::set<std::string>& hyperplanes_through(const std::string& point) const {
    auto it = incidence.find(point);
    if (it == incidence.end()) throw Error("unknown point " + point);
    return it->second;
  }

  std::optional<std::string> problem() const {
    for (const auto& [pt, hs] : incidence) {
      if (std::find(points.begin(), points.end(), pt) == points.end()) return "unknown point " + pt;
      for (const auto& h : hs)
        if (std::find(hyperplanes.begin(), hyperplanes.end(), h) == hyperplanes.end())
          return "point " + pt + " lies on unknown hyperplane " + h;
    }
    return std::nullopt;
  }

  void remove_incidence(const std::string& point, const std::string& hyperplane) {
    incidence.at(point).erase(hyperplane);
  }
};

/// H1 = <p,q,r>, H2 = <p,s,t>, u1 and u2 on the line H1 cap H2,
/// H3 = <u1,q,s>, H4 = <u2,r,t>.
inline IncidenceArrangement segre_arrangement() {
  IncidenceArrangement a;
  a.ambient_dim = 3;
  a.points = {"p", "q", "r", "s", "t", "u1", "u2"};
  a.hyperplanes = {"H1", "H2", "H3", "H4"};
  a.incidence = {
      {"p", {"H1", "H2"}},        {"q", {"H1", "H3"}},        {"r", {"H1", "H4"}}, {"s", {"H2", "H3"}},
      {"t", {"H2", "H4"}},        {"u1", {"H1", "H2", "H3"}}, {"u2", {"H1", "H2", "H4"}},
  };
  return a;
}

inline const std::vector<std::string>& segre_blown_up_points() {
  static const std::vector<std::string> pts{"p", "q", "r", "s", "t"};
  return pts;
}

struct CrepantCertificate {
  std::vector<std::pair<std::string, Rational>> coefficients;  // exceptional divisor over each point
  std::size_t contracted_lines = 0;
  bool effective = false;
  std::vector<std::string> anomalies;
};

/// Pullback of K + sum of hyperplanes under the blow-up of `centers`: the
/// exceptional divisor over x gets 1 - a_E with a_E = dim - multiplicity.
/// The lines through pairs of centers are the contracted locus.
inline CrepantCertificate compute_certificate(const IncidenceArrangement& arr, const std::vector<std::string>& centers) {
  if (auto bad = arr.problem()) throw Error(*bad);
  if (arr.hyperplanes.size() != arr.ambient_dim + 1)
    throw Error("boundary of " + std::to_string(arr.hyperplanes.size()) + " hyperplanes is not anticanonical");
  CrepantCertificate cert;
  cert.effective = true;
  for (const auto& x : centers) {
    auto mult = static_cast<long>(arr.hyperplanes_through(x).size());
    Rational c = Rational(1) - blowup_point_log_discrepancy(arr.ambient_dim, Rational(mult));
    if (c < 0) cert.effective = false;
    if (mult != 2) cert.anomalies.push_back(x + " lies on " + std::to_string(mult) + " hyperplanes");
    cert.coefficients.emplace_back(x, c);
  }
  cert.contracted_lines = centers.size() * (centers.size() - 1) / 2;
  return cert;
}

/// The certificate for the Segre arrangement; every center must lie on
/// exactly two hyperplanes.
inline CrepantCertificate segre_certificate() {
  auto cert = compute_certificate(segre_arrangement(), segre_blown_up_points());
  if (!cert.anomalies.empty()) throw std::logic_error("Segre certificate failed: " + cert.anomalies.front());
  return cert;
}

struct NamedFan {
  std::string name;
  Fan fan;
};

/// Complete fans used for regression: P^1..P^4, P^1 x P^1, F_0..F_3,
/// P(1,1,2), P(1,4,1,5) and the face fans of the 16 reflexive polygons.
inline std::vector<NamedFan> bundled_fans() {
  std::vector<NamedFan> out;
  for (std::size_t n = 1; n <= 4; ++n) out.push_back({"P" + std::to_string(n), projective_space_fan(n)});
  auto p1 = projective_space_fan(1);
  out.push_back({"P1xP1", product_fan(p1, p1)});
  for (long a = 0; a <= 3; ++a) out.push_back({"F" + std::to_string(a), hirzebruch_fan(a)});
  out.push_back({"P(1,1,2)", weighted_projective_fan({1, 1, 2})});
  out.push_back({"P(1,4,1,5)", weighted_projective_fan({1, 4, 1, 5})});
  auto polys = enumerate_reflexive_polygons();
  for (std::size_t i = 0; i < polys.size(); ++i)
    out.push_back({"reflexive" + std::to_string(i + 1), face_fan(polys[i])});
  return out;
}

struct SuiteLine {
  std::string name;
  bool passed = false;
  std::string witness;
};

/// For the reduced boundary on every bundled fan: log CY, index 1, lc and
/// complexity 0 of the prime decomposition. Fano-ness is reported, not asserted.
inline std::vector<SuiteLine> toric_boundary_suite(const std::vector<NamedFan>& fans) {
  std::vector<SuiteLine> out;
  for (const auto& [name, fan] : fans) {
    auto pair = ToricPair::reduced_boundary(fan);
    bool cy = is_log_cy(pair);
    out.push_back({name + " log-cy", cy, cy ? "K+B class 0" : "K+B class nonzero"});
    auto idx = pair_index(pair);
    out.push_back({name + " index", idx == 1, "index " + idx.str()});
    // On curves there is nothing exceptional, so the finest label can be
    // finer than lc; what matters is lc with a reduced component.
    auto prof = singularity_profile(pair);
    out.push_back({name + " lc", prof.lc && !prof.klt, prof.lc ? (prof.klt ? "klt" : "lc, not klt") : "not lc"});
    auto c = complexity(pair, decomposition_by_primes(pair));
    out.push_back({name + " complexity", c.c() == 0, to_string(c)});
    bool fano = is_fano(pair.variety());
    out.push_back({name + " fano", true, fano ? "fano" : "not fano"});
  }
  return out;
}

inline std::vector<SuiteLine> toric_boundary_suite() { return toric_boundary_suite(bundled_fans()); }

}  // namespace torickit
