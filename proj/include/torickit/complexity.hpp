// Decompositions of a boundary into weighted reduced torus-invariant divisors
// and the complexity c = dim + rho - |Sigma|.
#pragma once

#include "torickit/pairs.hpp"

namespace torickit {

struct DecompositionPart {
  Rational weight;
  RaySet rays;  // sorted ray indices of a reduced divisor
};

struct Decomposition {
  std::vector<DecompositionPart> parts;

  void add(Rational weight, RaySet rays) {
    std::sort(rays.begin(), rays.end());
    parts.push_back({std::move(weight), std::move(rays)});
  }
  Rational norm() const {
    Rational s = 0;
    for (const auto& p : parts) s += p.weight;
    return s;
  }
};

class ComplexityReport {
 public:
  ComplexityReport(std::size_t rho, Rational norm, std::size_t dim)
      : rho_(rho), norm_(std::move(norm)), dim_(dim), c_(Rational(static_cast<long>(dim + rho)) - norm_) {
    if (c_ != Rational(static_cast<long>(dim_)) + Rational(static_cast<long>(rho_)) - norm_)
      throw std::logic_error("inconsistent complexity report");
  }
  std::size_t rho() const { return rho_; }
  const Rational& norm() const { return norm_; }
  std::size_t dim() const { return dim_; }
  const Rational& c() const { return c_; }

  friend bool operator==(const ComplexityReport&, const ComplexityReport&) = default;

 private:
  std::size_t rho_;
  Rational norm_;
  std::size_t dim_;
  Rational c_;
};

inline std::string to_string(const ComplexityReport& r) {
  return "dim " + std::to_string(r.dim()) + " rho " + std::to_string(r.rho()) + " norm " + to_string(r.norm()) +
         " c " + to_string(r.c());
}

/// One singleton part per ray with positive coefficient.
inline Decomposition decomposition_by_primes(const ToricPair& pair) {
  Decomposition d;
  const auto& b = pair.boundary().coefficients;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] > 0) d.add(b[i], {i});
  return d;
}

/// Checks that the parts sum to the boundary; returns the first mismatch.
inline std::optional<std::string> decomposition_mismatch(const ToricPair& pair, const Decomposition& d) {
  const std::size_t n = pair.fan().rays().size();
  RationalVector sum(n, Rational(0));
  for (std::size_t p = 0; p < d.parts.size(); ++p) {
    const auto& part = d.parts[p];
    if (part.weight < 0) return "part " + std::to_string(p) + " has negative weight";
    if (part.rays.empty()) return "part " + std::to_string(p) + " is empty";
    for (std::size_t k = 0; k < part.rays.size(); ++k) {
      if (part.rays[k] >= n) return "part " + std::to_string(p) + " names missing ray " + std::to_string(part.rays[k]);
      if (k > 0 && part.rays[k] == part.rays[k - 1])
        return "part " + std::to_string(p) + " repeats ray " + std::to_string(part.rays[k]);
      sum[part.rays[k]] += part.weight;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (sum[i] != pair.coefficient(i))
      return "decomposition gives " + to_string(sum[i]) + " at ray " + std::to_string(i) + " " +
             to_string(pair.fan().ray(i)) + " but the boundary has " + to_string(pair.coefficient(i));
  return std::nullopt;
}

namespace detail {

inline std::size_t decomposition_rho(const ClassGroupPresentation& pres, const ToricPair& pair, const Decomposition& d) {
  if (d.parts.empty()) return 0;
  const std::size_t n = pair.fan().rays().size();
  RationalMatrix rows;
  for (const auto& part : d.parts) {
    TorusInvariantDivisor div{RationalVector(n, Rational(0))};
    for (auto i : part.rays) div.coefficients[i] = 1;
    rows.push_back(rational_class(pres, div));
  }
  if (rows.front().empty()) return 0;
  auto cols = rows.front().size();
  return row_reduce(rows, cols).size();
}

}  // namespace detail

inline ComplexityReport complexity(const ToricPair& pair, const Decomposition& d) {
  if (auto bad = decomposition_mismatch(pair, d)) throw Error("decomposition mismatch: " + *bad);
  auto pres = class_group_presentation(pair.variety());
  return ComplexityReport(detail::decomposition_rho(pres, pair, d), d.norm(), pair.dim());
}

struct BmszReport {
  ComplexityReport complexity;
  Integer floor_2c;
  RaySet reduced_rays;  // rays of floor(B)
};

inline BmszReport assert_bmsz(const ToricPair& pair, const Decomposition& d) {
  if (!is_log_cy(pair)) throw Error("pair is not log Calabi-Yau");
  auto r = complexity(pair, d);
  if (r.c() < 0) throw Error("BMSZ violation: complexity " + to_string(r.c()) + " is negative");
  RaySet reduced;
  for (std::size_t i = 0; i < pair.boundary().coefficients.size(); ++i)
    if (pair.coefficient(i) >= 1) reduced.push_back(i);
  return {r, floor(Rational(2) * r.c()), std::move(reduced)};
}

/// Complexity before and after a crepant pullback to `fine`. The decomposition
/// on the refinement keeps the old parts (reindexed) and adds a singleton part
/// for every new ray with positive pulled-back coefficient.
inline std::pair<ComplexityReport, ComplexityReport> complexity_transport(const ToricPair& pair, const Fan& fine,
                                                                          const Decomposition& d) {
  auto before = complexity(pair, d);
  auto pulled = crepant_pullback(pair, fine);
  Decomposition dz;
  for (const auto& part : d.parts) {
    RaySet rays;
    for (auto i : part.rays) rays.push_back(*fine.index_of(pair.fan().ray(i)));
    dz.add(part.weight, std::move(rays));
  }
  bool all_reduced = true;
  for (std::size_t i = 0; i < fine.rays().size(); ++i) {
    if (pair.fan().index_of(fine.ray(i))) continue;
    const auto& b = pulled.coefficient(i);
    if (b != 1) all_reduced = false;
    if (b > 0) dz.add(b, {i});
  }
  auto after = complexity(pulled, dz);
  if (all_reduced && after.c() != before.c())
    throw std::logic_error("complexity changed under a reduced crepant extraction");
  return {before, after};
}

}  // namespace torickit
