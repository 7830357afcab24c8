// Strongly convex rational polyhedral cones.
#pragma once

#include "torickit/lattice.hpp"

#include <functional>
#include <map>
#include <set>

namespace torickit {

namespace detail {

/// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order.
/// Stops early when f returns false.
inline void for_each_combination(std::size_t n, std::size_t k,
                                 const std::function<bool(const std::vector<std::size_t>&)>& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (!f(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline bool is_sorted_subset(const std::vector<std::size_t>& small, const std::vector<std::size_t>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace detail

/// Linear description of a cone: e.x = 0 for every equation and a.x >= 0 for
/// every inequality. Inequalities are primitive facet normals chosen inside the
/// linear span of the cone.
struct HalfspaceForm {
  std::vector<LatticeVector> equations;
  std::vector<LatticeVector> inequalities;
};

/// Extreme rays (primitive) of {x : E x = 0, A x >= 0}, assumed pointed.
inline std::vector<LatticeVector> extreme_rays(std::size_t ambient, const HalfspaceForm& h) {
  const std::size_t e = rank(h.equations, ambient);
  std::vector<LatticeVector> rays;
  if (e >= ambient) return rays;
  const std::size_t need = ambient - 1 - e;
  auto feasible = [&](const LatticeVector& r) {
    for (const auto& eq : h.equations)
      if (dot(eq, r) != 0) return false;
    for (const auto& a : h.inequalities)
      if (dot(a, r) < 0) return false;
    return true;
  };
  std::set<LatticeVector> found;
  detail::for_each_combination(h.inequalities.size(), need, [&](const std::vector<std::size_t>& sub) {
    std::vector<LatticeVector> rows = h.equations;
    for (auto i : sub) rows.push_back(h.inequalities[i]);
    auto ker = kernel_basis(IntMatrix::from_rows(rows, ambient));
    if (ker.size() != 1) return true;
    for (const auto& r : {ker[0], LatticeVector(-ker[0])})
      if (feasible(r)) found.insert(r);
    return true;
  });
  return {found.begin(), found.end()};
}

/// A strongly convex rational polyhedral cone given by its primitive ray
/// generators. Construction validates the invariants and throws Error otherwise.
class Cone {
 public:
  Cone() = default;

  Cone(std::size_t rank, std::vector<LatticeVector> generators)
      : rank_(rank), generators_(std::move(generators)) {
    if (auto problem = analyse()) throw Error(*problem);
  }

  /// Checks the cone invariants without throwing; returns the first violation.
  static std::optional<std::string> diagnose(std::size_t rank, std::vector<LatticeVector> generators) {
    Cone c;
    c.rank_ = rank;
    c.generators_ = std::move(generators);
    return c.analyse();
  }

  std::size_t rank() const { return rank_; }
  std::size_t dim() const { return dim_; }
  const std::vector<LatticeVector>& generators() const { return generators_; }
  const HalfspaceForm& halfspaces() const { return halfspaces_; }

  /// Generator-index sets of the facets, aligned with halfspaces().inequalities.
  const std::vector<std::vector<std::size_t>>& facets() const { return facets_; }

  bool is_full_dimensional() const { return dim_ == rank_; }
  bool is_simplicial() const { return generators_.size() == dim_; }

  template <typename Vec>
  bool contains(const Vec& x) const {
    for (const auto& e : halfspaces_.equations)
      if (dot(to_rational(e), x) != 0) return false;
    for (const auto& a : halfspaces_.inequalities)
      if (dot(to_rational(a), x) < 0) return false;
    return true;
  }

  template <typename Vec>
  bool contains_in_relative_interior(const Vec& x) const {
    for (const auto& e : halfspaces_.equations)
      if (dot(to_rational(e), x) != 0) return false;
    for (const auto& a : halfspaces_.inequalities)
      if (dot(to_rational(a), x) <= 0) return false;
    return true;
  }

  /// Generator indices of the smallest face containing the given generators.
  std::vector<std::size_t> face_closure(const std::vector<std::size_t>& subset) const {
    if (subset.empty()) return {};
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < generators_.size(); ++j) {
      bool on_all = true;
      for (std::size_t f = 0; f < facets_.size() && on_all; ++f) {
        bool contains_subset = true;
        for (auto s : subset)
          if (!std::binary_search(facets_[f].begin(), facets_[f].end(), s)) contains_subset = false;
        if (contains_subset && !std::binary_search(facets_[f].begin(), facets_[f].end(), j)) on_all = false;
      }
      if (on_all) out.push_back(j);
    }
    return out;
  }

  bool is_face(std::vector<std::size_t> subset) const {
    std::sort(subset.begin(), subset.end());
    return face_closure(subset) == subset;
  }

  /// All faces as sorted generator-index sets, including {} and the cone itself.
  std::vector<std::vector<std::size_t>> faces() const {
    std::vector<std::size_t> all(generators_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::set<std::vector<std::size_t>> seen{all};
    std::vector<std::vector<std::size_t>> queue{all};
    while (!queue.empty()) {
      auto f = queue.back();
      queue.pop_back();
      for (const auto& facet : facets_) {
        std::vector<std::size_t> meet;
        std::set_intersection(f.begin(), f.end(), facet.begin(), facet.end(), std::back_inserter(meet));
        if (seen.insert(meet).second) queue.push_back(meet);
      }
    }
    return {seen.begin(), seen.end()};
  }

  /// Index of the sublattice spanned by the generators inside the lattice
  /// points of their linear span.
  Integer multiplicity() const {
    if (generators_.empty()) return 1;
    auto snf = smith_normal_form(IntMatrix::from_rows(generators_, rank_));
    Integer p = 1;
    for (std::size_t i = 0; i < snf.rank; ++i) p *= snf.D(i, i);
    return p;
  }

  bool is_unimodular() const { return is_simplicial() && multiplicity() == 1; }

  /// Triangulation into simplicial cones using only the existing generators
  /// (pulling from the lowest-index generator at each level).
  std::vector<std::vector<std::size_t>> triangulation() const {
    std::vector<std::size_t> all(generators_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return triangulate(all);
  }

 private:
  std::vector<std::vector<std::size_t>> triangulate(const std::vector<std::size_t>& idx) const {
    std::vector<LatticeVector> gens;
    for (auto i : idx) gens.push_back(generators_[i]);
    Cone sub(rank_, gens);
    if (sub.is_simplicial()) return {idx};
    std::vector<std::vector<std::size_t>> out;
    for (const auto& facet : sub.facets()) {
      if (std::binary_search(facet.begin(), facet.end(), std::size_t{0})) continue;
      std::vector<std::size_t> mapped;
      for (auto l : facet) mapped.push_back(idx[l]);
      for (auto simplex : triangulate(mapped)) {
        simplex.push_back(idx[0]);
        std::sort(simplex.begin(), simplex.end());
        out.push_back(std::move(simplex));
      }
    }
    return out;
  }

  std::optional<std::string> analyse() {
    for (const auto& g : generators_) {
      if (g.rank() != rank_) return "generator " + to_string(g) + " has the wrong rank";
      if (g.is_zero()) return std::string("zero generator");
      if (!is_primitive(g)) return "generator " + to_string(g) + " is not primitive";
    }
    for (std::size_t i = 0; i < generators_.size(); ++i)
      for (std::size_t j = i + 1; j < generators_.size(); ++j)
        if (torickit::rank({generators_[i], generators_[j]}, rank_) < 2)
          return "generators " + to_string(generators_[i]) + " and " + to_string(generators_[j]) +
                 " are proportional";

    IntMatrix g = IntMatrix::from_rows(generators_, rank_);
    dim_ = torickit::rank(g);
    halfspaces_.equations = kernel_basis(g);
    halfspaces_.inequalities.clear();
    facets_.clear();
    if (dim_ == 0) return std::nullopt;

    std::vector<LatticeVector> basis;
    for (const auto& v : generators_) {
      auto trial = basis;
      trial.push_back(v);
      if (torickit::rank(trial, rank_) == trial.size()) basis = std::move(trial);
      if (basis.size() == dim_) break;
    }

    std::set<LatticeVector> normals;
    detail::for_each_combination(generators_.size(), dim_ - 1, [&](const std::vector<std::size_t>& sub) {
      IntMatrix m(sub.size(), dim_);
      for (std::size_t s = 0; s < sub.size(); ++s)
        for (std::size_t t = 0; t < dim_; ++t) m(s, t) = dot(generators_[sub[s]], basis[t]);
      auto ker = kernel_basis(m);
      if (ker.size() != 1) return true;
      auto a = LatticeVector::zero(rank_);
      for (std::size_t t = 0; t < dim_; ++t) a += ker[0][t] * basis[t];
      a = primitive(a);
      int pos = 0, neg = 0;
      for (const auto& v : generators_) {
        int s = sign(dot(a, v));
        if (s > 0) ++pos;
        if (s < 0) ++neg;
      }
      if (pos > 0 && neg > 0) return true;
      normals.insert(neg > 0 ? LatticeVector(-a) : a);
      return true;
    });
    halfspaces_.inequalities.assign(normals.begin(), normals.end());
    if (torickit::rank(halfspaces_.inequalities, rank_) != dim_) return std::string("cone is not strongly convex");

    for (const auto& a : halfspaces_.inequalities) {
      std::vector<std::size_t> on;
      for (std::size_t j = 0; j < generators_.size(); ++j)
        if (dot(a, generators_[j]) == 0) on.push_back(j);
      facets_.push_back(std::move(on));
    }
    for (std::size_t j = 0; j < generators_.size(); ++j) {
      std::vector<LatticeVector> tight;
      for (std::size_t f = 0; f < facets_.size(); ++f)
        if (std::binary_search(facets_[f].begin(), facets_[f].end(), j))
          tight.push_back(halfspaces_.inequalities[f]);
      if (torickit::rank(tight, rank_) + 1 != dim_)
        return "generator " + to_string(generators_[j]) + " does not span an extremal ray";
    }
    return std::nullopt;
  }

  std::size_t rank_ = 0;
  std::size_t dim_ = 0;
  std::vector<LatticeVector> generators_;
  HalfspaceForm halfspaces_;
  std::vector<std::vector<std::size_t>> facets_;
};

}  // namespace torickit
