// Lattice and rational polytopes, polar duality, reflexivity, face fans, a
// normal form for lattice polygons and the enumeration of reflexive polygons.
#pragma once

#include "torickit/variety.hpp"

#include <cstdint>

namespace torickit {

/// A full-dimensional convex polytope with rational vertices. Facets are
/// stored as inequalities normal . x >= offset, normal primitive.
class RationalPolytope {
 public:
  RationalPolytope() = default;

  /// Convex hull of `points`; points that are not vertices are dropped.
  RationalPolytope(std::size_t rank, const std::vector<RationalVector>& points) : rank_(rank) { build(points); }

  std::size_t rank() const { return rank_; }
  const std::vector<RationalVector>& vertices() const { return vertices_; }
  const std::vector<LatticeVector>& facet_normals() const { return normals_; }
  const RationalVector& facet_offsets() const { return offsets_; }
  /// Vertex indices on each facet, aligned with facet_normals().
  const std::vector<std::vector<std::size_t>>& facets() const { return facets_; }

  bool contains(const RationalVector& x) const {
    for (std::size_t f = 0; f < normals_.size(); ++f)
      if (dot(x, normals_[f]) < offsets_[f]) return false;
    return true;
  }
  bool contains_in_interior(const RationalVector& x) const {
    for (std::size_t f = 0; f < normals_.size(); ++f)
      if (dot(x, normals_[f]) <= offsets_[f]) return false;
    return true;
  }
  bool has_origin_in_interior() const { return contains_in_interior(RationalVector(rank_, Rational(0))); }
  bool is_integral() const {
    for (const auto& v : vertices_)
      for (const auto& c : v)
        if (!torickit::is_integral(c)) return false;
    return true;
  }

  friend bool operator==(const RationalPolytope& a, const RationalPolytope& b) {
    return a.rank_ == b.rank_ && a.vertices_ == b.vertices_;
  }

 private:
  void build(const std::vector<RationalVector>& input) {
    if (rank_ == 0) throw Error("polytope rank must be positive");
    std::vector<RationalVector> points;
    for (const auto& p : input) {
      if (p.size() != rank_) throw Error("point " + to_string(p) + " has the wrong rank");
      if (std::find(points.begin(), points.end(), p) == points.end()) points.push_back(p);
    }
    if (points.size() < rank_ + 1) throw Error("polytope is not full-dimensional");

    std::set<std::pair<LatticeVector, Rational>> hyperplanes;
    detail::for_each_combination(points.size(), rank_, [&](const std::vector<std::size_t>& sub) {
      RationalMatrix diffs;
      for (std::size_t s = 1; s < sub.size(); ++s) {
        RationalVector d(rank_);
        for (std::size_t j = 0; j < rank_; ++j) d[j] = points[sub[s]][j] - points[sub[0]][j];
        diffs.push_back(std::move(d));
      }
      std::vector<LatticeVector> ker;
      if (diffs.empty()) ker = {LatticeVector::unit(1, 0)};
      else ker = kernel_basis(diffs, rank_);
      if (ker.size() != 1) return true;
      LatticeVector a = ker[0];
      Rational h = dot(points[sub[0]], a);
      int pos = 0, neg = 0;
      for (const auto& p : points) {
        int s = sign(Rational(dot(p, a) - h));
        if (s > 0) ++pos;
        if (s < 0) ++neg;
      }
      if (pos > 0 && neg > 0) return true;
      if (neg > 0) {
        a = -a;
        h = -h;
      }
      hyperplanes.insert({a, h});
      return true;
    });
    for (const auto& [a, h] : hyperplanes) {
      normals_.push_back(a);
      offsets_.push_back(h);
    }
    if (torickit::rank(normals_, rank_) != rank_) throw Error("polytope is not full-dimensional");

    for (const auto& p : points) {
      std::vector<LatticeVector> tight;
      for (std::size_t f = 0; f < normals_.size(); ++f)
        if (dot(p, normals_[f]) == offsets_[f]) tight.push_back(normals_[f]);
      if (torickit::rank(tight, rank_) == rank_) vertices_.push_back(p);
    }
    order_vertices();
    for (std::size_t f = 0; f < normals_.size(); ++f) {
      std::vector<std::size_t> on;
      for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (dot(vertices_[i], normals_[f]) == offsets_[f]) on.push_back(i);
      facets_.push_back(std::move(on));
    }
  }

  // Lexicographic order in general; in rank 2 counter-clockwise starting from
  // the lexicographically smallest vertex.
  void order_vertices() {
    std::sort(vertices_.begin(), vertices_.end());
    if (rank_ != 2) return;
    RationalVector c(2, Rational(0));
    for (const auto& v : vertices_)
      for (int j = 0; j < 2; ++j) c[j] += v[j];
    for (int j = 0; j < 2; ++j) c[j] /= Rational(static_cast<long>(vertices_.size()));
    auto half = [&](const RationalVector& v) {
      Rational x = v[0] - c[0], y = v[1] - c[1];
      return (y > 0 || (y == 0 && x > 0)) ? 0 : 1;
    };
    auto cross = [&](const RationalVector& a, const RationalVector& b) {
      return (a[0] - c[0]) * (b[1] - c[1]) - (a[1] - c[1]) * (b[0] - c[0]);
    };
    std::sort(vertices_.begin(), vertices_.end(), [&](const RationalVector& a, const RationalVector& b) {
      int ha = half(a), hb = half(b);
      if (ha != hb) return ha < hb;
      return cross(a, b) > 0;
    });
    auto first = std::min_element(vertices_.begin(), vertices_.end());
    std::rotate(vertices_.begin(), first, vertices_.end());
  }

  std::size_t rank_ = 0;
  std::vector<RationalVector> vertices_;
  std::vector<LatticeVector> normals_;
  RationalVector offsets_;
  std::vector<std::vector<std::size_t>> facets_;
};

/// A rational polytope whose vertices are lattice points.
class LatticePolytope {
 public:
  LatticePolytope() = default;
  LatticePolytope(std::size_t rank, const std::vector<LatticeVector>& points) {
    std::vector<RationalVector> q;
    for (const auto& p : points) {
      if (p.rank() != rank) throw Error("point " + to_string(p) + " has the wrong rank");
      q.push_back(to_rational(p));
    }
    hull_ = RationalPolytope(rank, q);
    for (const auto& v : hull_.vertices()) vertices_.push_back(primitive_free(v));
  }
  explicit LatticePolytope(const RationalPolytope& p) : hull_(p) {
    if (!p.is_integral()) throw Error("polytope has non-integral vertices");
    for (const auto& v : p.vertices()) vertices_.push_back(primitive_free(v));
  }

  std::size_t rank() const { return hull_.rank(); }
  const std::vector<LatticeVector>& vertices() const { return vertices_; }
  const RationalPolytope& hull() const { return hull_; }

  friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) { return a.hull_ == b.hull_; }
  friend bool operator<(const LatticePolytope& a, const LatticePolytope& b) {
    if (a.vertices_.size() != b.vertices_.size()) return a.vertices_.size() < b.vertices_.size();
    return a.vertices_ < b.vertices_;
  }

 private:
  static LatticeVector primitive_free(const RationalVector& v) {
    std::vector<Integer> c;
    for (const auto& x : v) c.push_back(numerator(x));
    return LatticeVector(std::move(c));
  }

  RationalPolytope hull_;
  std::vector<LatticeVector> vertices_;
};

inline std::string to_string(const LatticePolytope& p) {
  std::string s = "conv{";
  for (std::size_t i = 0; i < p.vertices().size(); ++i) s += (i ? ", " : "") + to_string(p.vertices()[i]);
  return s + "}";
}

/// {y : <y, x> >= -1 for all x in P}.
inline RationalPolytope dual_polytope(const RationalPolytope& p) {
  if (!p.has_origin_in_interior()) throw Error("origin is not in the interior of the polytope");
  std::vector<RationalVector> verts;
  for (std::size_t f = 0; f < p.facet_normals().size(); ++f) {
    // normal . x >= offset with offset < 0, so (normal / -offset) . x >= -1.
    Rational scale = Rational(-1) / p.facet_offsets()[f];
    RationalVector y;
    for (const auto& c : p.facet_normals()[f].coords()) y.push_back(Rational(c) * scale);
    verts.push_back(std::move(y));
  }
  return RationalPolytope(p.rank(), verts);
}

inline RationalPolytope dual_polytope(const LatticePolytope& p) { return dual_polytope(p.hull()); }

inline bool is_reflexive(const LatticePolytope& p) { return dual_polytope(p).is_integral(); }

inline bool is_smooth_fano_polytope(const LatticePolytope& p) {
  if (!p.hull().has_origin_in_interior()) throw Error("origin is not in the interior of the polytope");
  for (const auto& facet : p.hull().facets()) {
    if (facet.size() != p.rank()) return false;
    std::vector<LatticeVector> rows;
    for (auto i : facet) rows.push_back(p.vertices()[i]);
    if (abs(determinant(IntMatrix::from_rows(rows, p.rank()))) != 1) return false;
  }
  return true;
}

/// Cones over the facets.
inline Fan face_fan(const LatticePolytope& p) {
  if (!p.hull().has_origin_in_interior()) throw Error("origin is not in the interior of the polytope");
  std::vector<LatticeVector> rays;
  for (const auto& v : p.vertices()) rays.push_back(primitive(v));
  std::vector<RaySet> cones(p.hull().facets().begin(), p.hull().facets().end());
  return Fan(p.rank(), rays, cones);
}

/// Canonical representative of the GL(2, Z)-orbit of a polygon: the smallest
/// Hermite form of the vertex matrix over all cyclic orderings of the vertices.
inline LatticePolytope unimodular_normal_form(const LatticePolytope& p) {
  if (p.rank() != 2) throw Error("normal form is only supported for polygons (rank 2)");
  const auto& v = p.vertices();
  const std::size_t k = v.size();
  std::optional<IntMatrix> best;
  for (int dir : {1, -1})
    for (std::size_t start = 0; start < k; ++start) {
      IntMatrix m(2, k);
      for (std::size_t t = 0; t < k; ++t) {
        const auto& x = v[(start + k + static_cast<std::size_t>(dir) * t) % k];
        m(0, t) = x[0];
        m(1, t) = x[1];
      }
      auto h = hermite_normal_form(m).H;
      auto less = [](const IntMatrix& a, const IntMatrix& b) {
        for (std::size_t i = 0; i < a.rows(); ++i)
          for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
        return false;
      };
      if (!best || less(h, *best)) best = h;
    }
  std::vector<LatticeVector> cols;
  for (std::size_t t = 0; t < k; ++t) cols.push_back(LatticeVector{(*best)(0, t), (*best)(1, t)});
  return LatticePolytope(2, cols);
}

namespace detail {

struct Point2 {
  std::int64_t x, y;
};

inline std::int64_t cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }

// Angular order around the origin starting from the positive x-axis.
inline bool angle_less(const Point2& a, const Point2& b) {
  auto half = [](const Point2& p) { return (p.y > 0 || (p.y == 0 && p.x > 0)) ? 0 : 1; };
  if (half(a) != half(b)) return half(a) < half(b);
  return cross(a, b) > 0;
}

// Vertex cycles (counter-clockwise, starting at the smallest angle) of the
// polygons whose vertices lie in [-bound, bound]^2 and all of whose edges lie
// at lattice distance one from the origin.
inline std::vector<std::vector<Point2>> height_one_polygons(std::int64_t bound) {
  std::vector<Point2> pts;
  for (std::int64_t x = -bound; x <= bound; ++x)
    for (std::int64_t y = -bound; y <= bound; ++y)
      if (std::gcd(x, y) == 1) pts.push_back({x, y});
  std::sort(pts.begin(), pts.end(), angle_less);

  auto height_one = [](const Point2& a, const Point2& b) {
    return cross(a, b) == std::gcd(b.x - a.x, b.y - a.y) && cross(a, b) > 0;
  };
  auto convex_turn = [](const Point2& a, const Point2& b, const Point2& c) {
    return cross({b.x - a.x, b.y - a.y}, {c.x - b.x, c.y - b.y}) > 0;
  };

  std::vector<std::vector<Point2>> out;
  std::vector<Point2> path;
  std::function<void(std::size_t)> extend = [&](std::size_t last) {
    const Point2& cur = pts[last];
    if (path.size() >= 3 && height_one(cur, path[0]) && convex_turn(path[path.size() - 2], cur, path[0]) &&
        convex_turn(cur, path[0], path[1]))
      out.push_back(path);
    for (std::size_t n = last + 1; n < pts.size(); ++n) {
      if (!height_one(cur, pts[n])) continue;
      if (path.size() >= 2 && !convex_turn(path[path.size() - 2], cur, pts[n])) continue;
      path.push_back(pts[n]);
      extend(n);
      path.pop_back();
    }
  };
  for (std::size_t s = 0; s < pts.size(); ++s) {
    path = {pts[s]};
    extend(s);
  }
  return out;
}

inline std::vector<LatticePolytope> reflexive_polygons_in_box(std::int64_t bound) {
  std::set<std::vector<LatticeVector>> seen;
  std::vector<LatticePolytope> out;
  for (const auto& cycle : height_one_polygons(bound)) {
    std::vector<LatticeVector> verts;
    for (const auto& p : cycle) verts.push_back(LatticeVector{p.x, p.y});
    auto nf = unimodular_normal_form(LatticePolytope(2, verts));
    if (seen.insert(nf.vertices()).second) out.push_back(nf);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Reflexive polygons up to GL(2, Z), sorted by vertex count and vertices.
/// The search box is enlarged until the count is stable.
inline std::vector<LatticePolytope> enumerate_reflexive_polygons(std::int64_t start_bound = 4) {
  auto found = detail::reflexive_polygons_in_box(start_bound);
  for (std::int64_t b = start_bound + 1;; ++b) {
    auto next = detail::reflexive_polygons_in_box(b);
    if (next.size() == found.size()) return found;
    found = std::move(next);
  }
}

}  // namespace torickit
