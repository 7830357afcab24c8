// Brute-force reference computations used by the tests. They avoid the
// library's algorithms (normal forms, halfspace descriptions, triangulations)
// and work directly with small machine integers.
#pragma once

#include "torickit/number.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using i64 = std::int64_t;
using Vec = std::vector<i64>;
using torickit::Rational;

inline i64 det2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

inline i64 det(const std::vector<Vec>& cols) {
  if (cols.size() == 2) return det2(cols[0], cols[1]);
  const auto &a = cols[0], &b = cols[1], &c = cols[2];
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - b[0] * (a[1] * c[2] - a[2] * c[1]) + c[0] * (a[1] * b[2] - a[2] * b[1]);
}

inline i64 gcd_all(const Vec& v) {
  i64 g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g;
}

/// Coordinates of x in the basis `cols` (2 or 3 columns), by Cramer's rule.
inline std::vector<Rational> cramer(const std::vector<Vec>& cols, const Vec& x) {
  i64 d = det(cols);
  std::vector<Rational> out;
  for (std::size_t s = 0; s < cols.size(); ++s) {
    auto m = cols;
    m[s] = x;
    out.push_back(Rational(det(m)) / Rational(d));
  }
  return out;
}

enum class Class { terminal, canonical, klt, lc, not_lc };

/// Singularity class of the affine simplicial cone spanned by `gens` with
/// boundary coefficients `b` on its rays, by scanning every primitive lattice
/// point with coordinates bounded by `box`.
inline Class classify_simplicial(const std::vector<Vec>& gens, const std::vector<Rational>& b, i64 box) {
  for (const auto& c : b)
    if (c > 1) return Class::not_lc;
  bool klt = std::all_of(b.begin(), b.end(), [](const Rational& c) { return c < 1; });
  const std::size_t n = gens[0].size();
  std::optional<Rational> least;
  const i64 d = det(gens);
  Vec x(n, -box);
  for (;;) {
    if (gcd_all(x) == 1 && std::find(gens.begin(), gens.end(), x) == gens.end()) {
      // Integer Cramer numerators first; rationals only for points in the cone.
      std::vector<i64> num;
      for (std::size_t s = 0; s < gens.size(); ++s) {
        auto m = gens;
        m[s] = x;
        num.push_back(det(m));
      }
      if (std::all_of(num.begin(), num.end(), [&](i64 v) { return v == 0 || (v > 0) == (d > 0); })) {
        Rational psi = 0;
        for (std::size_t s = 0; s < gens.size(); ++s) psi += Rational(num[s]) / Rational(d) * (Rational(1) - b[s]);
        if (!least || psi < *least) least = psi;
      }
    }
    std::size_t j = 0;
    while (j < n && x[j] == box) x[j++] = -box;
    if (j == n) break;
    ++x[j];
  }
  if (!least || *least > 1) return Class::terminal;
  if (*least >= 1) return Class::canonical;
  return klt ? Class::klt : Class::lc;
}

/// Coordinate bound for the points sum lambda_i g_i with 0 <= lambda_i <= 1.
/// Minimal log discrepancies of a simplicial cone are attained there.
inline i64 parallelepiped_box(const std::vector<Vec>& gens) {
  i64 box = 0;
  for (const auto& g : gens) {
    i64 m = 0;
    for (auto x : g) m = std::max(m, std::abs(x));
    box += m;
  }
  return box;
}

/// Hilbert basis of the 2D cone spanned by u and w (det(u, w) > 0).
inline std::vector<Vec> hilbert_basis_2d(const Vec& u, const Vec& w) {
  // Irreducible elements lie in the triangle (0, u, w); summands of a point in
  // the box stay within four times the box.
  i64 box = std::max({std::abs(u[0]), std::abs(u[1]), std::abs(w[0]), std::abs(w[1])});
  auto in_cone = [&](const Vec& p) { return (p[0] || p[1]) && det2(u, p) >= 0 && det2(p, w) >= 0; };
  std::vector<Vec> summands;
  for (i64 x = -4 * box; x <= 4 * box; ++x)
    for (i64 y = -4 * box; y <= 4 * box; ++y)
      if (in_cone({x, y})) summands.push_back({x, y});
  std::vector<Vec> basis;
  for (i64 x = -box; x <= box; ++x)
    for (i64 y = -box; y <= box; ++y) {
      Vec p{x, y};
      if (!in_cone(p)) continue;
      bool reducible = false;
      for (const auto& q : summands)
        if (in_cone({p[0] - q[0], p[1] - q[1]})) {
          reducible = true;
          break;
        }
      if (!reducible) basis.push_back(p);
    }
  std::sort(basis.begin(), basis.end());
  return basis;
}

/// Counts lattice points strictly inside the triangle (0, a, b), det(a, b) > 0.
inline i64 interior_points_of_triangle(const Vec& a, const Vec& b) {
  i64 lo0 = std::min<i64>({0, a[0], b[0]}), hi0 = std::max<i64>({0, a[0], b[0]});
  i64 lo1 = std::min<i64>({0, a[1], b[1]}), hi1 = std::max<i64>({0, a[1], b[1]});
  i64 count = 0;
  Vec ba{b[0] - a[0], b[1] - a[1]};
  for (i64 x = lo0; x <= hi0; ++x)
    for (i64 y = lo1; y <= hi1; ++y) {
      Vec p{x, y}, pa{x - a[0], y - a[1]};
      if (det2(a, p) > 0 && det2(p, b) > 0 && det2(ba, pa) > 0) ++count;
    }
  return count;
}

using Polygon = std::vector<Vec>;  // counter-clockwise vertices around the origin

/// Whether some integral matrix of determinant +-1 maps p onto q.
inline bool gl2z_equivalent(const Polygon& p, const Polygon& q) {
  if (p.size() != q.size()) return false;
  const std::size_t k = p.size();
  std::set<Vec> target(q.begin(), q.end());
  const Vec &v0 = p[0], &v1 = p[1];
  i64 d = det2(v0, v1);
  for (std::size_t j = 0; j < k; ++j)
    for (int dir : {1, -1}) {
      const Vec& w0 = q[j];
      const Vec& w1 = q[(j + k + static_cast<std::size_t>(dir)) % k];
      // A = [w0 w1] [v0 v1]^-1
      i64 a00 = w0[0] * v1[1] - w1[0] * v0[1], a01 = -w0[0] * v1[0] + w1[0] * v0[0];
      i64 a10 = w0[1] * v1[1] - w1[1] * v0[1], a11 = -w0[1] * v1[0] + w1[1] * v0[0];
      if (a00 % d || a01 % d || a10 % d || a11 % d) continue;
      a00 /= d, a01 /= d, a10 /= d, a11 /= d;
      if (std::abs(a00 * a11 - a01 * a10) != 1) continue;
      bool all = true;
      for (const auto& v : p)
        if (!target.count({a00 * v[0] + a01 * v[1], a10 * v[0] + a11 * v[1]})) {
          all = false;
          break;
        }
      if (all) return true;
    }
  return false;
}

struct PolygonCensus {
  std::vector<Polygon> classes;
  std::size_t smooth = 0;
};

/// Convex lattice polygons with vertices in [-box, box]^2 whose only interior
/// lattice point is the origin, up to GL(2, Z).
inline PolygonCensus one_interior_point_polygons(i64 box) {
  std::vector<Vec> pts;
  for (i64 x = -box; x <= box; ++x)
    for (i64 y = -box; y <= box; ++y)
      if (std::gcd(x, y) == 1) pts.push_back({x, y});
  auto half = [](const Vec& p) { return (p[1] > 0 || (p[1] == 0 && p[0] > 0)) ? 0 : 1; };
  std::sort(pts.begin(), pts.end(), [&](const Vec& a, const Vec& b) {
    if (half(a) != half(b)) return half(a) < half(b);
    return det2(a, b) > 0;
  });
  auto turn = [](const Vec& a, const Vec& b, const Vec& c) {
    return det2(Vec{b[0] - a[0], b[1] - a[1]}, Vec{c[0] - b[0], c[1] - b[1]});
  };
  auto empty_wedge = [](const Vec& a, const Vec& b) { return det2(a, b) > 0 && interior_points_of_triangle(a, b) == 0; };

  PolygonCensus census;
  Polygon path;
  auto record = [&] {
    for (const auto& c : census.classes)
      if (gl2z_equivalent(path, c)) return;
    census.classes.push_back(path);
  };
  std::function<void(std::size_t)> grow = [&](std::size_t last) {
    const Vec& cur = pts[last];
    if (path.size() >= 3 && empty_wedge(cur, path[0]) && turn(path[path.size() - 2], cur, path[0]) > 0 &&
        turn(cur, path[0], path[1]) > 0)
      record();
    for (std::size_t n = last + 1; n < pts.size(); ++n) {
      if (!empty_wedge(cur, pts[n])) continue;
      if (path.size() >= 2 && turn(path[path.size() - 2], cur, pts[n]) <= 0) continue;
      path.push_back(pts[n]);
      grow(n);
      path.pop_back();
    }
  };
  for (std::size_t s = 0; s < pts.size(); ++s) {
    path = {pts[s]};
    grow(s);
  }
  for (const auto& c : census.classes) {
    bool smooth = true;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (det2(c[i], c[(i + 1) % c.size()]) != 1) smooth = false;
    if (smooth) ++census.smooth;
  }
  return census;
}

/// Markov triples a <= b <= c <= bound by scanning (a, b) and solving for c.
inline std::set<std::array<i64, 3>> markov_scan(i64 bound) {
  std::set<std::array<i64, 3>> out;
  for (i64 a = 1; a <= bound; ++a)
    for (i64 b = a; b <= bound; ++b) {
      // c^2 - 3ab c + a^2 + b^2 = 0
      i64 disc = 9 * a * a * b * b - 4 * (a * a + b * b);
      if (disc < 0) continue;
      i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(disc)));
      while (r * r > disc) --r;
      while ((r + 1) * (r + 1) <= disc) ++r;
      if (r * r != disc) continue;
      for (i64 num : {3 * a * b - r, 3 * a * b + r}) {
        if (num <= 0 || num % 2) continue;
        i64 c = num / 2;
        if (c >= b && c <= bound) out.insert({a, b, c});
      }
    }
  return out;
}

/// Rank over Q of integer or rational rows, by plain elimination.
inline std::size_t rank(std::vector<std::vector<Rational>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

/// Dimension of the span of the indicator vectors of `parts` in Cl_Q, as
/// rank(parts + principal) - rank(principal); `rays` are the ray generators.
inline std::size_t class_span_rank(const std::vector<Vec>& rays, const std::vector<std::vector<std::size_t>>& parts) {
  const std::size_t n = rays[0].size(), k = rays.size();
  std::vector<std::vector<Rational>> principal;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> row;
    for (const auto& r : rays) row.emplace_back(r[j]);
    principal.push_back(row);
  }
  auto both = principal;
  for (const auto& p : parts) {
    std::vector<Rational> row(k, Rational(0));
    for (auto i : p) row[i] = 1;
    both.push_back(row);
  }
  return rank(both) - rank(principal);
}

}  // namespace oracle
