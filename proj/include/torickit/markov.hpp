// Markov triples a^2 + b^2 + c^2 = 3abc, Vieta jumps, and the numerics of the
// weighted hypersurfaces V(x1 x2 + x3^c + x4^d) in P(a^2, b^2, d, c).
#pragma once

#include "torickit/number.hpp"

#include <array>
#include <deque>
#include <set>

namespace torickit {

class MarkovTriple {
 public:
  /// Sorts the entries and checks the Markov equation.
  MarkovTriple(Integer a, Integer b, Integer c) : t_{std::move(a), std::move(b), std::move(c)} {
    std::sort(t_.begin(), t_.end());
    if (t_[0] <= 0) throw Error("Markov triple entries must be positive");
    if (t_[0] * t_[0] + t_[1] * t_[1] + t_[2] * t_[2] != 3 * t_[0] * t_[1] * t_[2])
      throw Error("(" + t_[0].str() + "," + t_[1].str() + "," + t_[2].str() + ") is not a Markov triple");
  }

  const Integer& a() const { return t_[0]; }
  const Integer& b() const { return t_[1]; }
  const Integer& c() const { return t_[2]; }
  const Integer& operator[](std::size_t i) const { return t_[i]; }

  friend auto operator<=>(const MarkovTriple&, const MarkovTriple&) = default;

 private:
  std::array<Integer, 3> t_;
};

inline std::string to_string(const MarkovTriple& t) {
  return "(" + t.a().str() + "," + t.b().str() + "," + t.c().str() + ")";
}

/// Replaces entry i by 3 * (product of the other two) - entry i.
inline MarkovTriple vieta_jump(const MarkovTriple& t, std::size_t i) {
  if (i > 2) throw Error("Vieta jump position must be 0, 1 or 2");
  std::array<Integer, 3> x{t.a(), t.b(), t.c()};
  Integer other = 1;
  for (std::size_t j = 0; j < 3; ++j)
    if (j != i) other *= x[j];
  x[i] = 3 * other - x[i];
  return MarkovTriple(x[0], x[1], x[2]);
}

/// (a, b, 3ab - c), sorted.
inline MarkovTriple adjacent_triple(const MarkovTriple& t) {
  Integer d = 3 * t.a() * t.b() - t.c();
  if (d <= 0) throw std::logic_error("adjacent entry is not positive for " + to_string(t));
  return MarkovTriple(t.a(), t.b(), d);
}

/// All triples with largest entry <= bound, sorted.
inline std::vector<MarkovTriple> enumerate_markov(const Integer& bound) {
  if (bound < 1) throw Error("bound must be at least 1");
  std::set<MarkovTriple> seen;
  std::deque<MarkovTriple> queue{MarkovTriple(1, 1, 1)};
  seen.insert(queue.front());
  while (!queue.empty()) {
    auto t = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < 3; ++i) {
      auto n = vieta_jump(t, i);
      // Jumps never shrink the maximum except towards the root, which is
      // already seen, so the search stays within the bound.
      if (n.c() > bound || !seen.insert(n).second) continue;
      queue.push_back(n);
    }
  }
  return {seen.begin(), seen.end()};
}

struct HkwSurfaceData {
  std::array<Integer, 4> weights;  // (a^2, b^2, d, c)
  Integer degree;                  // c d
  Integer amplitude;               // sum of weights - degree
  bool wellformed = false;
  bool quasismooth = false;
  bool fano = false;
  std::vector<std::string> notes;
};

/// Numerics of V(x1 x2 + x3^c + x4^d) in P(a^2, b^2, d, c) with d = 3ab - c.
inline HkwSurfaceData hkw_surface(const MarkovTriple& t) {
  const Integer& a = t.a();
  const Integer& b = t.b();
  const Integer& c = t.c();
  Integer d = 3 * a * b - c;
  if (d <= 0) throw std::logic_error("adjacent entry is not positive for " + to_string(t));

  HkwSurfaceData h;
  h.weights = {a * a, b * b, d, c};
  h.degree = c * d;
  if (h.degree != a * a + b * b) throw std::logic_error("degree identity c d = a^2 + b^2 fails for " + to_string(t));
  // Each monomial x1 x2, x3^c, x4^d must have the degree of the equation.
  if (h.weights[0] + h.weights[1] != h.degree || c * h.weights[2] != h.degree || d * h.weights[3] != h.degree)
    throw std::logic_error("equation is not quasi-homogeneous for " + to_string(t));
  h.amplitude = h.weights[0] + h.weights[1] + h.weights[2] + h.weights[3] - h.degree;
  h.fano = h.amplitude > 0;

  h.wellformed = true;
  for (std::size_t skip = 0; skip < 4; ++skip) {
    Integer g = 0;
    for (std::size_t j = 0; j < 4; ++j)
      if (j != skip) g = gcd(g, h.weights[j]);
    if (g != 1) {
      h.wellformed = false;
      h.notes.push_back("weights without x" + std::to_string(skip + 1) + " share the factor " + g.str());
    }
  }

  // Partials x2, x1, c x3^(c-1), d x4^(d-1). The first two force x1 = x2 = 0;
  // an exponent of 1 gives a nonzero constant partial (empty common zero set),
  // an exponent >= 2 forces that coordinate to vanish.
  bool constant_partial = c == 1 || d == 1;
  bool x3_forced = c >= 2, x4_forced = d >= 2;
  h.quasismooth = constant_partial || (x3_forced && x4_forced);
  return h;
}

}  // namespace torickit
