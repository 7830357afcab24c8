// Toric varieties X_fan: class groups, torus-invariant divisors, Cartier and
// Q-Cartier tests, the canonical divisor, weighted projective spaces and the
// toric Fano test.
#pragma once

#include "torickit/fan.hpp"

namespace torickit {

struct ToricVariety {
  Fan fan;

  std::size_t dim() const { return fan.rank(); }
  std::size_t ray_count() const { return fan.rays().size(); }
};

/// sum_i coefficients[i] * D_i over the rays of the fan.
struct TorusInvariantDivisor {
  RationalVector coefficients;

  bool is_integral() const {
    return std::all_of(coefficients.begin(), coefficients.end(), [](const Rational& c) { return torickit::is_integral(c); });
  }
  friend TorusInvariantDivisor operator+(TorusInvariantDivisor a, const TorusInvariantDivisor& b) {
    for (std::size_t i = 0; i < a.coefficients.size(); ++i) a.coefficients[i] += b.coefficients.at(i);
    return a;
  }
  friend TorusInvariantDivisor operator*(const Rational& k, TorusInvariantDivisor a) {
    for (auto& c : a.coefficients) c *= k;
    return a;
  }
  friend bool operator==(const TorusInvariantDivisor& a, const TorusInvariantDivisor& b) {
    return a.coefficients == b.coefficients;
  }
};

/// Element of Cl(X) in the Smith presentation: free coordinates followed by
/// torsion residues reduced into [0, d_i).
struct DivisorClass {
  std::vector<Integer> free_part;
  std::vector<Integer> torsion_part;

  bool is_zero() const {
    auto zero = [](const Integer& x) { return x == 0; };
    return std::all_of(free_part.begin(), free_part.end(), zero) &&
           std::all_of(torsion_part.begin(), torsion_part.end(), zero);
  }
  bool is_torsion() const {
    return std::all_of(free_part.begin(), free_part.end(), [](const Integer& x) { return x == 0; });
  }
  friend bool operator==(const DivisorClass& a, const DivisorClass& b) {
    return a.free_part == b.free_part && a.torsion_part == b.torsion_part;
  }
};

inline std::string to_string(const DivisorClass& c) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.free_part.size(); ++i) s += (i ? "," : "") + c.free_part[i].str();
  if (!c.torsion_part.empty()) {
    s += " |";
    for (const auto& t : c.torsion_part) s += " " + t.str();
  }
  return s + "]";
}

/// Cl(X) = Z^{rays} / image(M -> Z^{rays}, m -> (<m, u_i>)_i), with the Smith
/// transform kept so that divisors can be mapped to classes.
struct ClassGroupPresentation {
  IntMatrix U;                 // Smith left transform
  std::vector<Integer> diag;   // invariant factors, one per relation rank
  std::size_t ray_count = 0;
  AbelianGroupStructure structure;

  std::size_t relation_rank() const { return diag.size(); }
};

inline IntMatrix ray_matrix(const Fan& fan) { return IntMatrix::from_rows(fan.rays(), fan.rank()); }

inline ClassGroupPresentation class_group_presentation(const ToricVariety& x) {
  IntMatrix a = ray_matrix(x.fan);
  auto snf = smith_normal_form(a);
  ClassGroupPresentation p;
  p.U = snf.U;
  p.ray_count = a.rows();
  for (std::size_t i = 0; i < snf.rank; ++i) p.diag.push_back(snf.D(i, i));
  p.structure = cokernel_structure(a);
  return p;
}

inline AbelianGroupStructure class_group(const ToricVariety& x) { return class_group_presentation(x).structure; }

inline DivisorClass divisor_class(const ClassGroupPresentation& p, const TorusInvariantDivisor& d) {
  if (d.coefficients.size() != p.ray_count) throw Error("divisor has the wrong number of coefficients");
  if (!d.is_integral()) throw Error("divisor_class needs an integral divisor; use rational_class");
  std::vector<Integer> coeffs;
  for (const auto& c : d.coefficients) coeffs.push_back(numerator(c));
  LatticeVector y = p.U * LatticeVector(std::move(coeffs));
  DivisorClass out;
  for (std::size_t i = 0; i < p.relation_rank(); ++i) {
    if (p.diag[i] == 1) continue;
    Integer r = y[i] % p.diag[i];
    if (r < 0) r += p.diag[i];
    out.torsion_part.push_back(r);
  }
  for (std::size_t i = p.relation_rank(); i < p.ray_count; ++i) out.free_part.push_back(y[i]);
  return out;
}

inline DivisorClass divisor_class(const ToricVariety& x, const TorusInvariantDivisor& d) {
  return divisor_class(class_group_presentation(x), d);
}

/// Image of a Q-divisor in Cl_Q(X) (free coordinates only).
inline RationalVector rational_class(const ClassGroupPresentation& p, const TorusInvariantDivisor& d) {
  if (d.coefficients.size() != p.ray_count) throw Error("divisor has the wrong number of coefficients");
  RationalVector out;
  for (std::size_t i = p.relation_rank(); i < p.ray_count; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < p.ray_count; ++j) s += Rational(p.U(i, j)) * d.coefficients[j];
    out.push_back(s);
  }
  return out;
}

inline RationalVector rational_class(const ToricVariety& x, const TorusInvariantDivisor& d) {
  return rational_class(class_group_presentation(x), d);
}

/// div(chi^m) = sum_i <m, u_i> D_i.
inline TorusInvariantDivisor principal_divisor(const ToricVariety& x, const LatticeVector& m) {
  TorusInvariantDivisor d;
  for (const auto& u : x.fan.rays()) d.coefficients.emplace_back(dot(m, u));
  return d;
}

inline TorusInvariantDivisor zero_divisor(const ToricVariety& x) {
  return {RationalVector(x.ray_count(), Rational(0))};
}

namespace detail {

// Linear system <m, u_i> = -a_i over the rays of one cone.
inline std::pair<IntMatrix, RationalVector> cartier_system(const Fan& fan, const RaySet& cone,
                                                           const TorusInvariantDivisor& d) {
  IntMatrix a = IntMatrix::from_rows(fan.generators(cone), fan.rank());
  RationalVector rhs;
  for (auto i : cone) rhs.push_back(-d.coefficients.at(i));
  return {a, rhs};
}

}  // namespace detail

/// Local Cartier data m_sigma with <m_sigma, u_i> = -a_i on each maximal
/// cone, or nullopt when D is not Q-Cartier.
inline std::optional<std::vector<RationalVector>> cartier_data(const ToricVariety& x, const TorusInvariantDivisor& d) {
  if (d.coefficients.size() != x.ray_count()) throw Error("divisor has the wrong number of coefficients");
  std::vector<RationalVector> data;
  for (const auto& c : x.fan.max_cones()) {
    auto [a, rhs] = detail::cartier_system(x.fan, c, d);
    auto m = solve_rational(a, rhs);
    if (!m) return std::nullopt;
    data.push_back(std::move(*m));
  }
  return data;
}

inline bool is_qcartier(const ToricVariety& x, const TorusInvariantDivisor& d) {
  return cartier_data(x, d).has_value();
}

inline bool is_cartier(const ToricVariety& x, const TorusInvariantDivisor& d) {
  if (d.coefficients.size() != x.ray_count()) throw Error("divisor has the wrong number of coefficients");
  if (!d.is_integral()) return false;
  for (const auto& c : x.fan.max_cones()) {
    auto [a, rhs] = detail::cartier_system(x.fan, c, d);
    std::vector<Integer> b;
    for (const auto& r : rhs) b.push_back(numerator(r));
    if (!solve_integer(a, LatticeVector(std::move(b)))) return false;
  }
  return true;
}

/// K_X = -sum_i D_i.
inline TorusInvariantDivisor canonical_divisor(const ToricVariety& x) {
  return {RationalVector(x.ray_count(), Rational(-1))};
}

/// Fan of P(w_0, ..., w_n). Rays satisfy sum_i w_i v_i = 0. When w_0 = 1 the
/// rays are v_i = e_i for i >= 1 and v_0 = -sum w_i e_i; otherwise the lattice
/// is Z^{n+1} / Z w with a basis read off a Hermite transform of w.
inline Fan weighted_projective_fan(const std::vector<Integer>& weights) {
  if (weights.size() < 2) throw Error("weighted projective space needs at least two weights");
  Integer g = 0;
  for (const auto& w : weights) {
    if (w <= 0) throw Error("weights must be positive");
    g = gcd(g, w);
  }
  if (g != 1) throw Error("weights are not coprime");
  const std::size_t n = weights.size() - 1;
  std::vector<LatticeVector> rays(n + 1, LatticeVector::zero(n));
  if (weights[0] == 1) {
    for (std::size_t i = 1; i <= n; ++i) {
      rays[i][i - 1] = 1;
      rays[0][i - 1] = -weights[i];
    }
  } else {
    IntMatrix w(n + 1, 1);
    for (std::size_t i = 0; i <= n; ++i) w(i, 0) = weights[i];
    auto h = hermite_normal_form(w);
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t r = 1; r <= n; ++r) rays[i][r - 1] = h.U(r, i);
  }
  std::vector<RaySet> cones;
  for (std::size_t skip = 0; skip <= n; ++skip) {
    RaySet c;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != skip) c.push_back(i);
    cones.push_back(std::move(c));
  }
  return Fan(n, std::move(rays), std::move(cones));
}

inline Fan projective_space_fan(std::size_t n) {
  return weighted_projective_fan(std::vector<Integer>(n + 1, Integer(1)));
}

/// Hirzebruch surface F_a: rays (1,0), (0,1), (-1,a), (0,-1).
inline Fan hirzebruch_fan(long a) {
  return Fan(2, {{1, 0}, {0, 1}, {-1, a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

inline Fan product_fan(const Fan& f, const Fan& g) {
  const std::size_t n = f.rank() + g.rank();
  std::vector<LatticeVector> rays;
  for (const auto& r : f.rays()) {
    auto v = LatticeVector::zero(n);
    for (std::size_t i = 0; i < f.rank(); ++i) v[i] = r[i];
    rays.push_back(v);
  }
  for (const auto& r : g.rays()) {
    auto v = LatticeVector::zero(n);
    for (std::size_t i = 0; i < g.rank(); ++i) v[f.rank() + i] = r[i];
    rays.push_back(v);
  }
  std::vector<RaySet> cones;
  for (const auto& a : f.max_cones())
    for (const auto& b : g.max_cones()) {
      RaySet c = a;
      for (auto i : b) c.push_back(f.rays().size() + i);
      cones.push_back(std::move(c));
    }
  return Fan(n, std::move(rays), std::move(cones));
}

/// Fan consisting of one cone and its faces.
inline Fan affine_fan(const Cone& c) {
  RaySet all(c.generators().size());
  std::iota(all.begin(), all.end(), 0);
  return Fan(c.rank(), c.generators(), {all});
}

/// -K_X is ample: the support function with value 1 on every ray is strictly
/// convex across every wall. Only complete simplicial fans are supported.
inline bool is_fano(const ToricVariety& x) {
  const Fan& fan = x.fan;
  if (!is_simplicial(fan) || !is_complete(fan)) throw Error("ampleness test unsupported: fan must be complete and simplicial");
  const auto& cones = fan.max_cones();
  std::vector<RationalVector> psi;
  for (const auto& c : cones) {
    IntMatrix a = IntMatrix::from_rows(fan.generators(c), fan.rank());
    auto m = solve_rational(a, RationalVector(c.size(), Rational(1)));
    assert(m);
    psi.push_back(*m);
  }
  for (std::size_t s = 0; s < cones.size(); ++s)
    for (std::size_t t = 0; t < cones.size(); ++t) {
      if (s == t) continue;
      RaySet shared = detail::intersect(cones[s], cones[t]);
      if (shared.size() + 1 != fan.rank()) continue;
      for (auto i : cones[t]) {
        if (std::binary_search(cones[s].begin(), cones[s].end(), i)) continue;
        if (dot(psi[s], fan.ray(i)) >= 1) return false;
      }
    }
  return true;
}

}  // namespace torickit
