// Toric pairs (X, B): log discrepancies of toric valuations, singularity
// classes, the log CY and index tests, crepant pullback along refinements and
// classification of extracted places.
//
// Exceptional divisors over X are quantified torically: only the divisorial
// valuations given by primitive lattice points of the support are considered.
// For toric pairs the extremal log discrepancies are attained at these.
#pragma once

#include "torickit/variety.hpp"

namespace torickit {

/// A toric variety with an effective torus-invariant Q-divisor B.
class ToricPair {
 public:
  ToricPair(Fan fan, RationalVector boundary) : variety_{std::move(fan)}, boundary_{std::move(boundary)} {
    if (boundary_.coefficients.size() != variety_.ray_count())
      throw Error("boundary has " + std::to_string(boundary_.coefficients.size()) + " coefficients for " +
                  std::to_string(variety_.ray_count()) + " rays");
    for (std::size_t i = 0; i < boundary_.coefficients.size(); ++i)
      if (boundary_.coefficients[i] < 0)
        throw Error("boundary coefficient at ray " + std::to_string(i) + " is negative");
  }

  /// The pair with the reduced sum of all torus-invariant divisors.
  static ToricPair reduced_boundary(Fan fan) {
    auto n = fan.rays().size();
    return ToricPair(std::move(fan), RationalVector(n, Rational(1)));
  }

  const ToricVariety& variety() const { return variety_; }
  const Fan& fan() const { return variety_.fan; }
  const TorusInvariantDivisor& boundary() const { return boundary_; }
  const Rational& coefficient(std::size_t ray) const { return boundary_.coefficients.at(ray); }
  std::size_t dim() const { return variety_.dim(); }

  /// K_X + B.
  TorusInvariantDivisor log_canonical_divisor() const { return canonical_divisor(variety_) + boundary_; }

  friend bool operator==(const ToricPair& a, const ToricPair& b) {
    return a.fan() == b.fan() && a.boundary_ == b.boundary_;
  }

 private:
  ToricVariety variety_;
  TorusInvariantDivisor boundary_;
};

/// (P^n, coordinate hyperplanes).
inline ToricPair standard_pair(std::size_t n) {
  if (n == 0) throw Error("standard pair needs n >= 1");
  return ToricPair::reduced_boundary(projective_space_fan(n));
}

/// Raised when a log pullback acquires a negative coefficient.
class NegativeCoefficientError : public Error {
 public:
  NegativeCoefficientError(LatticeVector ray, Rational coefficient)
      : Error("log pullback has coefficient " + to_string(coefficient) + " at ray " + to_string(ray)),
        ray_(std::move(ray)),
        coefficient_(std::move(coefficient)) {}
  const LatticeVector& ray() const { return ray_; }
  const Rational& coefficient() const { return coefficient_; }

 private:
  LatticeVector ray_;
  Rational coefficient_;
};

/// The piecewise linear function psi with psi(u_i) = 1 - b_i, linear on each
/// maximal cone; psi(v) is the log discrepancy of the toric valuation v.
class LogDiscrepancyFunction {
 public:
  explicit LogDiscrepancyFunction(const ToricPair& pair) : fan_(pair.fan()) {
    // psi_sigma is the local Cartier datum of K_X + B.
    auto data = cartier_data(pair.variety(), pair.log_canonical_divisor());
    if (!data) throw Error("K_X + B is not Q-Cartier");
    functionals_ = std::move(*data);
    const auto& cones = fan_.max_cones();
    for (std::size_t s = 0; s < cones.size(); ++s)
      for (std::size_t t = s + 1; t < cones.size(); ++t)
        for (auto i : detail::intersect(cones[s], cones[t]))
          if (dot(functionals_[s], fan_.ray(i)) != dot(functionals_[t], fan_.ray(i)))
            throw std::logic_error("log discrepancy function disagrees on a shared face");
  }

  const Fan& fan() const { return fan_; }
  const std::vector<RationalVector>& functionals() const { return functionals_; }

  template <typename Vec>
  Rational operator()(const Vec& v) const {
    auto c = fan_.locate(v);
    if (!c) throw Error("valuation not visible in this fan");
    return dot(functionals_[*c], v);
  }

 private:
  Fan fan_;
  std::vector<RationalVector> functionals_;
};

/// Effectivity and Q-Cartierness of K_X + B.
inline ValidationReport validate_pair(const ToricPair& pair) {
  for (std::size_t i = 0; i < pair.boundary().coefficients.size(); ++i)
    if (pair.coefficient(i) < 0) return {false, "boundary coefficient at ray " + std::to_string(i) + " is negative"};
  const Fan& fan = pair.fan();
  auto kb = pair.log_canonical_divisor();
  for (const auto& c : fan.max_cones()) {
    auto [a, rhs] = detail::cartier_system(fan, c, kb);
    if (!solve_rational(a, rhs)) return {false, "K_X + B is not Q-Cartier on cone " + to_string(c)};
  }
  return {};
}

inline Rational log_discrepancy(const ToricPair& pair, const LatticeVector& v) {
  if (v.rank() != pair.dim()) throw Error("valuation has the wrong rank");
  if (!is_primitive(v)) throw Error("valuation " + to_string(v) + " is not primitive");
  return LogDiscrepancyFunction(pair)(v);
}

enum class SingularityClass { terminal, canonical, klt, lc, not_lc };

inline std::string to_string(SingularityClass c) {
  switch (c) {
    case SingularityClass::terminal: return "terminal";
    case SingularityClass::canonical: return "canonical";
    case SingularityClass::klt: return "klt";
    case SingularityClass::lc: return "lc";
    case SingularityClass::not_lc: return "not-lc";
  }
  return "?";
}

/// Truth values of each class. Terminal and canonical only quantify over
/// exceptional valuations; klt additionally requires floor(B) = 0.
struct SingularityProfile {
  bool terminal = false;
  bool canonical = false;
  bool klt = false;
  bool lc = false;
  // Least log discrepancy of an exceptional toric valuation, when it is <= 1.
  std::optional<Rational> min_exceptional;

  /// First class satisfied in the order terminal, canonical, klt, lc.
  SingularityClass finest() const {
    if (terminal) return SingularityClass::terminal;
    if (canonical) return SingularityClass::canonical;
    if (klt) return SingularityClass::klt;
    if (lc) return SingularityClass::lc;
    return SingularityClass::not_lc;
  }
};

namespace detail {

// Least psi over exceptional lattice points of one simplicial cone, restricted
// to psi <= 1. `gens` are linearly independent and psi(gens[s]) = values[s] >= 0.
//
// Points with psi <= 1 reduce, modulo the generators where psi vanishes, to
// the bounded region {sum l_s u_s : l_s in [0,1) where psi(u_s) = 0,
// l_s >= 0 and sum l_s psi(u_s) <= 1 elsewhere}, which is enumerated.
inline std::optional<Rational> min_exceptional_in_simplex(std::size_t rank, const std::vector<LatticeVector>& gens,
                                                          const RationalVector& values) {
  const std::size_t k = gens.size();
  std::vector<bool> zero(k);
  std::size_t zeros = 0;
  for (std::size_t s = 0; s < k; ++s) {
    zero[s] = values[s] == 0;
    if (zero[s]) ++zeros;
  }
  if (zeros >= 2) return Rational(0);  // u_i + u_j

  RationalVector bound(k);
  for (std::size_t s = 0; s < k; ++s) bound[s] = zero[s] ? Rational(1) : Rational(Rational(1) / values[s]);
  std::vector<Integer> lo(rank), hi(rank);
  for (std::size_t j = 0; j < rank; ++j) {
    Rational l = 0, h = 0;
    for (std::size_t s = 0; s < k; ++s) {
      Rational x = bound[s] * Rational(gens[s][j]);
      if (x < 0) l += x;
      else h += x;
    }
    lo[j] = ceil(l);
    hi[j] = floor(h);
  }

  // Coordinates l = M_R^{-1} y_R on k rows where the generator matrix is invertible.
  std::vector<std::size_t> rows;
  detail::for_each_combination(rank, k, [&](const std::vector<std::size_t>& r) {
    IntMatrix m(k, k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t s = 0; s < k; ++s) m(a, s) = gens[s][r[a]];
    if (determinant(m) != 0) {
      rows = r;
      return false;
    }
    return true;
  });
  RationalMatrix m(k, RationalVector(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t s = 0; s < k; ++s) m[a][s] = Rational(gens[s][rows[a]]);

  std::optional<Rational> best;
  std::vector<Integer> y = lo;
  for (;;) {
    bool nonzero = std::any_of(y.begin(), y.end(), [](const Integer& c) { return c != 0; });
    if (nonzero) {
      RationalVector rhs;
      for (auto r : rows) rhs.emplace_back(y[r]);
      auto lam = solve_rational(m, rhs, k);
      bool ok = lam.has_value();
      if (ok) {
        // y must lie in the span of the generators.
        for (std::size_t j = 0; j < rank && ok; ++j) {
          Rational s = 0;
          for (std::size_t t = 0; t < k; ++t) s += (*lam)[t] * Rational(gens[t][j]);
          ok = s == Rational(y[j]);
        }
      }
      if (ok) {
        Rational psi = 0;
        std::size_t support = 0;
        for (std::size_t s = 0; s < k && ok; ++s) {
          const Rational& l = (*lam)[s];
          if (l < 0 || (zero[s] && l >= 1)) ok = false;
          if (l != 0) ++support;
          psi += l * values[s];
        }
        // A multiple of a single generator is exceptional only after adding a
        // generator on which psi vanishes.
        if (ok && psi <= 1 && (support >= 2 || zeros > 0))
          if (!best || psi < *best) best = psi;
      }
    }
    std::size_t j = 0;
    while (j < rank && y[j] == hi[j]) {
      y[j] = lo[j];
      ++j;
    }
    if (j == rank) break;
    ++y[j];
  }
  return best;
}

}  // namespace detail

inline SingularityProfile singularity_profile(const ToricPair& pair) {
  LogDiscrepancyFunction psi(pair);
  SingularityProfile p;
  const auto& b = pair.boundary().coefficients;
  p.lc = std::all_of(b.begin(), b.end(), [](const Rational& c) { return c <= 1; });
  if (!p.lc) return p;
  p.klt = std::all_of(b.begin(), b.end(), [](const Rational& c) { return c < 1; });

  const Fan& fan = pair.fan();
  for (std::size_t c = 0; c < fan.max_cones().size(); ++c) {
    const RaySet& rays = fan.max_cones()[c];
    Cone k = fan.cone(rays);
    if (k.dim() < 2) continue;
    for (const auto& simplex : k.triangulation()) {
      if (simplex.size() < 2) continue;
      std::vector<LatticeVector> gens;
      RationalVector values;
      for (auto l : simplex) {
        gens.push_back(fan.ray(rays[l]));
        values.push_back(Rational(1) - b[rays[l]]);
      }
      auto m = detail::min_exceptional_in_simplex(fan.rank(), gens, values);
      if (m && (!p.min_exceptional || *m < *p.min_exceptional)) p.min_exceptional = m;
      if (p.min_exceptional && *p.min_exceptional == 0) break;
    }
  }
  p.terminal = !p.min_exceptional.has_value();
  p.canonical = !p.min_exceptional || *p.min_exceptional >= 1;
  return p;
}

inline SingularityClass singularity_type(const ToricPair& pair) { return singularity_profile(pair).finest(); }

/// lc and K_X + B torsion in Cl(X).
inline bool is_log_cy(const ToricPair& pair) {
  if (!singularity_profile(pair).lc) return false;
  auto cls = rational_class(pair.variety(), pair.log_canonical_divisor());
  return std::all_of(cls.begin(), cls.end(), [](const Rational& x) { return x == 0; });
}

/// Least m >= 1 with m (K_X + B) Cartier.
inline Integer pair_index(const ToricPair& pair) {
  if (auto r = validate_pair(pair); !r.valid) throw Error(r.message);
  auto kb = pair.log_canonical_divisor();
  Integer cap = 1;
  for (const auto& c : kb.coefficients) cap = lcm(cap, denominator(c));
  Integer mult = 1;
  for (const auto& c : pair.fan().max_cones()) mult = lcm(mult, pair.fan().cone(c).multiplicity());
  cap *= mult;
  for (Integer m = 1; m <= cap; ++m)
    if (is_cartier(pair.variety(), Rational(m) * kb)) return m;
  throw std::logic_error("index search exceeded its cap " + cap.str());
}

/// Log pullback of B to a refinement: coefficient 1 - psi(v) at every ray.
inline ToricPair crepant_pullback(const ToricPair& pair, const Fan& fine) {
  if (!is_refinement(fine, pair.fan())) throw Error("target fan is not a refinement of the pair's fan");
  LogDiscrepancyFunction psi(pair);
  RationalVector b;
  for (const auto& v : fine.rays()) {
    if (auto old = pair.fan().index_of(v)) {
      b.push_back(pair.coefficient(*old));
      continue;
    }
    Rational c = Rational(1) - psi(v);
    if (c < 0) throw NegativeCoefficientError(v, c);
    b.push_back(c);
  }
  return ToricPair(fine, std::move(b));
}

/// Restricts a pair on a refinement to the rays of `coarse`.
inline ToricPair pushforward(const ToricPair& pair, const Fan& coarse) {
  RationalVector b;
  for (const auto& v : coarse.rays()) {
    auto i = pair.fan().index_of(v);
    if (!i) throw Error("ray " + to_string(v) + " of the target is not a ray of the source");
    b.push_back(pair.coefficient(*i));
  }
  return ToricPair(coarse, std::move(b));
}

/// Every label that applies to a divisor over X, from its log discrepancy.
struct PlaceClassification {
  Rational log_discrepancy;
  bool log_canonical_place = false;  // a = 0
  bool canonical_place = false;      // a = 1
  bool non_canonical_place = false;  // a < 1
  bool terminal_place = false;       // a > 1
  bool non_terminal_place = false;   // a <= 1

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    if (log_canonical_place) out.emplace_back("log canonical place");
    if (canonical_place) out.emplace_back("canonical place");
    if (non_canonical_place) out.emplace_back("non-canonical place");
    if (terminal_place) out.emplace_back("terminal place");
    if (non_terminal_place) out.emplace_back("non-terminal place");
    return out;
  }
};

inline PlaceClassification classify_place(const Rational& a) {
  PlaceClassification p;
  p.log_discrepancy = a;
  p.log_canonical_place = a == 0;
  p.canonical_place = a == 1;
  p.non_canonical_place = a < 1;
  p.terminal_place = a > 1;
  p.non_terminal_place = a <= 1;
  return p;
}

inline PlaceClassification classify_extracted_place(const ToricPair& pair, const LatticeVector& v) {
  if (pair.fan().index_of(v)) throw Error("not exceptional: " + to_string(v) + " is a ray of the fan");
  return classify_place(log_discrepancy(pair, v));
}

/// Log discrepancy of the blow-up of a point on a smooth variety of dimension
/// `dim` where the boundary has multiplicity `mult`.
inline Rational blowup_point_log_discrepancy(std::size_t dim, const Rational& mult) {
  if (dim < 2) throw Error("point blow-up needs dimension at least 2");
  if (mult < 0) throw Error("multiplicity must be non-negative");
  return Rational(static_cast<long>(dim)) - mult;
}

}  // namespace torickit
