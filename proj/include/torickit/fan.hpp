// Fans: canonical storage, validation, combinatorial predicates, and the
// surgeries (star subdivision, 2D resolution) that model toric blow-ups.
#pragma once

#include "torickit/cone.hpp"

#include <deque>
#include <numeric>

namespace torickit {

/// Sorted set of ray indices naming a cone of a fan.
using RaySet = std::vector<std::size_t>;

inline std::string to_string(const RaySet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
  return out + "}";
}

/// A fan in N_R = R^rank. Rays are kept in lexicographic order and maximal
/// cones as sorted index sets in sorted order, so equal fans compare equal.
class Fan {
 public:
  Fan() = default;

  Fan(std::size_t rank, std::vector<LatticeVector> rays, std::vector<RaySet> cones) : rank_(rank) {
    for (const auto& r : rays) {
      if (r.rank() != rank) throw Error("ray " + to_string(r) + " does not have rank " + std::to_string(rank));
      if (r.is_zero()) throw Error("zero ray");
      if (!is_primitive(r)) throw Error("ray " + to_string(r) + " is not primitive");
    }
    std::vector<std::size_t> order(rays.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return rays[a] < rays[b]; });
    std::vector<std::size_t> new_index(rays.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (k > 0 && rays[order[k]] == rays[order[k - 1]])
        throw Error("duplicate ray " + to_string(rays[order[k]]));
      new_index[order[k]] = k;
      rays_.push_back(rays[order[k]]);
    }
    std::set<RaySet> canon;
    for (const auto& c : cones) {
      if (c.empty()) continue;
      RaySet mapped;
      for (auto i : c) {
        if (i >= rays.size()) throw Error("cone refers to missing ray " + std::to_string(i));
        mapped.push_back(new_index[i]);
      }
      std::sort(mapped.begin(), mapped.end());
      if (std::adjacent_find(mapped.begin(), mapped.end()) != mapped.end())
        throw Error("cone lists a ray twice");
      canon.insert(std::move(mapped));
    }
    cones_.assign(canon.begin(), canon.end());
  }

  std::size_t rank() const { return rank_; }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const LatticeVector& ray(std::size_t i) const { return rays_[i]; }
  const std::vector<RaySet>& max_cones() const { return cones_; }

  std::optional<std::size_t> index_of(const LatticeVector& v) const {
    auto it = std::lower_bound(rays_.begin(), rays_.end(), v);
    if (it == rays_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - rays_.begin());
  }

  std::vector<LatticeVector> generators(const RaySet& s) const {
    std::vector<LatticeVector> g;
    for (auto i : s) g.push_back(rays_.at(i));
    return g;
  }

  Cone cone(const RaySet& s) const { return Cone(rank_, generators(s)); }

  /// Index of a maximal cone containing v, if any.
  template <typename Vec>
  std::optional<std::size_t> locate(const Vec& v) const {
    for (std::size_t c = 0; c < cones_.size(); ++c)
      if (cone(cones_[c]).contains(v)) return c;
    return std::nullopt;
  }

  /// True when the ray set spans a cone of the fan (a face of a maximal cone).
  bool has_cone(RaySet s) const {
    std::sort(s.begin(), s.end());
    for (const auto& c : cones_) {
      if (!detail::is_sorted_subset(s, c)) continue;
      Cone k = cone(c);
      RaySet local;
      for (auto i : s) local.push_back(static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), i) - c.begin()));
      if (k.is_face(local)) return true;
    }
    return false;
  }

  /// Every cone of the fan (faces of maximal cones), including the zero cone.
  std::vector<RaySet> all_cones() const {
    std::set<RaySet> out;
    out.insert(RaySet{});
    for (const auto& c : cones_) {
      for (const auto& local : cone(c).faces()) {
        RaySet g;
        for (auto l : local) g.push_back(c[l]);
        out.insert(std::move(g));
      }
    }
    return {out.begin(), out.end()};
  }

  friend bool operator==(const Fan& a, const Fan& b) {
    return a.rank_ == b.rank_ && a.rays_ == b.rays_ && a.cones_ == b.cones_;
  }

 private:
  std::size_t rank_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<RaySet> cones_;
};

/// Stratum of a toric variety, named by the cone of the orbit-cone
/// correspondence.
struct FanStratum {
  RaySet cone_ray_indices;
};

struct ValidationReport {
  bool valid = true;
  std::string message;  // first violated invariant with its witness
};

namespace detail {

inline RaySet to_local(const RaySet& global, const RaySet& within) {
  RaySet local;
  for (auto i : global)
    local.push_back(static_cast<std::size_t>(std::lower_bound(within.begin(), within.end(), i) - within.begin()));
  return local;
}

inline RaySet intersect(const RaySet& a, const RaySet& b) {
  RaySet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace detail

inline ValidationReport validate_fan(const Fan& fan) {
  const auto& cones = fan.max_cones();
  std::vector<Cone> built;
  for (const auto& c : cones) {
    if (auto problem = Cone::diagnose(fan.rank(), fan.generators(c)))
      return {false, "cone " + to_string(c) + ": " + *problem};
    built.emplace_back(fan.rank(), fan.generators(c));
  }
  std::vector<bool> used(fan.rays().size(), false);
  for (const auto& c : cones)
    for (auto i : c) used[i] = true;
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i]) return {false, "ray " + std::to_string(i) + " " + to_string(fan.ray(i)) + " lies in no cone"};

  for (std::size_t a = 0; a < cones.size(); ++a)
    for (std::size_t b = a + 1; b < cones.size(); ++b) {
      RaySet common = detail::intersect(cones[a], cones[b]);
      const std::string pair = "cones " + to_string(cones[a]) + " and " + to_string(cones[b]);
      if (!built[a].is_face(detail::to_local(common, cones[a])))
        return {false, pair + ": shared rays " + to_string(common) + " are not a face of the first"};
      if (!built[b].is_face(detail::to_local(common, cones[b])))
        return {false, pair + ": shared rays " + to_string(common) + " are not a face of the second"};
      HalfspaceForm meet;
      for (const auto* k : {&built[a], &built[b]}) {
        meet.equations.insert(meet.equations.end(), k->halfspaces().equations.begin(),
                              k->halfspaces().equations.end());
        meet.inequalities.insert(meet.inequalities.end(), k->halfspaces().inequalities.begin(),
                                 k->halfspaces().inequalities.end());
      }
      Cone shared(fan.rank(), fan.generators(common));
      for (const auto& r : extreme_rays(fan.rank(), meet))
        if (!shared.contains(r))
          return {false, pair + " overlap beyond a common face; witness " + to_string(r)};
    }
  return {};
}

inline bool is_simplicial(const Fan& fan) {
  for (const auto& c : fan.max_cones())
    if (!fan.cone(c).is_simplicial()) return false;
  return true;
}

inline bool is_smooth(const Fan& fan) {
  for (const auto& c : fan.max_cones())
    if (!fan.cone(c).is_unimodular()) return false;
  return true;
}

/// Completeness via the shared-wall criterion: every facet of every maximal
/// cone is shared by exactly two maximal cones and the cones are connected
/// through walls. Requires all maximal cones to be full-dimensional.
inline bool is_complete(const Fan& fan) {
  const auto& cones = fan.max_cones();
  if (cones.empty()) return fan.rank() == 0;
  std::map<RaySet, std::vector<std::size_t>> walls;
  for (std::size_t c = 0; c < cones.size(); ++c) {
    Cone k = fan.cone(cones[c]);
    if (!k.is_full_dimensional())
      throw Error("completeness undefined: maximal cone " + to_string(cones[c]) + " is not full-dimensional");
    for (const auto& facet : k.facets()) {
      RaySet g;
      for (auto l : facet) g.push_back(cones[c][l]);
      walls[g].push_back(c);
    }
  }
  std::vector<std::vector<std::size_t>> adj(cones.size());
  for (const auto& [wall, owners] : walls) {
    if (owners.size() != 2) return false;
    adj[owners[0]].push_back(owners[1]);
    adj[owners[1]].push_back(owners[0]);
  }
  std::vector<bool> seen(cones.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    auto c = queue.front();
    queue.pop_front();
    for (auto d : adj[c])
      if (!seen[d]) {
        seen[d] = true;
        ++count;
        queue.push_back(d);
      }
  }
  return count == cones.size();
}

/// Star subdivision of `fan` at the cone `stratum` through the ray `v`
/// (default: the primitive vector on the sum of the cone's generators).
/// Every maximal cone containing the stratum is replaced by the cones over its
/// facets that do not contain the stratum, joined with v.
inline Fan star_subdivision(const Fan& fan, const FanStratum& stratum,
                            std::optional<LatticeVector> v = std::nullopt) {
  RaySet tau = stratum.cone_ray_indices;
  std::sort(tau.begin(), tau.end());
  if (tau.empty()) throw Error("star subdivision needs a cone of dimension at least one");
  for (auto i : tau)
    if (i >= fan.rays().size()) throw Error("stratum refers to missing ray " + std::to_string(i));
  if (!fan.has_cone(tau)) throw Error("stratum " + to_string(tau) + " is not a cone of the fan");

  Cone t = fan.cone(tau);
  LatticeVector ray;
  if (v) {
    if (v->rank() != fan.rank() || v->is_zero() || !t.contains_in_relative_interior(*v))
      throw Error("vector " + to_string(*v) + " is not in the relative interior of stratum " + to_string(tau));
    ray = primitive(*v);
  } else {
    ray = LatticeVector::zero(fan.rank());
    for (auto i : tau) ray += fan.ray(i);
    ray = primitive(ray);
  }

  std::vector<LatticeVector> rays = fan.rays();
  std::size_t center;
  if (auto existing = fan.index_of(ray)) {
    center = *existing;
  } else {
    center = rays.size();
    rays.push_back(ray);
  }

  std::vector<RaySet> cones;
  for (const auto& c : fan.max_cones()) {
    if (!detail::is_sorted_subset(tau, c)) {
      cones.push_back(c);
      continue;
    }
    Cone k = fan.cone(c);
    for (const auto& facet : k.facets()) {
      RaySet g;
      for (auto l : facet) g.push_back(c[l]);
      if (detail::is_sorted_subset(tau, g)) continue;
      g.push_back(center);
      cones.push_back(std::move(g));
    }
  }
  return Fan(fan.rank(), std::move(rays), std::move(cones));
}

/// True when every cone of `fine` lies in a cone of `coarse` and both fans
/// have the same support.
inline bool is_refinement(const Fan& fine, const Fan& coarse) {
  if (fine.rank() != coarse.rank()) return false;
  std::vector<Cone> coarse_cones;
  for (const auto& c : coarse.max_cones()) coarse_cones.push_back(coarse.cone(c));

  std::vector<Cone> fine_cones;
  for (const auto& c : fine.max_cones()) {
    Cone k = fine.cone(c);
    bool inside = false;
    for (const auto& big : coarse_cones) {
      inside = std::all_of(k.generators().begin(), k.generators().end(),
                           [&](const LatticeVector& g) { return big.contains(g); });
      if (inside) break;
    }
    if (!inside) return false;
    fine_cones.push_back(std::move(k));
  }

  for (const auto& big : coarse_cones) {
    if (big.dim() == 0) continue;
    std::map<RaySet, int> walls;
    bool any = false;
    for (std::size_t c = 0; c < fine_cones.size(); ++c) {
      const Cone& k = fine_cones[c];
      if (k.dim() != big.dim()) continue;
      if (!std::all_of(k.generators().begin(), k.generators().end(),
                       [&](const LatticeVector& g) { return big.contains(g); }))
        continue;
      any = true;
      for (const auto& facet : k.facets()) {
        RaySet g;
        for (auto l : facet) g.push_back(fine.max_cones()[c][l]);
        ++walls[g];
      }
    }
    if (!any) return false;
    for (const auto& [wall, count] : walls) {
      if (count > 2) return false;
      if (count == 2) continue;
      bool on_boundary = false;
      for (const auto& a : big.halfspaces().inequalities) {
        on_boundary = std::all_of(wall.begin(), wall.end(), [&](std::size_t i) { return dot(a, fine.ray(i)) == 0; });
        if (on_boundary) break;
      }
      if (!on_boundary) return false;
    }
  }
  return true;
}

/// Hirzebruch-Jung resolution of a two-dimensional cone: the rays to insert,
/// ordered from the first generator towards the second, so that consecutive
/// rays span unimodular cones. Empty for a smooth cone.
inline std::vector<LatticeVector> resolve_cone_2d(const Cone& sigma) {
  if (sigma.rank() != 2 || sigma.dim() != 2) throw Error("resolve_cone_2d needs a two-dimensional cone in rank 2");
  const LatticeVector& u = sigma.generators()[0];
  const LatticeVector& w = sigma.generators()[1];

  // Unimodular A with A u = e2 and A w = (d, -k), 0 <= k < d.
  Integer p = u[0], r = u[1];
  Integer s, t;
  {
    // Extended Euclid for s p + t r = 1.
    Integer old_r = p, cur_r = r, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
    while (cur_r != 0) {
      Integer q = floor_div(old_r, cur_r);
      Integer tmp = old_r - q * cur_r;
      old_r = cur_r;
      cur_r = tmp;
      tmp = old_s - q * cur_s;
      old_s = cur_s;
      cur_s = tmp;
      tmp = old_t - q * cur_t;
      old_t = cur_t;
      cur_t = tmp;
    }
    if (old_r < 0) {
      old_s = -old_s;
      old_t = -old_t;
    }
    s = old_s;
    t = old_t;
  }
  IntMatrix a{{-r, p}, {s, t}};
  LatticeVector aw = a * w;
  if (aw[0] < 0) {
    a.negate_row(0);
    aw = a * w;
  }
  const Integer d = aw[0];
  if (d == 1) return {};
  // Shear fixing e2 so that the second coordinate lands in [-(d-1), -1];
  // it cannot be a multiple of d because A w is primitive.
  a.add_row_multiple(1, 0, floor_div(Integer(-1 - aw[1]), d));
  aw = a * w;
  const Integer k = -aw[1];
  assert(k > 0 && k < d);

  // Inverse of A (det = +-1).
  const Integer det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  IntMatrix inv{{det * a(1, 1), -det * a(0, 1)}, {-det * a(1, 0), det * a(0, 0)}};

  // d/k = b1 - 1/(b2 - ...); u_{i+1} = b_i u_i - u_{i-1} starting at e2, e1.
  std::vector<LatticeVector> out;
  LatticeVector prev{0, 1}, cur{1, 0};
  Integer num = d, den = k;
  while (den != 0) {
    out.push_back(inv * cur);
    Integer b = -floor_div(-num, den);
    LatticeVector next = b * cur - prev;
    prev = cur;
    cur = next;
    Integer rem = b * den - num;
    num = den;
    den = rem;
  }
  return out;
}

/// Resolves every two-dimensional maximal cone of a rank-2 fan.
inline Fan resolve_fan_2d(const Fan& fan) {
  if (fan.rank() != 2) throw Error("resolve2d needs a rank-2 fan");
  std::vector<LatticeVector> rays = fan.rays();
  std::vector<RaySet> cones;
  for (const auto& c : fan.max_cones()) {
    Cone k = fan.cone(c);
    if (k.dim() < 2) {
      cones.push_back(c);
      continue;
    }
    auto inserted = resolve_cone_2d(k);
    std::vector<std::size_t> chain{c[0]};
    for (const auto& v : inserted) {
      chain.push_back(rays.size());
      rays.push_back(v);
    }
    chain.push_back(c[1]);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) cones.push_back({chain[i], chain[i + 1]});
  }
  return Fan(2, std::move(rays), std::move(cones));
}

}  // namespace torickit
