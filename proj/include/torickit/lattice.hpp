// Exact integer linear algebra: lattice vectors, integer matrices, Smith and
// Hermite normal forms, cokernels, and small rational elimination helpers.
#pragma once

#include "torickit/number.hpp"

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace torickit {

/// A point of Z^rank.
class LatticeVector {
 public:
  LatticeVector() = default;
  LatticeVector(std::initializer_list<Integer> coords) : coords_(coords) {}
  explicit LatticeVector(std::vector<Integer> coords) : coords_(std::move(coords)) {}

  static LatticeVector zero(std::size_t rank) { return LatticeVector(std::vector<Integer>(rank)); }
  static LatticeVector unit(std::size_t rank, std::size_t i) {
    auto v = zero(rank);
    v[i] = 1;
    return v;
  }

  std::size_t rank() const { return coords_.size(); }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  Integer& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Integer>& coords() const { return coords_; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Integer& c) { return c == 0; });
  }

  LatticeVector& operator+=(const LatticeVector& o) {
    assert(o.rank() == rank());
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  LatticeVector& operator-=(const LatticeVector& o) {
    assert(o.rank() == rank());
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator-(LatticeVector a) {
    for (auto& c : a.coords_) c = -c;
    return a;
  }
  friend LatticeVector operator*(const Integer& k, LatticeVector a) {
    for (auto& c : a.coords_) c *= k;
    return a;
  }

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) { return a.coords_ == b.coords_; }
  friend bool operator!=(const LatticeVector& a, const LatticeVector& b) { return !(a == b); }
  friend bool operator<(const LatticeVector& a, const LatticeVector& b) {
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                        b.coords_.end());
  }

 private:
  std::vector<Integer> coords_;
};

inline Integer dot(const LatticeVector& a, const LatticeVector& b) {
  assert(a.rank() == b.rank());
  Integer s = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational dot(const RationalVector& a, const LatticeVector& b) {
  assert(a.size() == b.rank());
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rational(b[i]);
  return s;
}

inline Rational dot(const RationalVector& a, const RationalVector& b) {
  assert(a.size() == b.size());
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// gcd of the coordinates (0 for the zero vector).
inline Integer content(const LatticeVector& v) {
  Integer g = 0;
  for (const auto& c : v) g = gcd(g, c);
  return g;
}

inline bool is_primitive(const LatticeVector& v) { return content(v) == 1; }

inline LatticeVector primitive(const LatticeVector& v) {
  Integer g = content(v);
  if (g == 0) throw Error("zero vector has no primitive representative");
  std::vector<Integer> out;
  out.reserve(v.rank());
  for (const auto& c : v) out.push_back(c / g);
  return LatticeVector(std::move(out));
}

/// Clears denominators of a nonzero rational vector and returns the primitive
/// integral vector on the same ray.
inline LatticeVector primitive(const RationalVector& v) {
  Integer l = 1;
  for (const auto& c : v) l = lcm(l, denominator(c));
  std::vector<Integer> out;
  out.reserve(v.size());
  for (const auto& c : v) out.push_back(numerator(Rational(c * Rational(l))));
  return primitive(LatticeVector(std::move(out)));
}

inline RationalVector to_rational(const LatticeVector& v) {
  return RationalVector(v.begin(), v.end());
}

inline std::string to_string(const LatticeVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.rank(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

inline std::string to_string(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<Integer>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error("ragged matrix literal");
      entries_.insert(entries_.end(), r.begin(), r.end());
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Stacks vectors as rows; `cols` is needed when the list is empty.
  static IntMatrix from_rows(const std::vector<LatticeVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      assert(rows[i].rank() == cols);
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  LatticeVector row(std::size_t i) const {
    return LatticeVector(std::vector<Integer>(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                              entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)));
  }
  LatticeVector col(std::size_t j) const {
    std::vector<Integer> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return LatticeVector(std::move(c));
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix dimension mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend LatticeVector operator*(const IntMatrix& a, const LatticeVector& v) {
    if (a.cols_ != v.rank()) throw Error("matrix dimension mismatch");
    auto out = LatticeVector::zero(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Integer& c) { return c == 0; });
  }

  // Elementary operations. Row/column indices are not range-checked.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
  }
  /// col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

inline std::string to_string(const IntMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += ",";
    s += to_string(m.row(i));
  }
  return s + "]";
}

/// Determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntMatrix a) {
  if (a.rows() != a.cols()) throw Error("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int s = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      s = -s;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return s * a(n - 1, n - 1);
}

struct SmithForm {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix D;  // rows x cols, diagonal
  IntMatrix V;  // cols x cols, unimodular
  std::size_t rank = 0;

  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

/// Smith normal form D = U * M * V with d_i | d_{i+1} and d_i >= 0.
///
/// The pivot at each stage is the nonzero entry of least absolute value in the
/// trailing submatrix, ties broken by (row, col); the transforms are therefore
/// deterministic for a given input.
inline SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  SmithForm f{IntMatrix::identity(rows), m, IntMatrix::identity(cols), 0};
  IntMatrix& D = f.D;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      bool found = false;
      std::size_t pi = 0, pj = 0;
      Integer best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (D(i, j) == 0) continue;
          Integer a = abs(D(i, j));
          if (!found || a < best) {
            found = true;
            best = a;
            pi = i;
            pj = j;
          }
        }
      if (!found) return f;
      D.swap_rows(t, pi);
      f.U.swap_rows(t, pi);
      D.swap_cols(t, pj);
      f.V.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (D(i, t) == 0) continue;
        Integer q = D(i, t) / D(t, t);
        D.add_row_multiple(i, t, -q);
        f.U.add_row_multiple(i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (D(t, j) == 0) continue;
        Integer q = D(t, j) / D(t, t);
        D.add_col_multiple(j, t, -q);
        f.V.add_col_multiple(j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (D(i, j) % D(t, t) != 0) {
            D.add_row_multiple(t, i, 1);
            f.U.add_row_multiple(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      f.U.negate_row(t);
    }
    ++f.rank;
  }
  return f;
}

struct HermiteForm {
  IntMatrix H;  // row echelon, positive pivots, entries above pivots in [0, pivot)
  IntMatrix U;  // unimodular, H = U * M
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

/// Row-style Hermite normal form. Unique for a given left GL(Z)-orbit.
inline HermiteForm hermite_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  HermiteForm f{m, IntMatrix::identity(rows), 0, {}};
  IntMatrix& H = f.H;
  std::size_t r = 0;
  for (std::size_t j = 0; j < cols && r < rows; ++j) {
    bool any = false;
    for (;;) {
      bool found = false;
      std::size_t p = 0;
      Integer best;
      for (std::size_t i = r; i < rows; ++i) {
        if (H(i, j) == 0) continue;
        Integer a = abs(H(i, j));
        if (!found || a < best) {
          found = true;
          best = a;
          p = i;
        }
      }
      if (!found) break;
      any = true;
      H.swap_rows(r, p);
      f.U.swap_rows(r, p);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (H(i, j) == 0) continue;
        Integer q = H(i, j) / H(r, j);
        H.add_row_multiple(i, r, -q);
        f.U.add_row_multiple(i, r, -q);
        if (H(i, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (!any) continue;
    if (H(r, j) < 0) {
      H.negate_row(r);
      f.U.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(H(i, j), H(r, j));
      if (q == 0) continue;
      H.add_row_multiple(i, r, -q);
      f.U.add_row_multiple(i, r, -q);
    }
    f.pivot_cols.push_back(j);
    ++r;
  }
  f.rank = r;
  return f;
}

/// Finitely generated abelian group Z^free_rank + sum of Z/d_i.
struct AbelianGroupStructure {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion_invariants;  // each >= 2, d_i | d_{i+1}

  bool is_trivial() const { return free_rank == 0 && torsion_invariants.empty(); }
  bool is_free() const { return torsion_invariants.empty(); }
  friend bool operator==(const AbelianGroupStructure& a, const AbelianGroupStructure& b) {
    return a.free_rank == b.free_rank && a.torsion_invariants == b.torsion_invariants;
  }
};

inline std::string to_string(const AbelianGroupStructure& g) {
  if (g.is_trivial()) return "0";
  std::string s;
  if (g.free_rank > 0) s = g.free_rank == 1 ? "Z" : "Z^" + std::to_string(g.free_rank);
  for (const auto& d : g.torsion_invariants) {
    if (!s.empty()) s += " + ";
    s += "Z/" + d.str();
  }
  return s;
}

/// Structure of Z^rows / image(M).
inline AbelianGroupStructure cokernel_structure(const IntMatrix& m) {
  auto snf = smith_normal_form(m);
  AbelianGroupStructure g;
  g.free_rank = m.rows() - snf.rank;
  for (const auto& d : snf.diagonal())
    if (d >= 2) g.torsion_invariants.push_back(d);
  return g;
}

/// gcd of the maximal minors (0 when M is rank deficient).
inline Integer gcd_of_maximal_minors(const IntMatrix& m) {
  auto snf = smith_normal_form(m);
  if (snf.rank < std::min(m.rows(), m.cols())) return 0;
  Integer p = 1;
  for (const auto& d : snf.diagonal()) p *= d;
  return p;
}

/// An integral solution x of A x = b, if one exists.
inline std::optional<LatticeVector> solve_integer(const IntMatrix& a, const LatticeVector& b) {
  if (b.rank() != a.rows()) throw Error("right-hand side has the wrong length");
  auto snf = smith_normal_form(a);
  LatticeVector c = snf.U * b;
  auto y = LatticeVector::zero(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < snf.rank) {
      const Integer& d = snf.D(i, i);
      if (c[i] % d != 0) return std::nullopt;
      y[i] = c[i] / d;
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.V * y;
}

// ---- rational elimination -------------------------------------------------

using RationalMatrix = std::vector<RationalVector>;

inline RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix r(m.rows(), RationalVector(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = Rational(m(i, j));
  return r;
}

/// In-place reduced row echelon form over the first `cols` columns.
/// Returns the pivot columns.
inline std::vector<std::size_t> row_reduce(RationalMatrix& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t j = 0; j < cols && r < a.size(); ++j) {
    std::size_t p = r;
    while (p < a.size() && a[p][j] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[r], a[p]);
    Rational inv = Rational(1) / a[r][j];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][j] == 0) continue;
      Rational k = a[i][j];
      for (std::size_t c = 0; c < a[i].size(); ++c) a[i][c] -= k * a[r][c];
    }
    pivots.push_back(j);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(RationalMatrix a) {
  if (a.empty()) return 0;
  return row_reduce(a, a.front().size()).size();
}

inline std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

inline std::size_t rank(const std::vector<LatticeVector>& vectors, std::size_t ambient) {
  return rank(IntMatrix::from_rows(vectors, ambient));
}

/// A particular solution of A x = b over Q (free variables set to 0).
inline std::optional<RationalVector> solve_rational(const RationalMatrix& a, const RationalVector& b,
                                                    std::size_t cols) {
  if (a.size() != b.size()) throw Error("right-hand side has the wrong length");
  RationalMatrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto pivots = row_reduce(aug, cols + 1);
  RationalVector x(cols);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == cols) return std::nullopt;
    x[pivots[r]] = aug[r][cols];
  }
  return x;
}

inline std::optional<RationalVector> solve_rational(const IntMatrix& a, const RationalVector& b) {
  return solve_rational(to_rational(a), b, a.cols());
}

/// Primitive integral basis of the rational kernel {x : A x = 0}.
inline std::vector<LatticeVector> kernel_basis(const RationalMatrix& a, std::size_t cols) {
  RationalMatrix r = a;
  auto pivots = row_reduce(r, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<LatticeVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(cols);
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r[k][f];
    basis.push_back(primitive(v));
  }
  return basis;
}

inline std::vector<LatticeVector> kernel_basis(const IntMatrix& m) {
  return kernel_basis(to_rational(m), m.cols());
}

}  // namespace torickit
