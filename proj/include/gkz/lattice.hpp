#pragma once

// Integer lattice and polyhedral cone computations for a point configuration A.

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gkz/errors.hpp"
#include "gkz/rational.hpp"

namespace gkz {

using IntVector = std::vector<long long>;
using IntMatrix = std::vector<IntVector>;  // row-major

namespace detail {

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow("integer overflow in lattice arithmetic");
  return r;
}
inline long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow("integer overflow in lattice arithmetic");
  return r;
}
inline long long checked_sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow("integer overflow in lattice arithmetic");
  return r;
}

inline IntMatrix identity(std::size_t n) {
  IntMatrix m(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// row_dst -= q * row_src
inline void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, long long q) {
  for (std::size_t k = 0; k < m[dst].size(); ++k)
    m[dst][k] = checked_sub(m[dst][k], checked_mul(q, m[src][k]));
}
inline void col_axpy(IntMatrix& m, std::size_t dst, std::size_t src, long long q) {
  for (auto& row : m) row[dst] = checked_sub(row[dst], checked_mul(q, row[src]));
}
inline void col_swap(IntMatrix& m, std::size_t a, std::size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

}  // namespace detail

inline long long gcd_of(const IntVector& v) {
  long long g = 0;
  for (long long x : v) g = std::gcd(g, x);
  return g;
}

inline long long dot(const IntVector& a, const IntVector& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = detail::checked_add(s, detail::checked_mul(a[i], b[i]));
  return s;
}

// Smith normal form with transforms: U * M * V = D, U and V unimodular,
// D diagonal with d_1 | d_2 | ... and d_i > 0 for i < rank.
struct SmithDecomposition {
  IntMatrix U, D, V;
  std::size_t rank = 0;
  IntVector invariant_factors() const {
    IntVector out;
    for (std::size_t i = 0; i < rank; ++i) out.push_back(D[i][i]);
    return out;
  }
};

inline SmithDecomposition smith_decompose(const IntMatrix& M) {
  using namespace detail;
  const std::size_t m = M.size();
  const std::size_t n = m ? M[0].size() : 0;
  SmithDecomposition s{identity(m), M, identity(n), 0};
  IntMatrix& A = s.D;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Pivot: smallest nonzero absolute value in the trailing block.
    auto find_pivot = [&](std::size_t& pi, std::size_t& pj) {
      long long best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (A[i][j] != 0 && (best == 0 || std::llabs(A[i][j]) < best)) {
            best = std::llabs(A[i][j]);
            pi = i;
            pj = j;
          }
      return best != 0;
    };
    std::size_t pi = t, pj = t;
    if (!find_pivot(pi, pj)) break;
    std::swap(A[t], A[pi]);
    std::swap(s.U[t], s.U[pi]);
    col_swap(A, t, pj);
    col_swap(s.V, t, pj);
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (A[i][t] == 0) continue;
        long long q = A[i][t] / A[t][t];
        row_axpy(A, i, t, q);
        row_axpy(s.U, i, t, q);
        if (A[i][t] != 0) {
          std::swap(A[t], A[i]);
          std::swap(s.U[t], s.U[i]);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (A[t][j] == 0) continue;
        long long q = A[t][j] / A[t][t];
        col_axpy(A, j, t, q);
        col_axpy(s.V, j, t, q);
        if (A[t][j] != 0) {
          col_swap(A, t, j);
          col_swap(s.V, t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // Row and column cleared; enforce divisibility of the trailing block.
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n && !fixed; ++j)
          if (A[i][j] % A[t][t] != 0) {
            row_axpy(A, t, i, -1);
            row_axpy(s.U, t, i, -1);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (A[t][t] < 0) {
      for (auto& x : A[t]) x = -x;
      for (auto& x : s.U[t]) x = -x;
    }
    s.rank = t + 1;
  }
  return s;
}

// Saturated basis of {x in Z^cols : M x = 0}, as a list of vectors.
inline IntMatrix integer_kernel(const IntMatrix& M, std::size_t cols) {
  if (M.empty()) return detail::identity(cols);
  auto s = smith_decompose(M);
  IntMatrix basis;
  for (std::size_t k = s.rank; k < cols; ++k) {
    IntVector v(cols);
    for (std::size_t i = 0; i < cols; ++i) v[i] = s.V[i][k];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Some integer solution of M x = b, if one exists.
inline std::optional<IntVector> solve_integer(const IntMatrix& M, const IntVector& b, std::size_t cols) {
  using namespace detail;
  auto s = smith_decompose(M);
  const std::size_t m = M.size();
  IntVector ub(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) ub[i] = checked_add(ub[i], checked_mul(s.U[i][k], b[k]));
  IntVector y(cols, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (i < s.rank) {
      if (ub[i] % s.D[i][i] != 0) return std::nullopt;
      y[i] = ub[i] / s.D[i][i];
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  IntVector x(cols, 0);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t k = 0; k < cols; ++k) x[i] = checked_add(x[i], checked_mul(s.V[i][k], y[k]));
  return x;
}

// Inverse of a unimodular integer matrix (exact Gauss-Jordan over Q).
inline IntMatrix unimodular_inverse(const IntMatrix& T) {
  const std::size_t n = T.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = qi(T[i][j]);
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw InvalidInput("matrix is singular");
    std::swap(a[p], a[c]);
    Rational piv = a[c][c];
    for (auto& x : a[c]) x /= piv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  IntMatrix inv(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& q = a[i][n + j];
      if (q.get_den() != 1 || !q.get_num().fits_slong_p()) throw InvalidInput("matrix is not unimodular");
      inv[i][j] = q.get_num().get_si();
    }
  return inv;
}

// A = {a^(1), ..., a^(N)} in Z^n; only constructible through validate_config.
class PointConfig {
public:
  std::size_t n() const noexcept { return n_; }
  std::size_t N() const noexcept { return points_.size(); }
  const std::vector<IntVector>& points() const noexcept { return points_; }
  const IntVector& point(std::size_t j) const { return points_.at(j); }

  // n x N matrix whose columns are the points.
  IntMatrix matrix() const {
    IntMatrix m(n_, IntVector(N()));
    for (std::size_t j = 0; j < N(); ++j)
      for (std::size_t i = 0; i < n_; ++i) m[i][j] = points_[j][i];
    return m;
  }

  // max_j ||a^(j)||_inf
  long long max_norm() const {
    long long r = 0;
    for (const auto& a : points_)
      for (long long x : a) r = std::max(r, std::llabs(x));
    return r;
  }

  bool operator==(const PointConfig&) const = default;

private:
  friend PointConfig validate_config(const std::vector<IntVector>&);
  PointConfig(std::size_t n, std::vector<IntVector> pts) : n_(n), points_(std::move(pts)) {}
  std::size_t n_ = 0;
  std::vector<IntVector> points_;
};

inline PointConfig validate_config(const std::vector<IntVector>& points) {
  if (points.empty()) throw InvalidInput("point configuration is empty");
  const std::size_t n = points[0].size();
  if (n == 0) throw InvalidInput("points must have positive dimension");
  for (const auto& p : points)
    if (p.size() != n) throw InvalidInput("points have inconsistent dimensions");
  std::set<IntVector> seen;
  for (const auto& p : points)
    if (!seen.insert(p).second) throw DuplicatePoint("duplicate point in configuration");
  IntMatrix m(n, IntVector(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m[i][j] = points[j][i];
  auto s = smith_decompose(m);
  if (s.rank < n) throw NotGenerating(0, "points span a sublattice of rank " + std::to_string(s.rank) + " < n");
  for (std::size_t i = 0; i < n; ++i)
    if (s.D[i][i] != 1)
      throw NotGenerating(s.D[i][i], "points do not generate Z^n (invariant factor " + std::to_string(s.D[i][i]) + ")");
  return PointConfig(n, points);
}

struct RelationLattice {
  IntMatrix basis;  // each row l satisfies sum_j l_j a^(j) = 0
  std::size_t rank() const noexcept { return basis.size(); }
};

inline bool is_relation(const PointConfig& A, const IntVector& l) {
  if (l.size() != A.N()) return false;
  for (std::size_t i = 0; i < A.n(); ++i) {
    long long s = 0;
    for (std::size_t j = 0; j < A.N(); ++j) s = detail::checked_add(s, detail::checked_mul(l[j], A.point(j)[i]));
    if (s != 0) return false;
  }
  return true;
}

// Rows span a saturated sublattice iff all invariant factors of the row matrix are 1.
inline bool is_saturated(const IntMatrix& rows) {
  if (rows.empty()) return true;
  auto s = smith_decompose(rows);
  if (s.rank != rows.size()) return false;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.D[i][i] != 1) return false;
  return true;
}

inline RelationLattice relation_lattice(const PointConfig& A) {
  RelationLattice L{integer_kernel(A.matrix(), A.N())};
  // Sign normalization: first nonzero entry positive.
  for (auto& l : L.basis) {
    auto it = std::find_if(l.begin(), l.end(), [](long long x) { return x != 0; });
    if (it != l.end() && *it < 0)
      for (auto& x : l) x = -x;
  }
  return L;
}

// Primitive linear form l(u) = sum c_i u_i, nonnegative on C(A).
struct FacetForm {
  IntVector coeffs;

  long long operator()(const IntVector& u) const { return dot(coeffs, u); }
  Rational operator()(const std::vector<Rational>& u) const {
    Rational s = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) s += qi(coeffs[i]) * u[i];
    return s;
  }
  auto operator<=>(const FacetForm&) const = default;
};

namespace detail {

inline void for_each_subset(std::size_t N, std::size_t k, const auto& fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > N) return;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == N - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

// Facet forms of the real cone C(A): brute force over (n-1)-subsets of A.
inline std::vector<FacetForm> cone_facets(const PointConfig& A) {
  const std::size_t n = A.n();
  std::set<FacetForm> found;
  detail::for_each_subset(A.N(), n - 1, [&](const std::vector<std::size_t>& idx) {
    IntMatrix rows;
    for (auto j : idx) rows.push_back(A.point(j));
    auto ker = integer_kernel(rows, n);
    if (ker.size() != 1) return;  // subset does not span a hyperplane
    IntVector c = ker[0];
    bool has_pos = false, has_neg = false;
    for (const auto& a : A.points()) {
      long long v = dot(c, a);
      has_pos |= v > 0;
      has_neg |= v < 0;
    }
    if (has_pos && has_neg) return;
    if (has_neg)
      for (auto& x : c) x = -x;
    long long g = std::llabs(gcd_of(c));
    for (auto& x : c) x /= g;
    found.insert(FacetForm{c});
  });
  return {found.begin(), found.end()};
}

struct ParameterVector {
  std::vector<Rational> entries;

  std::size_t size() const noexcept { return entries.size(); }
  const Rational& operator[](std::size_t i) const { return entries.at(i); }

  ParameterVector shifted(const IntVector& u) const {
    ParameterVector r = *this;
    for (std::size_t i = 0; i < u.size(); ++i) r.entries[i] += qi(u[i]);
    return r;
  }
  ParameterVector negated() const {
    ParameterVector r = *this;
    for (auto& q : r.entries) q = -q;
    return r;
  }
  bool operator==(const ParameterVector&) const = default;
};

inline ParameterVector parse_parameters(const std::vector<std::string>& items) {
  ParameterVector p;
  for (const auto& s : items) p.entries.push_back(parse_rational(s));
  return p;
}

struct NonresonanceVerdict {
  bool nonresonant = true;
  bool vacuous = false;  // C(A) = R^n: no facets, condition holds trivially
  std::optional<std::size_t> witness_index;
  std::optional<FacetForm> witness_form;
  std::optional<Rational> witness_value;
};

inline NonresonanceVerdict is_nonresonant(const std::vector<FacetForm>& facets, const ParameterVector& alpha) {
  NonresonanceVerdict v;
  v.vacuous = facets.empty();
  for (std::size_t i = 0; i < facets.size(); ++i) {
    Rational val = facets[i](alpha.entries);
    if (is_integer(val)) {
      v.nonresonant = false;
      v.witness_index = i;
      v.witness_form = facets[i];
      v.witness_value = val;
      break;
    }
  }
  return v;
}

inline NonresonanceVerdict is_nonresonant(const PointConfig& A, const ParameterVector& alpha) {
  if (alpha.size() != A.n()) throw InvalidInput("alpha has wrong length");
  return is_nonresonant(cone_facets(A), alpha);
}

// u in W(v, T): l_i(u) >= v_i for all i in T.
inline bool evaluate_W_membership(const IntVector& u, const IntVector& v, const std::vector<std::size_t>& T,
                                  const std::vector<FacetForm>& facets) {
  if (v.size() != facets.size()) throw InvalidInput("v must have one entry per facet");
  for (auto i : T) {
    if (i >= facets.size()) throw InvalidInput("facet index out of range");
    if (facets[i](u) < v[i]) return false;
  }
  return true;
}

// Integer w with <w, a^(j)> >= 1 for all j, when C(A) is pointed and 0 is not in A.
inline std::optional<IntVector> positive_grading(const PointConfig& A) {
  auto facets = cone_facets(A);
  if (facets.empty()) return std::nullopt;
  IntVector w(A.n(), 0);
  for (const auto& f : facets)
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += f.coeffs[i];
  for (const auto& a : A.points())
    if (dot(w, a) < 1) return std::nullopt;
  return w;
}

// Integer w with <w, a^(j)> = 1 for every j, if any.
inline std::optional<IntVector> find_unit_form(const PointConfig& A) {
  IntMatrix At(A.N(), IntVector(A.n()));
  for (std::size_t j = 0; j < A.N(); ++j) At[j] = A.point(j);
  return solve_integer(At, IntVector(A.N(), 1), A.n());
}

// Unimodular T whose last row is the primitive vector w.
inline IntMatrix unimodular_with_last_row(const IntVector& w) {
  if (std::llabs(gcd_of(w)) != 1) throw InvalidInput("vector is not primitive");
  auto s = smith_decompose(IntMatrix{w});
  // U w V = e_1 with U = +-1, so the first row of V^{-1} is +-w.
  IntMatrix Vinv = unimodular_inverse(s.V);
  long long sign = s.U[0][0];
  IntMatrix T;
  for (std::size_t i = 1; i < Vinv.size(); ++i) T.push_back(Vinv[i]);
  IntVector last = Vinv[0];
  for (auto& x : last) x *= sign;
  T.push_back(last);
  return T;
}

inline IntVector apply(const IntMatrix& T, const IntVector& a) {
  IntVector r(T.size(), 0);
  for (std::size_t i = 0; i < T.size(); ++i) r[i] = dot(T[i], a);
  return r;
}

inline ParameterVector apply(const IntMatrix& T, const ParameterVector& alpha) {
  ParameterVector r;
  for (const auto& row : T) {
    Rational s = 0;
    for (std::size_t k = 0; k < row.size(); ++k) s += qi(row[k]) * alpha[k];
    r.entries.push_back(s);
  }
  return r;
}

inline PointConfig transform_config(const PointConfig& A, const IntMatrix& T) {
  std::vector<IntVector> pts;
  for (const auto& a : A.points()) pts.push_back(apply(T, a));
  return validate_config(pts);
}

inline bool last_coordinate_is_one(const PointConfig& A) {
  return std::all_of(A.points().begin(), A.points().end(), [&](const IntVector& a) { return a.back() == 1; });
}

}  // namespace gkz
