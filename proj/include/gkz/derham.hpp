#pragma once

// Twisted logarithmic de Rham complexes (Omega^., nabla_alpha) over R', R,
// M_U and R_+, the contracting homotopy used to compare supports, and
// truncated linear algebra for top-degree cohomology dimensions.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gkz/laurent.hpp"
#include "gkz/linalg.hpp"

namespace gkz {

// Strictly increasing 0-based indices i_1 < ... < i_k naming dx_{i_1}/x_{i_1} ^ ... ^ dx_{i_k}/x_{i_k}.
using IndexTuple = std::vector<int>;

// Inserts i in front of I and sorts: dlog x_i ^ omega_I = sign * omega_J.
inline std::optional<std::pair<int, IndexTuple>> wedge_front(int i, const IndexTuple& I) {
  int before = 0;
  for (int x : I) {
    if (x == i) return std::nullopt;
    before += x < i;
  }
  IndexTuple J(I);
  J.insert(J.begin() + before, i);
  return std::make_pair(before % 2 ? -1 : 1, J);
}

// All index tuples of size k drawn from {0, ..., n-1}.
inline std::vector<IndexTuple> index_tuples(std::size_t n, std::size_t k) {
  std::vector<IndexTuple> out;
  if (k > n) return out;
  detail::for_each_subset(n, k, [&](const std::vector<std::size_t>& idx) { out.emplace_back(idx.begin(), idx.end()); });
  return out;
}

template <class C>
class LogForm {
public:
  using component_map = std::map<IndexTuple, LaurentPoly<C>>;

  LogForm() = default;
  LogForm(std::size_t n, std::size_t k) : n_(n), k_(k) {}

  static LogForm monomial(std::size_t n, const IndexTuple& I, const Exponent& u, const C& c) {
    LogForm w(n, I.size());
    w.add(I, LaurentPoly<C>::monomial(u, c));
    return w;
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t degree() const noexcept { return k_; }
  const component_map& components() const noexcept { return comps_; }
  bool is_zero() const noexcept { return comps_.empty(); }

  void add(const IndexTuple& I, const LaurentPoly<C>& xi) {
    if (I.size() != k_) throw InvalidInput("index tuple has wrong degree");
    for (std::size_t t = 0; t < I.size(); ++t) {
      if (I[t] < 0 || static_cast<std::size_t>(I[t]) >= n_) throw InvalidInput("form index out of range");
      if (t && I[t - 1] >= I[t]) throw InvalidInput("form indices must be strictly increasing");
    }
    if (xi.is_zero()) return;
    auto [it, inserted] = comps_.try_emplace(I, xi);
    if (!inserted) {
      it->second += xi;
      if (it->second.is_zero()) comps_.erase(it);
    }
  }

  LogForm& operator+=(const LogForm& o) {
    check_same(o);
    for (const auto& [I, xi] : o.comps_) add(I, xi);
    return *this;
  }
  LogForm& operator-=(const LogForm& o) {
    check_same(o);
    for (const auto& [I, xi] : o.comps_) add(I, -xi);
    return *this;
  }
  friend LogForm operator+(LogForm a, const LogForm& b) { return a += b; }
  friend LogForm operator-(LogForm a, const LogForm& b) { return a -= b; }

  // h * omega for a function h.
  LogForm multiplied(const LaurentPoly<C>& h) const {
    LogForm r(n_, k_);
    for (const auto& [I, xi] : comps_) r.add(I, h * xi);
    return r;
  }
  LogForm shifted(const Exponent& u) const {
    LogForm r(n_, k_);
    for (const auto& [I, xi] : comps_) r.add(I, xi.shifted(u));
    return r;
  }

  bool operator==(const LogForm& o) const { return n_ == o.n_ && k_ == o.k_ && comps_ == o.comps_; }

  std::string str() const {
    if (comps_.empty()) return "0";
    std::string s;
    for (const auto& [I, xi] : comps_) {
      if (!s.empty()) s += " + ";
      s += "(" + xi.str() + ")";
      for (int i : I) s += " dlog x" + std::to_string(i + 1);
    }
    return s;
  }

private:
  void check_same(const LogForm& o) const {
    if (n_ != o.n_ || k_ != o.k_) throw InvalidInput("forms of different shape");
  }
  std::size_t n_ = 0, k_ = 0;
  component_map comps_;
};

// nabla_alpha(xi omega_I) = sum_i D_{i,alpha}(xi) dlog x_i ^ omega_I
template <class C>
LogForm<C> nabla(const ParameterVector& alpha, const LaurentPoly<C>& f, const LogForm<C>& omega) {
  const std::size_t n = omega.n();
  LogForm<C> r(n, omega.degree() + 1);
  for (const auto& [I, xi] : omega.components())
    for (std::size_t i = 0; i < n; ++i) {
      auto w = wedge_front(static_cast<int>(i), I);
      if (!w) continue;
      auto d = apply_D(i, alpha, f, xi);
      r.add(w->second, w->first > 0 ? d : -d);
    }
  return r;
}

// Every monomial form x^u omega_I with u in [-radius, radius]^n and |I| = k.
template <class C>
std::vector<LogForm<C>> monomial_forms(std::size_t n, std::size_t k, int radius, const C& one) {
  std::vector<LogForm<C>> out;
  for (const auto& u : box_points(n, radius))
    for (const auto& I : index_tuples(n, k)) out.push_back(LogForm<C>::monomial(n, I, u, one));
  return out;
}

// Outcome of an identity battery over a finite sample set.
struct CheckResult {
  bool passed = true;
  std::size_t checked = 0;
  std::string counterexample;
  bool vacuous() const noexcept { return checked == 0; }

  void fail(std::string what) {
    if (passed) counterexample = std::move(what);
    passed = false;
  }
  void merge(const CheckResult& o) {
    checked += o.checked;
    if (!o.passed) fail(o.counterexample);
  }
};

template <class C>
CheckResult check_complex(const ParameterVector& alpha, const LaurentPoly<C>& f, const std::vector<LogForm<C>>& samples) {
  CheckResult r;
  for (const auto& w : samples) {
    ++r.checked;
    auto dd = nabla(alpha, f, nabla(alpha, f, w));
    if (!dd.is_zero()) r.fail("nabla^2(" + w.str() + ") = " + dd.str());
  }
  return r;
}

// x^u nabla_{alpha+u}(omega) = nabla_alpha(x^u omega)
template <class C>
CheckResult twist_conjugation_check(const ParameterVector& alpha, const IntVector& u, const LaurentPoly<C>& f,
                                    const std::vector<LogForm<C>>& samples) {
  CheckResult r;
  const Exponent e = to_exponent(u);
  for (const auto& w : samples) {
    ++r.checked;
    auto lhs = nabla(alpha.shifted(u), f, w).shifted(e);
    auto rhs = nabla(alpha, f, w.shifted(e));
    if (!(lhs == rhs)) r.fail("twist mismatch on " + w.str());
  }
  return r;
}

// Contraction with l_t = sum c_i u_i:
// rho(x^u omega_I) = x^u sum_j (-1)^(j-1) c_{i_j} omega_{I minus i_j}
template <class C>
LogForm<C> homotopy_rho(const FacetForm& ell, const LogForm<C>& omega) {
  if (omega.degree() == 0) return LogForm<C>(omega.n(), 0);
  LogForm<C> r(omega.n(), omega.degree() - 1);
  for (const auto& [I, xi] : omega.components())
    for (std::size_t j = 0; j < I.size(); ++j) {
      long long c = ell.coeffs.at(static_cast<std::size_t>(I[j]));
      if (c == 0) continue;
      IndexTuple J(I);
      J.erase(J.begin() + static_cast<long>(j));
      r.add(J, xi.scaled_rational(qi((j % 2 ? -1 : 1) * c)));
    }
  return r;
}

// sum_i c_i D_{i,alpha}(xi) written as l_t(alpha+u) x^u + sum_j lambda_j l_t(a^(j)) x^{u+a^(j)}, termwise.
template <class C>
LaurentPoly<C> homotopy_multiplier(const FacetForm& ell, const ParameterVector& alpha, const PointConfig& A,
                                   const std::vector<C>& lam, const LaurentPoly<C>& xi) {
  LaurentPoly<C> r(A.n());
  Rational ell_alpha = ell(alpha.entries);
  for (const auto& [u, c] : xi.terms()) {
    LaurentPoly<C> mono = LaurentPoly<C>::monomial(u, c);
    r += mono.scaled_rational(ell_alpha + qi(ell(to_int_vector(u))));
    for (std::size_t j = 0; j < A.N(); ++j) {
      long long la = ell(A.point(j));
      if (la == 0) continue;
      r += LaurentPoly<C>::monomial(u + to_exponent(A.point(j)), c * lam[j]).scaled_rational(qi(la));
    }
  }
  return r;
}

// (nabla rho + rho nabla)(x^u omega_I) = (l_t(alpha+u) x^u + sum_j lambda_j l_t(a^(j)) x^{u+a^(j)}) omega_I
template <class C>
CheckResult homotopy_identity_check(const FacetForm& ell, const ParameterVector& alpha, const PointConfig& A,
                                    const std::vector<C>& lam, const std::vector<LogForm<C>>& samples) {
  CheckResult r;
  auto f = build_f(A, lam);
  for (const auto& w : samples) {
    ++r.checked;
    LogForm<C> lhs(w.n(), w.degree());
    if (w.degree() > 0) lhs += nabla(alpha, f, homotopy_rho(ell, w));
    if (w.degree() < w.n()) lhs += homotopy_rho(ell, nabla(alpha, f, w));
    LogForm<C> rhs(w.n(), w.degree());
    for (const auto& [I, xi] : w.components()) rhs.add(I, homotopy_multiplier(ell, alpha, A, lam, xi));
    if (!(lhs == rhs)) r.fail("homotopy identity fails on " + w.str() + ": lhs " + lhs.str() + " rhs " + rhs.str());
  }
  return r;
}

// Action of the homotopy on gr_p: multiplication by l_t(alpha) + p.
inline Rational graded_multiplier(const FacetForm& ell, const ParameterVector& alpha, long long p) {
  return ell(alpha.entries) + qi(p);
}

// If every term of omega has l_t(exponent) >= p, so does every term of nabla(omega).
template <class C>
bool filtration_compatible(const FacetForm& ell, const ParameterVector& alpha, const LaurentPoly<C>& f,
                           const LogForm<C>& omega, long long p) {
  auto level_ok = [&](const LogForm<C>& w) {
    for (const auto& [I, xi] : w.components())
      for (const auto& [u, c] : xi.terms())
        if (ell(to_int_vector(u)) < p) return false;
    return true;
  };
  if (!level_ok(omega)) return true;  // omega not in F_p: nothing to check
  return level_ok(nabla(alpha, f, omega));
}

// Every term of nabla(omega) lies in S when every term of omega does.
template <class C>
bool support_stable(const SupportPredicate& S, const ParameterVector& alpha, const LaurentPoly<C>& f,
                    const LogForm<C>& omega) {
  auto inside = [&](const LogForm<C>& w) {
    for (const auto& [I, xi] : w.components())
      for (const auto& [u, c] : xi.terms())
        if (!S(u)) return false;
    return true;
  };
  return !inside(omega) || inside(nabla(alpha, f, omega));
}

// ---------------------------------------------------------------------------
// Truncated top-degree cohomology.

struct RankReport {
  std::string complex;
  ParameterVector alpha;
  std::vector<Rational> lambda;
  int B = 0;
  std::pair<std::size_t, std::size_t> dims{0, 0};  // at B-1 and B
  bool stabilized = false;
  std::size_t dim = 0;
  std::vector<std::string> warnings;
  // Secondary stabilization direction (g-denominator bound), when the complex has one.
  std::optional<int> Bm;
  std::optional<std::pair<std::size_t, std::size_t>> dims_m;  // at Bm-1 and Bm
};

inline std::string resonance_warning(const NonresonanceVerdict& v) {
  return "resonant: facet " + std::to_string(*v.witness_index) + " takes integer value " + to_string(*v.witness_value);
}

// Entries with numerator and denominator uniform in [1, 1000].
inline std::vector<Rational> random_lambda(std::size_t N, std::mt19937_64& rng) {
  std::vector<Rational> lam;
  for (std::size_t j = 0; j < N; ++j) {
    Rational q(static_cast<long>(rng() % 1000 + 1), static_cast<long>(rng() % 1000 + 1));
    q.canonicalize();
    lam.push_back(q);
  }
  return lam;
}

namespace detail {

// Column indexing for windowed linear algebra: monomials outside the target
// window get indices [0, split), inside ones [split, split + |inside|).
class ColumnIndex {
public:
  explicit ColumnIndex(const std::vector<Exponent>& inside) : inside_(inside.begin(), inside.end()) {}

  void touch(const Exponent& u) {
    if (!inside_.count(u)) outside_.insert(u);
  }
  void freeze() {
    int k = 0;
    for (const auto& u : outside_) index_[u] = k++;
    split_ = k;
    for (const auto& u : inside_) index_[u] = k++;
  }
  int operator[](const Exponent& u) const { return index_.at(u); }
  int split() const noexcept { return split_; }
  std::size_t inside_size() const noexcept { return inside_.size(); }

private:
  std::set<Exponent> inside_, outside_;
  std::map<Exponent, int> index_;
  int split_ = 0;
};

}  // namespace detail

// dim V_B / (V_B intersect sum_i D_{i,alpha}(V'_{B+margin})) where V_C is the span of
// the monomials of S in [-C, C]^n and V' the same over S. Extra generators
// (e.g. unit vectors of a subsupport) can be added through `extra`.
struct WindowDim {
  std::size_t dim = 0;
  bool primes_agree = true;
};

inline WindowDim windowed_cokernel_dim(const PointConfig& A, const ParameterVector& alpha,
                                       const std::vector<Rational>& lam, const SupportPredicate& S, int B, int margin,
                                       const std::vector<Exponent>& extra_units = {}) {
  const std::size_t n = A.n();
  std::vector<Exponent> inside, domain;
  for (const auto& u : box_points(n, B))
    if (S(u)) inside.push_back(u);
  for (const auto& u : box_points(n, B + margin))
    if (S(u)) domain.push_back(u);
  detail::ColumnIndex cols(inside);
  std::vector<Exponent> shifts;
  for (const auto& a : A.points()) shifts.push_back(to_exponent(a));
  for (const auto& u : domain) {
    cols.touch(u);
    for (const auto& s : shifts) cols.touch(u + s);
  }
  for (const auto& u : extra_units) cols.touch(u);
  cols.freeze();

  std::vector<SparseRowQ> rows;
  rows.reserve(domain.size() * n + extra_units.size());
  for (const auto& u : domain)
    for (std::size_t i = 0; i < n; ++i) {
      // D_i(x^u) = (u_i + alpha_i) x^u + sum_j lambda_j a_i^(j) x^{u + a^(j)}
      SparseRowQ row;
      Rational diag = alpha[i] + u[i];
      if (!is_zero(diag)) row.emplace_back(cols[u], diag);
      for (std::size_t j = 0; j < A.N(); ++j) {
        long long aij = A.point(j)[i];
        if (aij != 0) row.emplace_back(cols[u + shifts[j]], lam[j] * qi(aij));
      }
      if (!row.empty()) rows.push_back(std::move(row));
    }
  for (const auto& u : extra_units) rows.push_back({{cols[u], Rational(1)}});
  auto sr = split_rank(rows, cols.split());
  return {cols.inside_size() - sr.value.inside, sr.primes_agree};
}

// Top cohomology dimension of (Omega^._{M_S}<log>, nabla_alpha) at lambda, from
// windows at B-1 and B. Resonant alpha is reported, not refused.
inline RankReport top_cohomology_dim(const PointConfig& A, const ParameterVector& alpha,
                                     const std::vector<Rational>& lam, const SupportPredicate& S, int B,
                                     std::optional<int> margin = std::nullopt) {
  if (alpha.size() != A.n()) throw InvalidInput("alpha has wrong length");
  if (lam.size() != A.N()) throw InvalidInput("lambda has wrong length");
  if (B < 1) throw InvalidInput("window bound must be >= 1");
  for (const auto& q : lam)
    if (is_zero(q)) throw InvalidInput("lambda entries must be nonzero");
  const int m = margin.value_or(static_cast<int>(A.max_norm()));
  RankReport rep;
  rep.complex = S.name();
  rep.alpha = alpha;
  rep.lambda = lam;
  rep.B = B;
  auto v = is_nonresonant(A, alpha);
  if (!v.nonresonant) rep.warnings.push_back(resonance_warning(v));
  if (v.vacuous) rep.warnings.push_back("vacuous nonresonance: C(A) has no facets");
  auto lo = windowed_cokernel_dim(A, alpha, lam, S, B - 1, m);
  auto hi = windowed_cokernel_dim(A, alpha, lam, S, B, m);
  if (!lo.primes_agree || !hi.primes_agree) rep.warnings.push_back("modular ranks disagreed between primes");
  rep.dims = {lo.dim, hi.dim};
  rep.stabilized = lo.dim == hi.dim;
  rep.dim = hi.dim;
  return rep;
}

inline std::size_t require_stabilized(const RankReport& r) {
  if (!r.stabilized)
    throw NotStabilized("dimension not stabilized for " + r.complex + ": " + std::to_string(r.dims.first) + " at B=" +
                        std::to_string(r.B - 1) + ", " + std::to_string(r.dims.second) + " at B=" +
                        std::to_string(r.B));
  if (r.dims_m && r.dims_m->first != r.dims_m->second)
    throw NotStabilized("denominator window not stabilized for " + r.complex);
  return r.dim;
}

// Generic-lambda dimension: two independent random specializations must agree.
struct GenericRank {
  RankReport first, second;
  bool agree = false;
  std::optional<std::size_t> dim() const {
    if (agree && first.stabilized && second.stabilized) return first.dim;
    return std::nullopt;
  }
};

inline GenericRank generic_top_dim(const PointConfig& A, const ParameterVector& alpha, const SupportPredicate& S,
                                   int B, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto l1 = random_lambda(A.N(), rng);
  auto l2 = random_lambda(A.N(), rng);
  while (l2 == l1) l2 = random_lambda(A.N(), rng);
  GenericRank g{top_cohomology_dim(A, alpha, l1, S, B), top_cohomology_dim(A, alpha, l2, S, B), false};
  g.agree = g.first.dims == g.second.dims;
  return g;
}

// Inclusion Omega_{M_small} -> Omega_{M_big} in top degree: equal dimensions
// and surjectivity of the induced map (every window monomial of S_big is
// congruent to something supported in S_small modulo sum_i D_i).
struct QuasiIsoVerdict {
  RankReport small, big;
  bool dims_equal = false;
  bool surjective = false;
  std::size_t defect = 0;  // dimension of the cokernel of the induced map on the window
  bool verdict = false;
  std::vector<std::string> warnings;
};

inline QuasiIsoVerdict quasi_iso_check(const PointConfig& A, const ParameterVector& alpha,
                                       const std::vector<Rational>& lam, const SupportPredicate& S_small,
                                       const SupportPredicate& S_big, int B) {
  QuasiIsoVerdict q;
  q.small = top_cohomology_dim(A, alpha, lam, S_small, B);
  q.big = top_cohomology_dim(A, alpha, lam, S_big, B);
  const int m = static_cast<int>(A.max_norm());
  std::vector<Exponent> units;
  for (const auto& u : box_points(A.n(), B + 2 * m))
    if (S_small(u) && S_big(u)) units.push_back(u);
  auto cover = windowed_cokernel_dim(A, alpha, lam, S_big, B, m, units);
  q.defect = cover.dim;
  q.surjective = cover.dim == 0;
  q.dims_equal = q.small.stabilized && q.big.stabilized && q.small.dim == q.big.dim;
  q.verdict = q.dims_equal && q.surjective;
  q.warnings = q.big.warnings;
  return q;
}

}  // namespace gkz
