#pragma once

// Laurent polynomials in x_1..x_n, the polynomial f = sum_j lambda_j x^{a^(j)},
// the twisted derivations D_{i,alpha}, and support predicates for the
// submodules M_U of R'.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gkz/lattice.hpp"
#include "gkz/sparse_poly.hpp"

namespace gkz {

template <class C>
using LaurentPoly = SparsePoly<C>;

inline Exponent to_exponent(const IntVector& v) {
  Exponent e(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) e[i] = static_cast<int>(v[i]);
  return e;
}
inline IntVector to_int_vector(const Exponent& e) { return IntVector(e.begin(), e.end()); }

// lambda_1..lambda_N as elements of Q[lambda].
inline std::vector<LambdaPoly> symbolic_lambda(std::size_t N) {
  std::vector<LambdaPoly> lam;
  for (std::size_t j = 0; j < N; ++j) lam.push_back(LambdaPoly::variable(N, j, Rational(1)));
  return lam;
}

template <class C>
LaurentPoly<C> build_f(const PointConfig& A, const std::vector<C>& lam) {
  if (lam.size() != A.N()) throw InvalidInput("lambda must have one entry per point");
  LaurentPoly<C> f(A.n());
  for (std::size_t j = 0; j < A.N(); ++j) f.add_term(to_exponent(A.point(j)), lam[j]);
  return f;
}

template <class C>
LaurentPoly<C> toric_derivative(std::size_t i, const LaurentPoly<C>& p) {
  return p.toric_derivative(i);
}

// D_{i,alpha}(xi) = x_i d(xi)/dx_i + alpha_i xi + (x_i df/dx_i) xi
template <class C>
LaurentPoly<C> apply_D(std::size_t i, const ParameterVector& alpha, const LaurentPoly<C>& f,
                       const LaurentPoly<C>& xi) {
  if (i >= alpha.size()) throw InvalidInput("index out of range for alpha");
  LaurentPoly<C> r = xi.toric_derivative(i);
  r += xi.scaled_rational(alpha[i]);
  r += f.toric_derivative(i) * xi;
  return r;
}

// Membership in U_0 = N a^(1) + ... + N a^(N).
//
// Exact when C(A) is pointed (bounded search along a positive grading) or when
// C(A) = R^n (then U_0 = Z^n). Otherwise falls back to breadth-first
// reachability inside a box of radius |u|_inf + slack.
class SemigroupMembership {
public:
  explicit SemigroupMembership(const PointConfig& A, long long slack = 0) : A_(A) {
    std::vector<IntVector> nonzero;
    for (const auto& a : A.points())
      if (std::any_of(a.begin(), a.end(), [](long long x) { return x != 0; })) nonzero.push_back(a);
    nonzero_ = nonzero;
    auto facets = cone_facets(A);
    whole_space_ = facets.empty();
    if (!whole_space_) {
      IntVector w(A.n(), 0);
      for (const auto& f : facets)
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += f.coeffs[i];
      bool ok = true;
      for (const auto& a : nonzero_) ok &= dot(w, a) >= 1;
      if (ok) grading_ = w;
    }
    slack_ = slack > 0 ? slack : 4 * std::max<long long>(1, A.max_norm());
  }

  bool exact() const noexcept { return whole_space_ || grading_.has_value(); }

  bool contains(const IntVector& u) const {
    if (whole_space_) return true;
    if (grading_) return reachable(u);
    return bfs_contains(u);
  }

private:
  bool reachable(const IntVector& b) const {
    if (std::all_of(b.begin(), b.end(), [](long long x) { return x == 0; })) return true;
    if (dot(*grading_, b) <= 0) return false;
    auto it = memo_->find(b);
    if (it != memo_->end()) return it->second;
    bool ok = false;
    for (const auto& a : nonzero_) {
      IntVector c(b);
      for (std::size_t i = 0; i < c.size(); ++i) c[i] -= a[i];
      if (dot(*grading_, c) >= 0 && reachable(c)) {
        ok = true;
        break;
      }
    }
    memo_->emplace(b, ok);
    return ok;
  }

  bool bfs_contains(const IntVector& u) const {
    long long radius = 0;
    for (long long x : u) radius = std::max(radius, std::llabs(x));
    radius += slack_;
    if (radius > bfs_radius_) {
      bfs_radius_ = radius;
      bfs_set_->clear();
      std::vector<IntVector> frontier{IntVector(A_.n(), 0)};
      bfs_set_->insert(frontier[0]);
      while (!frontier.empty()) {
        std::vector<IntVector> next;
        for (const auto& p : frontier)
          for (const auto& a : nonzero_) {
            IntVector q(p);
            bool inside = true;
            for (std::size_t i = 0; i < q.size(); ++i) {
              q[i] += a[i];
              inside &= std::llabs(q[i]) <= radius;
            }
            if (inside && bfs_set_->insert(q).second) next.push_back(q);
          }
        frontier.swap(next);
      }
    }
    return bfs_set_->count(u) > 0;
  }

  PointConfig A_;
  std::vector<IntVector> nonzero_;
  bool whole_space_ = false;
  std::optional<IntVector> grading_;
  long long slack_ = 0;
  std::shared_ptr<std::map<IntVector, bool>> memo_ = std::make_shared<std::map<IntVector, bool>>();
  mutable long long bfs_radius_ = -1;
  std::shared_ptr<std::set<IntVector>> bfs_set_ = std::make_shared<std::set<IntVector>>();
};

// A subset U of Z^n, intended to satisfy u in U => u + a^(j) in U.
class SupportPredicate {
public:
  enum class Kind { All, SemigroupU0, HalfLaurent, W, Custom };

  static SupportPredicate all() {
    return SupportPredicate(Kind::All, "Z^n", [](const Exponent&) { return true; });
  }
  static SupportPredicate u0(const PointConfig& A) {
    auto m = std::make_shared<SemigroupMembership>(A);
    return SupportPredicate(Kind::SemigroupU0, "U0", [m](const Exponent& u) { return m->contains(to_int_vector(u)); });
  }
  // u_n >= 0 (the ring R_+ = C[lambda][x_1^{+-1}, ..., x_{n-1}^{+-1}, x_n]).
  static SupportPredicate half_laurent() {
    return SupportPredicate(Kind::HalfLaurent, "R+", [](const Exponent& u) { return u.back() >= 0; });
  }
  static SupportPredicate w(const IntVector& v, const std::vector<std::size_t>& T, std::vector<FacetForm> facets) {
    return SupportPredicate(Kind::W, "W", [v, T, facets = std::move(facets)](const Exponent& u) {
      return evaluate_W_membership(to_int_vector(u), v, T, facets);
    });
  }
  static SupportPredicate custom(std::string name, std::function<bool(const Exponent&)> fn) {
    return SupportPredicate(Kind::Custom, std::move(name), std::move(fn));
  }

  bool contains(const Exponent& u) const { return fn_(u); }
  bool operator()(const Exponent& u) const { return fn_(u); }
  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

private:
  SupportPredicate(Kind k, std::string name, std::function<bool(const Exponent&)> fn)
      : kind_(k), name_(std::move(name)), fn_(std::move(fn)) {}
  Kind kind_;
  std::string name_;
  std::function<bool(const Exponent&)> fn_;
};

// All lattice points of the box [-B, B]^n.
inline std::vector<Exponent> box_points(std::size_t n, int B) {
  std::vector<Exponent> out;
  if (B < 0) return out;
  Exponent e(n, -B);
  for (;;) {
    out.push_back(e);
    std::size_t i = 0;
    while (i < n && e[i] == B) e[i++] = -B;
    if (i == n) break;
    ++e[i];
  }
  return out;
}

// Sampled check of the closure condition u in S => u + a^(j) in S on [-B, B]^n.
inline bool check_closure(const SupportPredicate& S, const PointConfig& A, int B) {
  for (const auto& u : box_points(A.n(), B)) {
    if (!S(u)) continue;
    for (const auto& a : A.points())
      if (!S(u + to_exponent(a))) return false;
  }
  return true;
}

// Split p into (terms supported in S, residue outside S).
template <class C>
std::pair<LaurentPoly<C>, LaurentPoly<C>> support_restrict(const LaurentPoly<C>& p, const SupportPredicate& S) {
  LaurentPoly<C> in(p.nvars()), out(p.nvars());
  for (const auto& [e, c] : p.terms()) (S(e) ? in : out).add_term(e, c);
  return {in, out};
}

}  // namespace gkz
