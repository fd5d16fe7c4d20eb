#pragma once

// Normal-ordered Weyl algebra in lambda_1..lambda_N, d_1..d_N over Q, the GKZ
// operators box_l and Z_{i,alpha}, and the map phi: D -> R.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gkz/laurent.hpp"

namespace gkz {

// Sum of c * lambda^e * d^b with every lambda to the left of every d.
class WeylElement {
public:
  struct Key {
    Exponent lam;
    Exponent del;
    auto operator<=>(const Key&) const = default;
  };
  using term_map = std::map<Key, Rational>;

  WeylElement() = default;
  explicit WeylElement(std::size_t N) : N_(N) {}

  static WeylElement constant(std::size_t N, const Rational& c) {
    WeylElement w(N);
    w.add_term(Exponent(N, 0), Exponent(N, 0), c);
    return w;
  }
  static WeylElement lambda(std::size_t N, std::size_t j) {
    Exponent e(N, 0);
    e.at(j) = 1;
    WeylElement w(N);
    w.add_term(e, Exponent(N, 0), 1);
    return w;
  }
  static WeylElement del(std::size_t N, std::size_t j) {
    Exponent b(N, 0);
    b.at(j) = 1;
    WeylElement w(N);
    w.add_term(Exponent(N, 0), b, 1);
    return w;
  }
  static WeylElement monomial(const Exponent& lam, const Exponent& del, const Rational& c = 1) {
    WeylElement w(lam.size());
    w.add_term(lam, del, c);
    return w;
  }

  std::size_t N() const noexcept { return N_; }
  const term_map& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const Exponent& lam, const Exponent& del, const Rational& c) {
    if (lam.size() != N_ || del.size() != N_) throw InvalidInput("Weyl exponent length mismatch");
    for (std::size_t j = 0; j < N_; ++j)
      if (lam[j] < 0 || del[j] < 0) throw InvalidInput("Weyl exponents must be nonnegative");
    if (gkz::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(Key{lam, del}, c);
    if (!inserted) {
      it->second += c;
      if (gkz::is_zero(it->second)) terms_.erase(it);
    }
  }

  WeylElement& operator+=(const WeylElement& o) {
    check_same(o);
    for (const auto& [k, c] : o.terms_) add_term(k.lam, k.del, c);
    return *this;
  }
  WeylElement& operator-=(const WeylElement& o) {
    check_same(o);
    for (const auto& [k, c] : o.terms_) add_term(k.lam, k.del, -c);
    return *this;
  }
  friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
  friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
  WeylElement scaled(const Rational& q) const {
    WeylElement r(N_);
    for (const auto& [k, c] : terms_) r.add_term(k.lam, k.del, c * q);
    return r;
  }

  // Total degree in the d's of the highest term.
  int del_degree() const {
    int d = 0;
    for (const auto& [k, c] : terms_) {
      int s = 0;
      for (int x : k.del) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  bool operator==(const WeylElement&) const = default;

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      if (!first) s += " + ";
      first = false;
      s += to_string(c);
      for (std::size_t j = 0; j < N_; ++j)
        if (k.lam[j]) s += "*l" + std::to_string(j + 1) + (k.lam[j] > 1 ? "^" + std::to_string(k.lam[j]) : "");
      for (std::size_t j = 0; j < N_; ++j)
        if (k.del[j]) s += "*d" + std::to_string(j + 1) + (k.del[j] > 1 ? "^" + std::to_string(k.del[j]) : "");
    }
    return s;
  }

  void check_same(const WeylElement& o) const {
    if (N_ != o.N_) throw InvalidInput("Weyl elements over different numbers of variables");
  }

private:
  std::size_t N_ = 0;
  term_map terms_;
};

namespace detail {

inline BigInt binomial(int n, int k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}
// n (n-1) ... (n-k+1)
inline BigInt falling(int n, int k) {
  BigInt r = 1;
  for (int t = 0; t < k; ++t) r *= (n - t);
  return r;
}

}  // namespace detail

// Normal-ordered product. Uses
//   d^b lambda^e = sum_{k <= min(b, e)} prod_j C(b_j, k_j) e_j!/(e_j - k_j)! lambda^{e-k} d^{b-k}.
inline WeylElement weyl_mul(const WeylElement& a, const WeylElement& b) {
  a.check_same(b);
  const std::size_t N = a.N();
  WeylElement r(N);
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      // Enumerate k with 0 <= k_j <= min(ka.del_j, kb.lam_j).
      Exponent kmax(N), k(N, 0);
      for (std::size_t j = 0; j < N; ++j) kmax[j] = std::min(ka.del[j], kb.lam[j]);
      for (;;) {
        BigInt coef = 1;
        Exponent lam(N), del(N);
        for (std::size_t j = 0; j < N; ++j) {
          coef *= detail::binomial(ka.del[j], k[j]) * detail::falling(kb.lam[j], k[j]);
          lam[j] = ka.lam[j] + kb.lam[j] - k[j];
          del[j] = ka.del[j] - k[j] + kb.del[j];
        }
        r.add_term(lam, del, ca * cb * Rational(coef));
        std::size_t j = 0;
        while (j < N && k[j] == kmax[j]) k[j++] = 0;
        if (j == N) break;
        ++k[j];
      }
    }
  }
  return r;
}

// box_l = prod_{l_j>0} d_j^{l_j} - prod_{l_j<0} d_j^{-l_j}
inline WeylElement box_operator(const IntVector& l, const PointConfig& A) {
  if (!is_relation(A, l)) throw InvalidInput("vector is not a relation of A");
  const std::size_t N = A.N();
  Exponent plus(N, 0), minus(N, 0);
  for (std::size_t j = 0; j < N; ++j) (l[j] > 0 ? plus[j] : minus[j]) = static_cast<int>(std::llabs(l[j]));
  WeylElement w(N);
  w.add_term(Exponent(N, 0), plus, 1);
  w.add_term(Exponent(N, 0), minus, -1);
  return w;
}

// Z_{i,alpha} = sum_j a^(j)_i lambda_j d_j - alpha_i
inline WeylElement euler_operator(std::size_t i, const ParameterVector& alpha, const PointConfig& A) {
  if (i >= A.n() || alpha.size() != A.n()) throw InvalidInput("euler_operator: index or alpha length invalid");
  const std::size_t N = A.N();
  WeylElement w(N);
  for (std::size_t j = 0; j < N; ++j) {
    Exponent e(N, 0);
    e[j] = 1;
    w.add_term(e, e, qi(A.point(j)[i]));
  }
  w.add_term(Exponent(N, 0), Exponent(N, 0), -alpha[i]);
  return w;
}

// Shift beta with box_l o Z_{i,alpha} = Z_{i,beta} o box_l, for Z_{i,alpha} = ... - alpha_i.
inline ParameterVector commutation_shift(const IntVector& l, const ParameterVector& alpha, const PointConfig& A) {
  ParameterVector beta = alpha;
  for (std::size_t j = 0; j < A.N(); ++j)
    if (l[j] > 0)
      for (std::size_t i = 0; i < A.n(); ++i) beta.entries[i] -= qi(l[j] * A.point(j)[i]);
  return beta;
}

// box_l Z_{i,alpha} - Z_{i,beta} box_l; zero iff the commutation identity holds for beta.
inline WeylElement commutation_residual(const IntVector& l, std::size_t i, const ParameterVector& alpha,
                                        const ParameterVector& beta, const PointConfig& A) {
  auto box = box_operator(l, A);
  return weyl_mul(box, euler_operator(i, alpha, A)) - weyl_mul(euler_operator(i, beta, A), box);
}

inline bool check_commutation(const IntVector& l, std::size_t i, const ParameterVector& alpha, const PointConfig& A) {
  return commutation_residual(l, i, alpha, commutation_shift(l, alpha, A), A).is_zero();
}

// phi(lambda^e d^b) = lambda^e x^{sum_j b_j a^(j)}, with lambda kept symbolic.
inline LaurentPoly<LambdaPoly> phi_map(const WeylElement& w, const PointConfig& A) {
  const std::size_t N = A.N();
  if (w.N() != N && !w.is_zero()) throw InvalidInput("Weyl element arity differs from N");
  LaurentPoly<LambdaPoly> r(A.n());
  for (const auto& [k, c] : w.terms()) {
    Exponent u(A.n(), 0);
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t i = 0; i < A.n(); ++i) u[i] += k.del[j] * static_cast<int>(A.point(j)[i]);
    r.add_term(u, LambdaPoly::monomial(k.lam, c));
  }
  return r;
}

// phi with lambda specialized to rationals.
inline LaurentPoly<Rational> phi_map(const WeylElement& w, const PointConfig& A, const std::vector<Rational>& lam) {
  auto sym = phi_map(w, A);
  return sym.map_coefficients([&](const LambdaPoly& c) { return evaluate(c, lam); });
}

// d_j acting on R through the lambda-coefficients plus multiplication by x^{a^(j)}.
inline LaurentPoly<LambdaPoly> apply_Dj(std::size_t j, const PointConfig& A, const LaurentPoly<LambdaPoly>& p) {
  LaurentPoly<LambdaPoly> r(A.n());
  for (const auto& [u, c] : p.terms()) r.add_term(u, c.partial(j));
  r += p.shifted(to_exponent(A.point(j)));
  return r;
}

struct IntertwineResult {
  bool euler_ok = false;  // phi(w Z_{i,alpha}) = D_{i,-alpha}(phi(w))
  bool del_ok = false;    // phi(d_j w) = (d_j + x^{a^(j)}) phi(w)
  bool ok() const noexcept { return euler_ok && del_ok; }
};

// Right multiplication by Z_{i,alpha} corresponds under phi to D_{i,-alpha}
// (with Z_{i,alpha} = sum a lambda d - alpha_i and D_{i,alpha} = x_i d/dx_i + alpha_i + x_i df/dx_i).
inline IntertwineResult check_phi_intertwines(const WeylElement& w, std::size_t i, std::size_t j,
                                              const ParameterVector& alpha, const PointConfig& A) {
  auto f = build_f(A, symbolic_lambda(A.N()));
  IntertwineResult r;
  auto lhs = phi_map(weyl_mul(w, euler_operator(i, alpha, A)), A);
  r.euler_ok = lhs == apply_D(i, alpha.negated(), f, phi_map(w, A));
  auto lhs2 = phi_map(weyl_mul(WeylElement::del(A.N(), j), w), A);
  r.del_ok = lhs2 == apply_Dj(j, A, phi_map(w, A));
  return r;
}

}  // namespace gkz
