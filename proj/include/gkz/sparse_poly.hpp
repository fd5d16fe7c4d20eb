#pragma once

// Sparse multivariate (Laurent) polynomials over an exact coefficient ring.
//
// SparsePoly<Rational> with nonnegative exponents models Q[lambda_1..lambda_N];
// SparsePoly<C> with arbitrary integer exponents models Laurent polynomials in
// x_1..x_n over C, where C is Rational (lambda specialized) or LambdaPoly
// (lambda symbolic). Terms with zero coefficient are never stored.

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gkz/errors.hpp"
#include "gkz/rational.hpp"

namespace gkz {

using Exponent = std::vector<int>;

inline Exponent operator+(const Exponent& a, const Exponent& b) {
  Exponent r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}
inline Exponent operator-(const Exponent& a, const Exponent& b) {
  Exponent r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

template <class C>
class SparsePoly;

namespace detail {

template <class T>
struct is_sparse_poly : std::false_type {};
template <class T>
struct is_sparse_poly<SparsePoly<T>> : std::true_type {};

}  // namespace detail

inline bool coeff_is_zero(const Rational& q) { return is_zero(q); }
template <class C>
bool coeff_is_zero(const SparsePoly<C>& p) {
  return p.is_zero();
}

template <class C>
class SparsePoly {
public:
  using coeff_type = C;
  using term_map = std::map<Exponent, C>;

  SparsePoly() = default;
  explicit SparsePoly(std::size_t nvars) : nvars_(nvars) {}

  static SparsePoly constant(std::size_t nvars, const C& c) {
    SparsePoly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }
  static SparsePoly monomial(const Exponent& e, const C& c) {
    SparsePoly p(e.size());
    p.add_term(e, c);
    return p;
  }
  // The generator x_i (or lambda_i).
  static SparsePoly variable(std::size_t nvars, std::size_t i, const C& one) {
    Exponent e(nvars, 0);
    e.at(i) = 1;
    return monomial(e, one);
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const term_map& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  // Coefficient of x^e (zero-initialized C when absent).
  C coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? C{} : it->second;
  }

  void add_term(const Exponent& e, const C& c) {
    if (e.size() != nvars_) throw InvalidInput("exponent length mismatch");
    if (coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  SparsePoly& operator+=(const SparsePoly& o) {
    adopt_nvars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  SparsePoly& operator-=(const SparsePoly& o) {
    adopt_nvars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  SparsePoly operator-() const {
    SparsePoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }

  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r(a.nvars_);
    r.adopt_nvars(b);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

  // Multiplication by a coefficient-ring element.
  SparsePoly scaled(const C& c) const {
    SparsePoly r(nvars_);
    if (coeff_is_zero(c)) return r;
    for (const auto& [e, x] : terms_) r.add_term(e, x * c);
    return r;
  }
  // Multiplication by a rational (valid for every coefficient ring here).
  template <class Q = Rational>
    requires(!std::is_same_v<C, Rational>)
  SparsePoly scaled_rational(const Q& q) const {
    SparsePoly r(nvars_);
    if (gkz::is_zero(q)) return r;
    for (const auto& [e, x] : terms_) r.add_term(e, x.scaled_rational(q));
    return r;
  }
  template <class Q = Rational>
    requires std::is_same_v<C, Rational>
  SparsePoly scaled_rational(const Q& q) const {
    return scaled(q);
  }

  SparsePoly shifted(const Exponent& by) const {
    SparsePoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + by, c);
    return r;
  }

  SparsePoly pow(unsigned k) const {
    SparsePoly r = constant(nvars_, one_like());
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  // x_i d/dx_i: each term x^u c maps to u_i c x^u.
  SparsePoly toric_derivative(std::size_t i) const {
    if (i >= nvars_) throw InvalidInput("variable index out of range");
    SparsePoly r(nvars_);
    for (const auto& [e, c] : terms_)
      if (e[i] != 0) r.add_term(e, scale_int(c, e[i]));
    return r;
  }

  // d/dvar_i (ordinary derivative; used for lambda-derivatives).
  SparsePoly partial(std::size_t i) const {
    if (i >= nvars_) throw InvalidInput("variable index out of range");
    SparsePoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponent f = e;
      --f[i];
      r.add_term(f, scale_int(c, e[i]));
    }
    return r;
  }

  // Apply fn to every coefficient (result ring may differ).
  template <class Fn>
  auto map_coefficients(Fn&& fn) const {
    using D = std::decay_t<decltype(fn(std::declval<const C&>()))>;
    SparsePoly<D> r(nvars_);
    for (const auto& [e, c] : terms_) r.add_term(e, fn(c));
    return r;
  }

  bool operator==(const SparsePoly& o) const { return terms_ == o.terms_; }

  // Per-variable min/max exponents (empty polynomial: zeros).
  std::pair<Exponent, Exponent> exponent_bounds() const {
    Exponent lo(nvars_, 0), hi(nvars_, 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (first || e[i] < lo[i]) lo[i] = e[i];
        if (first || e[i] > hi[i]) hi[i] = e[i];
      }
      first = false;
    }
    return {lo, hi};
  }

  std::string str(const std::string& var = "x") const;

private:
  void adopt_nvars(const SparsePoly& o) {
    if (terms_.empty() && nvars_ == 0) nvars_ = o.nvars_;
    if (!o.terms_.empty() && o.nvars_ != nvars_) throw InvalidInput("polynomial arity mismatch");
  }
  static C scale_int(const C& c, long long k) {
    if constexpr (std::is_same_v<C, Rational>) {
      return c * qi(k);
    } else {
      return c.scaled_rational(qi(k));
    }
  }
  C one_like() const {
    if constexpr (std::is_same_v<C, Rational>) {
      return Rational(1);
    } else {
      // Symbolic coefficient rings: infer the arity from an existing coefficient.
      std::size_t inner = terms_.empty() ? 0 : terms_.begin()->second.nvars();
      return C::constant(inner, Rational(1));
    }
  }

  std::size_t nvars_ = 0;
  term_map terms_;
};

using LambdaPoly = SparsePoly<Rational>;

inline std::string coeff_str(const Rational& q) { return to_string(q); }
template <class C>
std::string coeff_str(const SparsePoly<C>& p) {
  return "(" + p.str("l") + ")";
}

template <class C>
std::string SparsePoly<C>::str(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << coeff_str(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) os << "*" << var << (i + 1) << (e[i] != 1 ? "^" + std::to_string(e[i]) : "");
  }
  return os.str();
}

// Evaluate a lambda-polynomial at rational lambda.
inline Rational evaluate(const LambdaPoly& p, const std::vector<Rational>& lam) {
  if (lam.size() != p.nvars() && !p.is_zero()) throw InvalidInput("lambda length mismatch");
  Rational s = 0;
  for (const auto& [e, c] : p.terms()) {
    Rational t = c;
    for (std::size_t j = 0; j < e.size(); ++j) {
      Rational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), lam[j].get_num_mpz_t(), e[j]);
      mpz_pow_ui(pw.get_den_mpz_t(), lam[j].get_den_mpz_t(), e[j]);
      t *= pw;
    }
    s += t;
  }
  return s;
}

}  // namespace gkz
