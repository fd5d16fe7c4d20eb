#pragma once

// The case f = x_n g(x_1..x_{n-1}): forms on U = {g != 0} in the (n-1)-torus
// with the twisted differential tilde-nabla, the two-row double complex on
// R_+ forms, the Pochhammer-weighted chain map gamma, and truncated
// top-degree cohomology of U.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gkz/derham.hpp"

namespace gkz {

using RPoly = LaurentPoly<Rational>;

// Holds g and performs exact division by it.
class GContext {
public:
  explicit GContext(RPoly g) : g_(std::move(g)) {
    if (g_.is_zero()) throw InvalidInput("g must be nonzero");
  }

  const RPoly& g() const noexcept { return g_; }
  std::size_t nvars() const noexcept { return g_.nvars(); }

  RPoly power(int k) const {
    if (k < 0) throw InvalidInput("negative power of g");
    return g_.pow(static_cast<unsigned>(k));
  }

  // Largest |exponent| appearing in g.
  int radius() const {
    int r = 0;
    for (const auto& [e, c] : g_.terms())
      for (int x : e) r = std::max(r, std::abs(x));
    return r;
  }

  // P / g when it is a Laurent polynomial. Quotient exponents are confined to
  // [lo(P) - lo(g), hi(P) - hi(g)], which makes the lex division terminate.
  std::optional<RPoly> divide(const RPoly& P) const {
    RPoly Q(nvars());
    if (P.is_zero()) return Q;
    auto [lp, hp] = P.exponent_bounds();
    auto [lg, hg] = g_.exponent_bounds();
    const auto& [lead_e, lead_c] = *g_.terms().rbegin();
    RPoly R = P;
    while (!R.is_zero()) {
      const auto& [e, c] = *R.terms().rbegin();
      Exponent q = e - lead_e;
      for (std::size_t i = 0; i < q.size(); ++i)
        if (q[i] < lp[i] - lg[i] || q[i] > hp[i] - hg[i]) return std::nullopt;
      RPoly t = RPoly::monomial(q, c / lead_c);
      Q += t;
      R -= t * g_;
    }
    return Q;
  }

private:
  RPoly g_;
};

using GRef = std::shared_ptr<const GContext>;

inline GRef make_gcontext(RPoly g) { return std::make_shared<const GContext>(std::move(g)); }

// g(x') = sum_j lambda_j x'^{a'^(j)} where a'^(j) drops the last coordinate.
inline RPoly build_g(const PointConfig& A, const std::vector<Rational>& lam) {
  if (lam.size() != A.N()) throw InvalidInput("lambda must have one entry per point");
  RPoly g(A.n() - 1);
  for (std::size_t j = 0; j < A.N(); ++j) {
    Exponent e(A.n() - 1);
    for (std::size_t i = 0; i + 1 < A.n(); ++i) e[i] = static_cast<int>(A.point(j)[i]);
    g.add_term(e, lam[j]);
  }
  return g;
}

inline void require_split_structure(const PointConfig& A) {
  if (!last_coordinate_is_one(A)) throw StructureError("last coordinate of A is not identically 1");
}

// P / g^m with m >= 0.
class LocalizedElement {
public:
  LocalizedElement(GRef ctx, RPoly num, int m = 0) : ctx_(std::move(ctx)), num_(std::move(num)), m_(m) {
    if (m_ < 0) {
      num_ = num_ * ctx_->power(-m_);
      m_ = 0;
    }
  }

  const RPoly& numerator() const noexcept { return num_; }
  int g_power() const noexcept { return m_; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  // Cancels common factors of g.
  LocalizedElement canonical() const {
    LocalizedElement r = *this;
    while (r.m_ > 0) {
      auto q = ctx_->divide(r.num_);
      if (!q) break;
      r.num_ = std::move(*q);
      --r.m_;
    }
    if (r.num_.is_zero()) r.m_ = 0;
    return r;
  }

  RPoly over(int M) const {
    if (M < m_) throw InvalidInput("denominator below element's g-power");
    return num_ * ctx_->power(M - m_);
  }

  friend LocalizedElement operator+(const LocalizedElement& a, const LocalizedElement& b) {
    int M = std::max(a.m_, b.m_);
    return LocalizedElement(a.ctx_, a.over(M) + b.over(M), M);
  }
  friend LocalizedElement operator-(const LocalizedElement& a, const LocalizedElement& b) {
    int M = std::max(a.m_, b.m_);
    return LocalizedElement(a.ctx_, a.over(M) - b.over(M), M);
  }
  friend LocalizedElement operator*(const LocalizedElement& a, const LocalizedElement& b) {
    return LocalizedElement(a.ctx_, a.num_ * b.num_, a.m_ + b.m_);
  }
  bool operator==(const LocalizedElement& o) const {
    int M = std::max(m_, o.m_);
    return over(M) == o.over(M);
  }

  std::string str() const { return "(" + num_.str() + ")/g^" + std::to_string(m_); }

private:
  GRef ctx_;
  RPoly num_;
  int m_;
};

// A form on U in the logarithmic basis, stored over the common denominator g^m.
class UForm {
public:
  UForm(GRef ctx, std::size_t k) : ctx_(std::move(ctx)), num_(ctx_->nvars(), k) {}
  UForm(GRef ctx, LogForm<Rational> num, int m) : ctx_(std::move(ctx)), num_(std::move(num)), m_(m) {
    if (num_.n() != ctx_->nvars()) throw InvalidInput("U-form over the wrong number of variables");
    if (m_ < 0) {
      num_ = num_.multiplied(ctx_->power(-m_));
      m_ = 0;
    }
  }

  static UForm monomial(GRef ctx, const IndexTuple& I, const Exponent& u, int m) {
    auto n = ctx->nvars();
    return UForm(std::move(ctx), LogForm<Rational>::monomial(n, I, u, Rational(1)), m);
  }

  const GRef& context() const noexcept { return ctx_; }
  const LogForm<Rational>& numerator() const noexcept { return num_; }
  int g_power() const noexcept { return m_; }
  std::size_t degree() const noexcept { return num_.degree(); }
  bool is_zero() const noexcept { return num_.is_zero(); }

  LogForm<Rational> over(int M) const {
    if (M < m_) throw InvalidInput("denominator below form's g-power");
    return num_.multiplied(ctx_->power(M - m_));
  }

  friend UForm operator+(const UForm& a, const UForm& b) {
    int M = std::max(a.m_, b.m_);
    return UForm(a.ctx_, a.over(M) + b.over(M), M);
  }
  friend UForm operator-(const UForm& a, const UForm& b) {
    int M = std::max(a.m_, b.m_);
    return UForm(a.ctx_, a.over(M) - b.over(M), M);
  }
  bool operator==(const UForm& o) const {
    int M = std::max(m_, o.m_);
    return over(M) == o.over(M);
  }

  std::string str() const { return "[" + num_.str() + "]/g^" + std::to_string(m_); }

private:
  GRef ctx_;
  LogForm<Rational> num_;
  int m_ = 0;
};

// Coefficient of dlog x_i in tilde-nabla(P/g^m), as a numerator over g^{m+1}:
// ((theta_i P + alpha_i P) g - (m + alpha_n) P theta_i g)
inline RPoly tilde_D_numerator(std::size_t i, const ParameterVector& alpha, const GContext& ctx, const RPoly& P,
                               int m) {
  const auto& g = ctx.g();
  RPoly r = (P.toric_derivative(i) + P.scaled(alpha[i])) * g;
  r -= (P * g.toric_derivative(i)).scaled(alpha[alpha.size() - 1] + m);
  return r;
}

// tilde-nabla_alpha = d + sum_{i<n} alpha_i dlog x_i ^ - alpha_n dg/g ^
inline UForm tilde_nabla(const ParameterVector& alpha, const UForm& omega) {
  const auto& ctx = *omega.context();
  const std::size_t np = ctx.nvars();
  if (alpha.size() != np + 1) throw InvalidInput("alpha must have n entries for forms in n-1 variables");
  LogForm<Rational> out(np, omega.degree() + 1);
  for (const auto& [I, P] : omega.numerator().components())
    for (std::size_t i = 0; i < np; ++i) {
      auto w = wedge_front(static_cast<int>(i), I);
      if (!w) continue;
      auto c = tilde_D_numerator(i, alpha, ctx, P, omega.g_power());
      out.add(w->second, w->first > 0 ? c : -c);
    }
  return UForm(omega.context(), std::move(out), omega.g_power() + 1);
}

// Multiplication by x'^{u'} / g^{u_n}.
inline UForm twist_U(const IntVector& u, const UForm& omega) {
  const std::size_t np = omega.context()->nvars();
  if (u.size() != np + 1) throw InvalidInput("twist vector has wrong length");
  Exponent e(np);
  for (std::size_t i = 0; i < np; ++i) e[i] = static_cast<int>(u[i]);
  return UForm(omega.context(), omega.numerator().shifted(e), omega.g_power() + static_cast<int>(u.back()));
}

inline std::vector<UForm> u_monomial_forms(const GRef& ctx, std::size_t k, int radius, int max_m) {
  std::vector<UForm> out;
  for (const auto& u : box_points(ctx->nvars(), radius))
    for (const auto& I : index_tuples(ctx->nvars(), k))
      for (int m = 0; m <= max_m; ++m) out.push_back(UForm::monomial(ctx, I, u, m));
  return out;
}

inline CheckResult check_U_complex(const ParameterVector& alpha, const std::vector<UForm>& samples) {
  CheckResult r;
  for (const auto& w : samples) {
    ++r.checked;
    auto dd = tilde_nabla(alpha, tilde_nabla(alpha, w));
    if (!dd.is_zero()) r.fail("tilde-nabla^2(" + w.str() + ") = " + dd.str());
  }
  return r;
}

// (x'^{u'}/g^{u_n}) tilde-nabla_{alpha+u} = tilde-nabla_alpha (x'^{u'}/g^{u_n})
inline CheckResult twist_iso_U_check(const ParameterVector& alpha, const IntVector& u,
                                     const std::vector<UForm>& samples) {
  CheckResult r;
  for (const auto& w : samples) {
    ++r.checked;
    auto lhs = twist_U(u, tilde_nabla(alpha.shifted(u), w));
    auto rhs = tilde_nabla(alpha, twist_U(u, w));
    if (!(lhs == rhs)) r.fail("U-twist mismatch on " + w.str());
  }
  return r;
}

// ---------------------------------------------------------------------------
// Double complex on R_+ forms.

// (w0, w1): w0 has bidegree (k,0); w1 has bidegree (k-1,1) with the trailing
// dlog x_n left implicit. Index tuples are drawn from {0..n-2}; coefficients are
// Laurent polynomials in all n variables.
struct SplitForm {
  std::size_t k = 0;
  LogForm<Rational> w0, w1;

  SplitForm() = default;
  SplitForm(std::size_t n, std::size_t k_) : k(k_), w0(n, k_), w1(n, k_ == 0 ? 0 : k_ - 1) {}
  SplitForm(LogForm<Rational> a, LogForm<Rational> b, std::size_t k_) : k(k_), w0(std::move(a)), w1(std::move(b)) {
    validate();
  }

  void validate() const {
    auto check = [&](const LogForm<Rational>& w) {
      for (const auto& [I, xi] : w.components())
        for (int i : I)
          if (static_cast<std::size_t>(i) + 1 >= w.n()) throw InvalidInput("split forms may not use dlog x_n");
    };
    check(w0);
    check(w1);
    if (k == 0 && !w1.is_zero()) throw InvalidInput("degree-0 split form has no second component");
  }

  bool is_zero() const { return w0.is_zero() && w1.is_zero(); }
  SplitForm operator+(const SplitForm& o) const {
    return SplitForm(w0 + o.w0, w1 + o.w1, k);
  }
  bool operator==(const SplitForm& o) const { return k == o.k && w0 == o.w0 && w1 == o.w1; }
};

// Sum over i < n-1 of D_{i,alpha}(xi) dlog x_i ^ omega_I.
inline LogForm<Rational> partial_h(const ParameterVector& alpha, const RPoly& f, const LogForm<Rational>& w) {
  LogForm<Rational> r(w.n(), w.degree() + 1);
  for (const auto& [I, xi] : w.components())
    for (std::size_t i = 0; i + 1 < w.n(); ++i) {
      auto wf = wedge_front(static_cast<int>(i), I);
      if (!wf) continue;
      auto d = apply_D(i, alpha, f, xi);
      r.add(wf->second, wf->first > 0 ? d : -d);
    }
  return r;
}

// xi omega_I -> (-1)^k D_{n,alpha}(xi) omega_I ^ dlog x_n, result in w1 layout.
inline LogForm<Rational> partial_v(const ParameterVector& alpha, const RPoly& f, const LogForm<Rational>& w) {
  LogForm<Rational> r(w.n(), w.degree());
  const std::size_t last = w.n() - 1;
  for (const auto& [I, xi] : w.components()) {
    auto d = apply_D(last, alpha, f, xi);
    r.add(I, I.size() % 2 ? -d : d);
  }
  return r;
}

struct SplitBoundaries {
  SplitForm h, v;
  SplitForm total() const { return h + v; }
};

inline SplitBoundaries split_boundaries(const PointConfig& A, const ParameterVector& alpha,
                                        const std::vector<Rational>& lam, const SplitForm& sf) {
  require_split_structure(A);
  sf.validate();
  const std::size_t n = A.n();
  auto f = build_f(A, lam);
  SplitBoundaries b;
  b.h = SplitForm(partial_h(alpha, f, sf.w0), sf.k == 0 ? LogForm<Rational>(n, 0) : partial_h(alpha, f, sf.w1),
                  sf.k + 1);
  b.v = SplitForm(LogForm<Rational>(n, sf.k + 1), partial_v(alpha, f, sf.w0), sf.k + 1);
  return b;
}

// The element of Omega^k_{R_+}<log> represented by sf.
inline LogForm<Rational> to_log_form(const SplitForm& sf) {
  const std::size_t n = sf.w0.n();
  LogForm<Rational> r = sf.w0;
  for (const auto& [I, xi] : sf.w1.components()) {
    IndexTuple J(I);
    J.push_back(static_cast<int>(n - 1));
    r.add(J, xi);
  }
  return r;
}

// nabla_alpha(sf) = partial_h(sf) + partial_v(sf) as forms on the torus.
inline CheckResult total_decomposition_check(const PointConfig& A, const ParameterVector& alpha,
                                             const std::vector<Rational>& lam, const std::vector<SplitForm>& samples) {
  CheckResult r;
  auto f = build_f(A, lam);
  for (const auto& sf : samples) {
    ++r.checked;
    auto lhs = nabla(alpha, f, to_log_form(sf));
    auto rhs = to_log_form(split_boundaries(A, alpha, lam, sf).total());
    if (!(lhs == rhs)) r.fail("total differential mismatch on " + to_log_form(sf).str());
  }
  return r;
}

// (a)_m for m in Z; for m < 0 the reciprocal of (a-1)(a-2)...(a+m).
inline Rational pochhammer(const Rational& a, int m) {
  Rational r = 1;
  if (m >= 0) {
    for (int t = 0; t < m; ++t) r *= a + t;
    return r;
  }
  for (int t = 1; t <= -m; ++t) {
    Rational factor = a - t;
    if (is_zero(factor)) throw PochhammerPole("Pochhammer symbol has a pole at " + to_string(a) + ", " + std::to_string(m));
    r *= factor;
  }
  return 1 / r;
}

// gamma(x^u omega_I ^ dlog x_n) = (-1)^{u_n} (alpha_n)_{u_n} x'^{u'} / g^{u_n} omega_I
inline UForm gamma_map(const ParameterVector& alpha, const GRef& ctx, const LogForm<Rational>& w1) {
  const std::size_t np = ctx->nvars();
  if (w1.n() != np + 1) throw InvalidInput("gamma expects forms in n variables");
  const Rational& an = alpha[np];
  int mmax = 0, mmin = 0;
  for (const auto& [I, xi] : w1.components())
    for (const auto& [u, c] : xi.terms()) {
      mmax = std::max(mmax, u.back());
      mmin = std::min(mmin, u.back());
    }
  LogForm<Rational> out(np, w1.degree());
  for (const auto& [I, xi] : w1.components()) {
    for (int i : I)
      if (static_cast<std::size_t>(i) >= np) throw InvalidInput("gamma input uses dlog x_n");
    RPoly acc(np);
    for (const auto& [u, c] : xi.terms()) {
      int m = u.back();
      Rational w = pochhammer(an, m);
      if (is_zero(w)) throw PochhammerPole("(alpha_n)_" + std::to_string(m) + " vanishes at alpha_n = " + to_string(an));
      if (m % 2) w = -w;
      Exponent up(u.begin(), u.end() - 1);
      acc += (RPoly::monomial(up, c * w) * ctx->power(mmax - m));
    }
    out.add(I, acc);
  }
  return UForm(ctx, std::move(out), mmax);
}

inline GRef g_context_for(const PointConfig& A, const std::vector<Rational>& lam) {
  require_split_structure(A);
  return make_gcontext(build_g(A, lam));
}

// gamma o partial_h = tilde-nabla o gamma on w1, and gamma o partial_v = 0 on w0.
inline CheckResult check_gamma_chain_map(const PointConfig& A, const ParameterVector& alpha,
                                         const std::vector<Rational>& lam, const std::vector<SplitForm>& samples) {
  auto ctx = g_context_for(A, lam);
  auto f = build_f(A, lam);
  CheckResult r;
  for (const auto& sf : samples) {
    ++r.checked;
    if (sf.k > 0) {
      auto lhs = gamma_map(alpha, ctx, partial_h(alpha, f, sf.w1));
      auto rhs = tilde_nabla(alpha, gamma_map(alpha, ctx, sf.w1));
      if (!(lhs == rhs)) r.fail("gamma does not commute with the horizontal differential on " + sf.w1.str());
    }
    auto zero = gamma_map(alpha, ctx, partial_v(alpha, f, sf.w0));
    if (!zero.is_zero()) r.fail("gamma(partial_v(" + sf.w0.str() + ")) = " + zero.str());
  }
  return r;
}

// Monomial split forms of degree k with x' in [-radius, radius]^{n-1} and x_n-degree in [lo, hi].
inline std::vector<SplitForm> split_monomial_forms(std::size_t n, std::size_t k, int radius, int lo, int hi) {
  std::vector<SplitForm> out;
  for (const auto& up : box_points(n - 1, radius))
    for (int d = lo; d <= hi; ++d) {
      Exponent u(up);
      u.push_back(d);
      for (const auto& I : index_tuples(n - 1, k)) {
        SplitForm sf(n, k);
        sf.w0.add(I, RPoly::monomial(u, 1));
        out.push_back(sf);
      }
      if (k > 0)
        for (const auto& I : index_tuples(n - 1, k - 1)) {
          SplitForm sf(n, k);
          sf.w1.add(I, RPoly::monomial(u, 1));
          out.push_back(sf);
        }
    }
  return out;
}

// ker gamma versus partial_v(Omega^{.,0}) on the window x' in [-B', B']^{n-1},
// x_n-degree in [0, K] (or [-K, K] for the Laurent version). Both maps act on
// each index tuple separately and identically up to sign, so a scalar window
// decides the question for every degree.
struct KernelCheck {
  std::size_t window = 0;
  std::size_t kernel_dim = 0;
  std::size_t image_dim = 0;
  bool equal = false;
  bool primes_agree = true;
};

inline KernelCheck kernel_equals_dv_image(const PointConfig& A, const ParameterVector& alpha,
                                          const std::vector<Rational>& lam, int Bp, int K, bool laurent = false) {
  auto ctx = g_context_for(A, lam);
  const std::size_t n = A.n(), np = n - 1;
  const Rational& an = alpha[np];
  if (laurent ? is_integer(an) : (is_integer(an) && an <= 0))
    throw PreconditionError(std::string("alpha_n must not lie in ") + (laurent ? "Z" : "Z_{<=0}"));
  const int lo = laurent ? -K : 0;
  auto f = build_f(A, lam);

  std::vector<Exponent> window;
  for (const auto& up : box_points(np, Bp))
    for (int d = lo; d <= K; ++d) {
      Exponent u(up);
      u.push_back(d);
      window.push_back(u);
    }
  KernelCheck kc;
  kc.window = window.size();

  // Rank of gamma restricted to the window: numerators over g^{K - lo}.
  {
    std::map<Exponent, int> col;
    std::vector<SparseRowQ> rows;
    for (const auto& u : window) {
      LogForm<Rational> w(n, 0);
      w.add({}, RPoly::monomial(u, 1));
      auto img = gamma_map(alpha, ctx, w).over(K - lo);
      SparseRowQ row;
      for (const auto& [I, P] : img.components())
        for (const auto& [e, c] : P.terms()) {
          auto [it, ins] = col.try_emplace(e, static_cast<int>(col.size()));
          row.emplace_back(it->second, c);
        }
      rows.push_back(std::move(row));
    }
    auto sr = split_rank(rows, 0);
    kc.primes_agree &= sr.primes_agree;
    kc.kernel_dim = window.size() - sr.value.rank;
  }

  // dim(partial_v(domain) intersect window).
  {
    const int r = ctx->radius();
    detail::ColumnIndex cols(window);
    std::vector<Exponent> domain;
    for (const auto& up : box_points(np, Bp + r))
      for (int d = lo; d <= K - 1; ++d) {
        Exponent u(up);
        u.push_back(d);
        domain.push_back(u);
      }
    std::vector<RPoly> images;
    for (const auto& u : domain) {
      auto img = apply_D(np, alpha, f, RPoly::monomial(u, 1));
      for (const auto& [e, c] : img.terms()) cols.touch(e);
      images.push_back(std::move(img));
    }
    cols.freeze();
    std::vector<SparseRowQ> rows;
    for (const auto& img : images) {
      SparseRowQ row;
      for (const auto& [e, c] : img.terms()) row.emplace_back(cols[e], c);
      rows.push_back(std::move(row));
    }
    auto sr = split_rank(rows, cols.split());
    kc.primes_agree &= sr.primes_agree;
    kc.image_dim = sr.value.inside;
  }
  kc.equal = kc.kernel_dim == kc.image_dim;
  return kc;
}

// Every x'^v / g^m with v in [-B', B']^{n-1}, 0 <= m <= K is in the span of gamma(window).
inline bool gamma_surjective_check(const PointConfig& A, const ParameterVector& alpha, const std::vector<Rational>& lam,
                                   int Bp, int K) {
  auto ctx = g_context_for(A, lam);
  const std::size_t n = A.n(), np = n - 1;
  std::map<Exponent, int> col;
  auto to_row = [&](const RPoly& P) {
    SparseRowQ row;
    for (const auto& [e, c] : P.terms()) {
      auto [it, ins] = col.try_emplace(e, static_cast<int>(col.size()));
      row.emplace_back(it->second, c);
    }
    return row;
  };
  std::vector<SparseRowQ> images, targets;
  for (const auto& up : box_points(np, Bp))
    for (int d = 0; d <= K; ++d) {
      Exponent u(up);
      u.push_back(d);
      LogForm<Rational> w(n, 0);
      w.add({}, RPoly::monomial(u, 1));
      images.push_back(to_row(gamma_map(alpha, ctx, w).over(K).components().begin()->second));
      targets.push_back(to_row(RPoly::monomial(up, 1) * ctx->power(K - d)));
    }
  std::size_t base = rank_q(images);
  auto both = images;
  both.insert(both.end(), targets.begin(), targets.end());
  return rank_q(both) == base;
}

// ---------------------------------------------------------------------------
// Top cohomology of (Omega_U, tilde-nabla).

// dim of {P/g^M : P in V_B} modulo tilde-nabla images of x'^u/g^m, m < M,
// u in [-(B + r), B + r]^{n-1} with r the exponent radius of g.
inline WindowDim u_window_dim(const GContext& ctx, const ParameterVector& alpha, int B, int M) {
  const std::size_t np = ctx.nvars();
  const int r = ctx.radius();
  auto inside = box_points(np, B);
  detail::ColumnIndex cols(inside);
  std::vector<RPoly> gpow;
  for (int t = 0; t <= M; ++t) gpow.push_back(ctx.power(t));
  std::vector<RPoly> gens;
  for (int m = 0; m + 1 <= M; ++m)
    for (const auto& u : box_points(np, B + r))
      for (std::size_t i = 0; i < np; ++i) {
        auto P = tilde_D_numerator(i, alpha, ctx, RPoly::monomial(u, 1), m) * gpow[M - 1 - m];
        if (P.is_zero()) continue;
        for (const auto& [e, c] : P.terms()) cols.touch(e);
        gens.push_back(std::move(P));
      }
  cols.freeze();
  std::vector<SparseRowQ> rows;
  rows.reserve(gens.size());
  for (const auto& P : gens) {
    SparseRowQ row;
    for (const auto& [e, c] : P.terms()) row.emplace_back(cols[e], c);
    rows.push_back(std::move(row));
  }
  auto sr = split_rank(rows, cols.split());
  return {inside.size() - sr.value.inside, sr.primes_agree};
}

// Brings (A, alpha) to the form f = x_n g: applies a unimodular change of
// coordinates when A's last coordinate is not identically 1, then twists so
// that an integral alpha_n is >= 1.
struct SplitNormalization {
  PointConfig config;
  ParameterVector alpha;
  std::optional<IntMatrix> transform;
  long long pre_twist = 0;
  std::vector<std::string> notes;
};

inline SplitNormalization normalize_for_split(const PointConfig& A, const ParameterVector& alpha) {
  if (alpha.size() != A.n()) throw InvalidInput("alpha has wrong length");
  SplitNormalization s{A, alpha, std::nullopt, 0, {}};
  if (!last_coordinate_is_one(A)) {
    auto w = find_unit_form(A);
    if (!w) throw StructureError("no lattice form takes the value 1 on every point of A");
    IntMatrix T = unimodular_with_last_row(*w);
    s.config = transform_config(A, T);
    s.alpha = gkz::apply(T, alpha);
    s.transform = T;
    s.notes.push_back("applied unimodular change of coordinates");
  }
  const Rational& an = s.alpha[A.n() - 1];
  if (is_integer(an) && an < 1) {
    s.pre_twist = 1 - an.get_num().get_si();
    IntVector u(A.n(), 0);
    u.back() = s.pre_twist;
    s.alpha = s.alpha.shifted(u);
    s.notes.push_back("pre-twisted alpha_n by " + std::to_string(s.pre_twist));
  }
  return s;
}

// Top-degree cohomology dimension of (Omega_U, tilde-nabla_alpha). Windows:
// numerator box B and g-power M; dims are taken at (B-1, M), (B, M), (B, M-1).
inline RankReport cohomology_U_dim(const PointConfig& A, const ParameterVector& alpha, const std::vector<Rational>& lam,
                                   int B, int M) {
  if (lam.size() != A.N()) throw InvalidInput("lambda has wrong length");
  if (B < 1 || M < 1) throw InvalidInput("window bounds must be >= 1");
  auto s = normalize_for_split(A, alpha);
  RankReport rep;
  rep.complex = "U";
  rep.alpha = alpha;
  rep.lambda = lam;
  rep.B = B;
  rep.Bm = M;
  auto v = is_nonresonant(A, alpha);
  if (!v.nonresonant) rep.warnings.push_back(resonance_warning(v));
  if (v.vacuous) rep.warnings.push_back("vacuous nonresonance: C(A) has no facets");
  for (const auto& note : s.notes) rep.warnings.push_back(note);
  GContext ctx(build_g(s.config, lam));
  auto lo = u_window_dim(ctx, s.alpha, B - 1, M);
  auto hi = u_window_dim(ctx, s.alpha, B, M);
  auto lm = u_window_dim(ctx, s.alpha, B, M - 1);
  if (!lo.primes_agree || !hi.primes_agree || !lm.primes_agree)
    rep.warnings.push_back("modular ranks disagreed between primes");
  rep.dims = {lo.dim, hi.dim};
  rep.dims_m = std::make_pair(lm.dim, hi.dim);
  rep.stabilized = lo.dim == hi.dim && lm.dim == hi.dim;
  rep.dim = hi.dim;
  return rep;
}

}  // namespace gkz
