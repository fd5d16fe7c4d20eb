#pragma once

// Polynomial solutions of the A-hypergeometric system over F_p supported in
// the box [0, p)^N, and sweeps comparing their dimension with the rank.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gkz/derham.hpp"

namespace gkz {

struct ModpInstance {
  PointConfig config;
  ParameterVector alpha;
  std::uint64_t p;
  std::vector<std::uint64_t> alpha_bar;
};

// Reason p cannot be used with alpha, if any.
inline std::optional<std::string> bad_prime_reason(const ParameterVector& alpha, std::uint64_t p) {
  if (!is_prime(p)) return std::to_string(p) + " is not prime";
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (ModField(p).divides(BigInt(alpha[i].get_den())))
      return "p divides the denominator of alpha_" + std::to_string(i + 1);
  return std::nullopt;
}

inline ModpInstance make_instance(const PointConfig& A, const ParameterVector& alpha, std::uint64_t p) {
  if (alpha.size() != A.n()) throw InvalidInput("alpha has wrong length");
  if (auto why = bad_prime_reason(alpha, p)) throw InvalidInput(*why);
  ModField F(p);
  ModpInstance I{A, alpha, p, {}};
  for (const auto& a : alpha.entries) I.alpha_bar.push_back(F.from_rational(a));
  return I;
}

namespace detail {

inline IntVector degree_of(const PointConfig& A, const IntVector& v) {
  IntVector b(A.n(), 0);
  for (std::size_t j = 0; j < A.N(); ++j)
    for (std::size_t i = 0; i < A.n(); ++i) b[i] += v[j] * A.point(j)[i];
  return b;
}

inline void for_each_box_point(std::size_t N, long long hi, const std::function<void(const IntVector&)>& fn) {
  IntVector v(N, 0);
  for (;;) {
    fn(v);
    std::size_t j = 0;
    while (j < N && v[j] == hi - 1) v[j++] = 0;
    if (j == N) break;
    ++v[j];
  }
}

// prod_j u_j! / w_j! mod p for w <= u.
inline std::uint64_t factorial_ratio(const IntVector& u, const IntVector& w, const ModField& F) {
  std::uint64_t r = 1;
  for (std::size_t j = 0; j < u.size(); ++j)
    for (long long t = w[j] + 1; t <= u[j]; ++t) r = F.mul(r, F.reduce(t));
  return r;
}

}  // namespace detail

// v in [0, p)^N with sum_j v_j a^(j) = alpha_bar mod p.
inline std::vector<IntVector> solution_support(const ModpInstance& I) {
  std::vector<IntVector> out;
  const auto p = static_cast<long long>(I.p);
  detail::for_each_box_point(I.config.N(), p, [&](const IntVector& v) {
    auto b = detail::degree_of(I.config, v);
    for (std::size_t i = 0; i < b.size(); ++i)
      if (((b[i] % p) + p) % p != static_cast<long long>(I.alpha_bar[i])) return;
    out.push_back(v);
  });
  return out;
}

// Nonzero m in N^N with A m = 0, searched in [0, R]^N.
inline std::optional<IntVector> nonnegative_relation(const PointConfig& A, long long R = 6) {
  std::optional<IntVector> found;
  detail::for_each_box_point(A.N(), R + 1, [&](const IntVector& v) {
    if (found) return;
    bool nonzero = std::any_of(v.begin(), v.end(), [](long long x) { return x != 0; });
    auto b = detail::degree_of(A, v);
    if (nonzero && std::all_of(b.begin(), b.end(), [](long long x) { return x == 0; })) found = v;
  });
  return found;
}

// All v in N^N with A v = b, when C(A) is pointed and 0 is not in A.
inline std::vector<IntVector> fiber(const PointConfig& A, const IntVector& grading, const IntVector& b) {
  std::vector<IntVector> out;
  const std::size_t N = A.N();
  std::vector<long long> weight(N);
  for (std::size_t j = 0; j < N; ++j) weight[j] = dot(grading, A.point(j));
  IntVector v(N, 0);
  std::function<void(std::size_t, long long)> rec = [&](std::size_t j, long long budget) {
    if (j == N) {
      if (budget == 0 && detail::degree_of(A, v) == b) out.push_back(v);
      return;
    }
    for (long long k = 0; k * weight[j] <= budget; ++k) {
      v[j] = k;
      rec(j + 1, budget - k * weight[j]);
    }
    v[j] = 0;
  };
  long long total = dot(grading, b);
  if (total >= 0) rec(0, total);
  return out;
}

// Dimension over F_p of the solutions sum_v c_v lambda^v with c_v = 0 off
// `unknowns`. Each box relation yields, for u, u' in one A-fiber with
// w = min(u, u'), the equation (u!/w!) c_u = (u'!/w!) c_{u'}.
//
// Pointed C(A): fibers are finite and enumerated exactly. Otherwise a nonneg
// relation m exists and only the pairs (u, u + p m) plus pairs inside
// `unknowns` are used; these already force every c_u = 0, and extra
// equations cannot raise the dimension back.
inline std::size_t solve_on_support(const ModpInstance& I, const std::vector<IntVector>& unknowns) {
  const PointConfig& A = I.config;
  ModField F(I.p);
  std::map<IntVector, int> index;
  for (const auto& v : unknowns) index.emplace(v, static_cast<int>(index.size()));
  SparseEchelon E(I.p);
  auto emit = [&](const IntVector& u, const IntVector& u2) {
    IntVector w(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) w[j] = std::min(u[j], u2[j]);
    SparseRowP row;
    auto a = index.find(u), b = index.find(u2);
    if (a != index.end()) row.emplace_back(a->second, detail::factorial_ratio(u, w, F));
    if (b != index.end()) row.emplace_back(b->second, F.neg(detail::factorial_ratio(u2, w, F)));
    if (!row.empty()) E.insert(std::move(row));
  };

  std::map<IntVector, std::vector<IntVector>> by_degree;
  for (const auto& v : unknowns) by_degree[detail::degree_of(A, v)].push_back(v);

  if (auto grading = positive_grading(A)) {
    for (const auto& [b, members] : by_degree) {
      auto fib = fiber(A, *grading, b);
      for (const auto& u : members)
        for (const auto& u2 : fib)
          if (u != u2) emit(u, u2);
    }
  } else {
    auto m = nonnegative_relation(A);
    if (!m) throw Error("no nonnegative relation found for a non-pointed configuration");
    for (const auto& [b, members] : by_degree)
      for (std::size_t s = 0; s < members.size(); ++s) {
        IntVector far = members[s];
        for (std::size_t j = 0; j < far.size(); ++j) far[j] += static_cast<long long>(I.p) * (*m)[j];
        emit(members[s], far);
        for (std::size_t t = s + 1; t < members.size(); ++t) emit(members[s], members[t]);
      }
  }
  return unknowns.size() - E.rank();
}

inline std::size_t modp_solution_dim(const ModpInstance& I) { return solve_on_support(I, solution_support(I)); }

// Adds v + p e_j to the support for one v and one j, and re-solves. Mod p,
// lambda_j^p commutes with every operator of the system, so lambda_j^p times a
// solution supported at v is again a solution; the dimension may grow by that
// much and no more.
struct FrobeniusCheck {
  std::size_t base = 0;
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::size_t max_growth = 0;  // largest observed increase over base
  bool passed() const noexcept { return violations == 0; }
};

inline FrobeniusCheck frobenius_check(const ModpInstance& I) {
  FrobeniusCheck fc;
  auto S = solution_support(I);
  fc.base = solve_on_support(I, S);
  for (const auto& v : S) {
    const std::size_t explained = solve_on_support(I, {v});
    for (std::size_t j = 0; j < I.config.N(); ++j) {
      auto T = S;
      IntVector w = v;
      w[j] += static_cast<long long>(I.p);
      T.push_back(w);
      auto d = solve_on_support(I, T);
      if (d > fc.base) fc.max_growth = std::max(fc.max_growth, d - fc.base);
      if (d > fc.base + explained) ++fc.violations;
      ++fc.trials;
    }
  }
  return fc;
}

struct PrimeResult {
  std::uint64_t p;
  std::size_t dim;
  bool full;
  bool exceeds_rank;
};

struct SkippedPrime {
  std::uint64_t p;
  std::string reason;
};

struct ModpReport {
  ParameterVector alpha;
  std::size_t rank = 0;
  std::vector<PrimeResult> primes;
  std::vector<SkippedPrime> skipped;
  std::string verdict;
  bool all_full() const {
    return std::all_of(primes.begin(), primes.end(), [](const PrimeResult& r) { return r.full; });
  }
  bool bound_holds() const {
    return std::none_of(primes.begin(), primes.end(), [](const PrimeResult& r) { return r.exceeds_rank; });
  }
};

// d_p for every usable prime, compared with the rank r. Resonant alpha is refused.
inline ModpReport full_set_sweep(const PointConfig& A, const ParameterVector& alpha,
                                 const std::vector<std::uint64_t>& primes, std::size_t rank) {
  auto v = is_nonresonant(A, alpha);
  if (!v.nonresonant) throw ResonantError(resonance_warning(v));
  ModpReport rep;
  rep.alpha = alpha;
  rep.rank = rank;
  std::vector<std::uint64_t> not_full, over;
  for (auto p : primes) {
    if (auto why = bad_prime_reason(alpha, p)) {
      rep.skipped.push_back({p, *why});
      continue;
    }
    auto d = modp_solution_dim(make_instance(A, alpha, p));
    PrimeResult r{p, d, d == rank, d > rank};
    if (!r.full) not_full.push_back(p);
    if (r.exceeds_rank) over.push_back(p);
    rep.primes.push_back(r);
  }
  auto list = [](const std::vector<std::uint64_t>& ps) {
    std::string s;
    for (auto p : ps) s += (s.empty() ? "" : ",") + std::to_string(p);
    return "{" + s + "}";
  };
  if (rep.primes.empty())
    rep.verdict = "no good primes tested";
  else if (not_full.empty())
    rep.verdict = "full for all tested good primes";
  else
    rep.verdict = "not full at " + list(not_full);
  if (!over.empty()) rep.verdict += "; dimension exceeds rank at " + list(over);
  return rep;
}

}  // namespace gkz
