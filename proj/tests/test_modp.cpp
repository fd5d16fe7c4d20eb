#include <catch_amalgamated.hpp>

#include <set>

#include "gkz/modp.hpp"
#include "oracles.hpp"

using namespace gkz;

namespace {

PointConfig cfg(std::vector<IntVector> pts) { return validate_config(pts); }

const PointConfig& gauss() {
  static PointConfig A = cfg({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -1}});
  return A;
}

// Number of A-degrees congruent to alpha whose whole fiber in N^N lies in [0, p)^N.
// Fibers are found by brute force over [0, bound]^N.
std::size_t closed_form(const PointConfig& A, const ParameterVector& alpha, long long p, long long bound) {
  ModField F(static_cast<std::uint64_t>(p));
  std::map<IntVector, std::vector<IntVector>> fibers;
  IntVector v(A.N(), 0);
  for (;;) {
    IntVector b(A.n(), 0);
    for (std::size_t j = 0; j < A.N(); ++j)
      for (std::size_t i = 0; i < A.n(); ++i) b[i] += v[j] * A.point(j)[i];
    fibers[b].push_back(v);
    std::size_t j = 0;
    while (j < A.N() && v[j] == bound) v[j++] = 0;
    if (j == A.N()) break;
    ++v[j];
  }
  std::size_t count = 0;
  for (const auto& [b, members] : fibers) {
    bool congruent = true;
    for (std::size_t i = 0; i < A.n(); ++i)
      congruent &= static_cast<std::uint64_t>(((b[i] % p) + p) % p) == F.from_rational(alpha[i]);
    if (!congruent) continue;
    bool any_in = false, all_in = true;
    for (const auto& u : members) {
      bool in = std::all_of(u.begin(), u.end(), [p](long long x) { return x < p; });
      any_in |= in;
      all_in &= in;
    }
    count += any_in && all_in;
  }
  return count;
}

}  // namespace

TEST_CASE("solution support examples") {
  auto I = make_instance(cfg({{1}}), parse_parameters({"1/2"}), 5);
  CHECK(I.alpha_bar == std::vector<std::uint64_t>{3});
  CHECK(solution_support(I) == std::vector<IntVector>{{3}});
  CHECK(solution_support(make_instance(cfg({{1}}), parse_parameters({"0"}), 5)) == std::vector<IntVector>{{0}});
  auto I2 = make_instance(cfg({{1, 0}, {0, 1}}), parse_parameters({"1/2", "1/3"}), 7);
  CHECK(solution_support(I2) == std::vector<IntVector>{{4, 5}});
}

TEST_CASE("bad primes are rejected with reasons") {
  CHECK(bad_prime_reason(parse_parameters({"1/2"}), 2));
  CHECK(bad_prime_reason(parse_parameters({"1/2"}), 9));
  CHECK_FALSE(bad_prime_reason(parse_parameters({"1/2"}), 3));
  CHECK_THROWS_AS(make_instance(cfg({{1}}), parse_parameters({"1/3"}), 3), InvalidInput);
  CHECK_THROWS_AS(make_instance(cfg({{1}}), parse_parameters({"1/3", "1"}), 5), InvalidInput);
}

TEST_CASE("solution dimension examples") {
  for (std::uint64_t p : {3, 5, 7, 11, 13})
    CHECK(modp_solution_dim(make_instance(cfg({{1}}), parse_parameters({"1/2"}), p)) == 1);
  auto I = make_instance(cfg({{1}, {-1}}), parse_parameters({"1/2"}), 5);
  CHECK(modp_solution_dim(I) == 0);
  CHECK(solve_on_support(I, {}) == 0);
  CHECK(modp_solution_dim(make_instance(cfg({{1}, {2}}), parse_parameters({"1/2"}), 5)) == 1);
  CHECK(modp_solution_dim(make_instance(gauss(), parse_parameters({"1/2", "1/3", "1/5"}), 7)) == 1);
}

TEST_CASE("pointed cones follow the fiber closed form") {
  struct Case {
    PointConfig A;
    ParameterVector alpha;
  };
  std::vector<Case> cases{{cfg({{1}}), parse_parameters({"1/2"})},
                          {cfg({{1}, {2}}), parse_parameters({"1/2"})},
                          {cfg({{1}, {2}}), parse_parameters({"2/3"})},
                          {cfg({{0, 1}, {1, 1}, {-1, 1}}), parse_parameters({"1/3", "1/5"})},
                          {cfg({{1, 0}, {1, 1}, {1, 2}}), parse_parameters({"1/2", "1/3"})},
                          {gauss(), parse_parameters({"1/2", "1/3", "1/5"})}};
  for (const auto& c : cases)
    for (std::uint64_t p : {3, 5, 7}) {
      if (bad_prime_reason(c.alpha, p)) continue;
      long long bound = 3 * static_cast<long long>(p);
      CHECK(modp_solution_dim(make_instance(c.A, c.alpha, p)) == closed_form(c.A, c.alpha, static_cast<long long>(p), bound));
    }
}

TEST_CASE("recurrence extraction agrees with the Weyl-operator oracle") {
  struct Case {
    PointConfig A;
    ParameterVector alpha;
    std::vector<long long> primes;
  };
  std::vector<Case> cases{{cfg({{1}}), parse_parameters({"1/2"}), {3, 5, 7}},
                          {cfg({{1}, {2}}), parse_parameters({"1/2"}), {3, 5, 7}},
                          {cfg({{1}, {-1}}), parse_parameters({"1/2"}), {3, 5}},
                          {cfg({{1}, {-1}}), parse_parameters({"0"}), {3, 5}},
                          {cfg({{0, 1}, {1, 1}, {-1, 1}}), parse_parameters({"1/3", "1/5"}), {7}},
                          {gauss(), parse_parameters({"1/2", "1/3", "1/5"}), {7}}};
  for (const auto& c : cases)
    for (auto p : c.primes) {
      auto I = make_instance(c.A, c.alpha, static_cast<std::uint64_t>(p));
      CHECK(modp_solution_dim(I) == oracle::modp_dim_weyl(c.A, c.alpha, p));
    }
}

TEST_CASE("extending the box by a p-shift adds only Frobenius multiples") {
  // A={1}: lambda^{v+p} = lambda^p lambda^v is a second F_p-solution.
  auto one = frobenius_check(make_instance(cfg({{1}}), parse_parameters({"1/2"}), 5));
  CHECK(one.passed());
  CHECK(one.max_growth == 1);
  // Fibers with more than one point: the shifted point is tied to the box and dies.
  auto two = frobenius_check(make_instance(cfg({{1}, {2}}), parse_parameters({"1/2"}), 5));
  CHECK(two.passed());
  CHECK(two.max_growth == 0);

  std::vector<std::pair<PointConfig, ParameterVector>> cases{
      {cfg({{1}}), parse_parameters({"1/2"})},
      {cfg({{1}, {2}}), parse_parameters({"1/2"})},
      {cfg({{1}, {-1}}), parse_parameters({"1/2"})},
      {cfg({{0, 1}, {1, 1}, {-1, 1}}), parse_parameters({"1/3", "1/5"})}};
  for (const auto& [A, alpha] : cases)
    for (std::uint64_t p : {3, 5, 7}) {
      if (bad_prime_reason(alpha, p)) continue;
      auto fc = frobenius_check(make_instance(A, alpha, p));
      CHECK(fc.passed());
      CHECK(fc.trials > 0);
    }
}

TEST_CASE("dimension is invariant under permutations and unimodular maps") {
  auto A = cfg({{0, 1}, {1, 1}, {-1, 1}});
  auto alpha = parse_parameters({"1/3", "1/5"});
  auto Ap = cfg({{-1, 1}, {0, 1}, {1, 1}});
  IntMatrix T{{1, 1}, {0, 1}};
  auto At = transform_config(A, T);
  auto at = gkz::apply(T, alpha);
  for (std::uint64_t p : {7, 11, 13}) {
    auto d = modp_solution_dim(make_instance(A, alpha, p));
    CHECK(modp_solution_dim(make_instance(Ap, alpha, p)) == d);
    CHECK(modp_solution_dim(make_instance(At, at, p)) == d);
  }
  auto G = gauss();
  auto ag = parse_parameters({"1/2", "1/3", "1/5"});
  auto Gp = cfg({{1, 1, -1}, {0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  CHECK(modp_solution_dim(make_instance(Gp, ag, 7)) == modp_solution_dim(make_instance(G, ag, 7)));
}

TEST_CASE("sweeps") {
  auto r = full_set_sweep(cfg({{1}}), parse_parameters({"1/2"}), {2, 3, 5, 7, 11, 13}, 1);
  CHECK(r.all_full());
  CHECK(r.bound_holds());
  CHECK(r.primes.size() == 5);
  REQUIRE(r.skipped.size() == 1);
  CHECK(r.skipped[0].p == 2);
  CHECK(r.verdict == "full for all tested good primes");

  auto r3 = full_set_sweep(cfg({{1}}), parse_parameters({"1/3"}), {3, 5, 7, 11, 13}, 1);
  CHECK(r3.all_full());
  CHECK(r3.skipped.size() == 1);

  auto b = full_set_sweep(cfg({{1}, {-1}}), parse_parameters({"1/2"}), {3, 5, 7}, 2);
  CHECK_FALSE(b.all_full());
  CHECK(b.bound_holds());
  CHECK(b.verdict == "not full at {3,5,7}");

  auto c = full_set_sweep(cfg({{1}, {2}}), parse_parameters({"1/2"}), {3, 5, 7}, 2);
  CHECK_FALSE(c.all_full());
  CHECK(c.bound_holds());
  for (const auto& pr : c.primes) CHECK(pr.dim == 1);

  auto none = full_set_sweep(cfg({{1}}), parse_parameters({"1/2"}), {2, 4}, 1);
  CHECK(none.verdict == "no good primes tested");

  auto over = full_set_sweep(cfg({{1}}), parse_parameters({"1/2"}), {3}, 0);
  CHECK_FALSE(over.bound_holds());

  CHECK_THROWS_AS(full_set_sweep(cfg({{1}}), parse_parameters({"3"}), {5}, 1), ResonantError);
}

TEST_CASE("nonnegative relations") {
  CHECK(nonnegative_relation(cfg({{1}, {-1}})) == IntVector{1, 1});
  CHECK_FALSE(nonnegative_relation(cfg({{1}, {2}})));
  auto fib = fiber(cfg({{1}, {2}}), {1}, {4});
  CHECK(std::set<IntVector>(fib.begin(), fib.end()) == std::set<IntVector>{{4, 0}, {2, 1}, {0, 2}});
}
