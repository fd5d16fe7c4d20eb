#include <catch_amalgamated.hpp>

#include <random>

#include "gkz/hypersurface.hpp"

using namespace gkz;

namespace {

PointConfig cfg(std::vector<IntVector> pts) { return validate_config(pts); }

const PointConfig& split_plane() {
  static PointConfig A = cfg({{0, 1}, {1, 1}, {-1, 1}});
  return A;
}

// g = 1 + x + 1/x
GRef unit_g() {
  RPoly g(1);
  g.add_term({0}, 1);
  g.add_term({1}, 1);
  g.add_term({-1}, 1);
  return make_gcontext(g);
}

std::vector<Rational> lam3() { return {Rational(2), Rational(-3, 2), Rational(5, 7)}; }

}  // namespace

TEST_CASE("division by g and canonical fractions") {
  auto ctx = unit_g();
  auto g = ctx->g();
  RPoly p(1);
  p.add_term({2}, 3);
  p.add_term({-1}, -1);
  auto q = ctx->divide(p * g);
  REQUIRE(q);
  CHECK(*q == p);
  CHECK_FALSE(ctx->divide(RPoly::monomial({0}, 1)));
  CHECK(ctx->divide(RPoly(1))->is_zero());

  LocalizedElement e(ctx, p * g * g, 3);
  auto c = e.canonical();
  CHECK(c.g_power() == 1);
  CHECK(c.numerator() == p);
  CHECK(c == e);
  LocalizedElement inv(ctx, RPoly::constant(1, 1), 1);
  CHECK(inv * LocalizedElement(ctx, g, 0) == LocalizedElement(ctx, RPoly::constant(1, 1), 0));
  CHECK((e - e).is_zero());
  CHECK_THROWS_AS(GContext(RPoly(1)), InvalidInput);
}

TEST_CASE("tilde nabla examples") {
  auto alpha = parse_parameters({"1/3", "1/5"});
  // g constant: tilde-nabla(1) = alpha_1 dlog x_1
  auto c = make_gcontext(RPoly::constant(1, 1));
  auto d1 = tilde_nabla(alpha, UForm::monomial(c, {}, {0}, 0));
  CHECK(d1 == UForm(c, LogForm<Rational>::monomial(1, {0}, {0}, Rational(1, 3)), 0));
  CHECK(tilde_nabla(alpha, UForm(c, 0)).is_zero());

  // g = 1 + x + 1/x: tilde-nabla(1) = (alpha_1 - alpha_2 (x - 1/x)/g) dlog x_1
  auto ctx = unit_g();
  auto got = tilde_nabla(alpha, UForm::monomial(ctx, {}, {0}, 0));
  RPoly num = ctx->g().scaled(Rational(1, 3));
  num.add_term({1}, Rational(-1, 5));
  num.add_term({-1}, Rational(1, 5));
  LogForm<Rational> w(1, 1);
  w.add({0}, num);
  CHECK(got == UForm(ctx, w, 1));
  // Top degree is killed.
  CHECK(tilde_nabla(alpha, UForm::monomial(ctx, {0}, {2}, 1)).is_zero());
}

TEST_CASE("tilde nabla squares to zero") {
  auto A = cfg({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {-1, -1, 1}});
  auto ctx = g_context_for(A, {Rational(2), Rational(3), Rational(-1, 2), Rational(5)});
  auto alpha = parse_parameters({"1/3", "2/7", "1/5"});
  for (std::size_t k = 0; k <= 1; ++k) {
    auto r = check_U_complex(alpha, u_monomial_forms(ctx, k, 1, 2));
    CHECK(r.passed);
    CHECK(r.checked > 0);
  }
  auto ctx1 = g_context_for(split_plane(), lam3());
  CHECK(check_U_complex(parse_parameters({"1/3", "1/5"}), u_monomial_forms(ctx1, 0, 3, 3)).passed);
}

TEST_CASE("twisting on U") {
  auto ctx = g_context_for(split_plane(), lam3());
  auto alpha = parse_parameters({"1/3", "1/5"});
  auto samples = u_monomial_forms(ctx, 0, 2, 2);
  CHECK(twist_iso_U_check(alpha, {0, 0}, samples).passed);
  CHECK(twist_iso_U_check(alpha, {0, 1}, samples).passed);
  CHECK(twist_iso_U_check(alpha, {2, -1}, samples).passed);
  CHECK(twist_iso_U_check(alpha, {-1, 3}, u_monomial_forms(ctx, 1, 2, 1)).passed);
  for (const auto& w : samples) CHECK(twist_U({-2, -1}, twist_U({2, 1}, w)) == w);
}

TEST_CASE("Pochhammer symbols") {
  Rational a(1, 5);
  CHECK(pochhammer(a, 0) == 1);
  CHECK(pochhammer(a, 1) == a);
  CHECK(pochhammer(a, 2) == a * (a + 1));
  CHECK(pochhammer(a, -1) == 1 / (a - 1));
  CHECK(pochhammer(a, -2) == 1 / ((a - 1) * (a - 2)));
  for (const Rational& b : {Rational(1, 5), Rational(-7, 3), Rational(9, 2)})
    for (int m = -5; m <= 5; ++m) CHECK(pochhammer(b, m + 1) == pochhammer(b, m) * (b + m));
  CHECK_THROWS_AS(pochhammer(Rational(2), -2), PochhammerPole);
  CHECK(pochhammer(Rational(-1), 3) == 0);
}

TEST_CASE("gamma examples") {
  auto ctx = unit_g();
  auto alpha = parse_parameters({"1/3", "1/5"});
  auto w = [](Exponent u) {
    LogForm<Rational> f(2, 0);
    f.add({}, RPoly::monomial(u, 1));
    return f;
  };
  CHECK(gamma_map(alpha, ctx, w({3, 0})) == UForm::monomial(ctx, {}, {3}, 0));
  CHECK(gamma_map(alpha, ctx, w({3, 1})) == UForm(ctx, LogForm<Rational>::monomial(1, {}, {3}, Rational(-1, 5)), 1));
  // u_n = -1: -(alpha_n - 1)^{-1} x' g = (5/4) x' g
  LogForm<Rational> expect(1, 0);
  expect.add({}, RPoly::monomial({3}, Rational(5, 4)) * ctx->g());
  CHECK(gamma_map(alpha, ctx, w({3, -1})) == UForm(ctx, expect, 0));
  CHECK(gamma_map(alpha, ctx, LogForm<Rational>(2, 0)).is_zero());
  CHECK_THROWS_AS(gamma_map(parse_parameters({"1/3", "0"}), ctx, w({0, 2})), PochhammerPole);
  CHECK_THROWS_AS(gamma_map(parse_parameters({"1/3", "2"}), ctx, w({0, -3})), PochhammerPole);
}

TEST_CASE("split boundaries and the total differential") {
  auto P = split_plane();
  auto alpha = parse_parameters({"1/3", "1/5"});
  auto lam = lam3();
  // d_v(1) = (alpha_2 + g x_2) for the degree-0 piece
  SplitForm one(2, 0);
  one.w0.add({}, RPoly::monomial({0, 0}, 1));
  auto b = split_boundaries(P, alpha, lam, one);
  RPoly expect(2);
  expect.add_term({0, 0}, Rational(1, 5));
  for (std::size_t j = 0; j < 3; ++j) expect.add_term(to_exponent(P.point(j)), lam[j]);
  CHECK(b.v.w1.components().at({}) == expect);
  CHECK(split_boundaries(P, alpha, lam, SplitForm(2, 0)).total().is_zero());
  for (std::size_t k = 0; k <= 1; ++k)
    CHECK(total_decomposition_check(P, alpha, lam, split_monomial_forms(2, k, 2, -2, 3)).passed);

  auto A3 = cfg({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {-1, -1, 1}});
  auto a3 = parse_parameters({"1/3", "2/7", "1/5"});
  std::vector<Rational> l3{Rational(2), Rational(3), Rational(-1, 2), Rational(5)};
  for (std::size_t k = 0; k <= 2; ++k) CHECK(total_decomposition_check(A3, a3, l3, split_monomial_forms(3, k, 1, -1, 2)).passed);
  CHECK_THROWS_AS(SplitForm(LogForm<Rational>::monomial(2, {1}, {0, 0}, 1), LogForm<Rational>(2, 0), 1), InvalidInput);
}

TEST_CASE("gamma is a chain map") {
  auto P = split_plane();
  auto alpha = parse_parameters({"1/3", "1/5"});
  for (std::size_t k = 0; k <= 1; ++k) {
    auto r = check_gamma_chain_map(P, alpha, lam3(), split_monomial_forms(2, k, 2, -2, 4));
    CHECK(r.passed);
    CHECK(r.checked > 0);
  }
  CHECK(check_gamma_chain_map(P, alpha, lam3(), {}).vacuous());
  auto A3 = cfg({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {-1, -1, 1}});
  auto a3 = parse_parameters({"1/3", "2/7", "9/5"});
  std::vector<Rational> l3{Rational(2), Rational(3), Rational(-1, 2), Rational(5)};
  for (std::size_t k = 0; k <= 2; ++k) CHECK(check_gamma_chain_map(A3, a3, l3, split_monomial_forms(3, k, 1, 0, 4)).passed);
}

TEST_CASE("kernel of gamma equals the vertical image") {
  auto P = split_plane();
  auto alpha = parse_parameters({"1/3", "1/5"});
  auto kc = kernel_equals_dv_image(P, alpha, lam3(), 2, 3);
  CHECK(kc.primes_agree);
  CHECK(kc.equal);
  CHECK(kc.kernel_dim == 9);
  auto kl = kernel_equals_dv_image(P, alpha, lam3(), 2, 3, true);
  CHECK(kl.equal);
  CHECK(kl.kernel_dim == 18);
  auto k0 = kernel_equals_dv_image(P, alpha, lam3(), 2, 0);
  CHECK(k0.kernel_dim == 0);
  CHECK(k0.equal);
  // Integral alpha_n >= 1 is allowed on R_+.
  CHECK(kernel_equals_dv_image(P, parse_parameters({"1/3", "2"}), lam3(), 1, 3).equal);
  CHECK_THROWS_AS(kernel_equals_dv_image(P, parse_parameters({"1/3", "0"}), lam3(), 2, 3), PreconditionError);
  CHECK_THROWS_AS(kernel_equals_dv_image(P, parse_parameters({"1/3", "2"}), lam3(), 2, 3, true), PreconditionError);
}

TEST_CASE("gamma is surjective on windows") {
  auto P = split_plane();
  CHECK(gamma_surjective_check(P, parse_parameters({"1/3", "1/5"}), lam3(), 2, 3));
  CHECK(gamma_surjective_check(P, parse_parameters({"1/3", "3"}), lam3(), 2, 3));
}

TEST_CASE("U-cohomology matches the torus") {
  auto P = split_plane();
  auto alpha = parse_parameters({"1/3", "1/5"});
  auto lam = lam3();
  auto u = cohomology_U_dim(P, alpha, lam, 3, 3);
  CHECK(u.stabilized);
  CHECK(u.dim == 2);
  CHECK(u.warnings.empty());
  auto t = top_cohomology_dim(P, alpha, lam, SupportPredicate::all(), 4);
  CHECK(t.dim == u.dim);
  auto early = cohomology_U_dim(P, alpha, lam, 1, 3);
  CHECK_FALSE(early.stabilized);

  // After a unimodular change of coordinates.
  auto G = cfg({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -1}});
  auto ag = parse_parameters({"1/2", "1/3", "1/5"});
  std::vector<Rational> lg{Rational(2), Rational(3), Rational(-1, 2), Rational(5)};
  auto ug = cohomology_U_dim(G, ag, lg, 3, 3);
  CHECK(ug.stabilized);
  CHECK(ug.dim == 2);
  CHECK_FALSE(ug.warnings.empty());
}

TEST_CASE("constant g reduces to a one-variable twisted complex") {
  auto c1 = make_gcontext(RPoly::constant(1, 3));
  CHECK(u_window_dim(*c1, parse_parameters({"1/3", "1/5"}), 3, 2).dim == 0);
  CHECK(u_window_dim(*c1, parse_parameters({"2", "1/5"}), 3, 2).dim == 1);
  CHECK(u_window_dim(*c1, parse_parameters({"-1", "1/5"}), 3, 2).dim == 1);
  auto c0 = make_gcontext(RPoly::constant(0, 3));
  CHECK(u_window_dim(*c0, parse_parameters({"1/5"}), 3, 2).dim == 1);
  // The torus side for A={1}: same answer.
  CHECK(top_cohomology_dim(cfg({{1}}), parse_parameters({"1/5"}), {Rational(3)}, SupportPredicate::all(), 3).dim == 1);
}

TEST_CASE("split normalization") {
  auto P = split_plane();
  auto s = normalize_for_split(P, parse_parameters({"1/3", "-2"}));
  CHECK_FALSE(s.transform);
  CHECK(s.pre_twist == 3);
  CHECK(s.alpha[1] == 1);
  auto G = cfg({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -1}});
  auto sg = normalize_for_split(G, parse_parameters({"1/2", "1/3", "1/5"}));
  REQUIRE(sg.transform);
  CHECK(last_coordinate_is_one(sg.config));
  CHECK_THROWS_AS(normalize_for_split(cfg({{1}, {2}}), parse_parameters({"1/2"})), StructureError);
  CHECK_THROWS_AS(require_split_structure(G), StructureError);
  CHECK_THROWS_AS(g_context_for(G, {Rational(1), Rational(2), Rational(3), Rational(4)}), StructureError);
  CHECK_THROWS_AS(g_context_for(P, {Rational(1)}), InvalidInput);
}
