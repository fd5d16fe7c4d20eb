#include <catch_amalgamated.hpp>

#include <filesystem>

#include "gkz/orchestrator.hpp"

using namespace gkz;

namespace {

std::string config_path(const std::string& name) { return std::string(GKZ_CONFIG_DIR) + "/" + name; }

JobSpec job(std::string command, json config, std::vector<std::string> alpha = {}) {
  JobSpec j;
  j.command = std::move(command);
  j.config_inline = std::move(config);
  j.alpha = std::move(alpha);
  return j;
}

}  // namespace

TEST_CASE("configuration parsing") {
  auto A = config_from_json(json::parse(R"({"points": [[0,1],[1,1],[-1,1]]})"));
  CHECK(A.N() == 3);
  CHECK(config_from_json(json::parse("[[1],[2]]")).N() == 2);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"points": []})")), InvalidInput);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"points": [[1.5]]})")), InvalidInput);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"pts": [[1]]})")), InvalidInput);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"points": [[2]]})")), NotGenerating);
  CHECK_THROWS_AS(read_json_file(config_path("missing.json")), InvalidInput);
  for (const auto& entry : std::filesystem::directory_iterator(GKZ_CONFIG_DIR)) {
    auto j = read_json_file(entry.path().string());
    if (entry.path().filename() == "not_generating.json")
      CHECK_THROWS_AS(config_from_json(j), NotGenerating);
    else
      CHECK_NOTHROW(config_from_json(j));
  }
  CHECK(rational_from_json(json("3/6")) == Rational(1, 2));
  CHECK(rational_from_json(json(4)) == 4);
  CHECK_THROWS_AS(rational_from_json(json(0.5)), InvalidInput);
}

TEST_CASE("JSON round trips") {
  LaurentPoly<Rational> p(2);
  p.add_term({1, -2}, Rational(3, 4));
  p.add_term({0, 0}, -5);
  CHECK(laurent_from_json(json::parse(to_json(p).dump()), 2) == p);
  CHECK_THROWS_AS(laurent_from_json(to_json(p), 3), InvalidInput);

  LaurentPoly<LambdaPoly> s(1);
  LambdaPoly c(2);
  c.add_term({1, 0}, Rational(2, 3));
  c.add_term({0, 2}, 1);
  s.add_term({-1}, c);
  CHECK(symbolic_laurent_from_json(json::parse(to_json(s).dump()), 1, 2) == s);

  auto A = validate_config({{1}, {2}});
  auto w = weyl_mul(box_operator({2, -1}, A), euler_operator(0, parse_parameters({"1/2"}), A));
  CHECK(weyl_from_json(json::parse(to_json(w).dump()), 2) == w);

  CHECK(to_json(parse_parameters({"1/2", "-3"})) == json::array({"1/2", "-3"}));
}

TEST_CASE("analyze reports the cone data") {
  auto out = run_job(job("analyze", json::parse(R"({"points": [[0,1],[1,1],[-1,1]]})"), {"1/3", "1/5"}));
  CHECK(out.exit_code == kExitOk);
  CHECK(out.report["facets"].size() == 2);
  CHECK(out.report["nonresonant"] == true);
  CHECK(out.report["last_coordinate_is_one"] == true);
  auto bessel = run_job(job("analyze", json::parse("[[1],[-1]]")));
  CHECK(bessel.report["vacuous"] == true);
  auto bad = run_job(job("analyze", json::parse("[[2]]")));
  CHECK(bad.exit_code == kExitInvalid);
  CHECK(bad.report["error_kind"] == "NotGenerating");
  auto dup = run_job(job("analyze", json::parse("[[1],[1]]")));
  CHECK(dup.exit_code == kExitInvalid);
  CHECK(dup.report["error_kind"] == "DuplicatePoint");
  CHECK(run_job(job("frobnicate", json::parse("[[1]]"))).exit_code == kExitInvalid);
}

TEST_CASE("rank jobs and their exit codes") {
  auto j = job("rank", json::parse(R"({"points": [[0,1],[1,1],[-1,1]]})"), {"1/3", "1/5"});
  j.supports = {"Zn", "U0", "U"};
  auto out = run_job(j);
  REQUIRE(out.exit_code == kExitOk);
  CHECK(out.report["supports"]["Zn"]["dim"] == 2);
  CHECK(out.report["supports"]["U0"]["dim"] == 2);
  CHECK(out.report["supports"]["U"]["dim"] == 2);
  CHECK(out.report["quasi_iso"]["verdict"] == true);
  CHECK(out.report["U_equals_torus"] == true);

  j.bound = 1;
  CHECK(run_job(j).exit_code == kExitNotStabilized);

  auto bad_alpha = job("rank", json::parse("[[1]]"), {"1/2", "1/3"});
  CHECK(run_job(bad_alpha).exit_code == kExitInvalid);
  auto bad_support = job("rank", json::parse("[[1]]"), {"1/2"});
  bad_support.supports = {"nowhere"};
  CHECK(run_job(bad_support).exit_code == kExitInvalid);
  auto lam = job("rank", json::parse("[[1]]"), {"1/2"});
  lam.lambda_mode = "0";
  CHECK(run_job(lam).exit_code == kExitInvalid);
  lam.lambda_mode = "2";
  CHECK(run_job(lam).exit_code == kExitOk);
}

TEST_CASE("verify and modp jobs") {
  auto v = job("verify", json::parse("[[1],[2]]"), {"1/2"});
  v.lambda_mode = "symbolic";
  auto vo = run_job(v);
  CHECK(vo.exit_code == kExitOk);
  CHECK(vo.report["passed"] == true);
  CHECK(vo.report["vacuous"] == false);
  v.perturb_beta = true;
  auto bad = run_job(v);
  CHECK(bad.exit_code == kExitFailure);
  CHECK(bad.report.contains("counterexample"));
  v.perturb_beta = false;
  v.empty_samples = true;
  auto empty = run_job(v);
  CHECK(empty.exit_code == kExitOk);
  CHECK(empty.report["vacuous"] == true);

  auto m = job("modp", json::parse("[[1]]"), {"1/2"});
  m.primes = {2, 3, 5, 7};
  auto mo = run_job(m);
  CHECK(mo.exit_code == kExitOk);
  CHECK(mo.report["verdict"] == "full for all tested good primes");
  CHECK(mo.report["full_fraction"] == "3/3");
  CHECK(mo.report["skipped"].size() == 1);
  auto res = job("modp", json::parse("[[1]]"), {"3"});
  CHECK(run_job(res).exit_code == kExitResonant);
}

TEST_CASE("reports are reproducible from the seed") {
  JobSpec j;
  j.command = "rank";
  j.config_path = config_path("split_plane.json");
  j.alpha = {"1/3", "1/5"};
  j.seed = 42;
  auto a = run_job(j).report.dump();
  auto b = run_job(j).report.dump();
  CHECK(a == b);
  j.seed = 43;
  CHECK(run_job(j).report.dump() != a);
}

TEST_CASE("helpers") {
  CHECK(primes_up_to(20) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19});
  CHECK(detail::split_list("1/2, 3 ,-1") == std::vector<std::string>{"1/2", "3", "-1"});
}
