#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gkz/gkz.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic toolkit for A-hypergeometric systems"};
  app.require_subcommand(1, 1);
  gkz::JobSpec job;
  std::string config, alpha, primes, supports = "Zn,U0", out_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "configuration JSON file ({\"points\": [[...], ...]})")->required();
    sub->add_option("--alpha", alpha, "comma-separated exact rationals, e.g. 1/3,1/5");
    sub->add_option("--lambda", job.lambda_mode, "random | symbolic | comma-separated nonzero rationals");
    sub->add_option("--bound", job.bound, "window bound B")->check(CLI::PositiveNumber);
    sub->add_option("--primes", primes, "comma-separated primes (modp; default all primes <= 23)");
    sub->add_option("--seed", job.seed, "seed for random lambda");
    sub->add_option("--out", out_path, "write JSON here instead of stdout");
  };
  auto* analyze = app.add_subcommand("analyze", "relation lattice, facets, nonresonance");
  auto* rank = app.add_subcommand("rank", "top cohomology dimensions");
  auto* verify = app.add_subcommand("verify", "exact identity battery");
  auto* modp = app.add_subcommand("modp", "mod-p solution dimensions");
  for (auto* s : {analyze, rank, verify, modp}) add_common(s);
  rank->add_option("--supports", supports, "comma-separated subset of Zn,U0,U");
  verify->add_option("--degree", job.degree, "total degree of d-monomials");
  verify->add_option("--radius", job.radius, "exponent radius of sample forms");
  verify->add_flag("--perturb-beta", job.perturb_beta, "shift beta off by one (negative control)");
  verify->add_flag("--empty-samples", job.empty_samples, "run every check on an empty sample set");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : gkz::kExitInvalid;
  }

  job.command = app.get_subcommands().front()->get_name();
  job.config_path = config;
  if (!alpha.empty()) job.alpha = gkz::detail::split_list(alpha);
  job.supports = gkz::detail::split_list(supports);
  gkz::JobOutcome result;
  try {
    for (const auto& p : gkz::detail::split_list(primes)) job.primes.push_back(std::stoull(p));
    result = gkz::run_job(job);
  } catch (const std::exception& e) {
    result.report = {{"error", e.what()}, {"error_kind", "InvalidInput"}};
    result.exit_code = gkz::kExitInvalid;
  }

  std::string text = result.report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return gkz::kExitInvalid;
    }
    out << text;
  }
  return result.exit_code;
}
