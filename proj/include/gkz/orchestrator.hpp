#pragma once

// Job execution behind the command-line front end: analyze, rank, verify, modp.
// Every report embeds the job, the seed and the toolkit version, and contains
// nothing time- or host-dependent, so equal jobs give byte-identical output.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gkz/json_io.hpp"

namespace gkz {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitInvalid = 2, kExitNotStabilized = 3, kExitResonant = 4 };

struct JobSpec {
  std::string command;
  std::string config_path;
  std::optional<json> config_inline;
  std::vector<std::string> alpha;
  // "random" (two seeded specializations), "symbolic" (symbolic where the
  // computation allows it, seeded specializations elsewhere) or a comma list of rationals.
  std::string lambda_mode = "random";
  int bound = 4;
  std::vector<std::uint64_t> primes;
  std::uint64_t seed = 1;
  std::vector<std::string> supports{"Zn", "U0"};
  int degree = 3;  // verify: total degree of d-monomials
  int radius = 2;  // verify: exponent radius of sample forms
  bool perturb_beta = false;
  bool empty_samples = false;

  json to_json() const {
    json j{{"command", command},
           {"alpha", alpha},
           {"lambda", lambda_mode},
           {"bound", bound},
           {"primes", primes},
           {"seed", seed}};
    if (config_inline)
      j["config"] = *config_inline;
    else
      j["config"] = config_path;
    if (command == "rank") j["supports"] = supports;
    if (command == "verify") {
      j["degree"] = degree;
      j["radius"] = radius;
      j["perturb_beta"] = perturb_beta;
      j["empty_samples"] = empty_samples;
    }
    return j;
  }
};

struct JobOutcome {
  json report;
  int exit_code = kExitOk;
};

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p <= n; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ' && c != '[' && c != ']') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct LoadedJob {
  PointConfig A;
  std::optional<ParameterVector> alpha;
  json config_json;
};

inline LoadedJob load(const JobSpec& job) {
  json cj = job.config_inline ? *job.config_inline : read_json_file(job.config_path);
  PointConfig A = config_from_json(cj);
  std::optional<ParameterVector> alpha;
  if (!job.alpha.empty()) {
    alpha = parse_parameters(job.alpha);
  } else if (cj.is_object() && cj.contains("alpha")) {
    alpha = ParameterVector{rationals_from_json(cj.at("alpha"))};
  }
  if (alpha && alpha->size() != A.n())
    throw InvalidInput("alpha has " + std::to_string(alpha->size()) + " entries, expected " + std::to_string(A.n()));
  return {A, alpha, cj};
}

inline ParameterVector require_alpha(const LoadedJob& L) {
  if (!L.alpha) throw InvalidInput("this command needs --alpha");
  return *L.alpha;
}

// Specializations of lambda named by the job.
inline std::vector<std::vector<Rational>> lambdas(const JobSpec& job, std::size_t N) {
  if (job.lambda_mode == "random" || job.lambda_mode == "symbolic") {
    std::mt19937_64 rng(job.seed);
    auto l1 = random_lambda(N, rng);
    auto l2 = random_lambda(N, rng);
    while (l2 == l1) l2 = random_lambda(N, rng);
    return {l1, l2};
  }
  std::vector<Rational> lam;
  for (const auto& s : split_list(job.lambda_mode)) lam.push_back(parse_rational(s));
  if (lam.size() != N) throw InvalidInput("--lambda needs " + std::to_string(N) + " entries");
  for (const auto& q : lam)
    if (is_zero(q)) throw InvalidInput("lambda entries must be nonzero");
  return {lam};
}

inline ParameterVector default_alpha(std::size_t n) {
  static const long dens[] = {2, 3, 5, 7, 11, 13, 17, 19};
  ParameterVector a;
  for (std::size_t i = 0; i < n; ++i) a.entries.push_back(Rational(1, dens[i % 8]));
  return a;
}

inline json base_report(const JobSpec& job) {
  return json{{"command", job.command}, {"job", job.to_json()}, {"seed", job.seed}, {"version", kVersion}};
}

}  // namespace detail

inline JobOutcome cmd_analyze(const JobSpec& job) {
  auto L = detail::load(job);
  const auto& A = L.A;
  JobOutcome out{detail::base_report(job), kExitOk};
  auto& r = out.report;
  r["config"] = to_json(A);
  r["n"] = A.n();
  r["N"] = A.N();
  r["L"] = relation_lattice(A).basis;
  auto facets = cone_facets(A);
  json fj = json::array();
  for (const auto& f : facets) fj.push_back(to_json(f));
  r["facets"] = fj;
  r["vacuous"] = facets.empty();
  if (auto w = positive_grading(A)) r["positive_grading"] = *w;
  r["last_coordinate_is_one"] = last_coordinate_is_one(A);
  if (auto w = find_unit_form(A)) r["unit_form"] = *w;
  if (L.alpha) {
    auto v = is_nonresonant(facets, *L.alpha);
    r["alpha"] = to_json(*L.alpha);
    r["nonresonant"] = v.nonresonant;
    r["nonresonance"] = to_json(v);
  }
  return out;
}

inline JobOutcome cmd_rank(const JobSpec& job) {
  auto L = detail::load(job);
  const auto& A = L.A;
  auto alpha = detail::require_alpha(L);
  auto lams = detail::lambdas(job, A.N());
  JobOutcome out{detail::base_report(job), kExitOk};
  auto& r = out.report;
  r["alpha"] = to_json(alpha);
  const int B = job.bound;
  bool all_stable = true;
  json supports = json::object();
  std::map<std::string, std::size_t> dims;
  for (const auto& name : job.supports) {
    json reps = json::array();
    std::vector<std::size_t> seen;
    for (const auto& lam : lams) {
      RankReport rep;
      if (name == "Zn")
        rep = top_cohomology_dim(A, alpha, lam, SupportPredicate::all(), B);
      else if (name == "U0")
        rep = top_cohomology_dim(A, alpha, lam, SupportPredicate::u0(A), B);
      else if (name == "U")
        rep = cohomology_U_dim(A, alpha, lam, B, std::max(B, 2));
      else
        throw InvalidInput("unknown support " + name + " (expected Zn, U0 or U)");
      all_stable &= rep.stabilized && (!rep.dims_m || rep.dims_m->first == rep.dims_m->second);
      seen.push_back(rep.dim);
      reps.push_back(to_json(rep));
    }
    bool agree = std::all_of(seen.begin(), seen.end(), [&](std::size_t d) { return d == seen.front(); });
    all_stable &= agree;
    supports[name] = {{"reports", reps}, {"lambda_agree", agree}, {"dim", seen.front()}};
    dims[name] = seen.front();
  }
  r["supports"] = supports;
  auto has = [&](const char* s) { return dims.count(s) > 0; };
  if (has("Zn") && has("U0")) {
    auto q = quasi_iso_check(A, alpha, lams.front(), SupportPredicate::u0(A), SupportPredicate::all(), B);
    r["quasi_iso"] = {{"dims_equal", q.dims_equal}, {"surjective", q.surjective}, {"defect", q.defect}, {"verdict", q.verdict}};
  }
  if (has("Zn") && has("U")) r["U_equals_torus"] = dims["Zn"] == dims["U"];
  r["stabilized"] = all_stable;
  if (!all_stable) {
    r["error"] = "dimension not stabilized; raise --bound or change --seed";
    out.exit_code = kExitNotStabilized;
  }
  return out;
}

namespace detail {

// d-monomials of total degree <= d in N variables.
inline std::vector<WeylElement> del_monomials(std::size_t N, int d) {
  std::vector<WeylElement> out;
  std::vector<int> b(N, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t j, int left) {
    if (j == N) {
      out.push_back(WeylElement::monomial(Exponent(N, 0), b));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      b[j] = k;
      rec(j + 1, left - k);
    }
    b[j] = 0;
  };
  rec(0, d);
  return out;
}

inline std::string vec_str(const IntVector& v) { return json(v).dump(); }

}  // namespace detail

inline CheckResult commutation_battery(const PointConfig& A, const ParameterVector& alpha,
                                       const std::vector<IntVector>& relations, bool perturb) {
  CheckResult res;
  for (const auto& l : relations)
    for (std::size_t i = 0; i < A.n(); ++i) {
      ++res.checked;
      auto beta = commutation_shift(l, alpha, A);
      if (perturb) beta.entries[0] += 1;
      auto residual = commutation_residual(l, i, alpha, beta, A);
      if (!residual.is_zero())
        res.fail("l=" + detail::vec_str(l) + " i=" + std::to_string(i + 1) + " residual " + residual.str());
    }
  return res;
}

inline CheckResult phi_box_battery(const PointConfig& A, const std::vector<IntVector>& relations,
                                   const std::vector<WeylElement>& monos) {
  CheckResult res;
  for (const auto& l : relations) {
    auto box = box_operator(l, A);
    for (const auto& w : monos) {
      ++res.checked;
      auto img = phi_map(weyl_mul(w, box), A);
      if (!img.is_zero()) res.fail("phi(" + w.str() + " * box_" + detail::vec_str(l) + ") = " + img.str());
    }
  }
  return res;
}

inline CheckResult phi_intertwine_battery(const PointConfig& A, const ParameterVector& alpha,
                                          const std::vector<WeylElement>& monos) {
  CheckResult res;
  for (const auto& w : monos)
    for (std::size_t i = 0; i < A.n(); ++i)
      for (std::size_t j = 0; j < A.N(); ++j) {
        ++res.checked;
        auto r = check_phi_intertwines(w, i, j, alpha, A);
        if (!r.ok())
          res.fail("w=" + w.str() + " i=" + std::to_string(i + 1) + " j=" + std::to_string(j + 1) +
                   (r.euler_ok ? "" : " euler") + (r.del_ok ? "" : " d_j"));
      }
  return res;
}

template <class C>
CheckResult derham_battery(const PointConfig& A, const ParameterVector& alpha, const std::vector<C>& lam,
                           const C& one, int radius, bool empty, json& out) {
  auto f = build_f(A, lam);
  CheckResult all, sq, homotopy, twist;
  std::vector<std::vector<LogForm<C>>> samples;
  for (std::size_t k = 0; k <= A.n(); ++k)
    samples.push_back(empty ? std::vector<LogForm<C>>{} : monomial_forms<C>(A.n(), k, radius, one));
  for (const auto& s : samples) sq.merge(check_complex(alpha, f, s));
  for (const auto& ell : cone_facets(A))
    for (const auto& s : samples) homotopy.merge(homotopy_identity_check(ell, alpha, A, lam, s));
  std::vector<IntVector> twists;
  IntVector e1(A.n(), 0);
  e1[0] = 1;
  twists.push_back(e1);
  if (A.n() >= 2) {
    IntVector me2(A.n(), 0), e12(A.n(), 0);
    me2[1] = -1;
    e12[0] = e12[1] = 1;
    twists.push_back(me2);
    twists.push_back(e12);
  }
  for (const auto& u : twists)
    for (const auto& s : samples) twist.merge(twist_conjugation_check(alpha, u, f, s));
  out["nabla_squared"] = to_json(sq);
  out["homotopy"] = to_json(homotopy);
  out["twist"] = to_json(twist);
  all.merge(sq);
  all.merge(homotopy);
  all.merge(twist);
  return all;
}

inline CheckResult split_battery(const PointConfig& A0, const ParameterVector& alpha0, const std::vector<Rational>& lam,
                                 int radius, bool empty, json& out) {
  auto s = normalize_for_split(A0, alpha0);
  const auto& A = s.config;
  const auto& alpha = s.alpha;
  auto ctx = g_context_for(A, lam);
  CheckResult all, ucx, utwist, gamma, total;
  for (std::size_t k = 0; k < A.n(); ++k) {
    auto us = empty ? std::vector<UForm>{} : u_monomial_forms(ctx, k, radius, 2);
    ucx.merge(check_U_complex(alpha, us));
    IntVector en(A.n(), 0);
    en.back() = 1;
    utwist.merge(twist_iso_U_check(alpha, en, us));
    IntVector e1(A.n(), 0);
    e1[0] = 1;
    utwist.merge(twist_iso_U_check(alpha, e1, us));
  }
  for (std::size_t k = 0; k < A.n(); ++k) {
    auto ss = empty ? std::vector<SplitForm>{} : split_monomial_forms(A.n(), k, radius, 0, 3);
    gamma.merge(check_gamma_chain_map(A, alpha, lam, ss));
    total.merge(total_decomposition_check(A, alpha, lam, ss));
  }
  out["U_nabla_squared"] = to_json(ucx);
  out["U_twist"] = to_json(utwist);
  out["gamma_chain_map"] = to_json(gamma);
  out["total_decomposition"] = to_json(total);
  if (!s.notes.empty()) out["split_normalization"] = s.notes;
  all.merge(ucx);
  all.merge(utwist);
  all.merge(gamma);
  all.merge(total);
  return all;
}

inline JobOutcome cmd_verify(const JobSpec& job) {
  auto L = detail::load(job);
  const auto& A = L.A;
  auto alpha = L.alpha ? *L.alpha : detail::default_alpha(A.n());
  JobOutcome out{detail::base_report(job), kExitOk};
  auto& r = out.report;
  r["alpha"] = to_json(alpha);
  json checks = json::object();
  std::vector<IntVector> relations = job.empty_samples ? std::vector<IntVector>{} : relation_lattice(A).basis;
  auto monos = job.empty_samples ? std::vector<WeylElement>{} : detail::del_monomials(A.N(), job.degree);

  CheckResult total;
  auto record = [&](const std::string& name, const CheckResult& c) {
    checks[name] = to_json(c);
    total.merge(c);
  };
  record("commutation", commutation_battery(A, alpha, relations, job.perturb_beta));
  record("phi_kills_boxes", phi_box_battery(A, relations, monos));
  record("phi_intertwines", phi_intertwine_battery(A, alpha, monos));

  auto lams = detail::lambdas(job, A.N());
  json dj;
  CheckResult dr = job.lambda_mode == "symbolic"
                       ? derham_battery(A, alpha, symbolic_lambda(A.N()), LambdaPoly::constant(A.N(), 1), job.radius,
                                        job.empty_samples, dj)
                       : derham_battery(A, alpha, lams.front(), Rational(1), job.radius, job.empty_samples, dj);
  for (auto& [k, v] : dj.items()) checks[k] = v;
  total.merge(dr);

  try {
    json sj;
    total.merge(split_battery(A, alpha, lams.front(), job.radius, job.empty_samples, sj));
    for (auto& [k, v] : sj.items()) checks[k] = v;
  } catch (const StructureError& e) {
    checks["split"] = {{"skipped", e.what()}};
  } catch (const PochhammerPole& e) {
    checks["split"] = {{"skipped", e.what()}};
  }

  r["checks"] = checks;
  r["passed"] = total.passed;
  r["checked"] = total.checked;
  r["vacuous"] = total.vacuous();
  if (!total.passed) {
    r["counterexample"] = total.counterexample;
    out.exit_code = kExitFailure;
  }
  return out;
}

inline JobOutcome cmd_modp(const JobSpec& job) {
  auto L = detail::load(job);
  const auto& A = L.A;
  auto alpha = detail::require_alpha(L);
  auto v = is_nonresonant(A, alpha);
  if (!v.nonresonant) throw ResonantError(resonance_warning(v));
  auto lams = detail::lambdas(job, A.N());
  JobOutcome out{detail::base_report(job), kExitOk};
  auto& r = out.report;
  json reps = json::array();
  std::vector<std::size_t> seen;
  bool stable = true;
  // phi intertwines Z_{i,alpha} with D_{i,-alpha}, so the rank comes from nabla_{-alpha}.
  for (const auto& lam : lams) {
    auto rep = top_cohomology_dim(A, alpha.negated(), lam, SupportPredicate::all(), job.bound);
    stable &= rep.stabilized;
    seen.push_back(rep.dim);
    reps.push_back(to_json(rep));
  }
  stable &= std::all_of(seen.begin(), seen.end(), [&](std::size_t d) { return d == seen.front(); });
  r["rank_reports"] = reps;
  if (!stable) {
    r["error"] = "rank not stabilized; raise --bound or change --seed";
    out.exit_code = kExitNotStabilized;
    return out;
  }
  auto primes = job.primes.empty() ? primes_up_to(23) : job.primes;
  json sweep = to_json(full_set_sweep(A, alpha, primes, seen.front()));
  for (auto& [k, val] : sweep.items()) r[k] = val;
  return out;
}

// Runs a job; library errors become exit codes with an "error" report.
inline JobOutcome run_job(const JobSpec& job) {
  auto failure = [&](int code, const std::string& kind, const std::string& what) {
    JobOutcome o{detail::base_report(job), code};
    o.report["error"] = what;
    o.report["error_kind"] = kind;
    return o;
  };
  try {
    if (job.command == "analyze") return cmd_analyze(job);
    if (job.command == "rank") return cmd_rank(job);
    if (job.command == "verify") return cmd_verify(job);
    if (job.command == "modp") return cmd_modp(job);
    return failure(kExitInvalid, "InvalidInput", "unknown command " + job.command);
  } catch (const NotGenerating& e) {
    return failure(kExitInvalid, "NotGenerating", e.what());
  } catch (const DuplicatePoint& e) {
    return failure(kExitInvalid, "DuplicatePoint", e.what());
  } catch (const InvalidInput& e) {
    return failure(kExitInvalid, "InvalidInput", e.what());
  } catch (const StructureError& e) {
    return failure(kExitInvalid, "StructureError", e.what());
  } catch (const PreconditionError& e) {
    return failure(kExitInvalid, "PreconditionError", e.what());
  } catch (const NotStabilized& e) {
    return failure(kExitNotStabilized, "NotStabilized", e.what());
  } catch (const ResonantError& e) {
    return failure(kExitResonant, "ResonantError", e.what());
  } catch (const Error& e) {
    return failure(kExitFailure, "Error", e.what());
  }
}

}  // namespace gkz
