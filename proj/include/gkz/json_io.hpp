#pragma once

// JSON (de)serialization for configurations, polynomials, Weyl elements and reports.

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gkz/hypersurface.hpp"
#include "gkz/modp.hpp"
#include "gkz/weyl.hpp"

namespace gkz {

using json = nlohmann::json;

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return qi(j.get<long long>());
  throw InvalidInput("exact rationals must be given as strings or integers, got " + j.dump());
}

inline std::vector<Rational> rationals_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

inline json to_json(const std::vector<Rational>& v) { return to_strings(v); }

inline std::vector<IntVector> points_from_json(const json& j) {
  const json& pts = j.is_object() ? j.at("points") : j;
  if (!pts.is_array() || pts.empty()) throw InvalidInput("\"points\" must be a nonempty array");
  std::vector<IntVector> out;
  for (const auto& p : pts) {
    if (!p.is_array()) throw InvalidInput("each point must be an array of integers");
    IntVector v;
    for (const auto& x : p) {
      if (!x.is_number_integer()) throw InvalidInput("point coordinates must be integers");
      v.push_back(x.get<long long>());
    }
    out.push_back(std::move(v));
  }
  return out;
}

inline PointConfig config_from_json(const json& j) {
  try {
    return validate_config(points_from_json(j));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed configuration: ") + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("invalid JSON in " + path + ": " + e.what());
  }
}

inline json to_json(const PointConfig& A) { return json{{"points", A.points()}}; }

inline json to_json(const ParameterVector& a) { return to_strings(a.entries); }

// Laurent polynomials: [{"exp": [...], "coeff": "p/q"}], with symbolic
// coefficients written as {"[e_1,...,e_N]": "p/q"}.
inline json coeff_to_json(const Rational& q) { return to_string(q); }
inline json coeff_to_json(const LambdaPoly& p) {
  json o = json::object();
  for (const auto& [e, c] : p.terms()) o[json(e).dump()] = to_string(c);
  return o;
}

template <class C>
json to_json(const LaurentPoly<C>& p) {
  json arr = json::array();
  for (const auto& [e, c] : p.terms()) arr.push_back({{"exp", e}, {"coeff", coeff_to_json(c)}});
  return arr;
}

inline LaurentPoly<Rational> laurent_from_json(const json& j, std::size_t nvars) {
  LaurentPoly<Rational> p(nvars);
  for (const auto& t : j) {
    auto e = t.at("exp").get<Exponent>();
    if (e.size() != nvars) throw InvalidInput("exponent length mismatch");
    p.add_term(e, rational_from_json(t.at("coeff")));
  }
  return p;
}

inline LaurentPoly<LambdaPoly> symbolic_laurent_from_json(const json& j, std::size_t nvars, std::size_t N) {
  LaurentPoly<LambdaPoly> p(nvars);
  for (const auto& t : j) {
    auto e = t.at("exp").get<Exponent>();
    if (e.size() != nvars) throw InvalidInput("exponent length mismatch");
    LambdaPoly c(N);
    for (const auto& [key, val] : t.at("coeff").items()) c.add_term(json::parse(key).get<Exponent>(), rational_from_json(val));
    p.add_term(e, c);
  }
  return p;
}

inline json to_json(const WeylElement& w) {
  json arr = json::array();
  for (const auto& [k, c] : w.terms()) arr.push_back({{"lam", k.lam}, {"del", k.del}, {"coeff", to_string(c)}});
  return arr;
}

inline WeylElement weyl_from_json(const json& j, std::size_t N) {
  WeylElement w(N);
  for (const auto& t : j) w.add_term(t.at("lam").get<Exponent>(), t.at("del").get<Exponent>(), rational_from_json(t.at("coeff")));
  return w;
}

inline json to_json(const RankReport& r) {
  json j{{"complex", r.complex},
         {"alpha", to_json(r.alpha)},
         {"lambda", to_json(r.lambda)},
         {"B", r.B},
         {"dims", {r.dims.first, r.dims.second}},
         {"stabilized", r.stabilized},
         {"dim", r.dim},
         {"warnings", r.warnings}};
  if (r.Bm) j["Bm"] = *r.Bm;
  if (r.dims_m) j["dims_m"] = {r.dims_m->first, r.dims_m->second};
  return j;
}

inline json to_json(const CheckResult& c) {
  json j{{"passed", c.passed}, {"checked", c.checked}, {"vacuous", c.vacuous()}};
  if (!c.passed) j["counterexample"] = c.counterexample;
  return j;
}

inline json to_json(const ModpReport& r) {
  json primes = json::array();
  std::size_t full = 0;
  for (const auto& p : r.primes) {
    primes.push_back({{"p", p.p}, {"dim", p.dim}, {"full", p.full}});
    full += p.full;
  }
  json skipped = json::array();
  for (const auto& s : r.skipped) skipped.push_back({{"p", s.p}, {"reason", s.reason}});
  return {{"alpha", to_json(r.alpha)},
          {"rank", r.rank},
          {"primes", primes},
          {"skipped", skipped},
          {"full_fraction", std::to_string(full) + "/" + std::to_string(r.primes.size())},
          {"verdict", r.verdict}};
}

inline json to_json(const FacetForm& f) { return f.coeffs; }

inline json to_json(const NonresonanceVerdict& v) {
  json j{{"nonresonant", v.nonresonant}, {"vacuous", v.vacuous}};
  if (v.witness_index) {
    j["witness"] = {{"facet", *v.witness_index}, {"form", v.witness_form->coeffs}, {"value", to_string(*v.witness_value)}};
  }
  return j;
}

}  // namespace gkz
