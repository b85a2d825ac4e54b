#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ringcover/certificate.hpp"
#include "ringcover/cover.hpp"
#include "ringcover/formulas.hpp"
#include "ringcover/ring_spec.hpp"
#include "ringcover/sigma.hpp"

namespace ringcover {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "ringcover/1";

/// Integer when it fits in 64 bits, decimal string otherwise.
inline json big_json(const BigInt& x) {
  if (x >= 0 && x <= BigInt(std::numeric_limits<std::int64_t>::max())) return static_cast<std::int64_t>(x);
  return to_string(x);
}

inline json rational_json(const BigRat& x) {
  return {{"num", big_json(numerator(x))}, {"den", big_json(denominator(x))}, {"text", to_string(x)}};
}

inline json header_json(const std::string& command) { return {{"schema", kSchema}, {"command", command}}; }

inline json params_json(const AglNumbers& x) {
  return {{"n", x.n}, {"q1", x.q1}, {"q2", x.q2}, {"q", x.q}, {"p", x.p}, {"d1", x.d1}, {"d2", x.d2}, {"d", x.d}, {"a", x.a}};
}

/// Covering number of the ring named by spec from the closed forms.
inline SigmaFormulaResult sigma_formula_for(const RingSpec& s) {
  SigmaFormulaResult r;
  switch (s.kind) {
    case RingSpec::Kind::agl: return sigma_agl_formula(s.n, s.q1, s.q2);
    case RingSpec::Kind::mat:
      if (s.n == 1) {
        r.kind = SigmaFormulaResult::Kind::not_coverable;
        r.case_tag = "finite_field";
        r.elementary = Tri::no;
      } else {
        r.value = sigma_matrix_ring(s.n, s.q1);
        r.case_tag = "matrix_ring";
        r.elementary = Tri::yes;  // simple ring: the only nonzero quotient is {0}
      }
      return r;
    case RingSpec::Kind::field:
      r.kind = SigmaFormulaResult::Kind::not_coverable;
      r.case_tag = "finite_field";
      r.elementary = Tri::no;
      return r;
    case RingSpec::Kind::sum: break;
  }
  throw invalid_argument("no closed form for direct sums; use brute for '" + s.to_string() + "'");
}

inline json formula_json(const RingSpec& s, const SigmaFormulaResult& r) {
  json j = header_json("formula");
  j["ring"] = s.to_string();
  if (s.kind == RingSpec::Kind::agl) j["params"] = params_json(agl_numbers(s.n, s.q1, s.q2));
  switch (r.kind) {
    case SigmaFormulaResult::Kind::finite: j["sigma"] = big_json(r.value); break;
    case SigmaFormulaResult::Kind::not_coverable: j["sigma"] = "infinite"; break;
    case SigmaFormulaResult::Kind::unknown: j["sigma"] = "unknown"; break;
  }
  if (r.upper_bound) j["upper_bound"] = big_json(*r.upper_bound);
  j["case_tag"] = r.case_tag;
  if (r.elementary == Tri::unknown) {
    j["elementary"] = "unknown";
  } else {
    j["elementary"] = r.elementary == Tri::yes;
  }
  return j;
}

inline json sigma_value_json(const SigmaResult& r) {
  if (!r.coverable) return "infinite";
  return r.value;
}

/// A subring given as a mask, listed by its element indices.
inline json mask_json(const Mask& m) { return {{"order", m.count()}, {"elements", m.elements()}}; }

inline json brute_json(const RingSpec& s, const ExactCover& ex, double elapsed_ms) {
  json j = header_json("brute");
  j["ring"] = s.to_string();
  j["maximal_subrings"] = ex.maximal.size();
  j["sigma"] = sigma_value_json(ex.result);
  json w = json::array();
  for (auto i : ex.result.witness) w.push_back(mask_json(ex.maximal[i]));
  j["witness"] = w;
  j["exhausted"] = ex.result.exhausted;
  j["nodes"] = ex.result.nodes;
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

inline json elementary_json(const ElementaryReport& rep) {
  json ideals = json::array();
  for (const auto& i : rep.ideals) {
    ideals.push_back({{"ideal_order", i.ideal_order},
                      {"quotient_order", i.quotient_order},
                      {"quotient_sigma", sigma_value_json(i.quotient_sigma)},
                      {"strictly_larger", i.strictly_larger},
                      {"monotone", i.monotone}});
  }
  return {{"elementary", rep.elementary}, {"ideals", ideals}};
}

inline json descriptor_json(const MaxSubringDescriptor& m) {
  json j = {{"kind", m.kind_name()}, {"param", m.param}};
  if (m.subspace) {
    json rows = json::array();
    for (const auto& v : m.subspace->basis_vectors()) rows.push_back(v);
    j["basis"] = rows;
  }
  if (m.matrix) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.matrix->rows(); ++i) rows.push_back(m.matrix->row(i));
    j["matrix"] = rows;
  }
  if (m.subfield) j["subfield_order"] = m.subfield->order();
  return j;
}

inline json family_json(const CoverFamily& f) {
  json members = json::array();
  for (auto c : f.complement_codes) members.push_back({{"kind", "complement"}, {"x", f.complement_vector(c)}});
  for (const auto& m : f.zed) members.push_back(descriptor_json(m));
  return members;
}

inline json sweep_json(const SweepReport& r) {
  json j = {{"sweep_mode", r.mode},
            {"covered", r.covered},
            {"elements_checked", r.elements_checked},
            {"per_member_hits", r.per_member_hits},
            {"complement_covered", r.complement_covered}};
  if (r.mode == "reduced") j["centralizer_union"] = r.centralizer_union;
  if (r.first_uncovered) j["first_uncovered"] = *r.first_uncovered;
  j["workers"] = r.workers;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

inline json c_table_json(const Certificate& c) {
  json rows = json::array();
  for (const auto& r : c.rows) {
    if (!r.c) continue;
    rows.push_back({{"class", r.cls.name}, {"c_num", big_json(numerator(*r.c))}, {"c_den", big_json(denominator(*r.c))}});
  }
  return rows;
}

inline json certificate_json(const Certificate& c) {
  json j = header_json("certificate");
  j["params"] = params_json(c.params);
  j["seed"] = c.seed;
  json pi = json::array();
  for (const auto& p : c.pi) {
    pi.push_back({{"index", p.index},
                  {"alpha_degree", p.degree},
                  {"k", p.k},
                  {"alpha_field_order", p.field_order},
                  {"size", p.size},
                  {"expected", big_json(p.expected)},
                  {"matrices", p.matrices}});
  }
  j["pi"] = pi;
  json den = json::array();
  for (std::size_t i = 0; i < c.denominators.size(); ++i)
    den.push_back({{"class", i}, {"count", big_json(c.denominators[i])}, {"expected", big_json(c.denominators_expected[i])}});
  j["denominators"] = den;
  j["complement_choice"] = "deterministic perfect matching of k-subspaces to complements";
  j["witnesses"] = {{"checked", c.witnesses_checked}, {"ok", c.witnesses_ok}};
  j["conditions"] = {{"pi_counts", c.pi_counts_ok},
                     {"cover_of_pi", c.cover_of_pi},
                     {"pi_partitioned", c.pi_partitioned},
                     {"every_member_meets_pi", c.every_member_meets_pi},
                     {"invariance", c.invariance},
                     {"c_at_most_one", c.c_bounded}};
  json rows = json::array();
  for (const auto& r : c.rows) {
    json row = {{"class", r.cls.name},
                {"type", r.cls.type},
                {"param", r.cls.param},
                {"in_C", r.cls.in_C},
                {"population", big_json(r.cls.population)},
                {"members_checked", r.members_checked},
                {"invariance", r.invariance},
                {"invariant", r.invariant},
                {"counts", r.counts}};
    if (r.population_enumerated) row["population_enumerated"] = big_json(*r.population_enumerated);
    if (r.c) row["c"] = rational_json(*r.c);
    if (r.ratio0) row["ratio_pi0"] = rational_json(*r.ratio0);
    if (r.type2_ratio_bound) row["ratio_pi0_bound"] = rational_json(*r.type2_ratio_bound);
    if (r.type2_c_bound) row["c_bound"] = rational_json(*r.type2_c_bound);
    row["representative"] = descriptor_json(r.cls.representative);
    row["expectation"] = r.expectation;
    row["expectation_ok"] = r.expectation_ok;
    if (!r.cls.note.empty()) row["note"] = r.cls.note;
    rows.push_back(row);
  }
  j["classes"] = rows;
  j["c_table"] = c_table_json(c);
  j["max_c"] = rational_json(c.max_c);
  j["max_c_class"] = c.max_c_class;
  j["failures"] = c.failures;
  j["certificate"] = c.pass ? "pass" : "fail";
  j["elapsed_ms"] = c.elapsed_ms;
  return j;
}

/// CoverReport: the family, its sweep and, where defined, the certificate.
inline json cover_report_json(const CoverFamily& f, const std::optional<SweepReport>& sweep,
                              const std::optional<Certificate>& cert, std::uint64_t seed, const std::string& command) {
  json j = header_json(command);
  const auto& x = f.ring->numbers();
  j["params"] = params_json(x);
  j["family_size"] = big_json(f.size());
  j["complements"] = f.complement_codes.size();
  j["family"] = family_json(f);
  if (sweep) {
    j.update(sweep_json(*sweep));
  }
  if (cert) {
    j["c_table"] = c_table_json(*cert);
    j["max_c"] = rational_json(cert->max_c);
    j["certificate"] = cert->pass ? "pass" : "fail";
    if (!cert->failures.empty()) j["certificate_failures"] = cert->failures;
  } else {
    j["c_table"] = json::array();
    j["certificate"] = "not_applicable";
  }
  j["seed"] = seed;
  return j;
}

}  // namespace ringcover
