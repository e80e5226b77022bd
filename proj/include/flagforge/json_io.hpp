#pragma once

// JSON bundles for distributions and flags, and JSON renderings of every report.
// Polynomials and forms travel as text in z0..zN notation.

#include "flagforge/bott.hpp"
#include "flagforge/families.hpp"
#include "flagforge/flags.hpp"
#include "flagforge/zeros.hpp"

#include <json.hpp>

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace flagforge {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent bundle.
class BundleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Integers that fit in 64 bits are numbers, larger ones strings.
inline Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw BundleError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

inline int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw BundleError(std::string("\"") + key + "\" must be an integer");
  return v.get<int>();
}

inline std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw BundleError(std::string("\"") + key + "\" must be a string");
  return v.get<std::string>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Distributions.

inline Json to_json(const ProjDistribution& d) {
  return Json{{"n", d.n()}, {"codim", d.codim()}, {"degree", d.degree()}, {"omega", to_string(d.omega())}};
}

/// "codim" and "degree" are optional; when present they must agree with omega.
inline ProjDistribution distribution_from_json(const Json& j) {
  const int n = detail::int_field(j, "n");
  if (n < 1) throw BundleError("\"n\" must be positive");
  const PForm omega = parse_form(detail::string_field(j, "omega"), static_cast<std::size_t>(n) + 1);
  ProjDistribution d = descend_form(omega, n);
  if (j.contains("codim") && detail::int_field(j, "codim") != d.codim()) throw BundleError("stated codim disagrees with omega");
  if (j.contains("degree") && detail::int_field(j, "degree") != d.degree()) {
    throw BundleError("stated degree disagrees with omega");
  }
  return d;
}

inline Json to_json(const FieldsDistribution& d) {
  Json fields = Json::array();
  for (const auto& x : d.generators()) fields.push_back(to_string(x));
  return Json{{"n", d.n()}, {"fields", fields}, {"degrees", d.degrees()}};
}

inline FieldsDistribution fields_from_json(const Json& j) {
  const int n = detail::int_field(j, "n");
  if (n < 1) throw BundleError("\"n\" must be positive");
  const Json& arr = detail::field(j, "fields");
  if (!arr.is_array()) throw BundleError("\"fields\" must be an array of strings");
  std::vector<MultiVector> gens;
  for (const auto& s : arr) {
    if (!s.is_string()) throw BundleError("\"fields\" must be an array of strings");
    gens.push_back(parse_multivector(s.get<std::string>(), static_cast<std::size_t>(n) + 1, 1));
  }
  FieldsDistribution d = fields_distribution(std::move(gens), n);
  if (j.contains("degrees") && j.at("degrees") != Json(d.degrees())) throw BundleError("stated degrees disagree with fields");
  return d;
}

// ---------------------------------------------------------------------------
// Flag bundles.

struct FlagBundle {
  FieldsDistribution lower;
  ProjDistribution upper;
  std::optional<std::vector<ChainMember>> chain;

  bool operator==(const FlagBundle& o) const {
    auto same_chain = [](const auto& a, const auto& b) {
      if (a.has_value() != b.has_value()) return false;
      if (!a) return true;
      if (a->size() != b->size()) return false;
      for (std::size_t i = 0; i < a->size(); ++i) {
        if ((*a)[i].dimension != (*b)[i].dimension || (*a)[i].degree != (*b)[i].degree) return false;
      }
      return true;
    };
    return lower == o.lower && upper == o.upper && same_chain(chain, o.chain);
  }
};

inline Json chain_json(std::span<const ChainMember> chain) {
  Json out = Json::array();
  for (const auto& c : chain) out.push_back(Json{{"dimension", c.dimension}, {"degree", c.degree}});
  return out;
}

inline Json to_json(const FlagBundle& b) {
  Json out{{"n", b.upper.n()}, {"lower", to_json(b.lower)}, {"upper", to_json(b.upper)}};
  if (b.chain) out["chain"] = chain_json(*b.chain);
  return out;
}

inline FlagBundle bundle_from_json(const Json& j) {
  const int n = detail::int_field(j, "n");
  FlagBundle b{fields_from_json(detail::field(j, "lower")), distribution_from_json(detail::field(j, "upper")), {}};
  if (b.lower.n() != n || b.upper.n() != n) throw BundleError("members disagree with the bundle's n");
  if (j.contains("chain")) {
    const Json& arr = j.at("chain");
    if (!arr.is_array()) throw BundleError("\"chain\" must be an array");
    std::vector<ChainMember> chain;
    for (const auto& c : arr) chain.push_back({detail::int_field(c, "dimension"), detail::int_field(c, "degree")});
    b.chain = std::move(chain);
  }
  return b;
}

inline FlagBundle parse_bundle(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw BundleError(std::string("invalid JSON: ") + e.what());
  }
  return bundle_from_json(j);
}

// ---------------------------------------------------------------------------
// Reports.

inline Json to_json(const bott::Theorem1Audit& a) {
  Json out{{"n", a.n},
           {"deg_F", a.d},
           {"deg_G", a.m},
           {"deg_G_at_least_2", a.in_scope},
           {"condition_i", a.condition_i},
           {"condition_ii", a.condition_ii},
           {"hypotheses_met", a.hypotheses_met},
           {"bound_holds", nullptr},
           {"remark_consistent", a.remark_consistent},
           {"sing_isolated", "not certified; see the sing subcommand"}};
  if (a.bound_holds) out["bound_holds"] = *a.bound_holds;
  return out;
}

inline Json to_json(const FlagReport& r) {
  Json residues = Json::array();
  for (const auto& t : r.tangency_residues) residues.push_back(to_string(t));
  Json brackets = Json::array();
  for (const auto& b : r.brackets) {
    brackets.push_back(Json{{"i", b.i + 1}, {"j", b.j + 1}, {"bracket", to_string(b.bracket)}, {"closed", b.closed}});
  }
  Json verdicts = Json::object();
  for (const auto& [name, v] : r.inequality_verdicts) verdicts[name] = to_string(v);
  Json out{{"n", r.n},
           {"dim_F", r.dim_lower},
           {"dim_G", r.dim_upper},
           {"deg_F", r.deg_lower},
           {"deg_G", r.deg_upper},
           {"generator_degrees", r.generator_degrees},
           {"tangency", r.tangency},
           {"tangency_residues", residues},
           {"contraction_chain", to_string(r.chain_form)},
           {"contraction_chain_zero", r.contraction_chain_zero},
           {"integrability_upper", r.integrability_upper},
           {"integrability_lower", r.integrability_lower},
           {"brackets", brackets},
           {"inequality_verdicts", verdicts}};
  if (r.theorem1_hypotheses) out["theorem1_hypotheses"] = to_json(*r.theorem1_hypotheses);
  out["passed"] = r.passed();
  return out;
}

inline Json to_json(const ChainVerdict& v) {
  return Json{{"holds", v.holds}, {"all_equal", v.all_equal}, {"violations", v.violations}};
}

inline Json to_json(const bott::VanishingReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"r", row.r},
                        {"twist", row.twist},
                        {"h_lower", integer_json(row.h_lower)},
                        {"h_upper", integer_json(row.h_upper)},
                        {"lower_required", row.lower_required},
                        {"upper_required", row.upper_required},
                        {"holds", row.holds()}});
  }
  return Json{{"n", r.n},
              {"d", r.d},
              {"m", r.m},
              {"twists", r.twists},
              {"rows", rows},
              {"chain_holds", r.chain_holds},
              {"exceptional", bott::to_string(r.exceptional)},
              {"conclusion_dimension", integer_json(r.conclusion_dimension)}};
}

inline Json to_json(const ModPoint& p) { return p.coords; }

inline Json to_json(const IsolatednessReport& r) {
  Json counts = Json::array();
  for (const auto& c : r.counts) {
    Json entry{{"prime", c.prime}, {"zeros", c.zeros}, {"points", c.points}};
    if (c.zeros <= kSampleLimit) {
      Json pts = Json::array();
      for (const auto& p : c.sample) pts.push_back(to_json(p));
      entry["zero_points"] = pts;
    }
    counts.push_back(entry);
  }
  Json rejected = Json::array();
  for (const auto& rp : r.rejected) rejected.push_back(Json{{"prime", rp.prime}, {"reason", rp.reason}});
  return Json{{"n", r.n},
              {"counts", counts},
              {"rejected_primes", rejected},
              {"verdict", to_string(r.verdict)},
              {"heuristic", true}};
}

inline Json to_json(const HamiltonianCandidate& c) {
  return Json{{"index", c.index},
              {"origin", to_string(c.origin)},
              {"pattern", pattern_text(c.pattern)},
              {"field", to_string(c.field)},
              {"residue", to_string(c.residue)},
              {"valid", c.valid}};
}

inline Json to_json(const BracketEntry& b) {
  return Json{{"i", b.i}, {"j", b.j}, {"bracket", to_string(b.bracket)}, {"vanishes", b.vanishes}};
}

}  // namespace flagforge
