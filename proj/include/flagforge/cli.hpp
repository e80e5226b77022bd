#pragma once

// Command-line front end. run() is the whole program; tools/flagforge.cpp only
// forwards argv. Exit codes: 0 all verdicts pass, 1 a verified failure, 2 bad input.

#include "flagforge/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace flagforge::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kBadInput = 2;

/// Flattened "path: value" lines; the text mode shows exactly the JSON data.
inline void render_text(const Json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) render_text(value, path.empty() ? key : path + "." + key, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

struct Options {
  std::string format = "json";
  std::string out_path;
};

inline void emit(const Json& j, const Options& opt, std::ostream& out) {
  std::ostringstream buf;
  if (opt.format == "text") {
    render_text(j, "", buf);
  } else {
    buf << j.dump(2) << '\n';
  }
  if (opt.out_path.empty()) {
    out << buf.str();
    return;
  }
  std::ofstream file(opt.out_path, std::ios::binary);
  if (!file) throw BundleError("cannot write " + opt.out_path);
  file << buf.str();
}

inline std::string read_input(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return std::string(std::istreambuf_iterator<char>(in), {});
  std::ifstream file(path, std::ios::binary);
  if (!file) throw BundleError("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(file), {});
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw BundleError(std::string("invalid JSON: ") + e.what());
  }
}

inline std::vector<std::uint64_t> parse_primes(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      throw BundleError("bad prime \"" + item + "\"");
    }
    if (used != item.size()) throw BundleError("bad prime \"" + item + "\"");
    out.push_back(v);
  }
  return out;
}

inline std::vector<int> parse_indices(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw BundleError("bad field index \"" + item + "\"");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subcommands. Each returns its exit code.

struct CheckArgs {
  std::string form;
  std::vector<std::string> fields;
  std::string input;
  int n = 0;
};

inline int do_check(const CheckArgs& a, const Options& opt, std::ostream& out, std::istream& in) {
  if (!a.fields.empty()) {
    int n = a.n;
    if (n == 0) {
      for (const auto& f : a.fields) n = std::max(n, detail::max_coordinate_index(f));
    }
    std::vector<MultiVector> gens;
    for (const auto& f : a.fields) gens.push_back(parse_multivector(f, static_cast<std::size_t>(n) + 1, 1));
    try {
      const FieldsDistribution d = fields_distribution(std::move(gens), n);
      Json j{{"valid", true}, {"distribution", to_json(d)}, {"degree", d.total_degree()},
             {"det_tangent_twist", det_tangent_twist(d.dimension(), d.total_degree())}};
      emit(j, opt, out);
      return kOk;
    } catch (const DistributionError& e) {
      emit(Json{{"valid", false}, {"error", e.what()}}, opt, out);
      return kFailed;
    }
  }

  PForm omega(1, 0);
  int n = a.n;
  if (!a.input.empty()) {
    const Json j = parse_json(read_input(a.input, in));
    n = detail::int_field(j, "n");
    omega = parse_form(detail::string_field(j, "omega"), static_cast<std::size_t>(n) + 1);
  } else {
    if (a.form.empty()) throw BundleError("check needs --form, --fields or --input");
    if (n == 0) n = std::max(detail::max_coordinate_index(a.form), 1);
    omega = parse_form(a.form, static_cast<std::size_t>(n) + 1);
  }
  try {
    const ProjDistribution d = descend_form(omega, n);
    Json j{{"valid", true}, {"distribution", to_json(d)}, {"line_bundle_twist", d.twist()}};
    if (d.codim() == 1) j["generic_singular_count"] = integer_json(generic_codim1_singular_count(d.n(), d.degree()));
    emit(j, opt, out);
    return kOk;
  } catch (const EulerRelationFails& e) {
    emit(Json{{"valid", false}, {"error", "EulerRelationFails"}, {"residue", to_string(e.residue())}}, opt, out);
    return kFailed;
  } catch (const NotHomogeneous& e) {
    emit(Json{{"valid", false}, {"error", "NotHomogeneous"}, {"message", e.what()}}, opt, out);
    return kFailed;
  } catch (const ZeroForm& e) {
    emit(Json{{"valid", false}, {"error", "ZeroForm"}, {"message", e.what()}}, opt, out);
    return kFailed;
  } catch (const DistributionError& e) {
    emit(Json{{"valid", false}, {"error", "DistributionError"}, {"message", e.what()}}, opt, out);
    return kFailed;
  }
}

struct BottArgs {
  int n = 0;
  int d = -1;
  int m = -1;
  std::string kind;
  int rank = -1;
  int twist = 0;
  int cohom = -1;
};

inline int do_bott(const BottArgs& a, bool have_d, bool have_m, bool have_single, const Options& opt,
                   std::ostream& out) {
  if (have_single) {
    if (have_d || have_m) throw BundleError("use either --d/--m or --kind/--rank/--twist/--cohom");
    if (a.kind != "forms" && a.kind != "polyvectors") throw BundleError("--kind must be forms or polyvectors");
    const bott::BottQuery q{a.n, a.kind == "forms" ? bott::SheafKind::forms : bott::SheafKind::polyvectors, a.rank,
                            a.twist, a.cohom};
    emit(Json{{"n", a.n}, {"kind", a.kind}, {"rank", a.rank}, {"twist", a.twist}, {"cohom", a.cohom},
              {"dimension", integer_json(bott::bott_dim(q))}},
         opt, out);
    return kOk;
  }
  if (!have_d || !have_m) throw BundleError("bott needs --d and --m (or --kind/--rank/--twist/--cohom)");
  Json j = to_json(bott::vanishing_report(a.n, a.d, a.m));
  j["theorem1_audit"] = to_json(bott::theorem1_audit(a.n, a.d, a.m));
  emit(j, opt, out);
  return kOk;
}

struct GenArgs {
  int k = 0;
  std::string f;
  int n2 = 0;
  std::string fields = "1";
};

inline int do_gen_disti(const GenArgs& a, const Options& opt, std::ostream& out) {
  const AntisymExample ex = antisym_example(a.k);
  const FlagBundle b{fields_distribution({ex.field}, 3), descend_form(ex.omega, 3), {}};
  emit(to_json(b), opt, out);
  return kOk;
}

inline int do_gen_hamilton(const GenArgs& a, bool have_k, const Options& opt, std::ostream& out) {
  if (a.n2 < 4 || a.n2 % 2 != 0) throw BundleError("--n2 must be even and at least 4");
  const Poly f = parse_poly(a.f, static_cast<std::size_t>(a.n2) + 1);
  const int k = have_k ? a.k : f.total_degree();
  const Poly big_f = homogenize(f, k);
  const auto candidates = hamiltonian_fields(big_f, a.n2);
  const auto valid = validated_fields(candidates);
  const HamiltonianFlag flag = hamiltonian_flag(f, k, a.n2, parse_indices(a.fields));

  FlagBundle b{flag.lower, flag.upper, {}};
  b.chain = std::vector<ChainMember>{{flag.lower.dimension(), flag.lower.total_degree()},
                                     {flag.upper.dimension(), flag.upper.degree()}};
  Json j = to_json(b);
  j["F"] = to_string(big_f);
  Json cands = Json::array();
  for (const auto& c : candidates) cands.push_back(to_json(c));
  j["candidates"] = cands;
  Json brackets = Json::array();
  for (const auto& e : bracket_table(valid)) brackets.push_back(to_json(e));
  j["brackets"] = brackets;
  j["unverified_assumptions"] = Json::array({"f has a single critical point, at the origin",
                                             "{f_k = 0} is smooth"});
  emit(j, opt, out);
  return kOk;
}

struct SingArgs {
  std::string input;
  std::string primes = "5,7,11";
};

inline int do_sing(const SingArgs& a, const Options& opt, std::ostream& out, std::istream& in) {
  const Json j = parse_json(read_input(a.input, in));
  std::vector<Poly> ideal;
  int n = 0;
  if (j.contains("upper")) {
    const ProjDistribution d = distribution_from_json(j.at("upper"));
    ideal = singular_ideal(d);
    n = d.n();
  } else if (j.contains("omega")) {
    const ProjDistribution d = distribution_from_json(j);
    ideal = singular_ideal(d);
    n = d.n();
  } else if (j.contains("fields")) {
    const FieldsDistribution d = fields_from_json(j);
    ideal = singular_ideal(d);
    n = d.n();
  } else {
    throw BundleError("sing needs a distribution, a fields distribution or a flag bundle");
  }
  const IsolatednessReport rep = isolatedness_evidence(ideal, n, parse_primes(a.primes));
  emit(to_json(rep), opt, out);
  return rep.verdict == IsolatednessVerdict::isolated ? kOk : kFailed;
}

inline int do_audit(const std::string& input, const Options& opt, std::ostream& out, std::istream& in) {
  const FlagBundle b = bundle_from_json(parse_json(read_input(input, in)));
  const FlagReport rep = verify_flag(b.lower, b.upper);
  Json j = to_json(rep);
  bool ok = rep.passed();
  if (b.chain) {
    const ChainVerdict v = audit_chain(*b.chain);
    j["chain"] = chain_json(*b.chain);
    j["chain_verdict"] = to_json(v);
    ok = ok && v.holds;
  }
  emit(j, opt, out);
  return ok ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in = std::cin) {
  CLI::App app{"flagforge: exact checks for flags of distributions on projective space"};
  app.name("flagforge");
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", opt.out_path, "Write the report to this file instead of stdout");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Validate a form or a list of vector fields");
  check->add_option("--form", check_args.form, "Form in z0..zN, e.g. \"z1 dz0 - z0 dz1\"");
  check->add_option("--fields", check_args.fields, "Vector field, e.g. \"z1 d/dz0\" (repeatable)");
  check->add_option("--input", check_args.input, "Distribution JSON");
  check->add_option("--n", check_args.n, "Projective dimension (default: inferred)")->check(CLI::PositiveNumber);

  BottArgs bott_args;
  auto* bott = app.add_subcommand("bott", "Bott dimensions and the Koszul vanishing report");
  bott->add_option("--n", bott_args.n, "Projective dimension")->required();
  auto* opt_d = bott->add_option("--d", bott_args.d, "deg F");
  auto* opt_m = bott->add_option("--m", bott_args.m, "deg G");
  auto* opt_kind = bott->add_option("--kind", bott_args.kind, "forms or polyvectors");
  bott->add_option("--rank", bott_args.rank, "p or r");
  bott->add_option("--twist", bott_args.twist, "k or t");
  bott->add_option("--cohom", bott_args.cohom, "q or s");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate the example families as flag bundles");
  gen->require_subcommand(1);
  auto* disti = gen->add_subcommand("disti", "Antisymmetric-matrix distribution on P^3 with its tangent field");
  disti->add_option("--k", gen_args.k, "k >= 1")->required();
  auto* hamilton = gen->add_subcommand("hamilton", "Hamiltonian flag on P^{2n}");
  hamilton->add_option("--f", gen_args.f, "Affine polynomial in z1..z{2n}")->required();
  hamilton->add_option("--n2", gen_args.n2, "2n")->required();
  auto* opt_k = hamilton->add_option("--k", gen_args.k, "Degree of f (default: its total degree)");
  hamilton->add_option("--fields", gen_args.fields, "Indices of the H_i spanning the lower member")
      ->capture_default_str();

  SingArgs sing_args;
  auto* sing = app.add_subcommand("sing", "Finite-field evidence on the singular set");
  sing->add_option("--input", sing_args.input, "Distribution or bundle JSON (default: stdin)");
  sing->add_option("--primes", sing_args.primes, "Comma-separated primes")->capture_default_str();

  std::string audit_input;
  auto* audit = app.add_subcommand("audit", "Verify a flag bundle");
  audit->add_option("--input", audit_input, "Bundle JSON (default: stdin)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kBadInput;
  }

  try {
    if (check->parsed()) return do_check(check_args, opt, out, in);
    if (bott->parsed()) {
      return do_bott(bott_args, opt_d->count() > 0, opt_m->count() > 0, opt_kind->count() > 0, opt, out);
    }
    if (disti->parsed()) return do_gen_disti(gen_args, opt, out);
    if (hamilton->parsed()) return do_gen_hamilton(gen_args, opt_k->count() > 0, opt, out);
    if (sing->parsed()) return do_sing(sing_args, opt, out, in);
    if (audit->parsed()) return do_audit(audit_input, opt, out, in);
  } catch (const std::invalid_argument& e) {  // parse errors, bad bundles, bad ranges
    err << "flagforge: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::out_of_range& e) {
    err << "flagforge: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::domain_error& e) {
    err << "flagforge: " << e.what() << '\n';
    return kBadInput;
  }
  err << app.help();
  return kBadInput;
}

}  // namespace flagforge::cli
