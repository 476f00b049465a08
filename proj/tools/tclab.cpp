// tclab: command line front end. Every command builds a tclab-report/1 JSON
// document; table output is rendered from it.

#include "tclab/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>

using namespace tclab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitRefused = 2;
constexpr int kExitUsage = 64;

struct Options {
  std::string format = "table";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string field, poly, config;
  std::uint64_t p = 0;
  std::string S, T, V, X, modulus;
  std::size_t count = 3;
  std::string norm_bound = "10000";
  std::string example;
};

struct Refusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

NumberField load_field(const Options& o) {
  if (!o.field.empty() && !o.poly.empty()) throw ConfigError("give either --field or --poly, not both");
  if (!o.field.empty()) return build_field(load_field_spec(o.field));
  if (!o.poly.empty()) return build_field(field_spec_from_coefficients(o.poly));
  throw ConfigError("a field is required (--field FILE or --poly COEFFS)");
}

FieldContext context(const Options& o, NumberField K, std::vector<std::uint64_t> sat = {}) {
  ClassGroupOptions copts;
  copts.shuffle_seed = o.seed;
  return make_context(std::move(K), sat, {}, copts);
}

std::uint64_t require_p(const Options& o) {
  if (o.p == 0) throw ConfigError("--p is required");
  if (!is_prime(o.p)) throw ConfigError("--p " + std::to_string(o.p) + " is not prime");
  return o.p;
}

std::vector<PrimeIdeal> primes(const NumberField& K, const std::string& list, std::uint64_t p) {
  auto specs = parse_prime_list(list);
  for (const auto& s : specs)
    if (p && s.q == static_cast<unsigned long>(p)) throw Refusal("prime " + to_string(s.q) + " lies above p: sets must be tame");
  return resolve_primes(K, specs);
}

std::string labels(const std::vector<PrimeIdeal>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].label();
  return s + "}";
}

std::string yes(bool b) { return b ? "yes" : "no"; }

void field_inputs(json& r, const FieldContext& ctx) { r["inputs"]["field"] = field_json(ctx.K); }

void cmd_field(const Options& o, json& r) {
  auto ctx = context(o, load_field(o));
  field_inputs(r, ctx);
  r["results"]["units"] = units_json(ctx.K, ctx.units);
  r["results"]["class_group"] = class_group_json(ctx.K, ctx.cl);
  r["provenance"]["units"] = "unit_group: short vector search, saturation, residue-character independence";
  r["provenance"]["class_group"] = "class_group: relation lattice over primes up to the Minkowski bound";
  const auto& f = r["inputs"]["field"];
  json t = make_table("Field " + ctx.K.label(), {"value"});
  add_row(t, "polynomial", {f["polynomial"]});
  add_row(t, "degree", {std::to_string(ctx.K.degree())});
  add_row(t, "signature", {"(" + std::to_string(ctx.K.r1()) + ", " + std::to_string(ctx.K.r2()) + ")"});
  add_row(t, "discriminant", {f["discriminant"]});
  add_row(t, "index [O_K : Z[x]]", {f["index"]});
  add_row(t, "roots of unity", {std::to_string(ctx.units.w)});
  add_row(t, "unit rank", {std::to_string(ctx.units.units.size())});
  add_row(t, "class group", {ctx.cl.group.to_string()});
  r["tables"].push_back(t);
}

void cmd_classgroup(const Options& o, json& r) {
  auto ctx = context(o, load_field(o));
  field_inputs(r, ctx);
  auto cj = class_group_json(ctx.K, ctx.cl);
  r["results"]["class_group"] = cj;
  r["provenance"]["class_group"] = "class_group: relation lattice over primes up to the Minkowski bound";
  json t = make_table("Class group of " + ctx.K.label(), {"order", "generator"});
  add_row(t, "Cl", {cj["order"], cj["group"]});
  for (const auto& g : cj["generators"]) {
    std::string ideal;
    for (const auto& e : g["ideal"]) ideal += (ideal.empty() ? "" : " * ") + e["prime"].get<std::string>() + "^" + e["exponent"].get<std::string>();
    add_row(t, "Z/" + g["order"].get<std::string>(), {g["order"], ideal});
  }
  add_row(t, "certified", {yes(ctx.cl.certified), ctx.cl.certificate});
  r["tables"].push_back(t);
}

void cmd_units(const Options& o, json& r) {
  auto K = load_field(o);
  std::vector<std::uint64_t> sat;
  if (o.p) sat.push_back(require_p(o));
  auto ctx = context(o, std::move(K), sat);
  field_inputs(r, ctx);
  r["results"]["units"] = units_json(ctx.K, ctx.units);
  if (o.p) r["results"]["units"]["dim_mod_p"] = u_mod_p_dim(ctx.K, ctx.units, o.p);
  r["provenance"]["units"] = "unit_group: short vector search, saturation, residue-character independence";
  json t = make_table("Units of " + ctx.K.label(), {"value"});
  add_row(t, "torsion", {ctx.K.element_to_string(ctx.units.zeta) + " (order " + std::to_string(ctx.units.w) + ")"});
  for (std::size_t i = 0; i < ctx.units.units.size(); ++i)
    add_row(t, "u" + std::to_string(i + 1), {ctx.K.element_to_string(ctx.units.units[i])});
  if (o.p) add_row(t, "dim U/U^" + std::to_string(o.p), {std::to_string(u_mod_p_dim(ctx.K, ctx.units, o.p))});
  r["tables"].push_back(t);
}

void cmd_rayclass(const Options& o, json& r) {
  const auto p = require_p(o);
  auto ctx = context(o, load_field(o), {p});
  field_inputs(r, ctx);
  auto m = primes(ctx.K, o.modulus, p);
  r["inputs"]["p"] = p;
  r["inputs"]["modulus"] = primes_json(ctx.K, m, p);
  auto G = ray_class_p_part(ctx, m, p);
  r["results"]["ray_class"] = ray_class_json(ctx.K, G);
  r["provenance"]["ray_class"] = "ray_class_p_part: class group relations extended by residue generators and unit images";
  json t = make_table(std::to_string(p) + "-part of the ray class group", {"group", "p-rank"});
  add_row(t, labels(m), {G.group.to_string(), std::to_string(G.group.p_rank(Int(static_cast<unsigned long>(p))))});
  r["tables"].push_back(t);
}

void cmd_selmer(const Options& o, json& r) {
  const auto p = require_p(o);
  auto ctx = context(o, load_field(o), {p});
  field_inputs(r, ctx);
  auto S = primes(ctx.K, o.S, p);
  r["inputs"]["p"] = p;
  r["inputs"]["S"] = primes_json(ctx.K, S, p);
  auto B = selmer_basis(ctx, S, p);
  r["results"]["selmer"] = selmer_json(ctx.K, B);
  r["provenance"]["selmer"] = "selmer_basis: V_empty from units and class group, cut down by local conditions at S";
  json t = make_table("V_S / K^p for S = " + labels(S), {"value"});
  add_row(t, "dim V_empty", {std::to_string(B.dim_empty())});
  add_row(t, "dim V_S", {std::to_string(B.dim())});
  for (std::size_t i = 0; i < B.dim(); ++i) add_row(t, "generator " + std::to_string(i + 1), {ctx.K.element_to_string(B.generator_values[i])});
  r["tables"].push_back(t);
}

void cmd_rusb(const Options& o, json& r) {
  const auto p = require_p(o);
  auto ctx = context(o, load_field(o), {p});
  field_inputs(r, ctx);
  auto S = primes(ctx.K, o.S, p);
  r["inputs"]["p"] = p;
  r["inputs"]["S"] = primes_json(ctx.K, S, p);
  auto c = crosscheck_rusb(ctx, S, p);
  r["results"]["rusb"] = c.selmer.dim();
  r["results"]["selmer"] = selmer_json(ctx.K, c.selmer);
  r["results"]["h1"] = h1_json(c.h1);
  r["provenance"]["rusb"] = "dim V_S (Selmer route), equal to the H1 formula route";
  json t = make_table("RusB_S(K, F_" + std::to_string(p) + ") for S = " + labels(S), {"dim"});
  add_row(t, "Selmer route", {std::to_string(c.selmer.dim())});
  add_row(t, "H1 route", {std::to_string(c.h1.rusb)});
  r["tables"].push_back(t);
}

void cmd_exceptional(const Options& o, json& r) {
  auto ctx = context(o, load_field(o), {2});
  field_inputs(r, ctx);
  auto S = primes(ctx.K, o.S, 2);
  r["inputs"]["p"] = 2;
  r["inputs"]["S"] = primes_json(ctx.K, S, 2);
  auto e = is_exceptional(ctx, S);
  r["results"]["exceptionality"] = exceptional_json(e);
  r["provenance"]["exceptionality"] = "is_exceptional: conditions (a), (b), (c) decided exactly";
  json t = make_table("Exceptionality of (K, " + labels(S) + ") at 2", {"holds", "witness"});
  add_row(t, "(a) zeta_4 not in K", {yes(e.condition_a), e.witness_a});
  add_row(t, "(b) units meet -4K^4", {yes(e.condition_b), e.witness_b});
  add_row(t, "(c) local zeta_4 at S", {yes(e.condition_c), ""});
  add_row(t, "exceptional", {yes(e.exceptional), ""});
  r["tables"].push_back(t);
}

struct LayerSetup {
  RunConfig cfg;
  GaloisLayer layer;
  GammaModule A;
};

LayerSetup load_layer(const Options& o) {
  if (o.config.empty()) throw ConfigError("--config is required for a layer");
  RunConfig cfg = load_run_config(o.config);
  NumberField K = build_field(cfg.base_field);
  NumberField L = build_field(cfg.field);
  std::vector<NFElement> gens;
  for (const auto& a : cfg.automorphisms) gens.push_back(L.from_power_basis(a));
  NFElement emb = L.from_power_basis(cfg.embedding);
  GaloisLayer layer = make_layer(std::move(K), std::move(L), emb, gens);
  std::vector<FpMatrix> acts;
  for (const auto& m : cfg.module_action) acts.push_back(FpMatrix::from_rows(m, cfg.p));
  GammaModule A = make_module(cfg.p, acts, cfg.module_labels);
  check_relations(layer, A);
  return {std::move(cfg), std::move(layer), std::move(A)};
}

void cmd_sandwich(const Options& o, json& r) {
  if (!o.config.empty()) {
    auto ls = load_layer(o);
    const auto p = ls.cfg.p;
    auto ctx = context(o, ls.layer.L, {p});
    field_inputs(r, ctx);
    auto T = ls.layer.orbit_closure(primes(ctx.K, o.T, p));
    auto V = ls.layer.orbit_closure(primes(ctx.K, o.V, p));
    r["inputs"]["p"] = p;
    r["inputs"]["module"] = module_json(ls.A);
    r["inputs"]["T"] = primes_json(ctx.K, T, p);
    r["inputs"]["V"] = primes_json(ctx.K, V, p);
    auto s = sha_sandwich_twisted(ls.layer, ctx, p, T, V, ls.A);
    r["results"]["sandwich"] = sandwich_json(s);
    r["provenance"]["sandwich"] = "sha_sandwich_twisted, route " + s.route;
    json t = make_table("Twisted sandwich at T = " + labels(T), {"lower", "upper", "certified", "route"});
    add_row(t, "(Sha2 (x) A)^G", {std::to_string(s.lower), std::to_string(s.upper), yes(s.certified), s.route});
    r["tables"].push_back(t);
    return;
  }
  const auto p = require_p(o);
  auto ctx = context(o, load_field(o), {p});
  field_inputs(r, ctx);
  auto T = primes(ctx.K, o.T, p);
  auto V = primes(ctx.K, o.V, p);
  r["inputs"]["p"] = p;
  r["inputs"]["T"] = primes_json(ctx.K, T, p);
  r["inputs"]["V"] = primes_json(ctx.K, V, p);
  auto s = sha_sandwich(ctx, p, T, V);
  r["results"]["sandwich"] = sandwich_json(s);
  r["provenance"]["sandwich"] = "sha_sandwich, route " + s.route;
  json t = make_table("Sandwich at T = " + labels(T) + ", V = " + labels(V), {"lower", "upper", "certified", "route"});
  add_row(t, "dim Sha2_p", {std::to_string(s.lower), std::to_string(s.upper), yes(s.certified), s.route});
  r["tables"].push_back(t);
}

void cmd_orbit_check(const Options& o, json& r) {
  auto ls = load_layer(o);
  const auto p = ls.cfg.p;
  auto ctx = context(o, ls.layer.L, {p});
  field_inputs(r, ctx);
  auto S = ls.layer.orbit_closure(primes(ctx.K, o.S, p));
  auto X = primes(ctx.K, o.X, p);
  r["inputs"]["p"] = p;
  r["inputs"]["S_tilde"] = primes_json(ctx.K, S, p);
  r["inputs"]["X_prime"] = primes_json(ctx.K, X, p);
  auto c = orbit_closure_check(ls.layer, ctx, S, X, p);
  r["results"]["orbit_check"] = {{"X_tilde", primes_json(ctx.K, c.X_tilde)},
                                 {"dim_prime", c.dim_prime},
                                 {"dim_tilde", c.dim_tilde},
                                 {"equal", c.equal}};
  r["provenance"]["orbit_check"] = "selmer_basis on both sets";
  json t = make_table("Orbit closure over S~ = " + labels(S), {"set", "dim RusB"});
  add_row(t, "S~ + X'", {labels(c.X_prime), std::to_string(c.dim_prime)});
  add_row(t, "S~ + X~", {labels(c.X_tilde), std::to_string(c.dim_tilde)});
  add_row(t, "equal", {"", yes(c.equal)});
  r["tables"].push_back(t);
}

void cmd_search_x(const Options& o, json& r) {
  const auto p = require_p(o);
  auto ctx = context(o, load_field(o), {p});
  field_inputs(r, ctx);
  auto S = primes(ctx.K, o.S, p);
  Int bound;
  try {
    bound = Int(o.norm_bound);
  } catch (const std::exception&) {
    throw ConfigError("--norm-bound: '" + o.norm_bound + "' is not an integer");
  }
  r["inputs"]["p"] = p;
  r["inputs"]["S"] = primes_json(ctx.K, S, p);
  r["inputs"]["count"] = o.count;
  r["inputs"]["norm_bound"] = o.norm_bound;
  auto X = find_preserving_primes(ctx, S, p, o.count, bound);
  r["results"]["preserving_primes"] = preserving_json(ctx.K, X);
  r["provenance"]["preserving_primes"] = "find_preserving_primes: increasing norm, local classes of the V_S basis";
  json t = make_table("Primes preserving V_S, S = " + labels(S), {"norm", "q"});
  for (const auto& P : X.X) add_row(t, P.label(), {to_string(P.norm), to_string(P.q)});
  add_row(t, "dim V_S before/after", {std::to_string(X.dim_before) + "/" + std::to_string(X.dim_after), ""});
  if (X.shortfall) add_row(t, "shortfall", {std::to_string(X.shortfall), ""});
  r["tables"].push_back(t);
}

int cmd_reproduce(const Options& o, json& r) {
  RunConfig cfg;
  if (!o.config.empty())
    cfg = load_run_config(o.config);
  else if (!o.example.empty())
    cfg = parse_run_config(builtin_config(o.example), "builtin:" + o.example);
  else
    throw ConfigError("reproduce needs a name (example1, example2) or --config FILE");
  if (o.seed_given) cfg.seed = o.seed;
  run_pipeline(cfg, r);
  auto diff = golden_diff(cfg, r);
  r["golden_diff"] = diff;
  return diff.empty() ? kExitOk : kExitInternal;
}

std::string render(const json& r) {
  std::string out = emit_table(r);
  if (r.contains("golden_diff")) {
    out += "\n";
    if (r["golden_diff"].empty())
      out += "golden diff: empty\n";
    else
      for (const auto& l : r["golden_diff"]) out += "golden diff: " + l.get<std::string>() + "\n";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tclab: class groups, ray class groups, Selmer groups and Sha bounds over number fields"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "json"}));
  auto* seed = app.add_option("--seed", o.seed, "Seed for factor-base shuffles (0: none)")->envname("TCLAB_SEED");

  auto field_opts = [&](CLI::App* c) {
    c->add_option("--field", o.field, "Field description file (YAML)");
    c->add_option("--poly", o.poly, "Monic polynomial, constant term first: -1,-1,1");
  };
  auto p_opt = [&](CLI::App* c) { c->add_option("--p", o.p, "The prime p"); };

  auto* c_field = app.add_subcommand("field", "Field invariants, units and class group");
  field_opts(c_field);
  auto* c_cl = app.add_subcommand("classgroup", "Class group with generators");
  field_opts(c_cl);
  auto* c_units = app.add_subcommand("units", "Fundamental units (saturated at --p if given)");
  field_opts(c_units);
  p_opt(c_units);
  auto* c_ray = app.add_subcommand("rayclass", "p-part of a ray class group");
  field_opts(c_ray);
  p_opt(c_ray);
  c_ray->add_option("--modulus", o.modulus, "Conductor primes: 5,107:all,197:2")->expected(0, 1);
  auto* c_sel = app.add_subcommand("selmer", "Basis of V_S / K^p");
  auto* c_rusb = app.add_subcommand("rusb", "dim RusB_S by two routes");
  auto* c_exc = app.add_subcommand("exceptional", "Exceptionality of (K, S) at p = 2");
  for (auto* c : {c_sel, c_rusb, c_exc}) {
    field_opts(c);
    c->add_option("--S", o.S, "Primes of S: 7,181")->expected(0, 1);
  }
  p_opt(c_sel);
  p_opt(c_rusb);
  auto* c_sand = app.add_subcommand("sandwich", "Bounds for dim Sha2 between T and V (twisted with --config)");
  field_opts(c_sand);
  p_opt(c_sand);
  c_sand->add_option("--T", o.T, "Primes of T")->expected(0, 1);
  c_sand->add_option("--V", o.V, "Primes of V (containing T)")->expected(0, 1);
  c_sand->add_option("--config", o.config, "Run configuration supplying the layer and A");
  auto* c_orb = app.add_subcommand("orbit-check", "Compare RusB over S~ + X' and S~ + X~");
  c_orb->add_option("--config", o.config, "Run configuration supplying the layer")->required();
  c_orb->add_option("--S", o.S, "Primes of L generating S~")->expected(0, 1);
  c_orb->add_option("--X", o.X, "Primes of X'")->expected(0, 1);
  auto* c_search = app.add_subcommand("search-x", "Scan for primes preserving V_S");
  field_opts(c_search);
  p_opt(c_search);
  c_search->add_option("--S", o.S, "Primes of S")->expected(0, 1);
  c_search->add_option("--count", o.count, "Number of primes wanted");
  c_search->add_option("--norm-bound", o.norm_bound, "Largest norm scanned");
  auto* c_rep = app.add_subcommand("reproduce", "Run a layer pipeline and diff against its expected rows");
  c_rep->add_option("name", o.example, "Built-in configuration: example1 or example2");
  c_rep->add_option("--config", o.config, "Run configuration file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  o.seed_given = seed->count() > 0;

  CLI::App* sub = app.get_subcommands().front();
  std::vector<std::string> args(argv + 1, argv + argc);
  json report = make_report(sub->get_name(), args);
  report["inputs"]["seed"] = o.seed;
  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    const std::string name = sub->get_name();
    if (name == "field") cmd_field(o, report);
    else if (name == "classgroup") cmd_classgroup(o, report);
    else if (name == "units") cmd_units(o, report);
    else if (name == "rayclass") cmd_rayclass(o, report);
    else if (name == "selmer") cmd_selmer(o, report);
    else if (name == "rusb") cmd_rusb(o, report);
    else if (name == "exceptional") cmd_exceptional(o, report);
    else if (name == "sandwich") cmd_sandwich(o, report);
    else if (name == "orbit-check") cmd_orbit_check(o, report);
    else if (name == "search-x") cmd_search_x(o, report);
    else if (name == "reproduce") code = cmd_reproduce(o, report);
  } catch (const ConfigError& e) {
    std::cerr << "tclab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Refusal& e) {
    report["error"] = {{"kind", "refused"}, {"reason", e.what()}};
    code = kExitRefused;
  } catch (const std::invalid_argument& e) {
    report["error"] = {{"kind", "refused"}, {"reason", e.what()}};
    code = kExitRefused;
  } catch (const std::domain_error& e) {
    report["error"] = {{"kind", "refused"}, {"reason", e.what()}};
    code = kExitRefused;
  } catch (const std::exception& e) {
    report["error"] = {{"kind", "internal"}, {"reason", e.what()}};
    code = kExitInternal;
  }
  report["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (report.contains("error")) std::cerr << "tclab: " << report["error"]["kind"].get<std::string>() << ": "
                                          << report["error"]["reason"].get<std::string>() << "\n";
  if (o.format == "json")
    std::cout << report.dump(2) << "\n";
  else if (!report.contains("error"))
    std::cout << render(report);
  return code;
}
