#include "tclab/report.hpp"

#include "builtin_configs.hpp"

#include <algorithm>
#include <sstream>

namespace tclab {

namespace {

std::string str(std::size_t v) { return std::to_string(v); }

json coords_json(const NFElement& x) {
  json a = json::array();
  for (const auto& c : x.num) a.push_back(to_string(c));
  return {{"num", a}, {"den", to_string(x.den)}};
}

std::string sha_cell(const ShaSandwich& s) {
  if (s.certified) return str(s.value());
  return str(s.lower) + ".." + str(s.upper) + "?";
}

std::vector<PrimeIdeal> set_union(std::vector<PrimeIdeal> a, const std::vector<PrimeIdeal>& b) {
  for (const auto& P : b)
    if (std::find(a.begin(), a.end(), P) == a.end()) a.push_back(P);
  return a;
}

}  // namespace

json prime_json(const NumberField& K, const PrimeIdeal& P, std::uint64_t p) {
  json j = {{"label", P.label()},
          {"q", to_string(P.q)},
          {"e", P.e},
          {"f", P.f},
          {"norm", to_string(P.norm)},
          {"two_element", "(" + to_string(P.q) + ", " + K.element_to_string(P.pi) + ")"},
          {"local_factor", poly_to_string(P.local_factor.lift())}};
  if (p) j["norm_is_1_mod_p"] = (P.norm - 1) % static_cast<unsigned long>(p) == 0;
  return j;
}

json primes_json(const NumberField& K, const std::vector<PrimeIdeal>& v, std::uint64_t p) {
  json a = json::array();
  for (const auto& P : v) a.push_back(prime_json(K, P, p));
  return a;
}

json field_json(const NumberField& K) {
  json basis = json::array();
  for (std::size_t i = 0; i < K.basis().rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < K.basis().cols(); ++j) row.push_back(to_string(K.basis()(i, j)));
    basis.push_back(row);
  }
  return {{"label", K.label()},
          {"polynomial", poly_to_string(K.poly())},
          {"degree", K.degree()},
          {"signature", {K.r1(), K.r2()}},
          {"discriminant", to_string(K.disc())},
          {"index", to_string(K.index())},
          {"integral_basis", basis}};
}

json units_json(const NumberField& K, const UnitBasis& U) {
  json us = json::array();
  for (const auto& u : U.units) us.push_back({{"element", K.element_to_string(u)}, {"coords", coords_json(u)}});
  return {{"w", U.w},
          {"zeta", K.element_to_string(U.zeta)},
          {"rank", U.units.size()},
          {"units", us},
          {"saturated_at", U.saturated_at},
          {"independence_ell", U.witness_ell},
          {"independence_primes", U.witness_primes}};
}

json class_group_json(const NumberField& K, const ClassGroupData& cl) {
  json gens = json::array();
  for (auto j : cl.nontrivial_positions()) {
    json e = json::array();
    auto ex = cl.generator_exponents(j);
    for (std::size_t i = 0; i < ex.size(); ++i)
      if (ex[i] != 0) e.push_back({{"prime", cl.factor_base[i].label()}, {"exponent", to_string(ex[i])}});
    gens.push_back({{"order", to_string(cl.snf.diagonal[j])}, {"ideal", e}});
  }
  return {{"group", cl.group.to_string()},
          {"order", to_string(cl.group.order())},
          {"factor_base", primes_json(K, cl.factor_base)},
          {"relations", cl.relations.rows()},
          {"generators", gens},
          {"certified", cl.certified},
          {"certificate", cl.certificate}};
}

json ray_class_json(const NumberField& K, const RayClassPPart& G) {
  return {{"p", G.p},
          {"modulus", primes_json(K, G.modulus, G.p)},
          {"group", G.group.to_string()},
          {"p_rank", G.group.p_rank(Int(static_cast<unsigned long>(G.p)))},
          {"generators", G.num_gens()},
          {"relations", G.relations.rows()}};
}

json selmer_json(const NumberField& K, const SelmerBasis& B) {
  json gens = json::array();
  for (std::size_t i = 0; i < B.dim(); ++i)
    gens.push_back({{"element", K.element_to_string(B.generator_values[i])}, {"coords", coords_json(B.generator_values[i])}});
  json local = json::array();
  for (std::size_t i = 0; i < B.local_matrix.rows(); ++i) local.push_back(B.local_matrix.row(i));
  json aux = json::array();
  for (const auto& P : B.aux_primes) aux.push_back(P.label());
  return {{"p", B.p},
          {"S", primes_json(K, B.S, B.p)},
          {"dim_V_empty", B.dim_empty()},
          {"V_empty_basis", B.v_empty_labels},
          {"condition_primes", primes_json(K, B.condition_primes)},
          {"local_matrix", local},
          {"dim", B.dim()},
          {"generators", gens},
          {"independence_primes", aux},
          {"certified", B.certified},
          {"note", B.note}};
}

json h1_json(const H1FormulaContext& h) {
  json Z = json::array();
  for (const auto& P : h.Z) Z.push_back(P.label());
  return {{"Z", Z},
          {"p", h.p},
          {"ray_class", h.ray_class.to_string()},
          {"dim_H1", h.dim_h1},
          {"delta_p", h.delta_p},
          {"r", h.r},
          {"local_delta", h.local_delta},
          {"local_degree", h.local_degree},
          {"rusb", h.rusb}};
}

json exceptional_json(const ExceptionalityReport& r) {
  json c = json::array();
  for (const auto& [l, b] : r.condition_c_primes) c.push_back({{"prime", l}, {"zeta4_in_completion", b}});
  return {{"condition_a", r.condition_a},
          {"witness_a", r.witness_a},
          {"condition_b", r.condition_b},
          {"witness_b", r.witness_b},
          {"method_b", r.method_b},
          {"condition_c", r.condition_c},
          {"condition_c_primes", c},
          {"exceptional", r.exceptional}};
}

json sandwich_json(const ShaSandwich& s) {
  json j = {{"twisted", s.twisted}, {"lower", s.lower},     {"upper", s.upper}, {"rusb", s.rusb},
            {"certified", s.certified}, {"route", s.route}, {"notes", s.notes}};
  if (s.lower_bound) {
    const auto& lb = *s.lower_bound;
    j["lower_bound"] = {{"value", lb.value},
                        {"precondition", lb.precondition},
                        {"rank_T", lb.rank_T},
                        {"rank_V", lb.rank_V},
                        {"rcg_T", lb.rcg_T.to_string()},
                        {"rcg_V", lb.rcg_V.to_string()},
                        {"kernel", lb.kernel.to_string()}};
  }
  return j;
}

json preserving_json(const NumberField& K, const PreservingSet& X) {
  return {{"X", primes_json(K, X.X)},
          {"witness", X.witness},
          {"requested", X.requested},
          {"shortfall", X.shortfall},
          {"scanned", X.scanned},
          {"dim_before", X.dim_before},
          {"dim_after", X.dim_after},
          {"verified", X.verified}};
}

json module_json(const GammaModule& m) {
  json acts = json::array();
  for (const auto& a : m.action) {
    json rows = json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
    acts.push_back(rows);
  }
  return {{"dim", m.dim}, {"p", m.p}, {"action", acts}, {"labels", m.labels}, {"invariants", invariants_dim(m)}};
}

json make_table(const std::string& title, const std::vector<std::string>& columns) {
  return {{"title", title}, {"columns", columns}, {"rows", json::array()}};
}

void add_row(json& table, const std::string& name, const std::vector<std::string>& cells) {
  table["rows"].push_back({{"name", name}, {"cells", cells}});
}

json make_report(const std::string& command, const std::vector<std::string>& argv) {
  json r;
  r["schema"] = kReportSchema;
  r["command"] = command;
  r["argv"] = argv;
  r["inputs"] = json::object();
  r["results"] = json::object();
  r["provenance"] = json::object();
  r["tables"] = json::array();
  return r;
}

std::string emit_table(const json& report) {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : report.value("tables", json::array())) {
    if (!first) os << "\n";
    first = false;
    std::vector<std::string> header{""};
    for (const auto& c : t["columns"]) header.push_back(c.get<std::string>());
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : t["rows"]) {
      std::vector<std::string> row{r["name"].get<std::string>()};
      for (const auto& c : r["cells"]) row.push_back(c.get<std::string>());
      row.resize(header.size());
      rows.push_back(row);
    }
    std::vector<std::size_t> w(header.size(), 0);
    for (std::size_t i = 0; i < header.size(); ++i) {
      w[i] = header[i].size();
      for (const auto& r : rows) w[i] = std::max(w[i], r[i].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
      std::string s;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) s += " | ";
        s += cells[i] + std::string(w[i] - cells[i].size(), ' ');
      }
      while (!s.empty() && s.back() == ' ') s.pop_back();
      return s;
    };
    os << t["title"].get<std::string>() << "\n";
    os << line(header) << "\n";
    std::string rule;
    for (std::size_t i = 0; i < w.size(); ++i) rule += (i ? "-+-" : "") + std::string(w[i], '-');
    os << rule << "\n";
    for (const auto& r : rows) os << line(r) << "\n";
  }
  return os.str();
}

void run_pipeline(const RunConfig& cfg, json& report) {
  const std::uint64_t p = cfg.p;
  NumberField K = build_field(cfg.base_field);
  NumberField L = build_field(cfg.field);
  std::vector<NFElement> gens;
  for (const auto& a : cfg.automorphisms) gens.push_back(L.from_power_basis(a));
  GaloisLayer layer = make_layer(K, L, L.from_power_basis(cfg.embedding), gens);
  std::vector<FpMatrix> acts;
  for (const auto& m : cfg.module_action) {
    std::vector<std::vector<long long>> rows(m.begin(), m.end());
    acts.push_back(FpMatrix::from_rows(rows, p));
  }
  GammaModule A = make_module(p, acts, cfg.module_labels);
  check_relations(layer, A);

  ClassGroupOptions copts;
  copts.shuffle_seed = cfg.seed;
  FieldContext ctxK = make_context(layer.K, {p}, {}, copts);
  FieldContext ctxL = make_context(layer.L, {p}, {}, copts);

  // prime sets
  std::vector<std::string> names, tilde_names;
  std::vector<std::vector<PrimeIdeal>> base_sets, L_sets, tilde_sets;
  for (const auto& s : cfg.sets) {
    names.push_back(s.name);
    tilde_names.push_back(s.name + "~");
    if (cfg.mode == "lift") {
      auto X = resolve_primes(ctxK.K, s.primes);
      base_sets.push_back(X);
      L_sets.push_back(layer.lift(X));
    } else {
      auto X = resolve_primes(ctxL.K, s.primes);
      L_sets.push_back(X);
    }
    tilde_sets.push_back(layer.orbit_closure(L_sets.back()));
  }

  json& in = report["inputs"];
  in["config"] = cfg.name;
  in["p"] = p;
  in["mode"] = cfg.mode;
  in["seed"] = cfg.seed;
  in["base_field"] = field_json(ctxK.K);
  in["field"] = field_json(ctxL.K);
  in["layer"] = {{"order", layer.order}, {"embedding", L.element_to_string(layer.embedding)}};
  for (const auto& g : layer.gamma_gens) in["layer"]["automorphisms"].push_back(L.element_to_string(g));
  in["module"] = module_json(A);
  json sets = json::array();
  for (std::size_t i = 0; i < names.size(); ++i) {
    json s = {{"name", names[i]}, {"L", primes_json(ctxL.K, L_sets[i], p)}, {"orbit", primes_json(ctxL.K, tilde_sets[i], p)}};
    if (cfg.mode == "lift") s["K"] = primes_json(ctxK.K, base_sets[i], p);
    sets.push_back(s);
  }
  in["sets"] = sets;

  json& res = report["results"];
  json& prov = report["provenance"];
  json rows = json::object();
  const std::vector<std::string>& L_cols = cfg.mode == "lift" ? tilde_names : names;

  // over K (lift mode)
  if (cfg.mode == "lift") {
    std::vector<std::string> rcgK, rusbK;
    json descent = json::array();
    for (std::size_t i = 0; i < base_sets.size(); ++i) {
      rcgK.push_back(ray_class_p_part(ctxK, base_sets[i], p).group.to_string());
      rusbK.push_back(str(crosscheck_rusb(ctxK, base_sets[i], p).selmer.dim()));
      auto d = descent_check(layer, ctxK, ctxL, base_sets[i], p);
      descent.push_back({{"set", names[i]},
                         {"refused", d.refused},
                         {"reason", d.reason},
                         {"rusb_K", d.rusb_K},
                         {"rusb_L", d.rusb_L},
                         {"rusb_L_invariants", d.rusb_L_invariants},
                         {"equal", d.equal}});
    }
    rows["rcg_K"] = rcgK;
    rows["rusb_K"] = rusbK;
    res["descent"] = descent;
    prov["rcg_K"] = "ray_class_p_part over K";
    prov["rusb_K"] = "selmer_basis over K, crosschecked with the H1 formula";
  }

  // untwisted over L
  std::vector<std::string> rcg, rusb, sha;
  json crosschecks = json::array(), sandwiches = json::array();
  for (std::size_t i = 0; i < L_sets.size(); ++i) {
    auto G = ray_class_p_part(ctxL, L_sets[i], p);
    rcg.push_back(G.group.to_string());
    auto c = crosscheck_rusb(ctxL, L_sets[i], p);
    rusb.push_back(str(c.selmer.dim()));
    crosschecks.push_back({{"set", L_cols[i]}, {"selmer", selmer_json(ctxL.K, c.selmer)}, {"h1", h1_json(c.h1)}});
    std::vector<PrimeIdeal> V = i + 1 < L_sets.size() ? L_sets[i + 1] : std::vector<PrimeIdeal>{};
    auto s = sha_sandwich(ctxL, p, L_sets[i], V);
    sha.push_back(sha_cell(s));
    json sj = sandwich_json(s);
    sj["set"] = L_cols[i];
    sandwiches.push_back(sj);
  }
  rows["rcg_L"] = rcg;
  rows["rusb_L"] = rusb;
  rows["sha_L"] = sha;
  res["crosschecks"] = crosschecks;
  res["sandwiches"] = sandwiches;
  prov["rcg_L"] = "ray_class_p_part over L";
  prov["rusb_L"] = "selmer_basis over L, crosschecked with the H1 formula";
  prov["sha_L"] = "sha_sandwich: route per entry in results.sandwiches";

  // twisted by A
  std::vector<std::string> rusbA, shaA;
  json twisted = json::array();
  for (std::size_t i = 0; i < tilde_sets.size(); ++i) {
    const bool last = i + 1 == tilde_sets.size();
    std::vector<PrimeIdeal> V = last ? std::vector<PrimeIdeal>{} : tilde_sets[i + 1];
    std::vector<PrimeIdeal> bT, bV;
    if (cfg.mode == "orbit") {
      bT = L_sets[i];
      if (!last) bV = set_union(L_sets[i + 1], L_sets[i]);
    }
    auto s = sha_sandwich_twisted(layer, ctxL, p, tilde_sets[i], V, A, bT, bV);
    rusbA.push_back(str(s.rusb));
    shaA.push_back(sha_cell(s));
    json sj = sandwich_json(s);
    sj["set"] = tilde_names[i];
    twisted.push_back(sj);
  }
  rows["rusb_A"] = rusbA;
  rows["sha_A"] = shaA;
  res["twisted_sandwiches"] = twisted;
  prov["rusb_A"] = "invariants of (dual Selmer module) (x) A";
  prov["sha_A"] = "sha_sandwich_twisted: route per entry in results.twisted_sandwiches";

  // module facts
  auto U = units_module(layer, ctxL, p);
  check_relations(layer, U);
  rows["units_mod_p"] = std::vector<std::string>{str(U.dim), str(invariants_dim(U))};
  rows["AA_invariants"] = std::vector<std::string>{str(invariants_dim(tensor(A, A)))};
  rows["A_invariants"] = std::vector<std::string>{str(invariants_dim(A))};
  res["units_module"] = module_json(U);
  prov["units_mod_p"] = "units_module: Galois images solved against auxiliary residue characters";

  if (p == 2) {
    json ex = json::array();
    for (std::size_t i = 0; i < L_sets.size(); ++i) {
      json e = exceptional_json(is_exceptional(ctxL, L_sets[i]));
      e["set"] = L_cols[i];
      ex.push_back(e);
    }
    res["exceptionality"] = ex;
  }
  auto X = find_preserving_primes(ctxL, L_sets.front(), p, cfg.preserving_count, cfg.preserving_norm_bound);
  res["preserving_primes"] = preserving_json(ctxL.K, X);
  res["rows"] = rows;
  res["columns"] = {{"K", names}, {"L", L_cols}, {"twisted", tilde_names}};

  // tables, rendered from the rows above
  json tables = json::array();
  const std::string pp = std::to_string(p);
  if (cfg.mode == "lift") {
    std::vector<std::string> cols = names;
    cols.insert(cols.end(), tilde_names.begin(), tilde_names.end());
    json t = make_table(pp + "-parts of ray class groups", cols);
    std::vector<std::string> k = rows["rcg_K"], l = rows["rcg_L"];
    std::vector<std::string> rk = k, rl(names.size(), "-");
    rk.resize(cols.size(), "-");
    rl.insert(rl.end(), l.begin(), l.end());
    add_row(t, "K", rk);
    add_row(t, "L", rl);
    tables.push_back(t);
  }
  json t1 = make_table("Over L, trivial coefficients F_" + pp, L_cols);
  add_row(t1, "RCG p-part", rows["rcg_L"]);
  add_row(t1, "dim RusB", rows["rusb_L"]);
  add_row(t1, "dim Sha2_p", rows["sha_L"]);
  tables.push_back(t1);
  json t2 = make_table("Gamma-invariants, coefficients A", tilde_names);
  add_row(t2, "dim (RusB (x) A)^G", rows["rusb_A"]);
  add_row(t2, "dim (Sha2_p (x) A)^G", rows["sha_A"]);
  tables.push_back(t2);
  json t3 = make_table("Module facts", {"value"});
  add_row(t3, "dim A", {str(A.dim)});
  add_row(t3, "dim A^G", rows["A_invariants"]);
  add_row(t3, "dim (A (x) A)^G", rows["AA_invariants"]);
  add_row(t3, "dim U_L/U_L^p", {rows["units_mod_p"][0]});
  add_row(t3, "dim (U_L/U_L^p)^G", {rows["units_mod_p"][1]});
  tables.push_back(t3);
  report["tables"] = tables;
}

std::vector<std::string> golden_diff(const RunConfig& cfg, const json& report) {
  std::vector<std::string> out;
  const json& rows = report["results"]["rows"];
  for (const auto& [key, want] : cfg.expected) {
    if (!rows.contains(key)) {
      out.push_back(key + ": missing from results");
      continue;
    }
    std::vector<std::string> got = rows[key];
    if (got.size() != want.size()) {
      out.push_back(key + ": expected " + std::to_string(want.size()) + " entries, got " + std::to_string(got.size()));
      continue;
    }
    for (std::size_t i = 0; i < want.size(); ++i)
      if (want[i] != "*" && want[i] != got[i])
        out.push_back(key + "[" + std::to_string(i) + "]: expected " + want[i] + ", got " + got[i]);
  }
  return out;
}

std::string builtin_config(const std::string& name) {
  if (name == "example1") return kBuiltinExample1;
  if (name == "example2") return kBuiltinExample2;
  throw ConfigError("unknown built-in configuration '" + name + "' (known: example1, example2)");
}

}  // namespace tclab
