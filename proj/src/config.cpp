#include "tclab/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace tclab {

namespace {

std::string where(const std::string& source, const YAML::Node& n) {
  const auto m = n.Mark();
  if (m.is_null()) return source;
  return source + ":" + std::to_string(m.line + 1) + ":" + std::to_string(m.column + 1);
}

[[noreturn]] void fail(const std::string& source, const YAML::Node& n, const std::string& msg) {
  throw ConfigError(where(source, n) + ": " + msg);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

YAML::Node parse_yaml(const std::string& text, const std::string& source) {
  try {
    return YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
}

Int to_int(const std::string& source, const YAML::Node& n) {
  if (!n.IsScalar()) fail(source, n, "expected an integer");
  try {
    return Int(n.Scalar());
  } catch (const std::exception&) {
    fail(source, n, "expected an integer, got '" + n.Scalar() + "'");
  }
}

Rat to_rat(const std::string& source, const YAML::Node& n) {
  if (!n.IsScalar()) fail(source, n, "expected a rational number");
  try {
    return parse_rational(n.Scalar());
  } catch (const std::exception&) {
    fail(source, n, "expected a rational number, got '" + n.Scalar() + "'");
  }
}

std::uint64_t to_u64(const std::string& source, const YAML::Node& n) {
  Int v = to_int(source, n);
  if (v < 0 || !v.fits_ulong_p()) fail(source, n, "expected a non-negative integer");
  return v.get_ui();
}

QPoly to_qpoly(const std::string& source, const YAML::Node& n) {
  if (!n.IsSequence()) fail(source, n, "expected a coefficient list, constant term first");
  QPoly f;
  for (const auto& c : n) f.push_back(to_rat(source, c));
  trim(f);
  return f;
}

FieldSpec field_from_node(const YAML::Node& n, const std::string& source) {
  if (!n.IsMap()) fail(source, n, "field description must be a mapping");
  FieldSpec s;
  s.source = source;
  if (n["label"]) s.label = n["label"].as<std::string>();
  const YAML::Node poly = n["polynomial"];
  if (!poly) fail(source, n, "missing key 'polynomial'");
  if (!poly.IsSequence() || poly.size() == 0) fail(source, poly, "polynomial must be a non-empty coefficient list");
  for (const auto& c : poly) s.poly.push_back(to_int(source, c));
  const YAML::Node lead = poly[poly.size() - 1];
  if (s.poly.back() != 1)
    fail(source, lead, "polynomial is not monic (leading coefficient " + to_string(s.poly.back()) + ")");
  if (s.poly.size() < 2) fail(source, poly, "polynomial must have degree at least 1");
  if (const YAML::Node b = n["integral_basis"]) {
    const std::size_t d = s.poly.size() - 1;
    if (!b.IsSequence() || b.size() != d) fail(source, b, "integral_basis must have " + std::to_string(d) + " rows");
    RatMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      if (!b[i].IsSequence() || b[i].size() != d) fail(source, b[i], "basis row must have " + std::to_string(d) + " entries");
      for (std::size_t j = 0; j < d; ++j) m(i, j) = to_rat(source, b[i][j]);
    }
    s.basis = m;
  }
  if (s.label.empty()) s.label = poly_to_string(s.poly);
  return s;
}

FieldSpec field_ref(const YAML::Node& n, const std::string& source) {
  if (n.IsScalar()) {
    std::filesystem::path p(n.Scalar());
    if (p.is_relative() && source != "<inline>") p = std::filesystem::path(source).parent_path() / p;
    return load_field_spec(p.string());
  }
  return field_from_node(n, source);
}

}  // namespace

FieldSpec parse_field_spec(const std::string& text, const std::string& source) {
  return field_from_node(parse_yaml(text, source), source);
}

FieldSpec load_field_spec(const std::string& path) { return parse_field_spec(read_file(path), path); }

NumberField build_field(const FieldSpec& spec) {
  try {
    return make_field(spec.poly, spec.basis, spec.label);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(spec.source + ": " + e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(spec.source + ": " + e.what());
  }
}

FieldSpec field_spec_from_coefficients(const std::string& coeffs) {
  std::string yaml = "polynomial: [" + coeffs + "]\n";
  return parse_field_spec(yaml, "<--poly>");
}

std::vector<PrimeSpec> parse_prime_list(const std::string& text) {
  std::vector<PrimeSpec> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, item.find_last_not_of(" \t") - b + 1);
    PrimeSpec s;
    auto colon = item.find(':');
    std::string q = item.substr(0, colon);
    if (colon != std::string::npos) s.selector = item.substr(colon + 1);
    try {
      s.q = Int(q);
    } catch (const std::exception&) {
      throw ConfigError("prime list: '" + q + "' is not an integer");
    }
    if (s.q < 2 || !is_prime(s.q)) throw ConfigError("prime list: " + q + " is not prime");
    out.push_back(s);
  }
  return out;
}

std::vector<PrimeIdeal> resolve_primes(const NumberField& K, const std::vector<PrimeSpec>& specs) {
  std::vector<PrimeIdeal> out;
  for (const auto& s : specs)
    for (auto& P : select_primes(K, s.q, s.selector))
      if (std::find(out.begin(), out.end(), P) == out.end()) out.push_back(P);
  return out;
}

RunConfig parse_run_config(const std::string& text, const std::string& source) {
  const YAML::Node root = parse_yaml(text, source);
  if (!root.IsMap()) fail(source, root, "configuration must be a mapping");
  RunConfig c;
  c.source = source;
  c.name = root["name"] ? root["name"].as<std::string>() : "run";
  if (!root["p"]) fail(source, root, "missing key 'p'");
  c.p = to_u64(source, root["p"]);
  if (!is_prime(c.p)) fail(source, root["p"], "p must be prime");
  if (root["mode"]) {
    c.mode = root["mode"].as<std::string>();
    if (c.mode != "orbit" && c.mode != "lift") fail(source, root["mode"], "mode must be 'orbit' or 'lift'");
  }
  if (!root["field"]) fail(source, root, "missing key 'field'");
  c.field = field_ref(root["field"], source);
  if (!root["base_field"]) fail(source, root, "missing key 'base_field'");
  c.base_field = field_ref(root["base_field"], source);
  const YAML::Node layer = root["layer"];
  if (!layer) fail(source, root, "missing key 'layer'");
  if (!layer["embedding"]) fail(source, layer, "missing key 'embedding'");
  c.embedding = to_qpoly(source, layer["embedding"]);
  if (!layer["automorphisms"] || !layer["automorphisms"].IsSequence())
    fail(source, layer, "'automorphisms' must be a list of coefficient lists");
  for (const auto& a : layer["automorphisms"]) c.automorphisms.push_back(to_qpoly(source, a));
  const YAML::Node mod = root["module"];
  if (!mod) fail(source, root, "missing key 'module'");
  if (!mod["action"] || !mod["action"].IsSequence()) fail(source, mod, "'action' must list one matrix per automorphism");
  for (const auto& m : mod["action"]) {
    if (!m.IsSequence()) fail(source, m, "expected a matrix");
    std::vector<std::vector<long long>> rows;
    for (const auto& r : m) {
      if (!r.IsSequence()) fail(source, r, "expected a matrix row");
      std::vector<long long> row;
      for (const auto& x : r) row.push_back(to_int(source, x).get_si());
      if (!rows.empty() && row.size() != rows[0].size()) fail(source, r, "ragged matrix");
      rows.push_back(row);
    }
    if (!rows.empty() && rows.size() != rows[0].size()) fail(source, m, "action matrix must be square");
    c.module_action.push_back(rows);
  }
  if (c.module_action.size() != c.automorphisms.size())
    fail(source, mod["action"], "need one action matrix per automorphism");
  if (mod["labels"])
    for (const auto& l : mod["labels"]) c.module_labels.push_back(l.as<std::string>());
  const YAML::Node sets = root["sets"];
  if (!sets || !sets.IsSequence()) fail(source, root, "'sets' must be a list");
  for (const auto& s : sets) {
    if (!s["name"]) fail(source, s, "prime set without a name");
    NamedPrimeSet ns;
    ns.name = s["name"].as<std::string>();
    if (const YAML::Node ps = s["primes"]) {
      if (!ps.IsSequence()) fail(source, ps, "'primes' must be a list");
      for (const auto& e : ps) {
        PrimeSpec sp;
        if (e.IsScalar()) {
          sp.q = to_int(source, e);
        } else {
          if (!e["q"]) fail(source, e, "prime entry without 'q'");
          sp.q = to_int(source, e["q"]);
          if (e["select"]) sp.selector = e["select"].as<std::string>();
        }
        if (sp.q < 2 || !is_prime(sp.q)) fail(source, e, to_string(sp.q) + " is not prime");
        if (sp.q == static_cast<unsigned long>(c.p)) fail(source, e, "prime above p: sets must be tame");
        ns.primes.push_back(sp);
      }
    }
    c.sets.push_back(ns);
  }
  if (root["seed"]) c.seed = to_u64(source, root["seed"]);
  if (const YAML::Node pr = root["preserving"]) {
    if (pr["count"]) c.preserving_count = to_u64(source, pr["count"]);
    if (pr["norm_bound"]) c.preserving_norm_bound = to_int(source, pr["norm_bound"]);
  }
  if (const YAML::Node ex = root["expected"]) {
    if (!ex.IsMap()) fail(source, ex, "'expected' must map row names to lists");
    for (const auto& kv : ex) {
      std::vector<std::string> vals;
      for (const auto& v : kv.second) vals.push_back(v.as<std::string>());
      c.expected[kv.first.as<std::string>()] = vals;
    }
  }
  return c;
}

RunConfig load_run_config(const std::string& path) { return parse_run_config(read_file(path), path); }

}  // namespace tclab
