#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tclab/report.hpp"

using namespace tclab;

namespace {

std::string error_of(const std::string& yaml) {
  try {
    parse_run_config(yaml, "cfg.yaml");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("field specs") {
  auto s = parse_field_spec("label: Q(sqrt 5)\npolynomial: [-1, -1, 1]\n", "f.yaml");
  CHECK(s.label == "Q(sqrt 5)");
  CHECK(s.poly == ZPoly{-1, -1, 1});
  CHECK_FALSE(s.basis);
  CHECK(build_field(s).disc() == 5);

  auto h = load_field_spec(std::string(TCLAB_SOURCE_DIR) + "/fields/qsqrt5_half_basis.yaml");
  REQUIRE(h.basis);
  CHECK(build_field(h).disc() == 5);

  // non-monic: the position of the leading coefficient is reported
  try {
    parse_field_spec("polynomial:\n  - 1\n  - 0\n  - 3\n", "nm.yaml");
    FAIL("accepted a non-monic polynomial");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()) == "nm.yaml:4:5: polynomial is not monic (leading coefficient 3)");
  }
  try {
    parse_field_spec("polynomial: [1, 0, 3]\n", "nm.yaml");
    FAIL("accepted a non-monic polynomial");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()) == "nm.yaml:1:20: polynomial is not monic (leading coefficient 3)");
  }
  CHECK_THROWS_AS(parse_field_spec("polynomial: [1, x, 1]\n"), ConfigError);
  CHECK_THROWS_AS(parse_field_spec("poly: [1, 0, 1]\n"), ConfigError);
  CHECK_THROWS_AS(parse_field_spec("polynomial: [1, 0, 1\n"), ConfigError);
  // x^2 - 5 needs its basis; reducible input is refused
  CHECK_THROWS_AS(build_field(parse_field_spec("polynomial: [-5, 0, 1]\n")), ConfigError);
  CHECK_THROWS_AS(build_field(parse_field_spec("polynomial: [-4, 0, 1]\n")), ConfigError);
  CHECK_THROWS_AS(load_field_spec("/nonexistent/field.yaml"), ConfigError);

  auto c = field_spec_from_coefficients("1, 0, 1");
  CHECK(c.poly == ZPoly{1, 0, 1});
}

TEST_CASE("prime lists") {
  auto v = parse_prime_list("5, 107:all,197:2");
  REQUIRE(v.size() == 3);
  CHECK(v[0].q == 5);
  CHECK(v[0].selector == "first");
  CHECK(v[1].selector == "all");
  CHECK(v[2].selector == "2");
  CHECK(parse_prime_list("").empty());
  CHECK_THROWS_AS(parse_prime_list("6"), ConfigError);
  CHECK_THROWS_AS(parse_prime_list("seven"), ConfigError);

  auto K = make_field({-1, -2, 1, 1});
  CHECK(resolve_primes(K, parse_prime_list("181:all")).size() == 3);
  auto one = resolve_primes(K, parse_prime_list("181:2"));
  REQUIRE(one.size() == 1);
  CHECK(one[0].index == 2);
  // duplicates collapse, order follows the list
  auto d = resolve_primes(K, parse_prime_list("293,7,293:1"));
  REQUIRE(d.size() == 2);
  CHECK(d[0].q == 293);
}

TEST_CASE("run configurations") {
  auto cfg = parse_run_config(builtin_config("example2"), "builtin");
  CHECK(cfg.p == 2);
  CHECK(cfg.mode == "orbit");
  CHECK(cfg.sets.size() == 4);
  CHECK(cfg.sets[0].primes.empty());
  CHECK(cfg.sets[3].primes.size() == 5);
  CHECK(cfg.expected.at("rusb_L") == std::vector<std::string>{"3", "2", "2", "0"});
  CHECK_THROWS_AS(builtin_config("example3"), ConfigError);

  const std::string layer = "layer: {embedding: [0], automorphisms: [[1, -1]]}\nmodule: {action: [[[2]]]}\n";
  const std::string fields = "base_field: {polynomial: [0, 1]}\nfield: {" + std::string("polynomial: [-1, -1, 1]}\n");
  CHECK(error_of("p: 3\n" + fields + layer + "sets: [{name: S, primes: [5]}]\n").empty());
  CHECK(error_of("p: 4\n" + fields + layer + "sets: []\n") == "cfg.yaml:1:4: p must be prime");
  CHECK(error_of("p: 3\n" + fields + layer + "sets: [{name: S, primes: [3]}]\n").find("tame") != std::string::npos);
  CHECK(error_of("p: 3\n" + fields + layer + "sets: [{name: S, primes: [9]}]\n").find("9 is not prime") != std::string::npos);
  CHECK(error_of("p: 3\nmode: up\n" + fields + layer + "sets: []\n").find("mode") != std::string::npos);
  CHECK(error_of("p: 3\n" + fields + "sets: []\n").find("missing key 'layer'") != std::string::npos);
  CHECK(error_of("p: 3\n" + fields + "layer: {embedding: [0], automorphisms: [[1, -1]]}\nmodule: {action: []}\nsets: []\n")
            .find("one action matrix per automorphism") != std::string::npos);
  CHECK(error_of("p: 3\nfield: nowhere.yaml\n").find("cannot open") != std::string::npos);
  CHECK(error_of("p: [3\n").rfind("cfg.yaml:", 0) == 0);
}

TEST_CASE("tables") {
  json r = make_report("test", {});
  r["tables"].push_back(make_table("Empty", {"a", "bb"}));
  CHECK(emit_table(r) == "Empty\n | a | bb\n-+---+---\n");
  json t = make_table("T", {"x"});
  add_row(t, "long name", {"1"});
  add_row(t, "n", {"12345"});
  r["tables"] = json::array({t});
  CHECK(emit_table(r) == "T\n          | x\n----------+------\nlong name | 1\nn         | 12345\n");
  CHECK(emit_table(make_report("none", {})).empty());
}

TEST_CASE("pipeline report: example 1") {
  auto cfg = parse_run_config(builtin_config("example1"), "builtin");
  json a = make_report("reproduce", {"reproduce", "example1"});
  run_pipeline(cfg, a);
  CHECK(a["schema"] == "tclab-report/1");
  CHECK(golden_diff(cfg, a).empty());
  CHECK(a["results"]["rows"]["rcg_L"] == json::array({"0", "Z/3", "Z/27"}));
  // the twisted sandwich at T is certified with value 1
  const auto& tw = a["results"]["twisted_sandwiches"][1];
  CHECK(tw["certified"] == true);
  CHECK(tw["lower"] == 1);
  CHECK(tw["upper"] == 1);
  // descent holds on every set
  for (const auto& d : a["results"]["descent"]) CHECK(d["equal"] == true);
  // resolved primes carry their two-element form
  CHECK(a["inputs"]["sets"][1]["L"][1]["two_element"].get<std::string>().rfind("(107, ", 0) == 0);

  // lossless round trip and determinism
  CHECK(json::parse(a.dump()) == a);
  json b = make_report("reproduce", {"reproduce", "example1"});
  run_pipeline(cfg, b);
  CHECK(a.dump() == b.dump());

  // a wrong expectation shows up in the diff
  cfg.expected["rcg_L"][2] = "Z/9";
  auto diff = golden_diff(cfg, a);
  REQUIRE(diff.size() == 1);
  CHECK(diff[0] == "rcg_L[2]: expected Z/9, got Z/27");
  cfg.expected["no_such_row"] = {"1"};
  CHECK(golden_diff(cfg, a).size() == 2);
}

TEST_CASE("pipeline report: example 2") {
  auto cfg = parse_run_config(builtin_config("example2"), "builtin");
  json r = make_report("reproduce", {});
  run_pipeline(cfg, r);
  CHECK(golden_diff(cfg, r).empty());
  CHECK(r["results"]["rows"]["sha_L"] == json::array({"0", "0", "2", "0"}));
  CHECK(r["results"]["rows"]["AA_invariants"] == json::array({"2"}));
  CHECK(r["results"]["exceptionality"].size() == 4);
  for (const auto& c : r["results"]["crosschecks"]) CHECK(c["selmer"]["dim"] == c["h1"]["rusb"]);
}
