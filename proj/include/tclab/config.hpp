#pragma once

// Field description files and run configurations (YAML).
//
// Field file:
//   label: Q(sqrt 5)
//   polynomial: [-1, -1, 1]        # monic, constant term first
//   integral_basis:                # optional; rows in the power basis
//     - [1, 0]
//     - [1/2, 1/2]
//
// Run configuration: see configs/example1.yaml.

#include "tclab/field.hpp"

#include <map>
#include <stdexcept>

namespace tclab {

/// Malformed input; the message carries "file:line:column" when known.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FieldSpec {
  std::string label;
  ZPoly poly;
  std::optional<RatMatrix> basis;
  std::string source;  // file path, or "<inline>"
};

FieldSpec parse_field_spec(const std::string& text, const std::string& source = "<inline>");
FieldSpec load_field_spec(const std::string& path);
NumberField build_field(const FieldSpec& spec);

/// Inline field: comma separated coefficients, constant term first ("-1,-1,1").
FieldSpec field_spec_from_coefficients(const std::string& coeffs);

struct PrimeSpec {
  Int q;
  std::string selector = "first";  // "first", "all" or a 1-based index
};

/// "5,107:all,197:2" -> specs. Empty string -> empty list.
std::vector<PrimeSpec> parse_prime_list(const std::string& text);
std::vector<PrimeIdeal> resolve_primes(const NumberField& K, const std::vector<PrimeSpec>& specs);

struct NamedPrimeSet {
  std::string name;
  std::vector<PrimeSpec> primes;
};

struct RunConfig {
  std::string name;
  std::string source;
  std::uint64_t p = 2;
  std::string mode = "orbit";  // orbit: sets are primes of L; lift: sets are primes of K, lifted to L
  FieldSpec field;             // L
  FieldSpec base_field;        // K
  QPoly embedding;             // image of K's generator in L
  std::vector<QPoly> automorphisms;
  std::vector<std::vector<std::vector<long long>>> module_action;  // one matrix per automorphism
  std::vector<std::string> module_labels;
  std::vector<NamedPrimeSet> sets;  // nested, in increasing order
  std::uint64_t seed = 1;
  std::uint64_t preserving_count = 3;
  Int preserving_norm_bound = 10000;
  // expected values, compared by `reproduce`
  std::map<std::string, std::vector<std::string>> expected;
};

RunConfig parse_run_config(const std::string& text, const std::string& source = "<inline>");
RunConfig load_run_config(const std::string& path);

}  // namespace tclab
