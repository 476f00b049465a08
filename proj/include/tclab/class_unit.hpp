#pragma once

// Unit groups and class groups at desk scale, certified without GRH.

#include "tclab/factored.hpp"

#include <map>

namespace tclab {

struct UnitBasis {
  unsigned w = 2;                  // number of roots of unity
  NFElement zeta;                  // generator of the roots of unity
  std::vector<NFElement> units;    // r1 + r2 - 1 independent units
  std::vector<std::uint64_t> saturated_at;
  // Independence certificate: an odd prime ell not dividing w and primes P with
  // ell | NP - 1 at which the ell-th power characters of the units have full rank.
  std::uint64_t witness_ell = 0;
  std::vector<std::string> witness_primes;

  bool is_saturated_at(std::uint64_t p) const;
};

struct UnitOptions {
  Int height_bound = 0;  // 0: 10^6 for quadratic fields, 10^4 otherwise
};

/// Throws std::runtime_error naming the achieved rank if the search comes up short.
UnitBasis unit_group(const NumberField& K, const UnitOptions& opts = {});

/// Replaces units until no product of units and roots of unity with exponents
/// not all divisible by p is a p-th power.
void saturate(const NumberField& K, UnitBasis& U, std::uint64_t p);

/// dim U_K / U_K^p = r1 + r2 - 1 + [p | w]
std::size_t u_mod_p_dim(const NumberField& K, const UnitBasis& U, std::uint64_t p);

/// Unit-log bound: every principal ideal of norm N has a generator with T2 at most N^{2/n} * this.
long double generator_t2_factor(const NumberField& K, const UnitBasis& U);

/// A generator of the integral ideal I, if it is principal.
std::optional<NFElement> principal_generator(const NumberField& K, const UnitBasis& U, const Ideal& I);

long double minkowski_bound(const NumberField& K);

struct ClassGroupData {
  FinAbGroup group;
  std::vector<PrimeIdeal> factor_base;
  IntMatrix relations;                         // rows: valuation vectors over factor_base
  std::vector<FactoredElement> relation_elements;  // generator of each relation row
  SmithForm snf;
  bool certified = false;
  std::string certificate;

  /// Class of a factor-base prime as coordinates modulo the invariant factors
  /// (one coordinate per entry of snf.diagonal).
  std::vector<Int> class_of_prime(std::size_t fb_index) const;
  /// Class of an exponent vector over the factor base.
  std::vector<Int> class_of(const std::vector<Int>& exps) const;
  /// Positions j in snf.diagonal with d_j > 1.
  std::vector<std::size_t> nontrivial_positions() const;
  /// Ideal exponent vector of the j-th invariant generator.
  std::vector<Int> generator_exponents(std::size_t j) const;
  /// alpha_j with (alpha_j) = (generator j)^{d_j}.
  FactoredElement kummer_element(std::size_t j) const;
  std::size_t fb_index(const PrimeIdeal& P) const;
};

struct ClassGroupOptions {
  Int effort = 0;                           // factor-base norm bound; 0 means the Minkowski bound
  std::vector<Int> extra_rational_primes;   // all primes above these join the factor base
  std::uint64_t shuffle_seed = 0;           // permute the factor base before solving (0: no shuffle)
};

ClassGroupData class_group(const NumberField& K, const UnitBasis& U, const ClassGroupOptions& opts = {});

/// Valuation vector of x over the factor base, if (x) is supported on it.
std::optional<std::vector<Int>> fb_vector(const NumberField& K, const std::vector<PrimeIdeal>& fb, const NFElement& x);

/// Field, units and class group bundled together.
struct FieldContext {
  NumberField K;
  UnitBasis units;
  ClassGroupData cl;

  void ensure_saturated(std::uint64_t p);
};

FieldContext make_context(NumberField K, const std::vector<std::uint64_t>& saturate_primes = {},
                          const UnitOptions& uopts = {}, const ClassGroupOptions& copts = {});

}  // namespace tclab
