#pragma once

// V_S(K, F_p) / K^{x p}: elements with all valuations divisible by p that are
// local p-th powers at every prime of S. Its dual is RusB_S(K, F_p).

#include "tclab/ray_class.hpp"

namespace tclab {

struct SelmerOptions {
  std::uint64_t aux_prime_bound = 10000;  // rational primes scanned for the independence certificate
};

struct SelmerBasis {
  std::uint64_t p = 2;
  std::vector<PrimeIdeal> S;
  // V_empty: units, a root of unity when p | w, Kummer elements of the class group
  std::vector<FactoredElement> v_empty;
  std::vector<std::string> v_empty_labels;
  std::vector<PrimeIdeal> condition_primes;  // primes of S with p | Nq - 1, one column each
  FpMatrix local_matrix;                     // rows: v_empty, cols: condition_primes
  FpMatrix combos;                           // rows: V_S basis in v_empty coordinates
  std::vector<FactoredElement> generators;   // exponents reduced into [0, p)
  std::vector<NFElement> generator_values;
  // Independence certificate over V_empty: characters at auxiliary primes
  std::vector<PrimeIdeal> aux_primes;
  FpMatrix aux_matrix;                       // rows: v_empty, cols: aux_primes
  bool certified = false;
  std::string note;

  std::size_t dim() const { return generators.size(); }
  std::size_t dim_empty() const { return v_empty.size(); }
};

SelmerBasis selmer_basis(FieldContext& ctx, const std::vector<PrimeIdeal>& S, std::uint64_t p,
                         const SelmerOptions& opts = {});

/// Characters of x at the auxiliary primes of B.
std::vector<std::uint64_t> aux_characters(const NumberField& K, const SelmerBasis& B, const FactoredElement& x);

/// Coordinates of x in the V_S basis, if x satisfies the local conditions and
/// its auxiliary characters lie in the span of the basis.
std::optional<std::vector<std::uint64_t>> selmer_coordinates(const NumberField& K, const SelmerBasis& B,
                                                             const FactoredElement& x);

/// Re-tests the defining conditions of V_S from scratch: every valuation of x is
/// divisible by p and x is a local p-th power at each prime of S.
bool verify_selmer_element(const NumberField& K, const std::vector<PrimeIdeal>& S, std::uint64_t p, const NFElement& x,
                           std::string* why = nullptr);

struct H1FormulaContext {
  std::vector<PrimeIdeal> Z;
  std::uint64_t p = 2;
  int delta_p = 0;                   // zeta_p in K
  int r = 0;                         // r1 + r2
  std::vector<int> local_delta;      // zeta_p in K_q, per prime of Z
  std::vector<int> local_degree;     // [K_q : Q_p]; zero for tame primes
  std::size_t dim_h1 = 0;            // p-rank of the ray class group of conductor prod Z
  FinAbGroup ray_class;              // its p-part
  long rusb = 0;
};

H1FormulaContext rusb_dim_via_h1(FieldContext& ctx, const std::vector<PrimeIdeal>& Z, std::uint64_t p);

struct RusbCrosscheck {
  SelmerBasis selmer;
  H1FormulaContext h1;
  bool equal = false;
  std::string diagnostics;
};

/// Throws std::runtime_error with both computations spelled out on mismatch.
RusbCrosscheck crosscheck_rusb(FieldContext& ctx, const std::vector<PrimeIdeal>& S, std::uint64_t p,
                               const SelmerOptions& opts = {});

struct ExceptionalityReport {
  bool condition_a = false;           // zeta_4 not in K
  std::string witness_a;              // a square root of -1 when (a) fails
  bool condition_b = false;           // O_K^x meets -4 K^4
  std::string witness_b;              // a with -4a^4 a unit, or the reason none exists
  std::string method_b;
  bool condition_c = false;           // S has no real place and zeta_4 in K_q for every q in S
  std::vector<std::pair<std::string, bool>> condition_c_primes;
  bool exceptional = false;
};

/// Exceptionality of (K, S) at p = 2. S lists finite primes; real places are
/// never in S here. Primes above 2 are rejected.
ExceptionalityReport is_exceptional(FieldContext& ctx, const std::vector<PrimeIdeal>& S);

}  // namespace tclab
