#pragma once

// Lower and upper bounds for Sha^2_{T,p}: the kernel of RCG_V -> RCG_T (mod p)
// from inflation-restriction, and RusB_T from the Selmer side.

#include "tclab/equivariant.hpp"

namespace tclab {

struct LowerBound {
  std::size_t value = 0;       // dim (ker(RCG_V -> RCG_T) (x) F_p)
  bool precondition = false;   // p-rank RCG_T == p-rank RCG_V
  std::size_t rank_T = 0, rank_V = 0;
  FinAbGroup rcg_T, rcg_V, kernel;
};

LowerBound sha_lower_bound(FieldContext& ctx, std::uint64_t p, const std::vector<PrimeIdeal>& T,
                           const std::vector<PrimeIdeal>& V);

struct ShaSandwich {
  std::uint64_t p = 2;
  std::vector<PrimeIdeal> T, V;
  bool twisted = false;
  std::size_t lower = 0;   // bounds on dim Sha^2_{T,p} (or its Gamma-invariants twisted by A)
  std::size_t upper = 0;
  std::size_t rusb = 0;    // dim RusB_T (or (RusB_T (x) A)^Gamma)
  bool certified = false;
  std::string route;       // trivial_pro_p_group | zero_rusb | sandwich | preserved | none
  std::optional<LowerBound> lower_bound;
  std::vector<std::string> notes;

  std::size_t value() const { return lower; }
};

/// V may be empty: then only the trivial-group and zero-RusB routes apply.
ShaSandwich sha_sandwich(FieldContext& ctx, std::uint64_t p, const std::vector<PrimeIdeal>& T,
                         const std::vector<PrimeIdeal>& V);

/// Twisted by the F_p[Gamma]-module A over a layer with p not dividing |Gamma|.
/// T and V are Gamma-stable sets of L-primes. If base_T (a subset of T, with
/// base_V) carries a certified untwisted sandwich with RusB_{base_T} of the
/// same dimension as RusB_T, the isomorphism Sha = RusB passes to T.
ShaSandwich sha_sandwich_twisted(const GaloisLayer& layer, FieldContext& ctxL, std::uint64_t p,
                                 const std::vector<PrimeIdeal>& T, const std::vector<PrimeIdeal>& V,
                                 const GammaModule& A, const std::vector<PrimeIdeal>& base_T = {},
                                 const std::vector<PrimeIdeal>& base_V = {});

/// (RusB_X (x) A)^Gamma with RusB_X the dual of the Selmer module.
std::size_t twisted_rusb(const GaloisLayer& layer, FieldContext& ctxL, std::uint64_t p, const std::vector<PrimeIdeal>& X,
                         const GammaModule& A);

struct OrbitCheck {
  std::vector<PrimeIdeal> X_prime, X_tilde;
  std::size_t dim_prime = 0, dim_tilde = 0;
  bool equal = false;
};

OrbitCheck orbit_closure_check(const GaloisLayer& layer, FieldContext& ctxL, const std::vector<PrimeIdeal>& S_tilde,
                               const std::vector<PrimeIdeal>& X_prime, std::uint64_t p);

struct PreservingSet {
  std::vector<PrimeIdeal> X;
  std::vector<std::vector<std::uint64_t>> witness;  // per prime: class of each Selmer generator (all zero)
  std::size_t requested = 0;
  std::size_t shortfall = 0;
  std::size_t scanned = 0;
  std::size_t dim_before = 0, dim_after = 0;
  bool verified = false;  // dim unchanged and every old generator lies in the new group
};

PreservingSet find_preserving_primes(FieldContext& ctx, const std::vector<PrimeIdeal>& S, std::uint64_t p,
                                     std::size_t count, const Int& norm_bound);

struct NonvanishingWitness {
  PrimeIdeal prime;
  unsigned frobenius = 1;
  std::size_t scanned = 0;
  std::string certificate;
};

/// Least-norm prime of K (tame, unramified) with Frobenius of order p in
/// K(zeta_p, x^{1/p}). Throws if x is a p-th power or the bound is exhausted.
NonvanishingWitness witness_nonvanishing(const NumberField& K, const NFElement& x, std::uint64_t p, const Int& norm_bound);
/// Least-norm unramified prime of K inert in a cyclic layer L/K of prime degree.
NonvanishingWitness witness_nonvanishing(const GaloisLayer& layer, const Int& norm_bound);

}  // namespace tclab
