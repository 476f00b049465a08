#pragma once

// F_p[Gamma]-modules for an abelian Galois layer L/K given by explicit
// automorphisms, and the Gamma-actions on units, class groups, ray class
// groups and Selmer groups of L.

#include "tclab/selmer.hpp"

namespace tclab {

struct GaloisLayer {
  NumberField K;
  NumberField L;
  NFElement embedding;                // image of K's theta in L
  std::vector<NFElement> gamma_gens;  // theta_L -> g(theta_L)
  std::vector<NFElement> elements;    // all of Gamma, identity first
  std::size_t order = 1;

  NFElement embed(const NFElement& x) const;
  /// L-primes above the K-prime P.
  std::vector<PrimeIdeal> primes_above(const PrimeIdeal& P) const;
  std::vector<PrimeIdeal> lift(const std::vector<PrimeIdeal>& T) const;
  /// Gamma-orbit closure of a set of L-primes, in the order first met.
  std::vector<PrimeIdeal> orbit_closure(const std::vector<PrimeIdeal>& X) const;
  PrimeIdeal apply(std::size_t gen, const PrimeIdeal& P) const;
  /// K-primes ramified in L (among the primes dividing disc L).
  std::vector<PrimeIdeal> ramified_primes() const;
};

/// Validates each map by substitution into the minimal polynomial of L, checks
/// that K is fixed, closes the group and checks |Gamma| = [L : K] and commutativity.
GaloisLayer make_layer(NumberField K, NumberField L, const NFElement& embedding, const std::vector<NFElement>& gamma_gens);
/// Order of Frobenius at the K-prime P in L/K (cyclic layers): the relative
/// residue degree. Throws if P ramifies.
unsigned frobenius_order(const GaloisLayer& layer, const PrimeIdeal& P);

/// L = K with no automorphisms.
GaloisLayer trivial_layer(const NumberField& K);

struct GammaModule {
  std::size_t dim = 0;
  std::uint64_t p = 2;
  std::vector<FpMatrix> action;  // one per generator of Gamma (row convention)
  std::vector<std::string> labels;
};

GammaModule make_module(std::uint64_t p, std::vector<FpMatrix> action, std::vector<std::string> labels = {});
GammaModule trivial_module(std::uint64_t p, std::size_t dim, std::size_t num_gens);

/// Throws unless each matrix is invertible, the matrices commute and each
/// generator's matrix has order dividing that of the automorphism.
void check_relations(const GaloisLayer& layer, const GammaModule& m);

/// All elements of the matrix group generated by the action.
std::vector<FpMatrix> group_elements(const GammaModule& m);

/// Common kernel of (gamma - 1). When p does not divide the order of the
/// acting group, the rank of the averaging idempotent is computed as well and
/// must agree.
std::size_t invariants_dim(const GammaModule& m);
GammaModule tensor(const GammaModule& a, const GammaModule& b);
GammaModule dual(const GammaModule& m);

/// U_L / U_L^p (units, plus a root of unity when p | w).
GammaModule units_module(const GaloisLayer& layer, FieldContext& ctxL, std::uint64_t p);
/// Cl_L / p Cl_L on the invariant generators of order divisible by p.
GammaModule class_module(const GaloisLayer& layer, FieldContext& ctxL, std::uint64_t p);
/// RCG_m (x) F_p for a Gamma-stable conductor.
GammaModule ray_class_module(const GaloisLayer& layer, const RayContext& rc, const RayClassPPart& G);
/// Kernel of RCG_big -> RCG_small, tensored with F_p.
GammaModule ray_kernel_module(const GaloisLayer& layer, const RayContext& rc, const RayClassPPart& big,
                              const SurjectionKernel& k);
/// V_S / L^{x p} for a Gamma-stable S.
GammaModule selmer_module(const GaloisLayer& layer, FieldContext& ctxL, const SelmerBasis& B);

struct DescentReport {
  bool refused = false;
  std::string reason;
  std::vector<PrimeIdeal> T;
  std::vector<PrimeIdeal> T_lift;
  std::size_t rusb_K = 0;
  std::size_t rusb_L_invariants = 0;
  std::size_t rusb_L = 0;
  bool equal = false;
};

/// dim RusB_T(K, F_p) against dim RusB_{T~}(L, F_p)^Gamma.
DescentReport descent_check(const GaloisLayer& layer, FieldContext& ctxK, FieldContext& ctxL,
                            const std::vector<PrimeIdeal>& T, std::uint64_t p);

}  // namespace tclab
