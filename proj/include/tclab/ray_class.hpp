#pragma once

// p-parts of ray class groups with squarefree tame finite conductors.
//
// Presentation: generators are factor-base primes coprime to the conductor
// (enough of them to generate the class group) and, for each conductor prime Q,
// a generator of the p-part of (O/Q)^x. Relations: principal ideals supported on
// those primes against the residues of their generators, the unit images, and
// the cyclic orders.

#include "tclab/class_unit.hpp"

namespace tclab {

/// Data shared by all conductors contained in `avoid`: a factor base coprime
/// to `avoid` and the lattice of principal ideals supported on it.
struct RayContext {
  const FieldContext* ctx = nullptr;
  std::uint64_t p = 2;
  std::vector<PrimeIdeal> avoid;
  ClassGroupData cl;               // over a factor base extended as needed
  std::vector<std::size_t> fbp;    // indices into cl.factor_base of primes coprime to `avoid`
  IntMatrix lambda;                // rows over fbp: principal ideals supported on fbp
  IntMatrix lambda_combo;          // rows over cl.relations: how each lambda row is formed

  const PrimeIdeal& gen_prime(std::size_t i) const { return cl.factor_base[fbp[i]]; }
};

/// Saturates the units at p if needed.
RayContext make_ray_context(FieldContext& ctx, std::uint64_t p, const std::vector<PrimeIdeal>& avoid);

struct RayClassPPart {
  std::uint64_t p = 2;
  std::vector<PrimeIdeal> modulus;
  std::size_t fb_count = 0;                    // leading generators: the primes of RayContext::fbp
  std::vector<PrimeIdeal> residue_primes;      // conductor primes with p | NQ - 1
  std::vector<unsigned> residue_exponents;     // a with p^a || NQ - 1
  std::vector<NFElement> residue_lifts;        // integral lift of the chosen residue generator
  IntMatrix relations;                         // rows over all generators
  FinAbGroup full;                             // group presented (p'-parts of (O/m)^x removed)
  FinAbGroup group;                            // p-primary part

  std::size_t num_gens() const { return fb_count + residue_primes.size(); }
};

RayClassPPart ray_class_p_part(const RayContext& rc, const std::vector<PrimeIdeal>& modulus);
/// Stand-alone form with its own context.
RayClassPPart ray_class_p_part(FieldContext& ctx, const std::vector<PrimeIdeal>& modulus, std::uint64_t p);

struct SurjectionKernel {
  FinAbGroup kernel;       // p-part of ker(RCG_big -> RCG_small)
  std::size_t dim_mod_p = 0;
  IntMatrix lattice;       // basis of the preimage lattice in Z^{gens of big}
  IntMatrix phi;           // generator map big -> small
};

/// small.modulus must be contained in big.modulus; both built from the same context.
SurjectionKernel rcg_surjection_kernel(const RayContext& rc, const RayClassPPart& small, const RayClassPPart& big);
SurjectionKernel rcg_surjection_kernel(FieldContext& ctx, std::uint64_t p, const std::vector<PrimeIdeal>& small,
                                       const std::vector<PrimeIdeal>& big);

/// Class of a prime coprime to the conductor, as a generator vector.
std::vector<Int> ray_class_log(const RayContext& rc, const RayClassPPart& G, const PrimeIdeal& P);

/// Action of the field automorphism theta -> theta_image on the generators
/// (integer matrix, row convention). The conductor and the factor base must be stable.
IntMatrix ray_action(const RayContext& rc, const RayClassPPart& G, const NFElement& theta_image);

/// RCG (x) F_p as a quotient of F_p^{gens}, and the action of an integer generator matrix on it.
QuotientSpace ray_mod_p(const RayClassPPart& G);
FpMatrix ray_action_mod_p(const RayClassPPart& G, const IntMatrix& action);

/// ker (x) F_p = L / (R_big + pL) for the kernel lattice L; the action is induced from `action` on big.
QuotientSpace kernel_mod_p(const RayClassPPart& big, const SurjectionKernel& k, IntMatrix* lattice_coords_of_relations = nullptr);
FpMatrix kernel_action_mod_p(const RayClassPPart& big, const SurjectionKernel& k, const IntMatrix& action);

}  // namespace tclab
