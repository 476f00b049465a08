#pragma once

// Elements kept as formal products prod base_i^exp_i. Valuations and residue
// logarithms are computed additively, so exponents may be large.

#include "tclab/field.hpp"

namespace tclab {

struct FactoredElement {
  std::vector<NFElement> bases;
  std::vector<Int> exps;

  static FactoredElement of(const NFElement& x);
  bool empty() const { return bases.empty(); }
};

FactoredElement fe_mul(const FactoredElement& a, const FactoredElement& b);
FactoredElement fe_pow(const FactoredElement& a, const Int& k);
/// prod_j items[j]^{coeffs[j]}
FactoredElement fe_combine(const std::vector<FactoredElement>& items, const std::vector<Int>& coeffs);

/// Explicit value. Only sensible for small exponents.
NFElement fe_evaluate(const NumberField& K, const FactoredElement& a);
int fe_valuation(const NumberField& K, const FactoredElement& a, const PrimeIdeal& P);
/// Discrete log (relative to the residue field's primitive root) of the
/// normalized residue, modulo ell^k.
Int fe_dlog(const NumberField& K, const FactoredElement& a, const PrimeIdeal& P, const Int& ell, int k);
/// Local p-th power class at a tame prime (valuation must be 0 mod p).
ResidueClass fe_local_class(const NumberField& K, const FactoredElement& a, const PrimeIdeal& P, std::uint64_t p);

/// Value of the polynomial a (in theta) at the element x.
NFElement substitute(const NumberField& K, const QPoly& a, const NFElement& x);
/// Field endomorphism theta -> image applied to x.
NFElement apply_map(const NumberField& K, const NFElement& theta_image, const NFElement& x);
FactoredElement fe_apply_map(const NumberField& K, const NFElement& theta_image, const FactoredElement& a);

std::string fe_to_string(const NumberField& K, const FactoredElement& a);

}  // namespace tclab
