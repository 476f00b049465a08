#include "tclab/factored.hpp"

#include <stdexcept>

namespace tclab {

FactoredElement FactoredElement::of(const NFElement& x) { return {{x}, {Int(1)}}; }

FactoredElement fe_mul(const FactoredElement& a, const FactoredElement& b) {
  FactoredElement c = a;
  for (std::size_t i = 0; i < b.bases.size(); ++i) {
    bool merged = false;
    for (std::size_t j = 0; j < c.bases.size(); ++j)
      if (c.bases[j] == b.bases[i]) {
        c.exps[j] += b.exps[i];
        merged = true;
        break;
      }
    if (!merged) {
      c.bases.push_back(b.bases[i]);
      c.exps.push_back(b.exps[i]);
    }
  }
  FactoredElement out;
  for (std::size_t j = 0; j < c.bases.size(); ++j)
    if (c.exps[j] != 0) {
      out.bases.push_back(std::move(c.bases[j]));
      out.exps.push_back(c.exps[j]);
    }
  return out;
}

FactoredElement fe_pow(const FactoredElement& a, const Int& k) {
  if (k == 0) return {};
  FactoredElement c = a;
  for (auto& e : c.exps) e *= k;
  return c;
}

FactoredElement fe_combine(const std::vector<FactoredElement>& items, const std::vector<Int>& coeffs) {
  if (items.size() != coeffs.size()) throw std::invalid_argument("fe_combine: length mismatch");
  FactoredElement r;
  for (std::size_t i = 0; i < items.size(); ++i)
    if (coeffs[i] != 0) r = fe_mul(r, fe_pow(items[i], coeffs[i]));
  return r;
}

NFElement fe_evaluate(const NumberField& K, const FactoredElement& a) {
  NFElement r = K.one();
  for (std::size_t i = 0; i < a.bases.size(); ++i) r = K.mul(r, K.pow(a.bases[i], a.exps[i]));
  return r;
}

int fe_valuation(const NumberField& K, const FactoredElement& a, const PrimeIdeal& P) {
  Int v = 0;
  for (std::size_t i = 0; i < a.bases.size(); ++i) v += a.exps[i] * valuation(K, a.bases[i], P);
  if (!v.fits_sint_p()) throw std::overflow_error("fe_valuation: valuation too large");
  return static_cast<int>(v.get_si());
}

Int fe_dlog(const NumberField& K, const FactoredElement& a, const PrimeIdeal& P, const Int& ell, int k) {
  const Int mod_ = tclab::pow(ell, static_cast<unsigned long>(k));
  Int s = 0;
  for (std::size_t i = 0; i < a.bases.size(); ++i) {
    Int d = P.residue_field.dlog_mod_prime_power(normalized_residue(K, a.bases[i], P), ell, k);
    s += a.exps[i] * d;
  }
  return mod(s, mod_);
}

ResidueClass fe_local_class(const NumberField& K, const FactoredElement& a, const PrimeIdeal& P, std::uint64_t p) {
  if (P.q == static_cast<unsigned long>(p)) throw std::invalid_argument("fe_local_class: prime above p (wild)");
  ResidueClass rc;
  const Int pm1 = P.norm - 1;
  if (!mpz_divisible_ui_p(pm1.get_mpz_t(), p)) return rc;
  rc.delta = 1;
  rc.value = fe_dlog(K, a, P, Int(static_cast<unsigned long>(p)), 1).get_ui();
  return rc;
}

NFElement substitute(const NumberField& K, const QPoly& a, const NFElement& x) {
  NFElement acc = K.zero();
  for (std::size_t i = a.size(); i-- > 0;) {
    acc = K.mul(acc, x);
    acc = K.add(acc, K.from_power_basis(QPoly{a[i]}));
  }
  return acc;
}

NFElement apply_map(const NumberField& K, const NFElement& theta_image, const NFElement& x) {
  return substitute(K, K.to_power_basis(x), theta_image);
}

FactoredElement fe_apply_map(const NumberField& K, const NFElement& theta_image, const FactoredElement& a) {
  FactoredElement r = a;
  for (auto& b : r.bases) b = apply_map(K, theta_image, b);
  return r;
}

std::string fe_to_string(const NumberField& K, const FactoredElement& a) {
  if (a.bases.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < a.bases.size(); ++i) {
    if (i) s += " * ";
    s += "(" + K.element_to_string(a.bases[i]) + ")";
    if (a.exps[i] != 1) s += "^" + a.exps[i].get_str();
  }
  return s;
}

}  // namespace tclab
