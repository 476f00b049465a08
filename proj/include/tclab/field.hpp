#pragma once

// Number fields given by a monic integer polynomial, with an integral basis,
// exact element arithmetic, prime ideal factorization (Kummer-Dedekind) and
// residue field maps.

#include "tclab/lattice.hpp"
#include "tclab/linalg.hpp"
#include "tclab/poly.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tclab {

/// Element of a number field: coordinates with respect to the integral basis,
/// over a common positive denominator (kept in lowest terms).
struct NFElement {
  std::vector<Int> num;
  Int den = 1;

  bool operator==(const NFElement& o) const = default;
  bool is_zero() const;
  bool is_integral() const { return den == 1; }
};

class NumberField {
 public:
  const std::string& label() const { return label_; }
  const ZPoly& poly() const { return poly_; }
  int degree() const { return n_; }
  int r1() const { return r1_; }
  int r2() const { return r2_; }
  const Int& disc() const { return disc_; }
  const Int& poly_disc() const { return poly_disc_; }
  /// [O_K : Z[theta]]
  const Int& index() const { return index_; }
  /// Row j: the j-th integral basis element in the power basis.
  const RatMatrix& basis() const { return basis_; }

  NFElement zero() const;
  NFElement one() const;
  NFElement from_int(const Int& a) const;
  NFElement from_coords(const std::vector<Rat>& c) const;
  NFElement from_int_coords(const std::vector<Int>& c) const;
  /// Element given by a polynomial in theta.
  NFElement from_power_basis(const QPoly& a) const;
  QPoly to_power_basis(const NFElement& a) const;
  NFElement theta() const;

  NFElement add(const NFElement& a, const NFElement& b) const;
  NFElement sub(const NFElement& a, const NFElement& b) const;
  NFElement neg(const NFElement& a) const;
  NFElement mul(const NFElement& a, const NFElement& b) const;
  NFElement mul_int(const NFElement& a, const Int& k) const;
  /// Exact division by a nonzero integer.
  NFElement div_int(const NFElement& a, const Int& k) const;
  NFElement inv(const NFElement& a) const;
  NFElement pow(const NFElement& a, const Int& e) const;

  /// Matrix of y -> y * a on the integral basis (row convention).
  RatMatrix mult_matrix(const NFElement& a) const;
  Rat norm(const NFElement& a) const;
  Rat trace(const NFElement& a) const;
  /// Characteristic polynomial of an integral element.
  ZPoly charpoly(const NFElement& a) const;

  /// sigma_i(a) for the r1 real and r2 complex embeddings.
  std::vector<Complex> embed(const NFElement& a) const;
  long double t2(const NFElement& a) const;
  /// Gram matrix of the T2 form on the integral basis.
  const RealMatrix& t2_gram() const { return t2_gram_; }

  /// Visits integral elements of the lattice spanned by the rows of `basis`
  /// (integral-basis coordinates) with T2 <= bound. Return false to stop.
  void enumerate_short(const IntMatrix& basis, long double bound,
                       const std::function<bool(const NFElement&)>& visit) const;

  std::string element_to_string(const NFElement& a) const;

 private:
  friend NumberField make_field(const ZPoly&, const std::optional<RatMatrix>&, const std::string&);
  void finish_setup();

  std::string label_;
  ZPoly poly_;
  int n_ = 0;
  int r1_ = 0, r2_ = 0;
  Int disc_, poly_disc_, index_ = 1;
  RatMatrix basis_;      // integral basis in powers of theta
  RatMatrix basis_inv_;  // powers of theta in the integral basis
  std::vector<std::vector<std::vector<Int>>> mult_;  // b_i b_j = sum_k mult_[i][j][k] b_k
  std::vector<Complex> roots_;
  std::vector<std::vector<Complex>> basis_embed_;  // [i][j] = sigma_i(b_j)
  RealMatrix t2_gram_;
};

/// Builds a field from a monic irreducible polynomial. Without a basis, Z[theta]
/// must be maximal (Dedekind criterion); otherwise the basis is validated.
NumberField make_field(const ZPoly& f, const std::optional<RatMatrix>& integral_basis = std::nullopt,
                       const std::string& label = "");

/// Coordinates of x in the Z-basis given by the rows of `hnf`, if x lies in that lattice.
std::optional<std::vector<Int>> lattice_coords(const IntMatrix& hnf, const std::vector<Int>& x);

// ------------------------------------------------------------------ ideals

/// Integral ideal given by an n x n Hermite basis (rows, integral-basis coordinates).
struct Ideal {
  IntMatrix hnf;
  Int norm() const;
  bool operator==(const Ideal& o) const = default;
};

Ideal ideal_from_generators(const NumberField& K, const std::vector<NFElement>& gens);
Ideal ideal_mul(const NumberField& K, const Ideal& a, const Ideal& b);
Ideal ideal_pow(const NumberField& K, const Ideal& a, unsigned long e);
Ideal unit_ideal(const NumberField& K);
bool contains(const Ideal& I, const NFElement& x);

struct PrimeIdeal {
  Int q;
  int e = 1;
  int f = 1;
  Int norm;
  int index = 1;            // 1-based position among primes above q
  NFElement pi;             // P = (q, pi)
  NFElement anti;           // anti * P lies in qO and v_P(anti) = e - 1
  NFElement beta;           // primitive element used for the local factor
  FpPoly local_factor;      // g with P = (q, g(beta))
  FiniteField residue_field;
  std::vector<FiniteField::Elt> basis_residues;  // image of each integral basis element
  Ideal ideal;

  std::string label() const;  // "7_1"
  bool operator==(const PrimeIdeal& o) const { return q == o.q && index == o.index; }
};

/// All primes above q, ordered by the deterministic labeling (local factor order).
std::vector<PrimeIdeal> factor_prime(const NumberField& K, const Int& q);

/// All primes of norm <= bound, ordered by (norm, q, index).
std::vector<PrimeIdeal> primes_up_to_norm(const NumberField& K, const Int& bound);

/// Primes above q selected by "first", "all" or an explicit 1-based index.
std::vector<PrimeIdeal> select_primes(const NumberField& K, const Int& q, const std::string& selector);

int valuation(const NumberField& K, const NFElement& x, const PrimeIdeal& P);

/// Residue of an integral element modulo P.
FiniteField::Elt reduce(const NumberField& K, const NFElement& x, const PrimeIdeal& P);

/// Residue of x * (anti/q)^{v_P(x)}: a multiplicative map K^x -> k(P)^x that
/// agrees with the residue map on P-units.
FiniteField::Elt normalized_residue(const NumberField& K, const NFElement& x, const PrimeIdeal& P);

/// Class of x in k(P)^x / k(P)^{x p}. `delta` is 1 iff p | NP - 1; then `value`
/// is the exponent in Z/p, otherwise the class is trivially 0.
struct ResidueClass {
  int delta = 0;
  std::uint64_t value = 0;
  bool operator==(const ResidueClass& o) const = default;
};

/// Power residue class of a P-unit (throws on v_P(x) != 0 or P above p).
ResidueClass power_residue_class(const NumberField& K, const NFElement& x, const PrimeIdeal& P, std::uint64_t p);

/// Class of x in K_P^x / K_P^{x p} for tame P, given v_P(x) = 0 mod p: zero iff x is a local p-th power.
ResidueClass local_pth_power_class(const NumberField& K, const NFElement& x, const PrimeIdeal& P, std::uint64_t p);

/// Is P identical to the ideal generated by q and x (tested by residues)? Used to re-identify primes.
std::optional<PrimeIdeal> identify_prime(const NumberField& K, const Int& q, const NFElement& x_in_prime);

/// Order (1 or p) of Frobenius at the primes of K above q in the Kummer
/// extension K(zeta_p, x^{1/p}): p iff some P | q with p | NP - 1 has a nonzero
/// class. Throws if q = p or x is not a unit at some P | q (possibly ramified).
unsigned frobenius_order(const NumberField& K, const NFElement& x, std::uint64_t p, const Int& q);

// ------------------------------------------------------- roots in the field

/// All y in K with y^n = x, found through the embeddings and verified exactly.
std::vector<NFElement> nth_roots(const NumberField& K, const NFElement& x, unsigned n);

/// Roots of unity of K as (generator, order w).
std::pair<NFElement, unsigned> torsion_units(const NumberField& K);

}  // namespace tclab
