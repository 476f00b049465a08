#pragma once

// Dense univariate polynomials. Coefficient i multiplies x^i.

#include "tclab/integer.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tclab {

using ZPoly = std::vector<Int>;
using QPoly = std::vector<Rat>;
using Complex = std::complex<long double>;

int degree(const ZPoly& f);
int degree(const QPoly& f);
void trim(ZPoly& f);
void trim(QPoly& f);

QPoly to_q(const ZPoly& f);
ZPoly derivative(const ZPoly& f);
QPoly derivative(const QPoly& f);
ZPoly operator*(const ZPoly& a, const ZPoly& b);
QPoly operator*(const QPoly& a, const QPoly& b);
QPoly operator-(const QPoly& a, const QPoly& b);
/// Quotient and remainder over Q.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly gcd(QPoly a, QPoly b);
Rat evaluate(const QPoly& f, const Rat& x);
Complex evaluate(const ZPoly& f, const Complex& x);

Int resultant(const ZPoly& a, const ZPoly& b);
/// Discriminant of a monic polynomial.
Int discriminant(const ZPoly& f);

/// Number of distinct real roots (Sturm sequence, exact).
int count_real_roots(const ZPoly& f);

/// All complex roots, polished by Newton; real roots first (ascending), then
/// one root per conjugate pair with positive imaginary part (ascending real part).
std::vector<Complex> complex_roots(const ZPoly& f);

/// A proper monic integer factor of the monic polynomial f, if f is reducible.
/// Throws if neither irreducibility nor a factor could be established.
std::optional<ZPoly> find_factor(const ZPoly& f);

/// "x^3 + x^2 - 2*x - 1"
std::string poly_to_string(const ZPoly& f, const std::string& var = "x");
std::string poly_to_string(const QPoly& f, const std::string& var = "x");

// ------------------------------------------------------------------ F_q[x]

class FpPoly {
 public:
  FpPoly() = default;
  explicit FpPoly(std::uint64_t q) : q_(q) {}
  FpPoly(std::vector<std::uint64_t> c, std::uint64_t q);
  static FpPoly from_z(const ZPoly& f, std::uint64_t q);
  static FpPoly monomial(std::size_t deg, std::uint64_t q);

  std::uint64_t modulus() const { return q_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::uint64_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  std::uint64_t lead() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  ZPoly lift() const;

  FpPoly monic() const;
  FpPoly derivative() const;
  std::uint64_t evaluate(std::uint64_t x) const;

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.q_ == b.q_ && a.c_ == b.c_; }
  /// Deterministic total order: degree first, then coefficients from x^0 upward.
  friend bool operator<(const FpPoly& a, const FpPoly& b);

  std::string to_string(const std::string& var = "x") const;

 private:
  void normalize();
  std::uint64_t q_ = 2;
  std::vector<std::uint64_t> c_;
};

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
FpPoly operator%(const FpPoly& a, const FpPoly& b);
FpPoly gcd(FpPoly a, FpPoly b);
/// base^e mod m
FpPoly powmod(const FpPoly& base, const Int& e, const FpPoly& m);

/// Complete factorization into monic irreducibles with multiplicities, sorted by operator<.
std::vector<std::pair<FpPoly, int>> factor(const FpPoly& f);
bool is_irreducible(const FpPoly& f);

// ------------------------------------------------------------ F_{q^f}

/// The finite field F_q[x]/(g) with g monic irreducible. Elements are
/// coefficient vectors of length deg g.
class FiniteField {
 public:
  using Elt = std::vector<std::uint64_t>;

  FiniteField() = default;
  explicit FiniteField(FpPoly g);

  std::uint64_t characteristic() const { return g_.modulus(); }
  int degree() const { return g_.degree(); }
  /// q^f as an integer.
  const Int& order() const { return order_; }
  const FpPoly& modulus_poly() const { return g_; }

  Elt zero() const { return Elt(static_cast<std::size_t>(degree()), 0); }
  Elt one() const;
  Elt from_poly(const FpPoly& a) const;
  bool is_zero(const Elt& a) const;
  Elt mul(const Elt& a, const Elt& b) const;
  Elt pow(const Elt& a, const Int& e) const;
  Elt inv(const Elt& a) const;
  /// Integer encoding: sum a_i q^i. Used for deterministic enumeration.
  Int encode(const Elt& a) const;
  Elt decode(Int n) const;

  /// Smallest (by encoding) generator of the multiplicative group.
  const Elt& primitive_root() const { return primitive_root_; }
  /// Discrete logarithm of a (nonzero) modulo ell^k, where ell^k divides order - 1,
  /// relative to primitive_root().
  Int dlog_mod_prime_power(const Elt& a, const Int& ell, int k) const;

 private:
  FpPoly g_;
  Int order_;
  Elt primitive_root_;
};

}  // namespace tclab
