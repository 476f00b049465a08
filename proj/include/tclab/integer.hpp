#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tclab {

using Int = mpz_class;
using Rat = mpq_class;

/// Least nonnegative residue of a modulo m (m > 0).
Int mod(const Int& a, const Int& m);
std::uint64_t mod_u64(const Int& a, std::uint64_t m);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int pow(const Int& base, unsigned long e);
Int abs(const Int& a);

/// Extended gcd: returns g = gcd(a, b) >= 0 with s*a + t*b = g.
Int xgcd(const Int& a, const Int& b, Int& s, Int& t);

bool is_prime(const Int& n);
bool is_prime(std::uint64_t n);

/// Exponent of p in n (n != 0).
int valuation(const Int& n, const Int& p);

/// Trial division. Returns (prime, exponent) pairs in increasing order.
std::vector<std::pair<Int, int>> factor(const Int& n);

/// Trial division by primes <= bound only. `cofactor` receives the unfactored part (>= 1).
std::vector<std::pair<Int, int>> factor_bounded(const Int& n, std::uint64_t bound, Int& cofactor);

std::vector<std::uint64_t> primes_up_to(std::uint64_t n);
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

/// Perfect square test; on success `root` holds the nonnegative square root.
bool is_square(const Int& n, Int& root);

std::string to_string(const Int& a);
std::string to_string(const Rat& a);
Rat parse_rational(const std::string& s);

}  // namespace tclab
