#include "tclab/integer.hpp"

#include <stdexcept>

namespace tclab {

Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::uint64_t mod_u64(const Int& a, std::uint64_t m) {
  return mpz_fdiv_ui(a.get_mpz_t(), m);
}

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Int pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

Int xgcd(const Int& a, const Int& b, Int& s, Int& t) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % d == 0) return n == d;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1 || x == 0) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int valuation(const Int& n, const Int& p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  Int m = abs(n);
  int v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++v;
  }
  return v;
}

std::vector<std::pair<Int, int>> factor_bounded(const Int& n, std::uint64_t bound, Int& cofactor) {
  if (n == 0) throw std::invalid_argument("factor of zero");
  std::vector<std::pair<Int, int>> out;
  Int m = abs(n);
  bool stopped_at_sqrt = true;
  for (std::uint64_t d = 2;; d += (d == 2 ? 1 : 2)) {
    if (Int(d) * d > m) break;
    if (d > bound) {
      stopped_at_sqrt = false;
      break;
    }
    if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      int e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
        ++e;
      }
      out.emplace_back(Int(d), e);
    }
  }
  // When the loop ran past sqrt(m), what remains is 1 or a prime.
  if (stopped_at_sqrt && m > 1 && m <= bound) {
    out.emplace_back(m, 1);
    m = 1;
  }
  cofactor = m;
  return out;
}

std::vector<std::pair<Int, int>> factor(const Int& n) {
  if (n == 0) throw std::invalid_argument("factor of zero");
  std::vector<std::pair<Int, int>> out;
  Int m = abs(n);
  for (unsigned long d = 2; Int(d) * d <= m; d += (d == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      int e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
        ++e;
      }
      out.emplace_back(Int(d), e);
    }
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  Int s, t;
  Int g = xgcd(Int(static_cast<unsigned long>(a % m)), Int(static_cast<unsigned long>(m)), s, t);
  if (g != 1) throw std::domain_error("invmod: not invertible");
  return mod_u64(s, m);
}

bool is_square(const Int& n, Int& root) {
  if (n < 0) return false;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  return true;
}

std::string to_string(const Int& a) { return a.get_str(); }

std::string to_string(const Rat& a) { return a.get_str(); }

Rat parse_rational(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("not a rational number: '" + s + "'");
  r.canonicalize();
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  return r;
}

}  // namespace tclab
