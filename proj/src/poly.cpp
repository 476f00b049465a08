#include "tclab/poly.hpp"

#include "tclab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tclab {

int degree(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }
int degree(const QPoly& f) { return static_cast<int>(f.size()) - 1; }

void trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

void trim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

QPoly to_q(const ZPoly& f) {
  QPoly g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) g[i] = f[i];
  return g;
}

ZPoly derivative(const ZPoly& f) {
  ZPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

QPoly derivative(const QPoly& f) {
  QPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  QPoly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  trim(c);
  return c;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  QPoly r = a;
  trim(r);
  QPoly q;
  const int db = degree(b);
  if (degree(r) >= db) q.assign(static_cast<std::size_t>(degree(r) - db + 1), Rat(0));
  while (!r.empty() && degree(r) >= db) {
    const int shift = degree(r) - db;
    Rat c = r.back() / b.back();
    q[static_cast<std::size_t>(shift)] = c;
    for (int i = 0; i <= db; ++i) r[static_cast<std::size_t>(i + shift)] -= c * b[static_cast<std::size_t>(i)];
    trim(r);
  }
  trim(q);
  return {q, r};
}

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rat l = a.back();
    for (auto& x : a) x /= l;
  }
  return a;
}

Rat evaluate(const QPoly& f, const Rat& x) {
  Rat acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Complex evaluate(const ZPoly& f, const Complex& x) {
  Complex acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + Complex(it->get_d(), 0);
  return acc;
}

Int resultant(const ZPoly& a, const ZPoly& b) {
  const int m = degree(a), n = degree(b);
  if (m < 0 || n < 0) return 0;
  if (m == 0 && n == 0) return 1;
  const std::size_t sz = static_cast<std::size_t>(m + n);
  IntMatrix s(sz, sz);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s(static_cast<std::size_t>(i), static_cast<std::size_t>(i + j)) = a[static_cast<std::size_t>(m - j)];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j)
      s(static_cast<std::size_t>(n + i), static_cast<std::size_t>(i + j)) = b[static_cast<std::size_t>(n - j)];
  return determinant(s);
}

Int discriminant(const ZPoly& f) {
  const int n = degree(f);
  if (n < 1 || f.back() != 1) throw std::invalid_argument("discriminant: polynomial must be monic of degree >= 1");
  if (n == 1) return 1;
  Int r = resultant(f, derivative(f));
  return ((n * (n - 1) / 2) % 2) ? Int(-r) : r;
}

namespace {

int sign_at_infinity(const QPoly& f, bool positive) {
  if (f.empty()) return 0;
  int s = sgn(f.back());
  if (!positive && degree(f) % 2 == 1) s = -s;
  return s;
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int count_real_roots(const ZPoly& f0) {
  QPoly f = to_q(f0);
  trim(f);
  if (degree(f) < 1) return 0;
  // work with the squarefree part so the count is of distinct roots
  QPoly g = gcd(f, derivative(f));
  if (degree(g) > 0) f = divmod(f, g).first;
  std::vector<QPoly> seq{f, derivative(f)};
  while (!seq.back().empty() && degree(seq.back()) > 0) {
    QPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.empty()) break;
    for (auto& x : r) x = -x;
    seq.push_back(r);
  }
  std::vector<int> lo, hi;
  for (const auto& s : seq) {
    lo.push_back(sign_at_infinity(s, false));
    hi.push_back(sign_at_infinity(s, true));
  }
  return sign_changes(lo) - sign_changes(hi);
}

std::vector<Complex> complex_roots(const ZPoly& f) {
  const int n = degree(f);
  if (n < 1) return {};
  std::vector<Complex> coef(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) coef[i] = Complex(f[i].get_d() / f.back().get_d(), 0);
  auto eval = [&](const Complex& x, Complex& d) {
    Complex p = 0;
    d = 0;
    for (int i = n; i >= 0; --i) {
      d = d * x + p;
      p = p * x + coef[static_cast<std::size_t>(i)];
    }
    return p;
  };
  long double radius = 0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(coef[static_cast<std::size_t>(i)]));
  radius = 1 + radius;
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    long double ang = 2.0L * 3.14159265358979323846L * i / n + 0.4L;
    z[static_cast<std::size_t>(i)] = std::polar(radius * 0.5L, ang);
  }
  // Aberth iteration
  for (int iter = 0; iter < 500; ++iter) {
    long double move = 0;
    for (int i = 0; i < n; ++i) {
      Complex d;
      Complex p = eval(z[static_cast<std::size_t>(i)], d);
      if (p == Complex(0)) continue;
      Complex ratio = p / d;
      Complex sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) sum += 1.0L / (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
      Complex w = ratio / (1.0L - ratio * sum);
      z[static_cast<std::size_t>(i)] -= w;
      move = std::max(move, std::abs(w));
    }
    if (move < 1e-17L) break;
  }
  for (auto& x : z) {
    for (int k = 0; k < 3; ++k) {
      Complex d;
      Complex p = eval(x, d);
      if (std::abs(d) > 0) x -= p / d;
    }
  }
  const long double eps = 1e-9L;
  std::vector<Complex> real, cplx;
  for (auto& x : z) {
    if (std::abs(x.imag()) < eps * std::max(1.0L, std::abs(x)))
      real.emplace_back(x.real(), 0);
    else if (x.imag() > 0)
      cplx.push_back(x);
  }
  std::sort(real.begin(), real.end(), [](const Complex& a, const Complex& b) { return a.real() < b.real(); });
  std::sort(cplx.begin(), cplx.end(), [](const Complex& a, const Complex& b) {
    if (std::abs(a.real() - b.real()) > 1e-12L) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  if (static_cast<int>(real.size() + 2 * cplx.size()) != n)
    throw std::runtime_error("complex_roots: failed to separate roots of " + poly_to_string(f));
  real.insert(real.end(), cplx.begin(), cplx.end());
  return real;
}

namespace {

// Exact division of monic integer polynomials; nullopt if not divisible.
std::optional<ZPoly> exact_quotient(const ZPoly& f, const ZPoly& g) {
  auto [q, r] = divmod(to_q(f), to_q(g));
  if (!r.empty()) return std::nullopt;
  ZPoly out;
  for (auto& c : q) {
    if (c.get_den() != 1) return std::nullopt;
    out.push_back(c.get_num());
  }
  return out;
}

}  // namespace

std::optional<ZPoly> find_factor(const ZPoly& f) {
  const int n = degree(f);
  if (n < 1 || f.back() != 1) throw std::invalid_argument("find_factor: polynomial must be monic");
  if (n == 1) return std::nullopt;
  // repeated factors
  QPoly g = gcd(to_q(f), derivative(to_q(f)));
  if (degree(g) > 0) {
    ZPoly z;
    for (auto& c : g) z.push_back(c.get_num());
    return z;
  }
  // degrees of possible factors allowed by factorizations mod several good primes
  std::set<int> allowed;
  for (int d = 1; d < n; ++d) allowed.insert(d);
  Int disc = discriminant(f);
  int good = 0;
  for (std::uint64_t q = 3; good < 40 && !allowed.empty(); q += 2) {
    if (!is_prime(q) || mpz_divisible_ui_p(disc.get_mpz_t(), q)) continue;
    ++good;
    auto fac = factor(FpPoly::from_z(f, q));
    std::set<int> sums{0};
    for (auto& [h, e] : fac) {
      std::set<int> next = sums;
      for (int s : sums) next.insert(s + h.degree() * e);
      sums = std::move(next);
    }
    std::set<int> keep;
    for (int d : allowed)
      if (sums.count(d)) keep.insert(d);
    allowed = std::move(keep);
  }
  if (allowed.empty()) return std::nullopt;
  // candidate factors from subsets of complex roots
  std::vector<Complex> roots;
  for (auto& r : complex_roots(f)) {
    roots.push_back(r);
    if (std::abs(r.imag()) > 0) roots.push_back(std::conj(r));
  }
  for (int d : allowed) {
    if (d > n / 2) continue;
    std::vector<int> idx(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (;;) {
      std::vector<Complex> prod{Complex(1)};
      for (int i : idx) {
        std::vector<Complex> next(prod.size() + 1, Complex(0));
        for (std::size_t k = 0; k < prod.size(); ++k) {
          next[k + 1] += prod[k];
          next[k] -= prod[k] * roots[static_cast<std::size_t>(i)];
        }
        prod = std::move(next);
      }
      ZPoly cand;
      bool ok = true;
      for (auto& c : prod) {
        if (std::abs(c.imag()) > 1e-6L * (1 + std::abs(c.real()))) ok = false;
        cand.push_back(Int(static_cast<double>(std::llround(c.real()))));
      }
      if (ok && exact_quotient(f, cand)) return cand;
      int pos = d - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - d + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < d; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  // every monic factor is the product over a subset of the roots, and no subset gave one
  return std::nullopt;
}

namespace {

template <class C>
std::string render(const std::vector<C>& f, const std::string& var) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    C c = f[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    bool neg = c < 0;
    C a = neg ? C(-c) : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (i == 0 || a != 1) {
      os << a.get_str();
      if (i > 0) os << "*";
    }
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

}  // namespace

std::string poly_to_string(const ZPoly& f, const std::string& var) { return render(f, var); }
std::string poly_to_string(const QPoly& f, const std::string& var) { return render(f, var); }

// ------------------------------------------------------------------ F_q[x]

FpPoly::FpPoly(std::vector<std::uint64_t> c, std::uint64_t q) : q_(q), c_(std::move(c)) {
  for (auto& x : c_) x %= q_;
  normalize();
}

FpPoly FpPoly::from_z(const ZPoly& f, std::uint64_t q) {
  FpPoly out(q);
  for (const auto& c : f) out.c_.push_back(mod_u64(c, q));
  out.normalize();
  return out;
}

FpPoly FpPoly::monomial(std::size_t deg, std::uint64_t q) {
  FpPoly out(q);
  out.c_.assign(deg + 1, 0);
  out.c_[deg] = 1 % q;
  out.normalize();
  return out;
}

ZPoly FpPoly::lift() const {
  ZPoly out;
  for (auto c : c_) out.emplace_back(static_cast<unsigned long>(c));
  return out;
}

void FpPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::monic() const {
  if (c_.empty()) return *this;
  std::uint64_t inv = invmod(c_.back(), q_);
  FpPoly out = *this;
  for (auto& x : out.c_) x = mulmod(x, inv, q_);
  return out;
}

FpPoly FpPoly::derivative() const {
  FpPoly out(q_);
  for (std::size_t i = 1; i < c_.size(); ++i) out.c_.push_back(mulmod(c_[i], i % q_, q_));
  out.normalize();
  return out;
}

std::uint64_t FpPoly::evaluate(std::uint64_t x) const {
  std::uint64_t acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (mulmod(acc, x, q_) + *it) % q_;
  return acc;
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  FpPoly out(a.q_);
  out.c_.assign(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = (a[i] + b[i]) % a.q_;
  out.normalize();
  return out;
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
  FpPoly out(a.q_);
  out.c_.assign(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = (a[i] + a.q_ - b[i]) % a.q_;
  out.normalize();
  return out;
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  FpPoly out(a.q_);
  if (a.c_.empty() || b.c_.empty()) return out;
  out.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out.c_[i + j] = (out.c_[i + j] + mulmod(a.c_[i], b.c_[j], a.q_)) % a.q_;
  out.normalize();
  return out;
}

bool operator<(const FpPoly& a, const FpPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.c_ < b.c_;
}

std::string FpPoly::to_string(const std::string& var) const { return poly_to_string(lift(), var); }

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
  if (b.is_zero()) throw std::domain_error("FpPoly division by zero");
  const std::uint64_t q = a.modulus();
  std::vector<std::uint64_t> r = a.coeffs();
  const int db = b.degree();
  std::vector<std::uint64_t> quo;
  if (static_cast<int>(r.size()) - 1 >= db) quo.assign(r.size() - static_cast<std::size_t>(db), 0);
  const std::uint64_t inv = invmod(b.lead(), q);
  for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
    std::uint64_t c = mulmod(r[static_cast<std::size_t>(i)], inv, q);
    if (c == 0) continue;
    const std::size_t shift = static_cast<std::size_t>(i - db);
    quo[shift] = c;
    for (int j = 0; j <= db; ++j) {
      auto& x = r[shift + static_cast<std::size_t>(j)];
      x = (x + q - mulmod(c, b[static_cast<std::size_t>(j)], q)) % q;
    }
  }
  return {FpPoly(quo, q), FpPoly(r, q)};
}

FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }

FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

FpPoly powmod(const FpPoly& base, const Int& e, const FpPoly& m) {
  FpPoly result = FpPoly({1}, m.modulus()) % m;
  FpPoly b = base % m;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % m;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b) % m;
  }
  return result;
}

namespace {

// p-th root of a polynomial whose derivative vanishes (characteristic p).
FpPoly pth_root(const FpPoly& f) {
  const std::uint64_t q = f.modulus();
  std::vector<std::uint64_t> c;
  for (std::size_t i = 0; i < f.coeffs().size(); i += q) c.push_back(f.coeffs()[i]);
  // coefficients lie in the prime field, where x^q = x
  return FpPoly(c, q);
}

void squarefree_rec(const FpPoly& f, int mult, std::vector<std::pair<FpPoly, int>>& out) {
  if (f.degree() < 1) return;
  FpPoly d = f.derivative();
  if (d.is_zero()) {
    squarefree_rec(pth_root(f), mult * static_cast<int>(f.modulus()), out);
    return;
  }
  FpPoly c = gcd(f, d);
  FpPoly w = divmod(f, c).first;
  int i = 1;
  while (w.degree() > 0) {
    FpPoly y = gcd(w, c);
    FpPoly z = divmod(w, y).first;
    if (z.degree() > 0) out.emplace_back(z.monic(), i * mult);
    ++i;
    w = y;
    c = divmod(c, y).first;
  }
  if (c.degree() > 0) squarefree_rec(c.monic(), mult, out);
}

std::vector<std::pair<FpPoly, int>> distinct_degree(const FpPoly& f) {
  std::vector<std::pair<FpPoly, int>> out;
  const std::uint64_t q = f.modulus();
  FpPoly rest = f;
  FpPoly x = FpPoly::monomial(1, q);
  FpPoly h = x % rest;
  for (int d = 1; 2 * d <= rest.degree(); ++d) {
    h = powmod(h, Int(static_cast<unsigned long>(q)), rest);
    FpPoly g = gcd(rest, h - x);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      rest = divmod(rest, g).first;
      h = h % rest;
    }
  }
  if (rest.degree() > 0) out.emplace_back(rest.monic(), rest.degree());
  return out;
}

void equal_degree(const FpPoly& f, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  const std::uint64_t q = f.modulus();
  std::uniform_int_distribution<std::uint64_t> coef(0, q - 1);
  for (;;) {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(f.degree()));
    for (auto& x : c) x = coef(rng);
    FpPoly a(c, q);
    if (a.degree() < 1) continue;
    FpPoly b;
    if (q == 2) {
      // trace map a + a^2 + ... + a^(2^(d-1))
      FpPoly t = a % f;
      b = t;
      for (int i = 1; i < d; ++i) {
        t = (t * t) % f;
        b = b + t;
      }
    } else {
      Int e = (pow(Int(static_cast<unsigned long>(q)), static_cast<unsigned long>(d)) - 1) / 2;
      b = powmod(a, e, f) - FpPoly({1}, q);
    }
    FpPoly g = gcd(f, b);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(divmod(f, g).first.monic(), d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<FpPoly, int>> factor(const FpPoly& f0) {
  if (f0.is_zero()) throw std::invalid_argument("factor of the zero polynomial");
  std::vector<std::pair<FpPoly, int>> sqf;
  squarefree_rec(f0.monic(), 1, sqf);
  std::mt19937_64 rng(0x5eed);
  std::vector<std::pair<FpPoly, int>> out;
  for (auto& [g, mult] : sqf)
    for (auto& [h, d] : distinct_degree(g)) {
      std::vector<FpPoly> parts;
      equal_degree(h, d, rng, parts);
      for (auto& part : parts) out.emplace_back(part, mult);
    }
  // merge equal factors coming from different squarefree layers
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<FpPoly, int>> merged;
  for (auto& pr : out) {
    if (!merged.empty() && merged.back().first == pr.first)
      merged.back().second += pr.second;
    else
      merged.push_back(pr);
  }
  return merged;
}

bool is_irreducible(const FpPoly& f) {
  auto fac = factor(f);
  return fac.size() == 1 && fac[0].second == 1;
}

// ------------------------------------------------------------ F_{q^f}

FiniteField::FiniteField(FpPoly g) : g_(g.monic()) {
  if (g_.degree() < 1) throw std::invalid_argument("FiniteField: modulus must have degree >= 1");
  order_ = tclab::pow(Int(static_cast<unsigned long>(g_.modulus())), static_cast<unsigned long>(g_.degree()));
  const Int n = order_ - 1;
  std::vector<Int> cofactors;
  for (auto& [ell, e] : tclab::factor(n)) cofactors.push_back(n / ell);
  // encodings below q are the prime field, which holds no generator when the degree exceeds 1
  const Int start = g_.degree() > 1 ? Int(static_cast<unsigned long>(g_.modulus())) : Int(1);
  for (Int k = start; k < order_; ++k) {
    Elt a = decode(k);
    bool generator = true;
    for (const auto& c : cofactors)
      if (pow(a, c) == one()) {
        generator = false;
        break;
      }
    if (generator) {
      primitive_root_ = std::move(a);
      return;
    }
  }
  throw std::logic_error("FiniteField: no primitive root (modulus not irreducible?)");
}

FiniteField::Elt FiniteField::one() const {
  Elt e = zero();
  e[0] = 1 % characteristic();
  return e;
}

FiniteField::Elt FiniteField::from_poly(const FpPoly& a) const {
  FpPoly r = a % g_;
  Elt e = zero();
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = r[i];
  return e;
}

bool FiniteField::is_zero(const Elt& a) const {
  return std::all_of(a.begin(), a.end(), [](std::uint64_t x) { return x == 0; });
}

FiniteField::Elt FiniteField::mul(const Elt& a, const Elt& b) const {
  const std::uint64_t q = characteristic();
  const std::size_t f = a.size();
  std::vector<std::uint64_t> prod(2 * f - 1, 0);
  for (std::size_t i = 0; i < f; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], q)) % q;
  }
  // reduce by the monic modulus
  for (std::size_t i = prod.size(); i-- > f;) {
    std::uint64_t c = prod[i];
    if (c == 0) continue;
    prod[i] = 0;
    for (std::size_t j = 0; j < f; ++j) prod[i - f + j] = (prod[i - f + j] + q - mulmod(c, g_[j], q)) % q;
  }
  prod.resize(f);
  return prod;
}

FiniteField::Elt FiniteField::pow(const Elt& a, const Int& e) const {
  Elt r = one();
  Elt b = a;
  Int k = e;
  if (k < 0) {
    b = inv(a);
    k = -k;
  }
  const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mul(r, r);
    if (mpz_tstbit(k.get_mpz_t(), i)) r = mul(r, b);
  }
  return r;
}

FiniteField::Elt FiniteField::inv(const Elt& a) const {
  if (is_zero(a)) throw std::domain_error("FiniteField: inverse of zero");
  return pow(a, order_ - 2);
}

Int FiniteField::encode(const Elt& a) const {
  Int n = 0;
  const Int q = static_cast<unsigned long>(characteristic());
  for (std::size_t i = a.size(); i-- > 0;) n = n * q + static_cast<unsigned long>(a[i]);
  return n;
}

FiniteField::Elt FiniteField::decode(Int n) const {
  Elt e = zero();
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = mpz_fdiv_ui(n.get_mpz_t(), characteristic());
    mpz_fdiv_q_ui(n.get_mpz_t(), n.get_mpz_t(), characteristic());
  }
  return e;
}

Int FiniteField::dlog_mod_prime_power(const Elt& a, const Int& ell, int k) const {
  if (is_zero(a)) throw std::domain_error("dlog of zero");
  const Int n = order_ - 1;
  const Int ellk = tclab::pow(ell, static_cast<unsigned long>(k));
  if (k == 0) return 0;
  if (!mpz_divisible_p(n.get_mpz_t(), ellk.get_mpz_t()))
    throw std::invalid_argument("dlog_mod_prime_power: ell^k does not divide the group order");
  const Int m = n / ellk;
  const Elt h = pow(primitive_root_, m);  // order ell^k
  const Elt b = pow(a, m);
  const Elt zeta = pow(h, ellk / ell);  // order ell
  Int x = 0;
  Int ell_i = 1;
  for (int i = 0; i < k; ++i) {
    Elt c = mul(b, pow(h, -x));
    c = pow(c, ellk / (ell_i * ell));
    Elt t = one();
    Int digit = -1;
    for (Int d = 0; d < ell; ++d) {
      if (t == c) {
        digit = d;
        break;
      }
      t = mul(t, zeta);
    }
    if (digit < 0) throw std::logic_error("dlog_mod_prime_power: element not in the subgroup");
    x += digit * ell_i;
    ell_i *= ell;
  }
  return x;
}

}  // namespace tclab
