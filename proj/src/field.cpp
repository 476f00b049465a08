#include "tclab/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tclab {

namespace {

void normalize(NFElement& a) {
  if (a.den < 0) {
    a.den = -a.den;
    for (auto& c : a.num) c = -c;
  }
  Int g = a.den;
  for (const auto& c : a.num) {
    if (g == 1) break;
    g = gcd(g, c);
  }
  if (g != 1 && g != 0) {
    a.den /= g;
    for (auto& c : a.num) c /= g;
  }
}

// f(x) reduced modulo the monic polynomial m, over Q.
QPoly reduce_mod(const QPoly& a, const ZPoly& m) { return divmod(a, to_q(m)).second; }

std::vector<Rat> row_of(const RatMatrix& m, std::size_t i) {
  std::vector<Rat> r(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) r[j] = m(i, j);
  return r;
}

}  // namespace

bool NFElement::is_zero() const {
  return std::all_of(num.begin(), num.end(), [](const Int& c) { return c == 0; });
}

// ------------------------------------------------------------------ elements

NFElement NumberField::zero() const { return {std::vector<Int>(static_cast<std::size_t>(n_)), 1}; }

NFElement NumberField::one() const { return from_int(1); }

NFElement NumberField::from_int(const Int& a) const {
  QPoly p{Rat(a)};
  return from_power_basis(p);
}

NFElement NumberField::from_coords(const std::vector<Rat>& c) const {
  if (c.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("from_coords: wrong length");
  Int den = 1;
  for (const auto& x : c) den = lcm(den, x.get_den());
  NFElement a;
  a.den = den;
  for (const auto& x : c) a.num.push_back(x.get_num() * (den / x.get_den()));
  normalize(a);
  return a;
}

NFElement NumberField::from_int_coords(const std::vector<Int>& c) const {
  if (c.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("from_int_coords: wrong length");
  return {c, 1};
}

NFElement NumberField::from_power_basis(const QPoly& a) const {
  QPoly r = reduce_mod(a, poly_);
  std::vector<Rat> pw(static_cast<std::size_t>(n_));
  for (std::size_t i = 0; i < r.size(); ++i) pw[i] = r[i];
  return from_coords(pw * basis_inv_);
}

QPoly NumberField::to_power_basis(const NFElement& a) const {
  std::vector<Rat> c(a.num.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = Rat(a.num[i], a.den);
  for (auto& x : c) x.canonicalize();
  QPoly p = c * basis_;
  trim(p);
  return p;
}

NFElement NumberField::theta() const { return from_power_basis(QPoly{0, 1}); }

NFElement NumberField::add(const NFElement& a, const NFElement& b) const {
  NFElement c;
  c.den = a.den * b.den;
  c.num.resize(static_cast<std::size_t>(n_));
  for (std::size_t i = 0; i < c.num.size(); ++i) c.num[i] = a.num[i] * b.den + b.num[i] * a.den;
  normalize(c);
  return c;
}

NFElement NumberField::neg(const NFElement& a) const {
  NFElement c = a;
  for (auto& x : c.num) x = -x;
  return c;
}

NFElement NumberField::sub(const NFElement& a, const NFElement& b) const { return add(a, neg(b)); }

NFElement NumberField::mul(const NFElement& a, const NFElement& b) const {
  NFElement c;
  c.num.assign(static_cast<std::size_t>(n_), 0);
  c.den = a.den * b.den;
  for (int i = 0; i < n_; ++i) {
    if (a.num[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < n_; ++j) {
      if (b.num[static_cast<std::size_t>(j)] == 0) continue;
      Int t = a.num[static_cast<std::size_t>(i)] * b.num[static_cast<std::size_t>(j)];
      const auto& m = mult_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (int k = 0; k < n_; ++k)
        if (m[static_cast<std::size_t>(k)] != 0) c.num[static_cast<std::size_t>(k)] += t * m[static_cast<std::size_t>(k)];
    }
  }
  normalize(c);
  return c;
}

NFElement NumberField::mul_int(const NFElement& a, const Int& k) const {
  NFElement c = a;
  for (auto& x : c.num) x *= k;
  normalize(c);
  return c;
}

NFElement NumberField::div_int(const NFElement& a, const Int& k) const {
  if (k == 0) throw std::domain_error("div_int: division by zero");
  NFElement c = a;
  c.den *= k;
  normalize(c);
  return c;
}

RatMatrix NumberField::mult_matrix(const NFElement& a) const {
  const std::size_t n = static_cast<std::size_t>(n_);
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    NFElement bi = zero();
    bi.num[i] = 1;
    NFElement prod = mul(bi, a);
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = Rat(prod.num[j], prod.den);
      m(i, j).canonicalize();
    }
  }
  return m;
}

NFElement NumberField::inv(const NFElement& a) const {
  if (a.is_zero()) throw std::domain_error("inverse of zero");
  auto mi = mult_matrix(a).inverse();
  if (!mi) throw std::logic_error("inverse: singular multiplication matrix");
  std::vector<Rat> one_c(static_cast<std::size_t>(n_));
  NFElement o = one();
  for (std::size_t i = 0; i < one_c.size(); ++i) one_c[i] = Rat(o.num[i], o.den);
  return from_coords(one_c * *mi);
}

NFElement NumberField::pow(const NFElement& a, const Int& e) const {
  NFElement base = a;
  Int k = e;
  if (k < 0) {
    base = inv(a);
    k = -k;
  }
  NFElement r = one();
  const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mul(r, r);
    if (mpz_tstbit(k.get_mpz_t(), i)) r = mul(r, base);
  }
  return r;
}

Rat NumberField::norm(const NFElement& a) const { return mult_matrix(a).determinant(); }

Rat NumberField::trace(const NFElement& a) const {
  RatMatrix m = mult_matrix(a);
  Rat t = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

ZPoly NumberField::charpoly(const NFElement& a) const {
  // Faddeev-LeVerrier
  const std::size_t n = static_cast<std::size_t>(n_);
  RatMatrix A = mult_matrix(a);
  std::vector<Rat> c(n + 1);
  c[n] = 1;
  RatMatrix M(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    RatMatrix next = A * M;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    M = next;
    RatMatrix AM = A * M;
    Rat tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += AM(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  ZPoly out;
  for (auto& x : c) {
    if (x.get_den() != 1) throw std::domain_error("charpoly: element is not integral");
    out.push_back(x.get_num());
  }
  return out;
}

std::vector<Complex> NumberField::embed(const NFElement& a) const {
  std::vector<Complex> out(basis_embed_.size(), Complex(0));
  const long double d = a.den.get_d();
  for (std::size_t i = 0; i < basis_embed_.size(); ++i) {
    for (std::size_t j = 0; j < a.num.size(); ++j)
      if (a.num[j] != 0) out[i] += basis_embed_[i][j] * static_cast<long double>(a.num[j].get_d());
    out[i] /= d;
  }
  return out;
}

long double NumberField::t2(const NFElement& a) const {
  auto e = embed(a);
  long double s = 0;
  for (std::size_t i = 0; i < e.size(); ++i) s += (static_cast<int>(i) < r1_ ? 1 : 2) * std::norm(e[i]);
  return s;
}

void NumberField::enumerate_short(const IntMatrix& basis, long double bound,
                                  const std::function<bool(const NFElement&)>& visit) const {
  RealMatrix g = gram_of(basis, t2_gram_);
  IntMatrix T = lll(g);
  IntMatrix reduced = T * basis;
  RealMatrix gr = gram_of(reduced, t2_gram_);
  fincke_pohst(gr, bound, [&](const std::vector<long long>& x, long double) {
    std::vector<Int> xi(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xi[i] = static_cast<long>(x[i]);
    return visit(from_int_coords(xi * reduced));
  });
}

std::string NumberField::element_to_string(const NFElement& a) const { return poly_to_string(to_power_basis(a), "t"); }

void NumberField::finish_setup() {
  const std::size_t n = static_cast<std::size_t>(n_);
  auto bi = basis_.inverse();
  if (!bi) throw std::invalid_argument("integral basis is singular");
  basis_inv_ = *bi;
  mult_.assign(n, std::vector<std::vector<Int>>(n, std::vector<Int>(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      QPoly pi = row_of(basis_, i), pj = row_of(basis_, j);
      QPoly prod = reduce_mod(pi * pj, poly_);
      std::vector<Rat> pw(n);
      for (std::size_t k = 0; k < prod.size(); ++k) pw[k] = prod[k];
      std::vector<Rat> coords = pw * basis_inv_;
      for (std::size_t k = 0; k < n; ++k) {
        if (coords[k].get_den() != 1)
          throw std::invalid_argument("integral basis is not closed under multiplication");
        mult_[i][j][k] = coords[k].get_num();
        mult_[j][i][k] = coords[k].get_num();
      }
    }
  roots_ = complex_roots(poly_);
  if (static_cast<int>(roots_.size()) != r1_ + r2_) throw std::logic_error("root count disagrees with signature");
  basis_embed_.assign(roots_.size(), std::vector<Complex>(n));
  for (std::size_t i = 0; i < roots_.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0, pw = 1;
      for (std::size_t k = 0; k < n; ++k) {
        s += pw * static_cast<long double>(basis_(j, k).get_d());
        pw *= roots_[i];
      }
      basis_embed_[i][j] = s;
    }
  t2_gram_.assign(n, std::vector<long double>(n, 0));
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    long double w = static_cast<int>(i) < r1_ ? 1 : 2;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        t2_gram_[j][k] += w * std::real(basis_embed_[i][j] * std::conj(basis_embed_[i][k]));
  }
}

// ------------------------------------------------------------- construction

namespace {

// Dedekind criterion: is Z[theta] maximal at q?
bool dedekind_maximal(const ZPoly& f, std::uint64_t q) {
  auto fac = factor(FpPoly::from_z(f, q));
  FpPoly g({1}, q), h({1}, q);
  for (auto& [gi, e] : fac) {
    g = g * gi;
    for (int k = 1; k < e; ++k) h = h * gi;
  }
  ZPoly gh = g.lift() * h.lift();
  ZPoly F(std::max(f.size(), gh.size()));
  for (std::size_t i = 0; i < F.size(); ++i) {
    Int a = i < f.size() ? f[i] : Int(0);
    Int b = i < gh.size() ? gh[i] : Int(0);
    F[i] = (a - b) / static_cast<unsigned long>(q);
  }
  FpPoly Fq = FpPoly::from_z(F, q);
  FpPoly d = gcd(gcd(Fq, g), h);
  return d.degree() == 0;
}

// Coordinates mod q of a^e for integral a.
NFElement powmod_elt(const NumberField& K, const NFElement& a, const Int& e, const Int& q) {
  NFElement r = K.one();
  auto red = [&](NFElement x) {
    for (auto& c : x.num) c = mod(c, q);
    return x;
  };
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = red(K.mul(r, r));
    if (mpz_tstbit(e.get_mpz_t(), i)) r = red(K.mul(r, a));
  }
  return r;
}

// Pohst-Zassenhaus: the order is q-maximal iff the multiplier ring of its q-radical is itself.
bool multiplier_ring_maximal(const NumberField& K, std::uint64_t q) {
  const std::size_t n = static_cast<std::size_t>(K.degree());
  const Int Q = static_cast<unsigned long>(q);
  FpMatrix frob(0, n, q);
  for (std::size_t j = 0; j < n; ++j) {
    NFElement b = K.zero();
    b.num[j] = 1;
    NFElement bq = powmod_elt(K, b, Q, Q);
    std::vector<std::uint64_t> row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = mod_u64(bq.num[k], q);
    frob.append_row(row);
  }
  FpMatrix power = FpMatrix::identity(n, q);
  for (Int qk = 1; qk < static_cast<unsigned long>(n); qk *= Q) power = power * frob;
  power = power * frob;
  FpMatrix ker = fp_left_kernel(power);
  IntMatrix gens(0, n);
  for (std::size_t i = 0; i < ker.rows(); ++i) {
    std::vector<Int> r(n);
    for (std::size_t k = 0; k < n; ++k) r[k] = static_cast<unsigned long>(ker(i, k));
    gens.append_row(r);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Int> r(n);
    r[i] = Q;
    gens.append_row(r);
  }
  HermiteForm h = hermite_form(gens, false);
  IntMatrix rad(0, n);
  for (std::size_t i = 0; i < n; ++i) rad.append_row(h.H.row(i));
  FpMatrix test(0, n * n, q);
  for (std::size_t i = 0; i < n; ++i) {
    NFElement b = K.zero();
    b.num[i] = 1;
    std::vector<std::uint64_t> row;
    for (std::size_t j = 0; j < n; ++j) {
      NFElement w = K.from_int_coords(rad.row(j));
      auto c = lattice_coords(rad, K.mul(b, w).num);
      if (!c) throw std::logic_error("radical is not an ideal");
      for (auto& x : *c) row.push_back(mod_u64(x, q));
    }
    test.append_row(row);
  }
  return fp_left_kernel(test).rows() == 0;
}

}  // namespace

NumberField make_field(const ZPoly& f0, const std::optional<RatMatrix>& integral_basis, const std::string& label) {
  ZPoly f = f0;
  trim(f);
  if (degree(f) < 1) throw std::invalid_argument("defining polynomial must have degree >= 1");
  if (f.back() != 1) throw std::invalid_argument("defining polynomial must be monic");
  if (auto g = find_factor(f))
    throw std::invalid_argument("polynomial " + poly_to_string(f) + " is reducible: divisible by " + poly_to_string(*g));
  NumberField K;
  K.label_ = label.empty() ? poly_to_string(f) : label;
  K.poly_ = f;
  K.n_ = degree(f);
  K.poly_disc_ = discriminant(f);
  K.r1_ = count_real_roots(f);
  K.r2_ = (K.n_ - K.r1_) / 2;
  const std::size_t n = static_cast<std::size_t>(K.n_);

  std::vector<std::uint64_t> square_primes;
  for (auto& [q, e] : factor(K.poly_disc_))
    if (e >= 2) square_primes.push_back(q.get_ui());

  if (!integral_basis) {
    for (auto q : square_primes)
      if (!dedekind_maximal(f, q))
        throw std::invalid_argument("Z[theta] is not maximal at " + std::to_string(q) +
                                    "; supply an integral basis");
    K.basis_ = RatMatrix::identity(n);
    K.disc_ = K.poly_disc_;
    K.index_ = 1;
    K.finish_setup();
    return K;
  }

  const RatMatrix& B = *integral_basis;
  if (B.rows() != n || B.cols() != n) throw std::invalid_argument("integral basis must be n x n");
  Int D = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) D = lcm(D, B(i, j).get_den());
  // Hermite-normalize so that b_j involves theta^0..theta^j and b_0 = 1
  IntMatrix M(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M(i, n - 1 - j) = Rat(B(i, j) * D).get_num();
  HermiteForm h = hermite_form(M, false);
  if (h.rank() != n) throw std::invalid_argument("integral basis is singular");
  RatMatrix nb(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      nb(n - 1 - i, n - 1 - j) = Rat(h.H(i, j), D);
      nb(n - 1 - i, n - 1 - j).canonicalize();
    }
  K.basis_ = nb;
  Rat det = nb.determinant();
  Rat idx = 1 / det;
  if (idx < 0) idx = -idx;
  if (idx.get_den() != 1) throw std::invalid_argument("integral basis does not contain Z[theta]");
  K.index_ = idx.get_num();
  K.finish_setup();
  // Z[theta] inside the lattice
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      if (K.basis_inv_(k, j).get_den() != 1) throw std::invalid_argument("integral basis does not contain Z[theta]");
  if (nb(0, 0) != 1) throw std::invalid_argument("integral basis lattice meets Q in more than Z");
  Rat disc = Rat(K.poly_disc_) / (K.index_ * K.index_);
  if (disc.get_den() != 1) throw std::invalid_argument("integral basis has a non-integral discriminant");
  K.disc_ = disc.get_num();
  for (auto& [q, e] : factor(K.disc_))
    if (e >= 2 && !multiplier_ring_maximal(K, q.get_ui()))
      throw std::invalid_argument("supplied basis spans an order that is not maximal at " + q.get_str());
  return K;
}

std::optional<std::vector<Int>> lattice_coords(const IntMatrix& hnf, const std::vector<Int>& x) {
  return solve_left(hnf, x);
}

// ------------------------------------------------------------------ ideals

Int Ideal::norm() const {
  Int d = 1;
  for (std::size_t i = 0; i < hnf.rows(); ++i) d *= hnf(i, i);
  return abs(d);
}

namespace {

Ideal ideal_from_rows(const IntMatrix& rows, std::size_t n) {
  HermiteForm h = hermite_form(rows, false);
  if (h.rank() != n) throw std::invalid_argument("ideal generators do not span a full lattice");
  Ideal I;
  I.hnf = IntMatrix(0, n);
  for (std::size_t i = 0; i < n; ++i) I.hnf.append_row(h.H.row(i));
  return I;
}

}  // namespace

Ideal ideal_from_generators(const NumberField& K, const std::vector<NFElement>& gens) {
  const std::size_t n = static_cast<std::size_t>(K.degree());
  IntMatrix rows(0, n);
  for (const auto& g : gens) {
    if (!g.is_integral()) throw std::invalid_argument("ideal generators must be integral");
    for (std::size_t j = 0; j < n; ++j) {
      NFElement b = K.zero();
      b.num[j] = 1;
      rows.append_row(K.mul(g, b).num);
    }
  }
  return ideal_from_rows(rows, n);
}

Ideal ideal_mul(const NumberField& K, const Ideal& a, const Ideal& b) {
  const std::size_t n = static_cast<std::size_t>(K.degree());
  IntMatrix rows(0, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      rows.append_row(K.mul(K.from_int_coords(a.hnf.row(i)), K.from_int_coords(b.hnf.row(j))).num);
  return ideal_from_rows(rows, n);
}

Ideal ideal_pow(const NumberField& K, const Ideal& a, unsigned long e) {
  Ideal r = unit_ideal(K);
  Ideal b = a;
  while (e) {
    if (e & 1) r = ideal_mul(K, r, b);
    e >>= 1;
    if (e) b = ideal_mul(K, b, b);
  }
  return r;
}

Ideal unit_ideal(const NumberField& K) {
  Ideal I;
  I.hnf = IntMatrix::identity(static_cast<std::size_t>(K.degree()));
  return I;
}

bool contains(const Ideal& I, const NFElement& x) {
  if (!x.is_integral()) return false;
  return lattice_coords(I.hnf, x.num).has_value();
}

// ------------------------------------------------------------ prime ideals

std::string PrimeIdeal::label() const { return q.get_str() + "_" + std::to_string(index); }

namespace {

NFElement eval_at(const NumberField& K, const ZPoly& g, const NFElement& beta) {
  NFElement acc = K.zero();
  for (std::size_t i = g.size(); i-- > 0;) acc = K.add(K.mul(acc, beta), K.from_int(g[i]));
  return acc;
}

IntMatrix power_matrix(const NumberField& K, const NFElement& beta) {
  const std::size_t n = static_cast<std::size_t>(K.degree());
  IntMatrix m(0, n);
  NFElement p = K.one();
  for (std::size_t k = 0; k < n; ++k) {
    m.append_row(p.num);
    p = K.mul(p, beta);
  }
  return m;
}

// v_P of a nonzero integral element
int valuation_integral(const NumberField& K, NFElement a, const PrimeIdeal& P) {
  if (a.is_zero()) throw std::domain_error("valuation of zero");
  int v = 0;
  for (;;) {
    NFElement t = K.mul(a, P.anti);
    bool divisible = true;
    for (const auto& c : t.num)
      if (!mpz_divisible_p(c.get_mpz_t(), P.q.get_mpz_t())) {
        divisible = false;
        break;
      }
    if (!divisible) return v;
    for (auto& c : t.num) c /= P.q;
    a = std::move(t);
    ++v;
  }
}

// a * (anti/q)^v for integral a with v = v_P(a); the result is an integral P-unit.
NFElement strip_integral(const NumberField& K, NFElement a, const PrimeIdeal& P) {
  for (;;) {
    NFElement t = K.mul(a, P.anti);
    bool divisible = true;
    for (const auto& c : t.num)
      if (!mpz_divisible_p(c.get_mpz_t(), P.q.get_mpz_t())) {
        divisible = false;
        break;
      }
    if (!divisible) return a;
    for (auto& c : t.num) c /= P.q;
    a = std::move(t);
  }
}

}  // namespace

std::vector<PrimeIdeal> factor_prime(const NumberField& K, const Int& q) {
  if (!is_prime(q)) throw std::invalid_argument("factor_prime: " + q.get_str() + " is not prime");
  const std::size_t n = static_cast<std::size_t>(K.degree());
  const std::uint64_t qq = q.get_ui();
  NFElement beta = K.theta();
  IntMatrix Mb = power_matrix(K, beta);
  Int idx = determinant(Mb);
  if (idx == 0 || mpz_divisible_p(idx.get_mpz_t(), q.get_mpz_t())) {
    // search a primitive element with index prime to q
    bool found = false;
    for (int radius = 1; radius <= 3 && !found; ++radius) {
      std::vector<long> c(n, -radius);
      for (;;) {
        NFElement cand = K.zero();
        for (std::size_t i = 0; i < n; ++i) cand.num[i] = c[i];
        IntMatrix m = power_matrix(K, cand);
        Int d = determinant(m);
        if (d != 0 && !mpz_divisible_p(d.get_mpz_t(), q.get_mpz_t())) {
          beta = cand;
          Mb = m;
          idx = d;
          found = true;
          break;
        }
        std::size_t pos = 0;
        while (pos < n && c[pos] == radius) c[pos++] = -radius;
        if (pos == n) break;
        ++c[pos];
      }
    }
    if (!found)
      throw std::domain_error("factor_prime: no primitive element with index prime to " + q.get_str() +
                              " (common index divisor); unsupported");
  }
  RatMatrix Mr(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) Mr(i, j) = Mb(i, j);
  RatMatrix C = *Mr.inverse();  // b_j = sum_k C(j,k) beta^k
  ZPoly cp = K.charpoly(beta);
  auto fac = factor(FpPoly::from_z(cp, qq));

  std::vector<PrimeIdeal> out;
  int sum_ef = 0;
  int index = 0;
  for (auto& [g, e] : fac) {
    PrimeIdeal P;
    P.q = q;
    P.e = e;
    P.f = g.degree();
    P.norm = pow(q, static_cast<unsigned long>(P.f));
    P.index = ++index;
    P.beta = beta;
    P.local_factor = g;
    P.pi = eval_at(K, g.lift(), beta);
    if (P.pi.is_zero()) P.pi = K.from_int(q);
    P.ideal = ideal_from_generators(K, {K.from_int(q), P.pi});
    P.residue_field = FiniteField(g);
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::uint64_t> coeffs(n);
      for (std::size_t k = 0; k < n; ++k) {
        const Rat& c = C(j, k);
        std::uint64_t num = mod_u64(c.get_num(), qq);
        std::uint64_t den = mod_u64(c.get_den(), qq);
        coeffs[k] = mulmod(num, invmod(den, qq), qq);
      }
      P.basis_residues.push_back(P.residue_field.from_poly(FpPoly(coeffs, qq)));
    }
    // anti-uniformizer: a nonzero solution of x * pi = 0 mod q
    RatMatrix mp = K.mult_matrix(P.pi);
    FpMatrix mq(n, n, qq);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mq.set(i, j, static_cast<long long>(mod_u64(mp(i, j).get_num(), qq)));
    FpMatrix ker = fp_left_kernel(mq);
    if (ker.rows() == 0) throw std::logic_error("factor_prime: no anti-uniformizer");
    P.anti = K.zero();
    for (std::size_t j = 0; j < n; ++j) P.anti.num[j] = static_cast<unsigned long>(ker(0, j));
    if (e == 1 && valuation_integral(K, P.pi, P) > 1) P.pi = K.add(P.pi, K.from_int(q));
    sum_ef += P.e * P.f;
    out.push_back(std::move(P));
  }
  if (sum_ef != K.degree()) throw std::logic_error("factor_prime: sum of e*f differs from the degree");
  return out;
}

std::vector<PrimeIdeal> primes_up_to_norm(const NumberField& K, const Int& bound) {
  std::vector<PrimeIdeal> out;
  if (bound < 2) return out;
  for (auto q : primes_up_to(bound.get_ui())) {
    for (auto& P : factor_prime(K, Int(static_cast<unsigned long>(q))))
      if (P.norm <= bound) out.push_back(std::move(P));
  }
  std::stable_sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    if (a.q != b.q) return a.q < b.q;
    return a.index < b.index;
  });
  return out;
}

std::vector<PrimeIdeal> select_primes(const NumberField& K, const Int& q, const std::string& selector) {
  auto all = factor_prime(K, q);
  if (selector == "all") return all;
  if (selector == "first" || selector.empty()) return {all.front()};
  std::size_t pos = 0;
  int idx = 0;
  try {
    idx = std::stoi(selector, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != selector.size() || idx < 1 || idx > static_cast<int>(all.size()))
    throw std::invalid_argument("bad prime selector '" + selector + "' for " + q.get_str());
  return {all[static_cast<std::size_t>(idx - 1)]};
}

int valuation(const NumberField& K, const NFElement& x, const PrimeIdeal& P) {
  if (x.is_zero()) throw std::domain_error("valuation of zero");
  NFElement a{x.num, 1};
  return valuation_integral(K, a, P) - P.e * valuation(x.den, P.q);
}

FiniteField::Elt reduce(const NumberField& K, const NFElement& x, const PrimeIdeal& P) {
  if (!x.is_integral()) throw std::invalid_argument("reduce: element is not integral");
  const FiniteField& F = P.residue_field;
  FiniteField::Elt r = F.zero();
  const std::uint64_t q = P.q.get_ui();
  (void)K;
  for (std::size_t j = 0; j < x.num.size(); ++j) {
    std::uint64_t c = mod_u64(x.num[j], q);
    if (c == 0) continue;
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = (r[k] + mulmod(c, P.basis_residues[j][k], q)) % q;
  }
  return r;
}

FiniteField::Elt normalized_residue(const NumberField& K, const NFElement& x, const PrimeIdeal& P) {
  if (x.is_zero()) throw std::domain_error("residue of zero");
  const FiniteField& F = P.residue_field;
  FiniteField::Elt rn = reduce(K, strip_integral(K, NFElement{x.num, 1}, P), P);
  if (x.den == 1) return rn;
  FiniteField::Elt rd = reduce(K, strip_integral(K, K.from_int(x.den), P), P);
  return F.mul(rn, F.inv(rd));
}

ResidueClass power_residue_class(const NumberField& K, const NFElement& x, const PrimeIdeal& P, std::uint64_t p) {
  if (P.q == static_cast<unsigned long>(p)) throw std::invalid_argument("power_residue_class: prime above p (wild)");
  if (valuation(K, x, P) != 0) throw std::invalid_argument("power_residue_class: element is not a unit at " + P.label());
  return local_pth_power_class(K, x, P, p);
}

ResidueClass local_pth_power_class(const NumberField& K, const NFElement& x, const PrimeIdeal& P, std::uint64_t p) {
  if (P.q == static_cast<unsigned long>(p)) throw std::invalid_argument("local_pth_power_class: prime above p (wild)");
  ResidueClass rc;
  const Int pm1 = P.norm - 1;
  if (!mpz_divisible_ui_p(pm1.get_mpz_t(), p)) return rc;
  rc.delta = 1;
  FiniteField::Elt r = normalized_residue(K, x, P);
  rc.value = P.residue_field.dlog_mod_prime_power(r, Int(static_cast<unsigned long>(p)), 1).get_ui();
  return rc;
}

std::optional<PrimeIdeal> identify_prime(const NumberField& K, const Int& q, const NFElement& x) {
  std::optional<PrimeIdeal> hit;
  for (auto& P : factor_prime(K, q)) {
    if (P.residue_field.is_zero(reduce(K, x, P))) {
      if (hit) return std::nullopt;
      hit = P;
    }
  }
  return hit;
}

// ------------------------------------------------------- roots in the field

std::vector<NFElement> nth_roots(const NumberField& K, const NFElement& x, unsigned n) {
  if (n == 0) throw std::invalid_argument("nth_roots: n must be positive");
  if (x.is_zero()) return {K.zero()};
  const std::size_t deg = static_cast<std::size_t>(K.degree());
  // z = y * den is integral with z^n = num * den^(n-1)
  NFElement X{x.num, 1};
  Int dpow = tclab::pow(x.den, n - 1);
  X = K.mul_int(X, dpow);
  auto sx = K.embed(X);
  const std::size_t r1 = static_cast<std::size_t>(K.r1());
  // candidate roots per embedding
  std::vector<std::vector<Complex>> choices;
  const long double pi = 3.14159265358979323846L;
  for (std::size_t i = 0; i < sx.size(); ++i) {
    std::vector<Complex> c;
    if (i < r1) {
      long double s = sx[i].real();
      long double mag = std::pow(std::fabs(s), 1.0L / n);
      if (n % 2 == 1)
        c.emplace_back(s < 0 ? -mag : mag, 0);
      else if (s > 0) {
        c.emplace_back(mag, 0);
        c.emplace_back(-mag, 0);
      }
    } else {
      long double mag = std::pow(std::abs(sx[i]), 1.0L / n);
      long double arg = std::arg(sx[i]);
      for (unsigned k = 0; k < n; ++k) c.push_back(std::polar(mag, (arg + 2 * pi * k) / n));
    }
    if (c.empty()) return {};
    choices.push_back(std::move(c));
  }
  // real linear system: embedding matrix in real coordinates
  std::vector<std::vector<long double>> E(deg, std::vector<long double>(deg));
  {
    std::size_t row = 0;
    for (std::size_t i = 0; i < sx.size(); ++i) {
      NFElement b = K.zero();
      for (std::size_t j = 0; j < deg; ++j) {
        b = K.zero();
        b.num[j] = 1;
        Complex v = K.embed(b)[i];
        E[row][j] = v.real();
        if (i >= r1) E[row + 1][j] = v.imag();
      }
      row += i < r1 ? 1 : 2;
    }
  }
  auto solve = [&](std::vector<long double> rhs) {
    auto A = E;
    for (std::size_t c = 0; c < deg; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < deg; ++r)
        if (std::fabs(A[r][c]) > std::fabs(A[piv][c])) piv = r;
      std::swap(A[c], A[piv]);
      std::swap(rhs[c], rhs[piv]);
      for (std::size_t r = 0; r < deg; ++r) {
        if (r == c) continue;
        long double f = A[r][c] / A[c][c];
        for (std::size_t k = c; k < deg; ++k) A[r][k] -= f * A[c][k];
        rhs[r] -= f * rhs[c];
      }
    }
    for (std::size_t c = 0; c < deg; ++c) rhs[c] /= A[c][c];
    return rhs;
  };
  std::vector<NFElement> out;
  std::vector<std::size_t> pick(choices.size(), 0);
  for (;;) {
    std::vector<long double> rhs;
    for (std::size_t i = 0; i < choices.size(); ++i) {
      Complex v = choices[i][pick[i]];
      rhs.push_back(v.real());
      if (i >= r1) rhs.push_back(v.imag());
    }
    auto c = solve(rhs);
    NFElement z = K.zero();
    bool ok = true;
    for (std::size_t j = 0; j < deg; ++j) {
      long double r = std::round(c[j]);
      if (std::fabs(r) > 9e18L) ok = false;
      z.num[j] = Int(std::to_string(static_cast<long long>(r)));
    }
    if (ok && K.pow(z, n) == X) {
      NFElement y = K.div_int(z, x.den);
      if (std::find(out.begin(), out.end(), y) == out.end()) out.push_back(y);
    }
    std::size_t pos = 0;
    while (pos < pick.size() && ++pick[pos] == choices[pos].size()) pick[pos++] = 0;
    if (pos == pick.size()) break;
  }
  return out;
}

unsigned frobenius_order(const NumberField& K, const NFElement& x, std::uint64_t p, const Int& q) {
  if (q == static_cast<unsigned long>(p)) throw std::invalid_argument("frobenius_order: q = p may ramify");
  unsigned order = 1;
  for (const auto& P : factor_prime(K, q)) {
    if (valuation(K, x, P) != 0) throw std::invalid_argument("frobenius_order: x is not a unit at " + P.label());
    if (power_residue_class(K, x, P, p).value != 0) order = static_cast<unsigned>(p);
  }
  return order;
}

std::pair<NFElement, unsigned> torsion_units(const NumberField& K) {
  NFElement best = K.neg(K.one());
  unsigned w = 2;
  const NFElement one = K.one();
  K.enumerate_short(IntMatrix::identity(static_cast<std::size_t>(K.degree())), K.degree() + 0.5L,
                    [&](const NFElement& x) {
                      NFElement p = x;
                      for (unsigned m = 1; m <= 64; ++m) {
                        if (p == one) {
                          if (m > w) {
                            w = m;
                            best = x;
                          }
                          break;
                        }
                        p = K.mul(p, x);
                      }
                      return true;
                    });
  return {best, w};
}

}  // namespace tclab
