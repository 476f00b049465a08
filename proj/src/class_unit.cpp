#include "tclab/class_unit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tclab {

namespace {

constexpr long double kPi = 3.14159265358979323846L;

// log|sigma_i(u)| for the r1 + r2 archimedean places
std::vector<long double> log_vector(const NumberField& K, const NFElement& u) {
  std::vector<long double> l;
  for (const auto& z : K.embed(u)) l.push_back(std::log(std::abs(z)));
  return l;
}

// rank of a set of real vectors (first r coordinates), with a relative tolerance
std::size_t real_rank(std::vector<std::vector<long double>> rows, std::size_t r) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < r && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    for (std::size_t i = rank; i < rows.size(); ++i)
      if (std::fabs(rows[i][c]) > std::fabs(rows[piv][c])) piv = i;
    if (std::fabs(rows[piv][c]) < 1e-7L) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank) continue;
      long double f = rows[i][c] / rows[rank][c];
      for (std::size_t k = c; k < r; ++k) rows[i][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Visits primes P (in increasing q, then label order) with ell | NP - 1 and q != ell.
// Primes where factorization is unsupported are skipped. Stops when visit returns false.
void for_each_character_prime(const NumberField& K, std::uint64_t ell, std::uint64_t q_start,
                              const std::function<bool(const PrimeIdeal&)>& visit, std::uint64_t q_limit = 2000000) {
  for (std::uint64_t q = std::max<std::uint64_t>(q_start, 2); q <= q_limit; ++q) {
    if (!is_prime(q) || q == ell) continue;
    std::vector<PrimeIdeal> ps;
    try {
      ps = factor_prime(K, Int(static_cast<unsigned long>(q)));
    } catch (const std::domain_error&) {
      continue;
    }
    for (const auto& P : ps) {
      Int nm1 = P.norm - 1;
      if (!mpz_divisible_ui_p(nm1.get_mpz_t(), ell)) continue;
      if (!visit(P)) return;
    }
  }
}

// Character matrix (rows = elements) at primes with ell | NP - 1, grown until
// its rank reaches `target` or `max_primes` primes have been used.
struct CharacterMatrix {
  FpMatrix m;  // rows: elements, cols: primes
  std::vector<std::string> labels;
  std::size_t rank = 0;
};

CharacterMatrix character_matrix(const NumberField& K, const std::vector<FactoredElement>& elts, std::uint64_t ell,
                                 std::size_t target, std::size_t max_primes) {
  CharacterMatrix cm;
  cm.m = FpMatrix(elts.size(), 0, ell);
  std::vector<std::vector<long long>> cols;
  if (elts.empty() || target == 0) return cm;
  std::size_t used = 0;
  for_each_character_prime(K, ell, 2, [&](const PrimeIdeal& P) {
    std::vector<long long> col;
    for (const auto& e : elts) col.push_back(static_cast<long long>(fe_local_class(K, e, P, ell).value));
    cols.push_back(col);
    cm.labels.push_back(P.label());
    ++used;
    std::vector<std::vector<long long>> rows(elts.size(), std::vector<long long>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < elts.size(); ++i) rows[i][j] = cols[j][i];
    cm.m = FpMatrix::from_rows(rows, ell);
    cm.rank = cm.m.rank();
    return cm.rank < target && used < max_primes;
  });
  return cm;
}

Int isqrt_exact(const Int& n, bool& ok) {
  Int r;
  ok = n >= 0 && is_square(n, r);
  return r;
}

std::vector<NFElement> quadratic_unit(const NumberField& K, const Int& H) {
  // w = second integral basis element, w^2 = t w - s
  NFElement w = K.from_int_coords({0, 1});
  Int t = K.trace(w).get_num();
  Int s = K.norm(w).get_num();
  for (Int c1 = 1; c1 <= H; ++c1) {
    std::vector<NFElement> found;
    for (int nu : {-1, 1}) {
      // c0^2 + t c0 c1 + s c1^2 = nu
      Int disc = t * t * c1 * c1 - 4 * (s * c1 * c1 - nu);
      bool ok;
      Int r = isqrt_exact(disc, ok);
      if (!ok) continue;
      for (Int sign : {Int(-1), Int(1)}) {
        Int num = -t * c1 + sign * r;
        if (!mpz_divisible_ui_p(num.get_mpz_t(), 2)) continue;
        found.push_back(K.from_int_coords({num / 2, c1}));
      }
    }
    if (!found.empty()) {
      std::sort(found.begin(), found.end(), [](const NFElement& a, const NFElement& b) {
        if (abs(a.num[0]) != abs(b.num[0])) return abs(a.num[0]) < abs(b.num[0]);
        return a.num[0] > b.num[0];
      });
      return {found.front()};
    }
  }
  return {};
}

}  // namespace

bool UnitBasis::is_saturated_at(std::uint64_t p) const {
  return std::find(saturated_at.begin(), saturated_at.end(), p) != saturated_at.end();
}

UnitBasis unit_group(const NumberField& K, const UnitOptions& opts) {
  UnitBasis U;
  auto [zeta, w] = torsion_units(K);
  U.zeta = zeta;
  U.w = w;
  const std::size_t r = static_cast<std::size_t>(K.r1() + K.r2() - 1);
  if (r == 0) return U;
  Int H = opts.height_bound;
  if (H <= 0) H = K.degree() == 2 ? Int(1000000) : Int(10000);

  if (K.degree() == 2) {
    U.units = quadratic_unit(K, H);
  } else {
    std::vector<std::pair<long double, NFElement>> cands;
    std::vector<std::vector<long double>> logs;
    const long double cap = H.get_d();
    for (long double B = 2.0L * K.degree(); U.units.size() < r && B <= cap; B *= 1.6L) {
      cands.clear();
      K.enumerate_short(IntMatrix::identity(static_cast<std::size_t>(K.degree())), B, [&](const NFElement& x) {
        for (const auto& c : x.num) {
          if (c < 0) return true;  // keep one of x, -x
          if (c > 0) break;
        }
        if (abs(K.norm(x)) == 1) cands.emplace_back(K.t2(x), x);
        return true;
      });
      std::stable_sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      U.units.clear();
      logs.clear();
      for (auto& [t2, u] : cands) {
        auto l = log_vector(K, u);
        logs.push_back(l);
        if (real_rank(logs, r) == U.units.size() + 1) {
          U.units.push_back(u);
          if (U.units.size() == r) break;
        } else {
          logs.pop_back();
        }
      }
    }
  }
  if (U.units.size() < r) {
    std::ostringstream os;
    os << "unit search reached rank " << U.units.size() << " of " << r << " within height bound " << H;
    throw std::runtime_error(os.str());
  }
  // exact independence certificate
  std::uint64_t ell = 3;
  while (w % ell == 0 || !is_prime(ell)) ell += 2;
  std::vector<FactoredElement> fe;
  for (auto& u : U.units) fe.push_back(FactoredElement::of(u));
  auto cm = character_matrix(K, fe, ell, r, 400);
  if (cm.rank < r) throw std::runtime_error("unit independence could not be certified");
  U.witness_ell = ell;
  U.witness_primes = cm.labels;
  return U;
}

void saturate(const NumberField& K, UnitBasis& U, std::uint64_t p) {
  if (U.is_saturated_at(p)) return;
  const bool with_zeta = U.w % p == 0;
  for (int round = 0; round < 64; ++round) {
    std::vector<FactoredElement> gens;
    for (auto& u : U.units) gens.push_back(FactoredElement::of(u));
    if (with_zeta) gens.push_back(FactoredElement::of(U.zeta));
    if (gens.empty()) {
      U.saturated_at.push_back(p);
      return;
    }
    std::size_t max_primes = 20 + 10 * gens.size();
    bool replaced = false;
    for (int grow = 0; grow < 4 && !replaced; ++grow, max_primes *= 3) {
      auto cm = character_matrix(K, gens, p, gens.size(), max_primes);
      if (cm.rank == gens.size()) {
        U.saturated_at.push_back(p);
        return;
      }
      FpMatrix ker = fp_left_kernel(cm.m);
      for (std::size_t k = 0; k < ker.rows() && !replaced; ++k) {
        std::vector<Int> c(gens.size());
        for (std::size_t i = 0; i < gens.size(); ++i) c[i] = static_cast<unsigned long>(ker(k, i));
        NFElement x = fe_evaluate(K, fe_combine(gens, c));
        auto roots = nth_roots(K, x, static_cast<unsigned>(p));
        if (roots.empty()) continue;
        for (std::size_t i = 0; i < U.units.size(); ++i)
          if (c[i] != 0) {
            U.units[i] = roots.front();
            replaced = true;
            break;
          }
        if (!replaced) throw std::logic_error("saturate: a root of unity is a p-th power");
      }
    }
    if (!replaced) throw std::runtime_error("saturate: character rank deficient but no p-th root found");
  }
  throw std::runtime_error("saturate: no convergence");
}

std::size_t u_mod_p_dim(const NumberField& K, const UnitBasis& U, std::uint64_t p) {
  return static_cast<std::size_t>(K.r1() + K.r2() - 1) + (U.w % p == 0 ? 1 : 0);
}

long double generator_t2_factor(const NumberField& K, const UnitBasis& U) {
  const std::size_t places = static_cast<std::size_t>(K.r1() + K.r2());
  std::vector<long double> B(places, 0);
  for (const auto& u : U.units) {
    auto l = log_vector(K, u);
    for (std::size_t i = 0; i < places; ++i) B[i] += 0.5L * std::fabs(l[i]);
  }
  long double f = 0;
  for (std::size_t i = 0; i < places; ++i) f += (static_cast<int>(i) < K.r1() ? 1 : 2) * std::exp(2 * B[i]);
  return f;
}

std::optional<NFElement> principal_generator(const NumberField& K, const UnitBasis& U, const Ideal& I) {
  const Int N = I.norm();
  if (N == 1) return K.one();
  const long double bound =
      std::pow(N.get_d(), 2.0L / K.degree()) * generator_t2_factor(K, U) * (1 + 1e-9L) + 1e-6L;
  std::optional<NFElement> found;
  K.enumerate_short(I.hnf, bound, [&](const NFElement& a) {
    if (abs(K.norm(a)) == N) {
      found = a;
      return false;
    }
    return true;
  });
  return found;
}

long double minkowski_bound(const NumberField& K) {
  const int n = K.degree();
  long double b = std::sqrt(std::fabs(K.disc().get_d()));
  for (int i = 1; i <= n; ++i) b *= static_cast<long double>(i) / n;
  for (int i = 0; i < K.r2(); ++i) b *= 4 / kPi;
  return b;
}

// ------------------------------------------------------------- class group

std::optional<std::vector<Int>> fb_vector(const NumberField& K, const std::vector<PrimeIdeal>& fb, const NFElement& x) {
  if (x.is_zero()) return std::nullopt;
  Rat nr = K.norm(x);
  Int N = abs(nr.get_num()) * nr.get_den();
  Int D = x.den;
  Int cof;
  std::uint64_t qmax = 1;
  for (const auto& P : fb) qmax = std::max<std::uint64_t>(qmax, P.q.get_ui());
  auto fac = factor_bounded(N * D, qmax, cof);
  if (cof != 1) return std::nullopt;
  std::vector<Int> v(fb.size());
  for (auto& [q, e] : fac) {
    long check = 0;
    const long expected = valuation(abs(nr.get_num()), q) - valuation(nr.get_den(), q);
    for (std::size_t i = 0; i < fb.size(); ++i) {
      if (fb[i].q != q) continue;
      int vp = valuation(K, x, fb[i]);
      v[i] = vp;
      check += static_cast<long>(vp) * fb[i].f;
    }
    if (check != expected) return std::nullopt;
    (void)e;
  }
  return v;
}

std::size_t ClassGroupData::fb_index(const PrimeIdeal& P) const {
  for (std::size_t i = 0; i < factor_base.size(); ++i)
    if (factor_base[i] == P) return i;
  throw std::out_of_range("prime " + P.label() + " is not in the factor base");
}

std::vector<Int> ClassGroupData::class_of(const std::vector<Int>& exps) const {
  std::vector<Int> c = exps * snf.V;
  for (std::size_t j = 0; j < c.size(); ++j) {
    Int d = j < snf.diagonal.size() ? snf.diagonal[j] : Int(0);
    c[j] = d == 0 ? c[j] : mod(c[j], d);
  }
  return c;
}

std::vector<Int> ClassGroupData::class_of_prime(std::size_t i) const {
  std::vector<Int> e(factor_base.size());
  e[i] = 1;
  return class_of(e);
}

std::vector<std::size_t> ClassGroupData::nontrivial_positions() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < snf.diagonal.size(); ++j)
    if (snf.diagonal[j] != 1) out.push_back(j);
  return out;
}

std::vector<Int> ClassGroupData::generator_exponents(std::size_t j) const { return snf.V_inv.row(j); }

FactoredElement ClassGroupData::kummer_element(std::size_t j) const {
  return fe_combine(relation_elements, snf.U.row(j));
}

namespace {

// smallest integral ideal in the class `target` among products of at most two
// factor-base primes, or the generator combination made integral
Ideal class_representative(const NumberField& K, const ClassGroupData& cl, const std::vector<Int>& target) {
  const std::size_t m = cl.factor_base.size();
  std::vector<std::vector<Int>> cls(m);
  for (std::size_t i = 0; i < m; ++i) cls[i] = cl.class_of_prime(i);
  auto add = [&](const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> e(m);
    for (std::size_t k = 0; k < m; ++k) e[k] = a[k] + b[k];
    return cl.class_of(e);
  };
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Int best_norm = 0;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Int> ei(m);
    ei[i] = 1;
    if (cl.class_of(ei) == target && (!best || cl.factor_base[i].norm < best_norm)) {
      best = {i, m};
      best_norm = cl.factor_base[i].norm;
    }
    for (std::size_t j = i; j < m; ++j) {
      std::vector<Int> ej(m);
      ej[j] = 1;
      if (add(ei, ej) == target) {
        Int nn = cl.factor_base[i].norm * cl.factor_base[j].norm;
        if (!best || nn < best_norm) {
          best = {i, j};
          best_norm = nn;
        }
      }
    }
  }
  if (best) {
    Ideal I = cl.factor_base[best->first].ideal;
    if (best->second < m) I = ideal_mul(K, I, cl.factor_base[best->second].ideal);
    return I;
  }
  // fall back: target as an exponent vector, negative exponents replaced via P^-1 ~ prod of the co-primes above q
  std::vector<Int> exps(m);
  for (std::size_t j = 0; j < target.size(); ++j) {
    auto g = cl.generator_exponents(j);
    for (std::size_t k = 0; k < m; ++k) exps[k] += target[j] * g[k];
  }
  Ideal I = unit_ideal(K);
  for (std::size_t k = 0; k < m; ++k) {
    if (exps[k] == 0) continue;
    const PrimeIdeal& P = cl.factor_base[k];
    if (exps[k] > 0) {
      I = ideal_mul(K, I, ideal_pow(K, P.ideal, exps[k].get_ui()));
    } else {
      Ideal co = ideal_pow(K, P.ideal, static_cast<unsigned long>(P.e - 1));
      for (auto& Q : factor_prime(K, P.q))
        if (!(Q == P)) co = ideal_mul(K, co, ideal_pow(K, Q.ideal, static_cast<unsigned long>(Q.e)));
      Int k_abs = -exps[k];
      I = ideal_mul(K, I, ideal_pow(K, co, k_abs.get_ui()));
    }
  }
  return I;
}

}  // namespace

ClassGroupData class_group(const NumberField& K, const UnitBasis& U, const ClassGroupOptions& opts) {
  ClassGroupData cl;
  const std::size_t n = static_cast<std::size_t>(K.degree());
  Int bound = opts.effort;
  {
    Int mk = static_cast<unsigned long>(std::floor(minkowski_bound(K) + 1e-9L));
    if (bound < mk) bound = mk;
  }
  cl.factor_base = primes_up_to_norm(K, bound);
  for (const auto& q : opts.extra_rational_primes)
    for (auto& P : factor_prime(K, q))
      if (std::find(cl.factor_base.begin(), cl.factor_base.end(), P) == cl.factor_base.end())
        cl.factor_base.push_back(P);
  if (opts.shuffle_seed != 0) {
    std::mt19937_64 rng(opts.shuffle_seed);
    std::shuffle(cl.factor_base.begin(), cl.factor_base.end(), rng);
  }
  const std::size_t m = cl.factor_base.size();
  cl.relations = IntMatrix(0, m);
  std::set<std::vector<Int>> seen;
  auto add_relation = [&](const NFElement& a) {
    auto v = fb_vector(K, cl.factor_base, a);
    if (!v) return false;
    bool zero = std::all_of(v->begin(), v->end(), [](const Int& x) { return x == 0; });
    if (zero || !seen.insert(*v).second) return false;
    cl.relations.append_row(*v);
    cl.relation_elements.push_back(FactoredElement::of(a));
    return true;
  };
  if (m == 0) {
    cl.snf = smith_form(cl.relations);
    cl.certified = true;
    cl.certificate = "empty factor base";
    return cl;
  }
  // (q) for every rational prime under the factor base
  {
    std::set<Int> qs;
    for (const auto& P : cl.factor_base) qs.insert(P.q);
    for (const auto& q : qs) add_relation(K.from_int(q));
  }
  // one relation through each factor-base prime
  for (const auto& P : cl.factor_base) {
    long double B = std::pow(P.norm.get_d(), 2.0L / n) * n;
    for (int tries = 0; tries < 40; ++tries, B *= 1.5L) {
      bool got = false;
      K.enumerate_short(P.ideal.hnf, B, [&](const NFElement& a) {
        if (add_relation(a)) got = true;
        return !got;
      });
      if (got) break;
    }
  }
  // general small elements
  auto full_rank = [&] { return hermite_form(cl.relations, false).rank() == m; };
  {
    long double B = 2.0L * n;
    const std::size_t want = m + 8;
    for (int round = 0; round < 24 && (cl.relations.rows() < want || !full_rank()); ++round, B *= 1.5L) {
      K.enumerate_short(IntMatrix::identity(n), B, [&](const NFElement& a) {
        add_relation(a);
        return cl.relations.rows() < 4 * want;
      });
    }
  }
  if (!full_rank()) throw std::runtime_error("class group: relation search did not reach full rank");

  for (int round = 0; round < 100; ++round) {
    cl.snf = smith_form(cl.relations);
    cl.group = cl.snf.torsion;
    if (cl.group.is_trivial()) {
      cl.certified = true;
      cl.certificate = "relations generate every factor-base prime";
      return cl;
    }
    // every element of prime order must be non-principal
    std::optional<NFElement> principal;
    std::ostringstream cert;
    cert << "non-principal:";
    auto pos = cl.nontrivial_positions();
    std::set<Int> ells;
    for (auto j : pos)
      for (auto& [ell, e] : factor(cl.snf.diagonal[j])) ells.insert(ell);
    for (const auto& ell : ells) {
      std::vector<std::size_t> lpos;
      for (auto j : pos)
        if (mpz_divisible_p(cl.snf.diagonal[j].get_mpz_t(), ell.get_mpz_t())) lpos.push_back(j);
      const unsigned long L = ell.get_ui();
      std::vector<unsigned long> digits(lpos.size(), 0);
      for (;;) {
        std::size_t k = 0;
        while (k < digits.size() && ++digits[k] == L) digits[k++] = 0;
        if (k == digits.size()) break;
        std::vector<Int> target(cl.snf.diagonal.size());
        for (std::size_t t = 0; t < lpos.size(); ++t)
          target[lpos[t]] = Int(digits[t]) * (cl.snf.diagonal[lpos[t]] / ell);
        Ideal I = class_representative(K, cl, target);
        auto g = principal_generator(K, U, I);
        if (g) {
          principal = g;
          break;
        }
        cert << " [";
        for (std::size_t t = 0; t < lpos.size(); ++t) cert << (t ? "," : "") << digits[t];
        cert << "]/" << ell;
      }
      if (principal) break;
    }
    if (!principal) {
      cl.certified = true;
      cl.certificate = cert.str();
      return cl;
    }
    if (!add_relation(*principal)) throw std::logic_error("class group: principal class found but relation already known");
  }
  cl.certified = false;
  cl.certificate = "upper bound only";
  return cl;
}

void FieldContext::ensure_saturated(std::uint64_t p) { saturate(K, units, p); }

FieldContext make_context(NumberField K, const std::vector<std::uint64_t>& saturate_primes, const UnitOptions& uopts,
                          const ClassGroupOptions& copts) {
  FieldContext ctx{std::move(K), {}, {}};
  ctx.units = unit_group(ctx.K, uopts);
  for (auto p : saturate_primes) saturate(ctx.K, ctx.units, p);
  ctx.cl = class_group(ctx.K, ctx.units, copts);
  return ctx;
}

}  // namespace tclab
