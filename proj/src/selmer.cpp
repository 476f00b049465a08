#include "tclab/selmer.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tclab {

namespace {

void check_tame(const std::vector<PrimeIdeal>& S, std::uint64_t p) {
  for (const auto& q : S)
    if (q.q == static_cast<unsigned long>(p))
      throw std::invalid_argument("prime " + q.label() + " lies above p = " + std::to_string(p) + " (wild)");
}

std::vector<PrimeIdeal> dedup(const std::vector<PrimeIdeal>& S) {
  std::vector<PrimeIdeal> out;
  for (const auto& q : S)
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
  return out;
}

FactoredElement reduce_exponents(const FactoredElement& a, std::uint64_t p) {
  FactoredElement r;
  const Int pp(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < a.bases.size(); ++i) {
    Int e = mod(a.exps[i], pp);
    if (e == 0) continue;
    r = fe_mul(r, fe_pow(FactoredElement::of(a.bases[i]), e));
  }
  return r;
}

std::vector<std::uint64_t> column_classes(const NumberField& K, const std::vector<FactoredElement>& xs, const PrimeIdeal& P,
                                          std::uint64_t p) {
  std::vector<std::uint64_t> c;
  for (const auto& x : xs) c.push_back(fe_local_class(K, x, P, p).value);
  return c;
}

FpMatrix columns_to_matrix(const std::vector<std::vector<std::uint64_t>>& cols, std::size_t rows, std::uint64_t p) {
  FpMatrix m(rows, cols.size(), p);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m.set(i, j, static_cast<long long>(cols[j][i]));
  return m;
}

}  // namespace

SelmerBasis selmer_basis(FieldContext& ctx, const std::vector<PrimeIdeal>& S_in, std::uint64_t p,
                         const SelmerOptions& opts) {
  check_tame(S_in, p);
  ctx.ensure_saturated(p);
  const NumberField& K = ctx.K;
  const UnitBasis& U = ctx.units;
  SelmerBasis B;
  B.p = p;
  B.S = dedup(S_in);
  for (std::size_t i = 0; i < U.units.size(); ++i) {
    B.v_empty.push_back(FactoredElement::of(U.units[i]));
    B.v_empty_labels.push_back("unit " + std::to_string(i));
  }
  if (U.w % p == 0) {
    B.v_empty.push_back(FactoredElement::of(U.zeta));
    B.v_empty_labels.push_back("zeta_" + std::to_string(U.w));
  }
  const Int pp(static_cast<unsigned long>(p));
  const auto& cl = ctx.cl;
  for (std::size_t j = 0; j < cl.snf.diagonal.size(); ++j) {
    if (cl.snf.diagonal[j] <= 1 || cl.snf.diagonal[j] % pp != 0) continue;
    B.v_empty.push_back(reduce_exponents(cl.kummer_element(j), p));
    B.v_empty_labels.push_back("class " + std::to_string(j) + " (order " + to_string(cl.snf.diagonal[j]) + ")");
  }
  const std::size_t n0 = B.v_empty.size();

  std::vector<std::vector<std::uint64_t>> cols;
  for (const auto& q : B.S) {
    if ((q.norm - 1) % pp != 0) continue;
    B.condition_primes.push_back(q);
    cols.push_back(column_classes(K, B.v_empty, q, p));
  }
  B.local_matrix = columns_to_matrix(cols, n0, p);
  B.combos = B.local_matrix.cols() == 0 ? FpMatrix::identity(n0, p) : fp_left_kernel(B.local_matrix);
  if (n0 == 0) B.combos = FpMatrix(0, 0, p);
  for (std::size_t i = 0; i < B.combos.rows(); ++i) {
    std::vector<Int> c;
    for (std::size_t j = 0; j < n0; ++j) c.push_back(Int(static_cast<unsigned long>(B.combos(i, j))));
    auto g = reduce_exponents(fe_combine(B.v_empty, c), p);
    B.generators.push_back(g);
    B.generator_values.push_back(fe_evaluate(K, g));
  }

  // independence of V_empty modulo p-th powers
  std::vector<std::vector<std::uint64_t>> aux_cols;
  std::size_t rank = 0;
  if (n0 == 0) {
    B.certified = true;
  } else {
    for (auto q : primes_up_to(opts.aux_prime_bound)) {
      if (q == p) continue;
      for (auto& P : factor_prime(K, Int(static_cast<unsigned long>(q)))) {
        if ((P.norm - 1) % pp != 0) continue;
        if (std::find(B.S.begin(), B.S.end(), P) != B.S.end()) continue;
        auto col = column_classes(K, B.v_empty, P, p);
        aux_cols.push_back(col);
        std::size_t r = columns_to_matrix(aux_cols, n0, p).rank();
        if (r == rank) {
          aux_cols.pop_back();
          continue;
        }
        rank = r;
        B.aux_primes.push_back(P);
        if (rank == n0) break;
      }
      if (rank == n0) break;
    }
    B.certified = rank == n0;
  }
  B.aux_matrix = columns_to_matrix(aux_cols, n0, p);
  if (!B.certified)
    B.note = "independence certificate reached rank " + std::to_string(rank) + " of " + std::to_string(n0) +
             " with auxiliary primes up to " + std::to_string(opts.aux_prime_bound);
  if (!ctx.cl.certified) B.note += (B.note.empty() ? "" : "; ") + std::string("class group uncertified");
  if (!ctx.cl.certified) B.certified = false;
  return B;
}

std::vector<std::uint64_t> aux_characters(const NumberField& K, const SelmerBasis& B, const FactoredElement& x) {
  std::vector<std::uint64_t> v;
  for (const auto& P : B.aux_primes) v.push_back(fe_local_class(K, x, P, B.p).value);
  return v;
}

std::optional<std::vector<std::uint64_t>> selmer_coordinates(const NumberField& K, const SelmerBasis& B,
                                                             const FactoredElement& x) {
  for (const auto& q : B.condition_primes)
    if (fe_local_class(K, x, q, B.p).value != 0) return std::nullopt;
  if (B.dim() == 0) {
    for (auto c : aux_characters(K, B, x))
      if (c != 0) return std::nullopt;
    return std::vector<std::uint64_t>{};
  }
  FpMatrix m = B.combos * B.aux_matrix;
  return fp_solve_left(m, aux_characters(K, B, x));
}

bool verify_selmer_element(const NumberField& K, const std::vector<PrimeIdeal>& S, std::uint64_t p, const NFElement& x,
                           std::string* why) {
  if (x.is_zero()) {
    if (why) *why = "zero";
    return false;
  }
  NFElement y{x.num, Int(1)};
  Rat ny = K.norm(y);
  std::set<Int> qs;
  for (auto& [q, e] : factor(abs(ny.get_num()))) qs.insert(q);
  for (auto& [q, e] : factor(x.den)) qs.insert(q);
  for (const auto& q : qs)
    for (const auto& P : factor_prime(K, q))
      if (valuation(K, x, P) % static_cast<long>(p) != 0) {
        if (why) *why = "valuation at " + P.label() + " is " + std::to_string(valuation(K, x, P));
        return false;
      }
  for (const auto& P : S)
    if (local_pth_power_class(K, x, P, p).value != 0) {
      if (why) *why = "not a local p-th power at " + P.label();
      return false;
    }
  return true;
}

H1FormulaContext rusb_dim_via_h1(FieldContext& ctx, const std::vector<PrimeIdeal>& Z_in, std::uint64_t p) {
  check_tame(Z_in, p);
  H1FormulaContext h;
  h.Z = dedup(Z_in);
  h.p = p;
  ctx.ensure_saturated(p);
  h.delta_p = ctx.units.w % p == 0 ? 1 : 0;
  h.r = ctx.K.r1() + ctx.K.r2();
  const Int pp(static_cast<unsigned long>(p));
  long sum = 0;
  for (const auto& q : h.Z) {
    int d = (q.norm - 1) % pp == 0 ? 1 : 0;
    h.local_delta.push_back(d);
    h.local_degree.push_back(0);
    sum += d;
  }
  h.ray_class = ray_class_p_part(ctx, h.Z, p).group;
  h.dim_h1 = h.ray_class.p_rank(pp);
  h.rusb = static_cast<long>(h.dim_h1) + h.delta_p + h.r - 1 - sum;
  return h;
}

RusbCrosscheck crosscheck_rusb(FieldContext& ctx, const std::vector<PrimeIdeal>& S, std::uint64_t p,
                               const SelmerOptions& opts) {
  RusbCrosscheck c;
  c.selmer = selmer_basis(ctx, S, p, opts);
  c.h1 = rusb_dim_via_h1(ctx, S, p);
  c.equal = static_cast<long>(c.selmer.dim()) == c.h1.rusb;
  std::ostringstream os;
  os << "field " << ctx.K.label() << ", p = " << p << ", S = {";
  for (std::size_t i = 0; i < c.selmer.S.size(); ++i) os << (i ? ", " : "") << c.selmer.S[i].label();
  os << "}\n";
  os << "selmer: dim V_empty = " << c.selmer.dim_empty() << ", local rank = " << c.selmer.local_matrix.rank()
     << ", dim V_S = " << c.selmer.dim() << (c.selmer.certified ? "" : " (uncertified: " + c.selmer.note + ")") << "\n";
  os << "h1: ray class p-part " << c.h1.ray_class.to_string() << ", dim H1 = " << c.h1.dim_h1 << ", delta_p = " << c.h1.delta_p
     << ", r = " << c.h1.r << ", local deltas =";
  for (int d : c.h1.local_delta) os << " " << d;
  os << ", RusB = " << c.h1.rusb << "\n";
  c.diagnostics = os.str();
  if (!c.equal) throw std::runtime_error("RusB crosscheck mismatch\n" + c.diagnostics);
  return c;
}

ExceptionalityReport is_exceptional(FieldContext& ctx, const std::vector<PrimeIdeal>& S) {
  check_tame(S, 2);
  const NumberField& K = ctx.K;
  ExceptionalityReport r;
  auto i_roots = nth_roots(K, K.from_int(-1), 2);
  r.condition_a = i_roots.empty();
  if (!r.condition_a) r.witness_a = K.element_to_string(i_roots[0]);

  // -4a^4 = u is a unit iff 2 = u' b^2 for a unit u' (then a = 1/b, u = -u'^{-2}),
  // so it suffices to test 2u for u running over U/U^2.
  if (K.degree() == 1) {
    r.condition_b = false;
    r.method_b = "rational";
    r.witness_b = "|-4a^4| = 4a^4 is never 1 for rational a";
  } else {
    r.method_b = "exact over U/U^2";
    std::vector<NFElement> gens = ctx.units.units;
    gens.push_back(ctx.units.zeta);
    const std::size_t m = gens.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << m) && !r.condition_b; ++mask) {
      NFElement u = K.one();
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1) u = K.mul(u, gens[i]);
      auto roots = nth_roots(K, K.mul_int(u, 2), 2);
      if (roots.empty()) continue;
      NFElement a = K.inv(roots[0]);
      NFElement v = K.mul_int(K.pow(a, 4), -4);
      if (abs(K.norm(v)) != 1 || !v.is_integral() || !K.inv(v).is_integral())
        throw std::logic_error("is_exceptional: witness is not a unit");
      r.condition_b = true;
      r.witness_b = K.element_to_string(a);
    }
    if (!r.condition_b) r.witness_b = "2u is a non-square for every u in U/U^2";
  }

  r.condition_c = true;
  for (const auto& q : S) {
    bool ok = (q.norm - 1) % 4 == 0;
    r.condition_c_primes.emplace_back(q.label(), ok);
    if (!ok) r.condition_c = false;
  }
  r.exceptional = r.condition_a && r.condition_b && r.condition_c;
  return r;
}

}  // namespace tclab
