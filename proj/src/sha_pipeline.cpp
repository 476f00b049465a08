#include "tclab/sha_pipeline.hpp"

#include <algorithm>
#include <stdexcept>

namespace tclab {

namespace {

bool contains(const std::vector<PrimeIdeal>& v, const PrimeIdeal& P) { return std::find(v.begin(), v.end(), P) != v.end(); }

bool subset(const std::vector<PrimeIdeal>& a, const std::vector<PrimeIdeal>& b) {
  return std::all_of(a.begin(), a.end(), [&](const PrimeIdeal& P) { return contains(b, P); });
}

void require_stable(const GaloisLayer& layer, const std::vector<PrimeIdeal>& X, const char* name) {
  if (!subset(layer.orbit_closure(X), X)) throw std::invalid_argument(std::string(name) + " is not Gamma-stable");
}

std::vector<PrimeIdeal> set_union(std::vector<PrimeIdeal> a, const std::vector<PrimeIdeal>& b) {
  for (const auto& P : b)
    if (!contains(a, P)) a.push_back(P);
  return a;
}

}  // namespace

LowerBound sha_lower_bound(FieldContext& ctx, std::uint64_t p, const std::vector<PrimeIdeal>& T,
                           const std::vector<PrimeIdeal>& V) {
  if (!subset(T, V)) throw std::invalid_argument("sha_lower_bound: T is not contained in V");
  const Int pp(static_cast<unsigned long>(p));
  RayContext rc = make_ray_context(ctx, p, V);
  auto GT = ray_class_p_part(rc, T);
  auto GV = ray_class_p_part(rc, V);
  auto k = rcg_surjection_kernel(rc, GT, GV);
  LowerBound lb;
  lb.rcg_T = GT.group;
  lb.rcg_V = GV.group;
  lb.kernel = k.kernel;
  lb.value = k.dim_mod_p;
  lb.rank_T = GT.group.p_rank(pp);
  lb.rank_V = GV.group.p_rank(pp);
  lb.precondition = lb.rank_T == lb.rank_V;
  return lb;
}

ShaSandwich sha_sandwich(FieldContext& ctx, std::uint64_t p, const std::vector<PrimeIdeal>& T,
                         const std::vector<PrimeIdeal>& V) {
  ShaSandwich s;
  s.p = p;
  s.T = T;
  s.V = V;
  s.rusb = crosscheck_rusb(ctx, T, p).selmer.dim();
  s.upper = s.rusb;
  FinAbGroup rcg_T;
  if (!V.empty()) {
    s.lower_bound = sha_lower_bound(ctx, p, T, V);
    rcg_T = s.lower_bound->rcg_T;
  } else {
    rcg_T = ray_class_p_part(ctx, T, p).group;
  }
  if (rcg_T.is_trivial()) {
    s.lower = s.upper = 0;
    s.certified = true;
    s.route = "trivial_pro_p_group";
    s.notes.push_back("the p-part of the ray class group is trivial, so G_{T}(p) = 1");
    return s;
  }
  if (s.rusb == 0) {
    s.lower = s.upper = 0;
    s.certified = true;
    s.route = "zero_rusb";
    return s;
  }
  if (s.lower_bound) {
    const auto& lb = *s.lower_bound;
    s.lower = lb.value;
    s.route = "sandwich";
    if (!lb.precondition)
      s.notes.push_back("rank precondition fails (" + std::to_string(lb.rank_T) + " != " + std::to_string(lb.rank_V) +
                        "): lower bound is heuristic");
    else if (s.lower > s.upper)
      throw std::logic_error("sandwich: lower bound " + std::to_string(s.lower) + " exceeds RusB " + std::to_string(s.upper));
    s.certified = lb.precondition && s.lower == s.upper;
    if (!s.certified && lb.precondition) s.notes.push_back("sandwich open: " + std::to_string(s.lower) + " < " + std::to_string(s.upper));
    return s;
  }
  s.route = "none";
  s.notes.push_back("no enlarged set V given");
  return s;
}

std::size_t twisted_rusb(const GaloisLayer& layer, FieldContext& ctxL, std::uint64_t p, const std::vector<PrimeIdeal>& X,
                         const GammaModule& A) {
  auto B = selmer_basis(ctxL, X, p);
  auto M = selmer_module(layer, ctxL, B);
  check_relations(layer, M);
  return invariants_dim(tensor(dual(M), A));
}

ShaSandwich sha_sandwich_twisted(const GaloisLayer& layer, FieldContext& ctxL, std::uint64_t p,
                                 const std::vector<PrimeIdeal>& T, const std::vector<PrimeIdeal>& V,
                                 const GammaModule& A, const std::vector<PrimeIdeal>& base_T,
                                 const std::vector<PrimeIdeal>& base_V) {
  if (layer.order % p == 0) throw std::invalid_argument("twisted sandwich needs p not dividing |Gamma|");
  if (A.p != p) throw std::invalid_argument("module A is over a different prime");
  check_relations(layer, A);
  require_stable(layer, T, "T");
  if (!V.empty()) require_stable(layer, V, "V");
  ShaSandwich s;
  s.p = p;
  s.T = T;
  s.V = V;
  s.twisted = true;
  s.rusb = twisted_rusb(layer, ctxL, p, T, A);
  s.upper = s.rusb;
  RayContext rc = make_ray_context(ctxL, p, V.empty() ? T : V);
  auto GT = ray_class_p_part(rc, T);
  if (GT.group.is_trivial()) {
    s.lower = s.upper = 0;
    s.certified = true;
    s.route = "trivial_pro_p_group";
    return s;
  }
  if (s.rusb == 0) {
    s.lower = s.upper = 0;
    s.certified = true;
    s.route = "zero_rusb";
    return s;
  }
  const Int pp(static_cast<unsigned long>(p));
  if (!V.empty()) {
    if (!subset(T, V)) throw std::invalid_argument("T is not contained in V");
    auto GV = ray_class_p_part(rc, V);
    auto k = rcg_surjection_kernel(rc, GT, GV);
    LowerBound lb;
    lb.rcg_T = GT.group;
    lb.rcg_V = GV.group;
    lb.kernel = k.kernel;
    lb.value = k.dim_mod_p;
    lb.rank_T = GT.group.p_rank(pp);
    lb.rank_V = GV.group.p_rank(pp);
    lb.precondition = lb.rank_T == lb.rank_V;
    s.lower_bound = lb;
    auto M = ray_kernel_module(layer, rc, GV, k);
    check_relations(layer, M);
    s.lower = invariants_dim(tensor(dual(M), A));
    s.route = "sandwich";
    if (!lb.precondition)
      s.notes.push_back("rank precondition fails (" + std::to_string(lb.rank_T) + " != " + std::to_string(lb.rank_V) + ")");
    s.certified = lb.precondition && s.lower == s.upper;
    if (s.certified) return s;
  }
  if (!base_T.empty()) {
    if (!subset(base_T, T)) throw std::invalid_argument("base set is not contained in T");
    auto base = sha_sandwich(ctxL, p, base_T, base_V);
    const std::size_t rusb_T = selmer_basis(ctxL, T, p).dim();
    s.notes.push_back("untwisted at base: lower " + std::to_string(base.lower) + ", RusB " + std::to_string(base.rusb) +
                      (base.certified ? ", certified" : ", not certified") + "; dim RusB_T = " + std::to_string(rusb_T));
    if (base.certified && base.lower == base.rusb && base.rusb == rusb_T) {
      s.lower = s.upper;
      s.certified = true;
      s.route = "preserved";
      return s;
    }
  }
  if (s.route.empty()) s.route = "none";
  return s;
}

OrbitCheck orbit_closure_check(const GaloisLayer& layer, FieldContext& ctxL, const std::vector<PrimeIdeal>& S_tilde,
                               const std::vector<PrimeIdeal>& X_prime, std::uint64_t p) {
  OrbitCheck c;
  c.X_prime = X_prime;
  c.X_tilde = layer.orbit_closure(X_prime);
  c.dim_prime = selmer_basis(ctxL, set_union(S_tilde, X_prime), p).dim();
  c.dim_tilde = selmer_basis(ctxL, set_union(S_tilde, c.X_tilde), p).dim();
  c.equal = c.dim_prime == c.dim_tilde;
  return c;
}

PreservingSet find_preserving_primes(FieldContext& ctx, const std::vector<PrimeIdeal>& S, std::uint64_t p,
                                     std::size_t count, const Int& norm_bound) {
  const NumberField& K = ctx.K;
  const Int pp(static_cast<unsigned long>(p));
  auto B = selmer_basis(ctx, S, p);
  PreservingSet out;
  out.requested = count;
  out.dim_before = B.dim();
  for (const auto& P : primes_up_to_norm(K, norm_bound)) {
    if (out.X.size() >= count) break;
    if (P.q == pp || contains(S, P) || (P.norm - 1) % pp != 0) continue;
    ++out.scanned;
    std::vector<std::uint64_t> classes;
    bool ok = true;
    for (const auto& g : B.generators) {
      classes.push_back(fe_local_class(K, g, P, p).value);
      if (classes.back() != 0) ok = false;
    }
    if (!ok) continue;
    out.X.push_back(P);
    out.witness.push_back(classes);
  }
  out.shortfall = count - out.X.size();
  auto SX = set_union(S, out.X);
  auto B2 = selmer_basis(ctx, SX, p);
  out.dim_after = B2.dim();
  out.verified = out.dim_after == out.dim_before;
  for (std::size_t i = 0; i < B.dim() && out.verified; ++i)
    if (!verify_selmer_element(K, SX, p, B.generator_values[i]) || !selmer_coordinates(K, B2, B.generators[i]))
      out.verified = false;
  return out;
}

NonvanishingWitness witness_nonvanishing(const NumberField& K, const NFElement& x, std::uint64_t p, const Int& norm_bound) {
  if (x.is_zero() || !nth_roots(K, x, static_cast<unsigned>(p)).empty())
    throw std::invalid_argument("witness_nonvanishing: x is a p-th power, the extension is trivial");
  const Int pp(static_cast<unsigned long>(p));
  NonvanishingWitness w;
  for (const auto& P : primes_up_to_norm(K, norm_bound)) {
    if (P.q == pp || valuation(K, x, P) != 0 || (P.norm - 1) % pp != 0) continue;
    ++w.scanned;
    auto c = power_residue_class(K, x, P, p);
    if (c.value == 0) continue;
    w.prime = P;
    w.frobenius = static_cast<unsigned>(p);
    w.certificate = "x^((N" + P.label() + " - 1)/" + std::to_string(p) + ") has discrete log class " +
                    std::to_string(c.value) + " mod " + std::to_string(p);
    return w;
  }
  throw std::runtime_error("witness_nonvanishing: no witness of norm <= " + to_string(norm_bound) + " among " +
                           std::to_string(w.scanned) + " primes (each has density about " + std::to_string(p - 1) + "/" +
                           std::to_string(p) + ")");
}

NonvanishingWitness witness_nonvanishing(const GaloisLayer& layer, const Int& norm_bound) {
  if (layer.order < 2 || !is_prime(static_cast<std::uint64_t>(layer.order)))
    throw std::invalid_argument("witness_nonvanishing: layer must be cyclic of prime degree");
  NonvanishingWitness w;
  for (const auto& P : primes_up_to_norm(layer.K, norm_bound)) {
    auto above = layer.primes_above(P);
    if (std::any_of(above.begin(), above.end(), [&](const PrimeIdeal& Q) { return Q.e > P.e; })) continue;
    ++w.scanned;
    unsigned f = frobenius_order(layer, P);
    if (f != layer.order) continue;
    w.prime = P;
    w.frobenius = f;
    w.certificate = P.label() + " is inert: one prime above it, of residue degree " + std::to_string(above[0].f);
    return w;
  }
  throw std::runtime_error("witness_nonvanishing: no inert prime of norm <= " + to_string(norm_bound));
}

}  // namespace tclab
