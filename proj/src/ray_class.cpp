#include "tclab/ray_class.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace tclab {

namespace {

bool in_list(const std::vector<PrimeIdeal>& v, const PrimeIdeal& P) { return std::find(v.begin(), v.end(), P) != v.end(); }

// Does the set of factor-base primes at `idx` generate the computed class group?
bool generates(const ClassGroupData& cl, const std::vector<std::size_t>& idx) {
  auto pos = cl.nontrivial_positions();
  if (pos.empty()) return true;
  IntMatrix m(0, pos.size());
  for (auto i : idx) {
    auto c = cl.class_of_prime(i);
    std::vector<Int> r;
    for (auto j : pos) r.push_back(c[j]);
    m.append_row(r);
  }
  for (std::size_t t = 0; t < pos.size(); ++t) {
    std::vector<Int> r(pos.size());
    r[t] = cl.snf.diagonal[pos[t]];
    m.append_row(r);
  }
  return cokernel(m).is_trivial();
}

unsigned p_adic_exponent(const Int& n, std::uint64_t p) {
  if (n == 0) throw std::domain_error("p_adic_exponent of zero");
  return static_cast<unsigned>(valuation(n, Int(static_cast<unsigned long>(p))));
}

NFElement lift_residue(const NumberField& K, const PrimeIdeal& Q, const FiniteField::Elt& a) {
  NFElement acc = K.zero();
  NFElement pw = K.one();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != 0) acc = K.add(acc, K.mul_int(pw, Int(static_cast<unsigned long>(a[k]))));
    pw = K.mul(pw, Q.beta);
  }
  return acc;
}

Int residue_coordinate(const NumberField& K, const NFElement& x, const PrimeIdeal& Q, std::uint64_t p, unsigned a) {
  return Q.residue_field.dlog_mod_prime_power(normalized_residue(K, x, Q), Int(static_cast<unsigned long>(p)),
                                              static_cast<int>(a));
}

}  // namespace

RayContext make_ray_context(FieldContext& ctx, std::uint64_t p, const std::vector<PrimeIdeal>& avoid) {
  for (const auto& Q : avoid)
    if (Q.q == static_cast<unsigned long>(p))
      throw std::invalid_argument("conductor prime " + Q.label() + " lies above p: wild conductors are not supported");
  ctx.ensure_saturated(p);
  RayContext rc;
  rc.ctx = &ctx;
  rc.p = p;
  rc.avoid = avoid;
  std::vector<Int> extra;
  Int next_q = 2;
  for (const auto& P : ctx.cl.factor_base)
    if (P.q >= next_q) next_q = P.q + 1;
  for (int round = 0; round < 64; ++round) {
    if (extra.empty()) {
      rc.cl = ctx.cl;
    } else {
      ClassGroupOptions o;
      o.extra_rational_primes = extra;
      rc.cl = class_group(ctx.K, ctx.units, o);
    }
    rc.fbp.clear();
    for (std::size_t i = 0; i < rc.cl.factor_base.size(); ++i)
      if (!in_list(avoid, rc.cl.factor_base[i])) rc.fbp.push_back(i);
    if (generates(rc.cl, rc.fbp)) break;
    while (!is_prime(next_q)) ++next_q;
    extra.push_back(next_q);
    ++next_q;
  }
  if (!generates(rc.cl, rc.fbp)) throw std::runtime_error("ray class: could not find generators coprime to the conductor");
  // principal ideals supported on fbp
  std::vector<std::size_t> avoid_cols;
  for (std::size_t i = 0; i < rc.cl.factor_base.size(); ++i)
    if (in_list(avoid, rc.cl.factor_base[i])) avoid_cols.push_back(i);
  const IntMatrix& R = rc.cl.relations;
  rc.lambda_combo = left_kernel(R.select_columns(avoid_cols));
  IntMatrix full = rc.lambda_combo * R;
  rc.lambda = full.select_columns(rc.fbp);
  return rc;
}

RayClassPPart ray_class_p_part(const RayContext& rc, const std::vector<PrimeIdeal>& modulus) {
  const NumberField& K = rc.ctx->K;
  const UnitBasis& U = rc.ctx->units;
  const std::uint64_t p = rc.p;
  for (std::size_t i = 0; i < modulus.size(); ++i) {
    if (!in_list(rc.avoid, modulus[i])) throw std::invalid_argument("conductor prime " + modulus[i].label() + " is outside the context");
    for (std::size_t j = 0; j < i; ++j)
      if (modulus[i] == modulus[j]) throw std::invalid_argument("conductor primes must be distinct");
  }
  RayClassPPart G;
  G.p = p;
  G.modulus = modulus;
  G.fb_count = rc.fbp.size();
  for (const auto& Q : modulus) {
    unsigned a = p_adic_exponent(Q.norm - 1, p);
    if (a == 0) continue;
    G.residue_primes.push_back(Q);
    G.residue_exponents.push_back(a);
    G.residue_lifts.push_back(lift_residue(K, Q, Q.residue_field.primitive_root()));
  }
  const std::size_t k = G.fb_count, t = G.residue_primes.size();
  G.relations = IntMatrix(0, k + t);
  // residue coordinates of the raw relation elements, then of the lambda rows
  std::vector<std::vector<Int>> psi_rel(t);
  for (std::size_t j = 0; j < t; ++j)
    for (const auto& a : rc.cl.relation_elements)
      psi_rel[j].push_back(fe_dlog(K, a, G.residue_primes[j], Int(static_cast<unsigned long>(p)),
                                   static_cast<int>(G.residue_exponents[j])));
  for (std::size_t r = 0; r < rc.lambda.rows(); ++r) {
    std::vector<Int> row = rc.lambda.row(r);
    for (std::size_t j = 0; j < t; ++j) {
      Int s = 0;
      for (std::size_t i = 0; i < rc.lambda_combo.cols(); ++i) s += rc.lambda_combo(r, i) * psi_rel[j][i];
      Int mod_ = tclab::pow(Int(static_cast<unsigned long>(p)), G.residue_exponents[j]);
      row.push_back(mod(-s, mod_));
    }
    G.relations.append_row(row);
  }
  std::vector<NFElement> units = U.units;
  units.push_back(U.zeta);
  for (const auto& u : units) {
    std::vector<Int> row(k);
    for (std::size_t j = 0; j < t; ++j) row.push_back(residue_coordinate(K, u, G.residue_primes[j], p, G.residue_exponents[j]));
    G.relations.append_row(row);
  }
  for (std::size_t j = 0; j < t; ++j) {
    std::vector<Int> row(k + t);
    row[k + j] = tclab::pow(Int(static_cast<unsigned long>(p)), G.residue_exponents[j]);
    G.relations.append_row(row);
  }
  G.full = cokernel(G.relations);
  G.group = G.full.p_part(Int(static_cast<unsigned long>(p)));
  return G;
}

RayClassPPart ray_class_p_part(FieldContext& ctx, const std::vector<PrimeIdeal>& modulus, std::uint64_t p) {
  RayContext rc = make_ray_context(ctx, p, modulus);
  return ray_class_p_part(rc, modulus);
}

SurjectionKernel rcg_surjection_kernel(const RayContext& rc, const RayClassPPart& small, const RayClassPPart& big) {
  for (const auto& Q : small.modulus)
    if (!in_list(big.modulus, Q)) throw std::invalid_argument("conductors are not nested: " + Q.label());
  if (small.fb_count != big.fb_count || small.fb_count != rc.fbp.size())
    throw std::invalid_argument("presentations come from different contexts");
  SurjectionKernel sk;
  sk.phi = IntMatrix(big.num_gens(), small.num_gens());
  for (std::size_t i = 0; i < big.fb_count; ++i) sk.phi(i, i) = 1;
  for (std::size_t j = 0; j < big.residue_primes.size(); ++j)
    for (std::size_t l = 0; l < small.residue_primes.size(); ++l)
      if (big.residue_primes[j] == small.residue_primes[l]) sk.phi(big.fb_count + j, small.fb_count + l) = 1;
  sk.lattice = preimage_lattice(sk.phi, small.relations);
  sk.kernel = induced_kernel(big.relations, sk.phi, small.relations).p_part(Int(static_cast<unsigned long>(rc.p)));
  sk.dim_mod_p = kernel_mod_p(big, sk).dim();
  if (sk.dim_mod_p != sk.kernel.p_rank(Int(static_cast<unsigned long>(rc.p))))
    throw std::logic_error("kernel (x) F_p disagrees with the p-rank of the kernel");
  return sk;
}

SurjectionKernel rcg_surjection_kernel(FieldContext& ctx, std::uint64_t p, const std::vector<PrimeIdeal>& small,
                                       const std::vector<PrimeIdeal>& big) {
  RayContext rc = make_ray_context(ctx, p, big);
  return rcg_surjection_kernel(rc, ray_class_p_part(rc, small), ray_class_p_part(rc, big));
}

std::vector<Int> ray_class_log(const RayContext& rc, const RayClassPPart& G, const PrimeIdeal& P) {
  const NumberField& K = rc.ctx->K;
  if (in_list(G.modulus, P)) throw std::invalid_argument("prime " + P.label() + " divides the conductor");
  std::vector<Int> out(G.num_gens());
  for (std::size_t i = 0; i < rc.fbp.size(); ++i)
    if (rc.gen_prime(i) == P) {
      out[i] = 1;
      return out;
    }
  // alpha in P with (alpha) = P * (factor-base part), alpha prime to the conductor
  std::vector<PrimeIdeal> fb;
  for (auto i : rc.fbp) fb.push_back(rc.cl.factor_base[i]);
  fb.push_back(P);
  const std::size_t n = static_cast<std::size_t>(K.degree());
  long double B = std::pow(P.norm.get_d(), 2.0L / n) * n;
  for (int tries = 0; tries < 60; ++tries, B *= 1.5L) {
    std::optional<std::vector<Int>> found;
    NFElement alpha;
    K.enumerate_short(P.ideal.hnf, B, [&](const NFElement& a) {
      auto v = fb_vector(K, fb, a);
      if (!v || v->back() != 1) return true;
      found = v;
      alpha = a;
      return false;
    });
    if (!found) continue;
    for (std::size_t i = 0; i < rc.fbp.size(); ++i) out[i] = -(*found)[i];
    for (std::size_t j = 0; j < G.residue_primes.size(); ++j)
      out[G.fb_count + j] = residue_coordinate(K, alpha, G.residue_primes[j], G.p, G.residue_exponents[j]);
    return out;
  }
  throw std::runtime_error("ray_class_log: no smooth element found in " + P.label());
}

IntMatrix ray_action(const RayContext& rc, const RayClassPPart& G, const NFElement& theta_image) {
  const NumberField& K = rc.ctx->K;
  const std::size_t N = G.num_gens();
  IntMatrix A(N, N);
  auto image_prime = [&](const PrimeIdeal& P) {
    auto Q = identify_prime(K, P.q, apply_map(K, theta_image, P.pi));
    if (!Q) throw std::logic_error("ray_action: image of " + P.label() + " not identified");
    return *Q;
  };
  for (std::size_t i = 0; i < G.fb_count; ++i) {
    PrimeIdeal Q = image_prime(rc.gen_prime(i));
    bool hit = false;
    for (std::size_t j = 0; j < G.fb_count; ++j)
      if (rc.gen_prime(j) == Q) {
        A(i, j) = 1;
        hit = true;
      }
    if (!hit) throw std::invalid_argument("ray_action: factor base is not stable under the automorphism");
  }
  for (std::size_t s = 0; s < G.residue_primes.size(); ++s) {
    PrimeIdeal Q = image_prime(G.residue_primes[s]);
    bool hit = false;
    for (std::size_t t = 0; t < G.residue_primes.size(); ++t)
      if (G.residue_primes[t] == Q) {
        NFElement img = apply_map(K, theta_image, G.residue_lifts[s]);
        A(G.fb_count + s, G.fb_count + t) = residue_coordinate(K, img, Q, G.p, G.residue_exponents[t]);
        hit = true;
      }
    if (!hit) throw std::invalid_argument("ray_action: conductor is not stable under the automorphism");
  }
  return A;
}

QuotientSpace ray_mod_p(const RayClassPPart& G) {
  return QuotientSpace(FpMatrix::from_int(G.relations, G.p), G.num_gens());
}

FpMatrix ray_action_mod_p(const RayClassPPart& G, const IntMatrix& action) {
  return ray_mod_p(G).induced(FpMatrix::from_int(action, G.p));
}

QuotientSpace kernel_mod_p(const RayClassPPart& big, const SurjectionKernel& k, IntMatrix* coords_out) {
  const std::size_t d = k.lattice.rows();
  IntMatrix coords(0, d);
  for (std::size_t i = 0; i < big.relations.rows(); ++i) {
    auto x = solve_left(k.lattice, big.relations.row(i));
    if (!x) throw std::logic_error("kernel_mod_p: relation outside the kernel lattice");
    coords.append_row(*x);
  }
  if (coords_out) *coords_out = coords;
  return QuotientSpace(FpMatrix::from_int(coords, big.p), d);
}

FpMatrix kernel_action_mod_p(const RayClassPPart& big, const SurjectionKernel& k, const IntMatrix& action) {
  const std::size_t d = k.lattice.rows();
  IntMatrix img = k.lattice * action;
  FpMatrix a(d, d, big.p);
  for (std::size_t i = 0; i < d; ++i) {
    auto x = solve_left(k.lattice, img.row(i));
    if (!x) throw std::logic_error("kernel_action_mod_p: kernel lattice is not stable");
    for (std::size_t j = 0; j < d; ++j) a.set(i, j, static_cast<long long>(mod_u64((*x)[j], big.p)));
  }
  return kernel_mod_p(big, k).induced(a);
}

}  // namespace tclab
