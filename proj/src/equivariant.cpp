#include "tclab/equivariant.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tclab {

namespace {

bool contains(const std::vector<PrimeIdeal>& v, const PrimeIdeal& P) { return std::find(v.begin(), v.end(), P) != v.end(); }

FpMatrix select_rows(const FpMatrix& m, std::size_t count) {
  FpMatrix r(count, m.cols(), m.modulus());
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r.set(i, j, static_cast<long long>(m(i, j)));
  return r;
}

std::size_t automorphism_order(const NumberField& L, const NFElement& g) {
  NFElement cur = g;
  const NFElement id = L.theta();
  for (std::size_t k = 1; k <= 64; ++k) {
    if (cur == id) return k;
    cur = apply_map(L, g, cur);
  }
  throw std::invalid_argument("automorphism has order above 64");
}

FpMatrix mat_pow(const FpMatrix& a, std::size_t k) {
  FpMatrix r = FpMatrix::identity(a.rows(), a.modulus());
  for (std::size_t i = 0; i < k; ++i) r = r * a;
  return r;
}

}  // namespace

NFElement GaloisLayer::embed(const NFElement& x) const { return substitute(L, K.to_power_basis(x), embedding); }

std::vector<PrimeIdeal> GaloisLayer::primes_above(const PrimeIdeal& P) const {
  std::vector<PrimeIdeal> out;
  NFElement pi = embed(P.pi);
  for (auto& Q : factor_prime(L, P.q))
    if (valuation(L, pi, Q) > 0) out.push_back(Q);
  if (out.empty()) throw std::logic_error("no prime of L above " + P.label());
  return out;
}

std::vector<PrimeIdeal> GaloisLayer::lift(const std::vector<PrimeIdeal>& T) const {
  std::vector<PrimeIdeal> out;
  for (const auto& P : T)
    for (auto& Q : primes_above(P))
      if (!contains(out, Q)) out.push_back(Q);
  return out;
}

PrimeIdeal GaloisLayer::apply(std::size_t gen, const PrimeIdeal& P) const {
  auto Q = identify_prime(L, P.q, apply_map(L, gamma_gens.at(gen), P.pi));
  if (!Q) throw std::logic_error("Galois image of " + P.label() + " not identified");
  return *Q;
}

std::vector<PrimeIdeal> GaloisLayer::orbit_closure(const std::vector<PrimeIdeal>& X) const {
  std::vector<PrimeIdeal> out;
  for (const auto& P : X)
    if (!contains(out, P)) out.push_back(P);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t g = 0; g < gamma_gens.size(); ++g) {
      PrimeIdeal Q = apply(g, out[i]);
      if (!contains(out, Q)) out.push_back(Q);
    }
  return out;
}

std::vector<PrimeIdeal> GaloisLayer::ramified_primes() const {
  std::vector<PrimeIdeal> out;
  for (auto& [q, e] : factor(abs(L.disc())))
    for (auto& P : factor_prime(K, q))
      for (auto& Q : primes_above(P))
        if (Q.e > P.e) {
          out.push_back(P);
          break;
        }
  return out;
}

GaloisLayer make_layer(NumberField K, NumberField L, const NFElement& embedding, const std::vector<NFElement>& gamma_gens) {
  GaloisLayer g{std::move(K), std::move(L), embedding, gamma_gens, {}, 1};
  if (!substitute(g.L, to_q(g.K.poly()), embedding).is_zero())
    throw std::invalid_argument("embedding is not a root of the polynomial of K");
  const QPoly fL = to_q(g.L.poly());
  for (const auto& s : gamma_gens) {
    if (!substitute(g.L, fL, s).is_zero())
      throw std::invalid_argument("automorphism " + g.L.element_to_string(s) + " is not a root of the polynomial of L");
    if (!(apply_map(g.L, s, embedding) == embedding))
      throw std::invalid_argument("automorphism " + g.L.element_to_string(s) + " does not fix K");
  }
  for (std::size_t i = 0; i < gamma_gens.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!(apply_map(g.L, gamma_gens[i], gamma_gens[j]) == apply_map(g.L, gamma_gens[j], gamma_gens[i])))
        throw std::invalid_argument("automorphisms do not commute");
  g.elements.push_back(g.L.theta());
  for (std::size_t i = 0; i < g.elements.size(); ++i)
    for (const auto& s : gamma_gens) {
      NFElement c = apply_map(g.L, s, g.elements[i]);
      if (std::find(g.elements.begin(), g.elements.end(), c) == g.elements.end()) g.elements.push_back(c);
      if (g.elements.size() > 6) throw std::invalid_argument("Galois group larger than 6 is not supported");
    }
  g.order = g.elements.size();
  if (g.order * static_cast<std::size_t>(g.K.degree()) != static_cast<std::size_t>(g.L.degree()))
    throw std::invalid_argument("automorphisms generate a group of order " + std::to_string(g.order) + ", expected [L:K] = " +
                                std::to_string(g.L.degree() / g.K.degree()));
  return g;
}

unsigned frobenius_order(const GaloisLayer& layer, const PrimeIdeal& P) {
  auto above = layer.primes_above(P);
  for (const auto& Q : above)
    if (Q.e > P.e) throw std::invalid_argument("frobenius_order: " + P.label() + " ramifies");
  return static_cast<unsigned>(above[0].f / P.f);
}

GaloisLayer trivial_layer(const NumberField& K) { return make_layer(K, K, K.theta(), {}); }

GammaModule make_module(std::uint64_t p, std::vector<FpMatrix> action, std::vector<std::string> labels) {
  GammaModule m;
  m.p = p;
  m.dim = action.empty() ? labels.size() : action[0].rows();
  for (const auto& a : action) {
    if (a.rows() != m.dim || a.cols() != m.dim || a.modulus() != p) throw std::invalid_argument("action matrix shape");
    if (m.dim > 0 && !a.inverse()) throw std::invalid_argument("action matrix is not invertible");
  }
  m.action = std::move(action);
  m.labels = std::move(labels);
  return m;
}

GammaModule trivial_module(std::uint64_t p, std::size_t dim, std::size_t num_gens) {
  return make_module(p, std::vector<FpMatrix>(num_gens, FpMatrix::identity(dim, p)), std::vector<std::string>(dim, "1"));
}

void check_relations(const GaloisLayer& layer, const GammaModule& m) {
  if (m.action.size() != layer.gamma_gens.size()) throw std::logic_error("module has the wrong number of generators");
  for (std::size_t i = 0; i < m.action.size(); ++i) {
    if (!m.action[i].inverse() && m.dim > 0) throw std::logic_error("action is not invertible");
    std::size_t k = automorphism_order(layer.L, layer.gamma_gens[i]);
    if (!mat_pow(m.action[i], k).is_identity()) throw std::logic_error("action violates gamma^" + std::to_string(k) + " = 1");
    for (std::size_t j = 0; j < i; ++j)
      if (!(m.action[i] * m.action[j] == m.action[j] * m.action[i])) throw std::logic_error("actions do not commute");
  }
}

std::vector<FpMatrix> group_elements(const GammaModule& m) {
  std::vector<FpMatrix> el{FpMatrix::identity(m.dim, m.p)};
  for (std::size_t i = 0; i < el.size(); ++i)
    for (const auto& a : m.action) {
      FpMatrix c = el[i] * a;
      if (std::find(el.begin(), el.end(), c) == el.end()) el.push_back(c);
      if (el.size() > 100000) throw std::runtime_error("group_elements: group too large");
    }
  return el;
}

std::size_t invariants_dim(const GammaModule& m) {
  if (m.dim == 0) return 0;
  FpMatrix M(m.dim, m.dim * m.action.size(), m.p);
  for (std::size_t g = 0; g < m.action.size(); ++g) {
    FpMatrix d = m.action[g] - FpMatrix::identity(m.dim, m.p);
    for (std::size_t i = 0; i < m.dim; ++i)
      for (std::size_t j = 0; j < m.dim; ++j) M.set(i, g * m.dim + j, static_cast<long long>(d(i, j)));
  }
  const std::size_t by_kernel = m.dim - M.rank();
  auto el = group_elements(m);
  if (el.size() % m.p != 0) {
    FpMatrix e(m.dim, m.dim, m.p);
    for (const auto& g : el) e = e + g;
    e = scale(e, invmod(el.size() % m.p, m.p));
    if (!(e * e == e)) throw std::logic_error("averaging operator is not idempotent");
    if (e.rank() != by_kernel)
      throw std::logic_error("invariants: idempotent rank " + std::to_string(e.rank()) + " != kernel dimension " +
                             std::to_string(by_kernel));
  }
  return by_kernel;
}

GammaModule tensor(const GammaModule& a, const GammaModule& b) {
  if (a.p != b.p) throw std::invalid_argument("tensor: modules over different primes");
  if (a.action.size() != b.action.size()) throw std::invalid_argument("tensor: different numbers of generators");
  GammaModule m;
  m.p = a.p;
  m.dim = a.dim * b.dim;
  for (std::size_t g = 0; g < a.action.size(); ++g) m.action.push_back(kronecker(a.action[g], b.action[g]));
  for (const auto& x : a.labels)
    for (const auto& y : b.labels) m.labels.push_back(x + " (x) " + y);
  return m;
}

GammaModule dual(const GammaModule& m) {
  GammaModule d = m;
  for (auto& a : d.action) {
    auto inv = a.inverse();
    if (!inv) throw std::logic_error("dual: action not invertible");
    a = inv->transpose();
  }
  for (auto& l : d.labels) l = l + "^*";
  return d;
}

GammaModule units_module(const GaloisLayer& layer, FieldContext& ctxL, std::uint64_t p) {
  const NumberField& L = ctxL.K;
  SelmerBasis B = selmer_basis(ctxL, {}, p);
  const std::size_t k = u_mod_p_dim(L, ctxL.units, p);
  FpMatrix aux = select_rows(B.aux_matrix, k);
  std::vector<FpMatrix> action;
  for (const auto& s : layer.gamma_gens) {
    FpMatrix a(k, k, p);
    for (std::size_t i = 0; i < k; ++i) {
      auto img = fe_apply_map(L, s, B.v_empty[i]);
      auto x = fp_solve_left(aux, aux_characters(L, B, img));
      if (!x) throw std::logic_error("units_module: image of " + B.v_empty_labels[i] + " is not in the unit span");
      for (std::size_t j = 0; j < k; ++j) a.set(i, j, static_cast<long long>((*x)[j]));
    }
    action.push_back(a);
  }
  std::vector<std::string> labels(B.v_empty_labels.begin(), B.v_empty_labels.begin() + static_cast<long>(k));
  if (action.empty()) return make_module(p, {}, labels);
  return make_module(p, action, labels);
}

GammaModule class_module(const GaloisLayer& layer, FieldContext& ctxL, std::uint64_t p) {
  const auto& cl = ctxL.cl;
  const Int pp(static_cast<unsigned long>(p));
  std::vector<std::size_t> pos;
  for (std::size_t j = 0; j < cl.snf.diagonal.size(); ++j)
    if (cl.snf.diagonal[j] > 1 && cl.snf.diagonal[j] % pp == 0) pos.push_back(j);
  std::vector<std::string> labels;
  for (auto j : pos) labels.push_back("class " + std::to_string(j));
  std::vector<FpMatrix> action;
  for (std::size_t g = 0; g < layer.gamma_gens.size(); ++g) {
    std::vector<std::size_t> perm(cl.factor_base.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      PrimeIdeal Q = layer.apply(g, cl.factor_base[i]);
      perm[i] = cl.fb_index(Q);
    }
    FpMatrix a(pos.size(), pos.size(), p);
    for (std::size_t r = 0; r < pos.size(); ++r) {
      auto e = cl.generator_exponents(pos[r]);
      std::vector<Int> img(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) img[perm[i]] += e[i];
      auto c = cl.class_of(img);
      for (std::size_t s = 0; s < pos.size(); ++s) a.set(r, s, static_cast<long long>(mod_u64(c[pos[s]], p)));
    }
    action.push_back(a);
  }
  if (action.empty()) return make_module(p, {}, labels);
  return make_module(p, action, labels);
}

namespace {

std::vector<std::string> ray_labels(const RayContext& rc, const RayClassPPart& G, const QuotientSpace& qs) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < G.fb_count; ++i) names.push_back("[" + rc.gen_prime(i).label() + "]");
  for (const auto& Q : G.residue_primes) names.push_back("res " + Q.label());
  std::vector<std::string> out;
  for (auto c : qs.free_cols) out.push_back(c < names.size() ? names[c] : "gen " + std::to_string(c));
  return out;
}

}  // namespace

GammaModule ray_class_module(const GaloisLayer& layer, const RayContext& rc, const RayClassPPart& G) {
  std::vector<FpMatrix> action;
  for (const auto& s : layer.gamma_gens) action.push_back(ray_action_mod_p(G, ray_action(rc, G, s)));
  auto labels = ray_labels(rc, G, ray_mod_p(G));
  if (action.empty()) return make_module(G.p, {}, labels);
  return make_module(G.p, action, labels);
}

GammaModule ray_kernel_module(const GaloisLayer& layer, const RayContext& rc, const RayClassPPart& big,
                              const SurjectionKernel& k) {
  std::vector<FpMatrix> action;
  for (const auto& s : layer.gamma_gens) action.push_back(kernel_action_mod_p(big, k, ray_action(rc, big, s)));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < k.dim_mod_p; ++i) labels.push_back("ker " + std::to_string(i));
  if (action.empty()) return make_module(big.p, {}, labels);
  return make_module(big.p, action, labels);
}

GammaModule selmer_module(const GaloisLayer& layer, FieldContext& ctxL, const SelmerBasis& B) {
  const NumberField& L = ctxL.K;
  for (std::size_t g = 0; g < layer.gamma_gens.size(); ++g)
    for (const auto& P : B.S)
      if (!contains(B.S, layer.apply(g, P))) throw std::invalid_argument("selmer_module: S is not Gamma-stable");
  std::vector<FpMatrix> action;
  for (const auto& s : layer.gamma_gens) {
    FpMatrix a(B.dim(), B.dim(), B.p);
    for (std::size_t i = 0; i < B.dim(); ++i) {
      auto x = selmer_coordinates(L, B, fe_apply_map(L, s, B.generators[i]));
      if (!x) throw std::logic_error("selmer_module: image of generator " + std::to_string(i) + " not expressible");
      for (std::size_t j = 0; j < B.dim(); ++j) a.set(i, j, static_cast<long long>((*x)[j]));
    }
    action.push_back(a);
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < B.dim(); ++i) labels.push_back("selmer " + std::to_string(i));
  if (action.empty()) return make_module(B.p, {}, labels);
  return make_module(B.p, action, labels);
}

DescentReport descent_check(const GaloisLayer& layer, FieldContext& ctxK, FieldContext& ctxL,
                            const std::vector<PrimeIdeal>& T, std::uint64_t p) {
  DescentReport r;
  r.T = T;
  if (layer.order % p == 0) {
    r.refused = true;
    r.reason = "p = " + std::to_string(p) + " divides |Gamma| = " + std::to_string(layer.order);
    return r;
  }
  for (const auto& P : layer.ramified_primes())
    if (!contains(T, P)) {
      r.refused = true;
      r.reason = "ramified prime " + P.label() + " is missing from T";
      return r;
    }
  r.T_lift = layer.lift(T);
  r.rusb_K = selmer_basis(ctxK, T, p).dim();
  SelmerBasis BL = selmer_basis(ctxL, r.T_lift, p);
  r.rusb_L = BL.dim();
  GammaModule M = selmer_module(layer, ctxL, BL);
  check_relations(layer, M);
  r.rusb_L_invariants = invariants_dim(M);
  r.equal = r.rusb_K == r.rusb_L_invariants;
  return r;
}

}  // namespace tclab
