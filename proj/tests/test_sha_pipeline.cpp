#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tclab/sha_pipeline.hpp"

#include <random>

using namespace tclab;

namespace {

ZPoly zp(std::initializer_list<long> c) {
  ZPoly f;
  for (long x : c) f.push_back(x);
  return f;
}

PrimeIdeal first(const NumberField& K, long q) { return factor_prime(K, Int(q))[0]; }

std::vector<PrimeIdeal> firsts(const NumberField& K, std::initializer_list<long> qs) {
  std::vector<PrimeIdeal> v;
  for (long q : qs) v.push_back(first(K, q));
  return v;
}

GaloisLayer sqrt5_layer() {
  auto Q = make_field(zp({0, 1}));
  auto L = make_field(zp({-1, -1, 1}));
  return make_layer(Q, L, L.zero(), {L.sub(L.one(), L.theta())});
}

GaloisLayer cubic_layer() {
  auto Q = make_field(zp({0, 1}));
  auto L = make_field(zp({-1, -2, 1, 1}));
  NFElement t = L.theta();
  return make_layer(Q, L, L.zero(), {L.sub(L.mul(t, t), L.from_int(2))});
}

}  // namespace

TEST_CASE("Example 1: lower bound and twisted sandwich") {
  auto layer = sqrt5_layer();
  auto ctx = make_context(layer.L, {3});
  auto S = firsts(ctx.K, {5}), T = firsts(ctx.K, {5, 107}), V = firsts(ctx.K, {5, 107, 197});
  auto lb = sha_lower_bound(ctx, 3, T, V);
  CHECK(lb.value == 1);
  CHECK(lb.precondition);
  CHECK(sha_lower_bound(ctx, 3, T, T).value == 0);
  CHECK_THROWS(sha_lower_bound(ctx, 3, V, T));

  auto A = make_module(3, {FpMatrix::from_rows({{2}}, 3)}, {"a"});
  auto s = sha_sandwich_twisted(layer, ctx, 3, T, V, A);
  CHECK(s.certified);
  CHECK(s.route == "sandwich");
  CHECK(s.lower == 1);
  CHECK(s.upper == 1);
  CHECK(twisted_rusb(layer, ctx, 3, S, A) == 1);
  auto sS = sha_sandwich_twisted(layer, ctx, 3, S, {}, A);
  CHECK(sS.certified);
  CHECK(sS.value() == 0);
}

TEST_CASE("Example 2: Sha rows") {
  auto layer = cubic_layer();
  auto ctx = make_context(layer.L, {2});
  const auto& L = ctx.K;
  auto S = firsts(L, {7}), T = firsts(L, {7, 181, 293}), V = firsts(L, {7, 181, 293, 307, 349});
  std::vector<std::size_t> sha;
  for (const auto& X : {std::vector<PrimeIdeal>{}, S, T, V}) {
    auto s = sha_sandwich(ctx, 2, X, X == T ? V : std::vector<PrimeIdeal>{});
    CHECK(s.certified);
    sha.push_back(s.value());
  }
  CHECK(sha == std::vector<std::size_t>{0, 0, 2, 0});

  auto A = make_module(2, {FpMatrix::from_rows({{0, 1}, {1, 1}}, 2)}, {"a", "b"});
  std::vector<std::size_t> rusbA, shaA;
  auto St = layer.orbit_closure(S), Tt = layer.orbit_closure(T), Vt = layer.orbit_closure(V);
  for (const auto& X : {std::vector<PrimeIdeal>{}, St, Tt, Vt}) {
    auto s = sha_sandwich_twisted(layer, ctx, 2, X, X == Tt ? Vt : std::vector<PrimeIdeal>{}, A,
                                  X == Tt ? T : std::vector<PrimeIdeal>{}, X == Tt ? V : std::vector<PrimeIdeal>{});
    CHECK(s.certified);
    rusbA.push_back(s.rusb);
    shaA.push_back(s.value());
  }
  CHECK(rusbA == std::vector<std::size_t>{2, 2, 2, 0});
  CHECK(shaA == std::vector<std::size_t>{0, 0, 2, 0});
}

TEST_CASE("orbit closure") {
  auto layer = cubic_layer();
  auto ctx = make_context(layer.L, {2});
  auto S = firsts(ctx.K, {7});
  auto c = orbit_closure_check(layer, ctx, S, firsts(ctx.K, {181, 293}), 2);
  CHECK(c.X_tilde.size() == 6);
  CHECK(c.dim_prime == 2);
  CHECK(c.dim_tilde == 2);
  CHECK(c.equal);

  auto q = sqrt5_layer();
  auto cq = make_context(q.L, {3});
  std::mt19937_64 rng(5);
  std::vector<long> split;
  for (long p : {11, 19, 29, 31, 41, 59, 61, 71, 79, 89, 101, 109})
    split.push_back(p);
  for (int i = 0; i < 5; ++i) {
    long p = split[rng() % split.size()];
    auto P = factor_prime(cq.K, Int(p))[rng() % 2];
    auto r = orbit_closure_check(q, cq, firsts(cq.K, {5}), {P}, 3);
    CHECK(r.X_tilde.size() == 2);
    CHECK(r.equal);
  }
}

TEST_CASE("preserving primes against a naive cube test") {
  auto ctx = make_context(make_field(zp({-1, -1, 1})), {3});
  auto X = find_preserving_primes(ctx, {}, 3, 3, Int(10000));
  CHECK(X.X.size() == 3);
  CHECK(X.shortfall == 0);
  CHECK(X.verified);
  for (const auto& P : X.X) {
    // theta reduces to a root of x^2 - x - 1 (split case) or generates F_{q^2}
    if (P.f != 1) continue;
    std::uint64_t q = P.q.get_ui();
    auto r = reduce(ctx.K, ctx.K.theta(), P)[0];
    // the unit is a cube mod P iff some c has c^3 = r
    bool cube = false;
    for (std::uint64_t c = 1; c < q && !cube; ++c)
      if (c * c % q * c % q == r) cube = true;
    CHECK(cube);
  }
  auto Q = make_context(make_field(zp({0, 1})));
  auto XQ = find_preserving_primes(Q, {}, 3, 5, Int(100));
  CHECK(XQ.X.size() == 5);
  CHECK(XQ.X[0].q == 7);
  auto short_ = find_preserving_primes(Q, {}, 3, 50, Int(50));
  CHECK(short_.shortfall > 0);
}

TEST_CASE("non-vanishing witnesses") {
  auto layer = sqrt5_layer();
  auto w = witness_nonvanishing(layer, Int(1000));
  CHECK(w.prime.q == 2);
  CHECK(w.frobenius == 2);
  CHECK(frobenius_order(layer, first(layer.K, 7)) == 2);

  auto K = make_field(zp({-1, -1, 1}));
  auto wk = witness_nonvanishing(K, K.theta(), 3, Int(10000));
  CHECK(wk.frobenius == 3);
  CHECK(power_residue_class(K, K.theta(), wk.prime, 3).value != 0);
  CHECK_THROWS(witness_nonvanishing(K, K.pow(K.theta(), 3), 3, Int(1000)));
}
