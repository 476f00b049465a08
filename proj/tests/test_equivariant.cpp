#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tclab/equivariant.hpp"

#include <random>

using namespace tclab;

namespace {

ZPoly zp(std::initializer_list<long> c) {
  ZPoly f;
  for (long x : c) f.push_back(x);
  return f;
}

PrimeIdeal first(const NumberField& K, long q) { return factor_prime(K, Int(q))[0]; }

GaloisLayer sqrt5_layer() {
  auto Q = make_field(zp({0, 1}));
  auto L = make_field(zp({-1, -1, 1}));
  NFElement sigma = L.sub(L.one(), L.theta());
  return make_layer(Q, L, L.zero(), {sigma});
}

GaloisLayer cubic_layer() {
  auto Q = make_field(zp({0, 1}));
  auto L = make_field(zp({-1, -2, 1, 1}));
  NFElement t = L.theta();
  return make_layer(Q, L, L.zero(), {L.sub(L.mul(t, t), L.from_int(2))});
}

GammaModule example2_A() { return make_module(2, {FpMatrix::from_rows({{0, 1}, {1, 1}}, 2)}, {"a", "b"}); }

}  // namespace

TEST_CASE("layers are validated") {
  auto Q = make_field(zp({0, 1}));
  auto L = make_field(zp({-1, -1, 1}));
  CHECK_THROWS(make_layer(Q, L, L.zero(), {L.add(L.one(), L.theta())}));
  CHECK_THROWS(make_layer(Q, L, L.zero(), {}));
  auto g = sqrt5_layer();
  CHECK(g.order == 2);
  auto c = cubic_layer();
  CHECK(c.order == 3);
  auto ram = c.ramified_primes();
  REQUIRE(ram.size() == 1);
  CHECK(ram[0].q == 7);
  auto t = trivial_layer(L);
  CHECK(t.order == 1);
}

TEST_CASE("invariants, tensor, dual") {
  auto A = example2_A();
  CHECK(invariants_dim(A) == 0);
  // brute force: no nonzero fixed vector among the 4 vectors of F_2^2
  int fixed = 0;
  for (unsigned v = 1; v < 4; ++v) {
    unsigned x = v & 1, y = v >> 1 & 1;
    unsigned nx = y, ny = (x + y) & 1;
    if (nx == x && ny == y) ++fixed;
  }
  CHECK(fixed == 0);
  auto AA = tensor(A, A);
  CHECK(AA.dim == 4);
  CHECK(invariants_dim(AA) == 2);
  CHECK(invariants_dim(tensor(A, trivial_module(2, 1, 1))) == 0);
  CHECK(invariants_dim(trivial_module(3, 4, 1)) == 4);
  auto m1 = make_module(3, {FpMatrix::from_rows({{2}}, 3)});
  CHECK(invariants_dim(m1) == 0);
  CHECK(invariants_dim(tensor(m1, m1)) == 1);
  CHECK(invariants_dim(dual(A)) == 0);
  CHECK(invariants_dim(tensor(dual(A), A)) == 2);

  std::mt19937_64 rng(3);
  auto rnd = [&](std::size_t n) {
    // conjugate of a permutation-like order-2 element keeps the action of order 2
    for (;;) {
      FpMatrix P(n, n, 3);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) P.set(i, j, static_cast<long long>(rng() % 3));
      auto Pi = P.inverse();
      if (!Pi) continue;
      FpMatrix D = FpMatrix::identity(n, 3);
      for (std::size_t i = 0; i < n; ++i)
        if (rng() % 2) D.set(i, i, 2);
      return make_module(3, {*Pi * D * P});
    }
  };
  for (int i = 0; i < 10; ++i) {
    auto a = rnd(2), b = rnd(3);
    CHECK(invariants_dim(tensor(a, b)) == invariants_dim(tensor(b, a)));
  }
}

TEST_CASE("Example 1 layer: ray class action is -1") {
  auto layer = sqrt5_layer();
  auto ctx = make_context(layer.L, {3});
  std::vector<PrimeIdeal> T{first(ctx.K, 5), first(ctx.K, 107)};
  CHECK(layer.orbit_closure(T).size() == 2);
  auto rc = make_ray_context(ctx, 3, T);
  auto G = ray_class_p_part(rc, T);
  auto M = ray_class_module(layer, rc, G);
  check_relations(layer, M);
  REQUIRE(M.dim == 1);
  CHECK(M.action[0](0, 0) == 2);
  CHECK(invariants_dim(M) == 0);
}

TEST_CASE("Example 2 layer: units and selmer modules") {
  auto layer = cubic_layer();
  auto ctx = make_context(layer.L, {2});
  auto U = units_module(layer, ctx, 2);
  check_relations(layer, U);
  CHECK(U.dim == 3);
  CHECK(invariants_dim(U) == 1);  // F_2 + A
  auto A = example2_A();
  CHECK(invariants_dim(tensor(U, A)) == 2);

  auto T1 = std::vector<PrimeIdeal>{first(ctx.K, 7), first(ctx.K, 181), first(ctx.K, 293)};
  auto Tt = layer.orbit_closure(T1);
  CHECK(Tt.size() == 7);
  auto B = selmer_basis(ctx, Tt, 2);
  CHECK(B.dim() == 2);
  auto M = selmer_module(layer, ctx, B);
  check_relations(layer, M);
  CHECK(invariants_dim(tensor(dual(M), A)) == 2);
  CHECK_THROWS(selmer_module(layer, ctx, selmer_basis(ctx, T1, 2)));
}

TEST_CASE("descent check") {
  auto layer = sqrt5_layer();
  auto ctxQ = make_context(layer.K, {3});
  auto ctxL = make_context(layer.L, {3});
  for (auto extra : std::vector<std::vector<long>>{{}, {7}, {13}, {7, 19}, {31, 37}, {43}}) {
    std::vector<PrimeIdeal> T{first(layer.K, 5)};
    for (long q : extra) T.push_back(first(layer.K, q));
    auto r = descent_check(layer, ctxQ, ctxL, T, 3);
    CHECK_FALSE(r.refused);
    CHECK(r.equal);
  }
  auto refused = descent_check(layer, ctxQ, ctxL, {first(layer.K, 7)}, 3);
  CHECK(refused.refused);
  auto ctxQ2 = make_context(layer.K, {2});
  auto ctxL2 = make_context(layer.L, {2});
  CHECK(descent_check(layer, ctxQ2, ctxL2, {first(layer.K, 5)}, 2).refused);
  auto triv = trivial_layer(layer.L);
  auto r = descent_check(triv, ctxL, ctxL, {first(layer.L, 5), first(layer.L, 11)}, 3);
  CHECK(r.equal);
}

TEST_CASE("Frobenius in a quadratic layer") {
  auto layer = sqrt5_layer();
  CHECK(frobenius_order(layer, first(layer.K, 11)) == 1);
  CHECK(frobenius_order(layer, first(layer.K, 107)) == 2);
  CHECK(frobenius_order(layer, first(layer.K, 7)) == 2);
  CHECK_THROWS(frobenius_order(layer, first(layer.K, 5)));
  // quadratic residue oracle
  for (long q : {3, 7, 11, 13, 17, 19, 23, 29, 31, 41}) {
    bool square = false;
    for (long a = 0; a < q; ++a)
      if ((a * a - 5) % q == 0) square = true;
    CHECK(frobenius_order(layer, first(layer.K, q)) == (square ? 1u : 2u));
  }
}
