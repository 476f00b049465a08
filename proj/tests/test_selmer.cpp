#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tclab/selmer.hpp"

#include <random>

using namespace tclab;

namespace {

ZPoly zp(std::initializer_list<long> c) {
  ZPoly f;
  for (long x : c) f.push_back(x);
  return f;
}

PrimeIdeal first(const NumberField& K, long q) { return factor_prime(K, Int(q))[0]; }

RatMatrix half_basis() {
  RatMatrix b(2, 2);
  b(0, 0) = 1;
  b(1, 0) = Rat(1, 2);
  b(1, 1) = Rat(1, 2);
  return b;
}

NumberField quadratic(long d) {
  if (((d % 4) + 4) % 4 == 1) return make_field(zp({-d, 0, 1}), half_basis());
  return make_field(zp({-d, 0, 1}));
}

}  // namespace

TEST_CASE("selmer groups from the examples") {
  auto Q = make_context(make_field(zp({0, 1})));
  CHECK(selmer_basis(Q, {}, 3).dim() == 0);
  CHECK(crosscheck_rusb(Q, {}, 3).equal);

  auto L = make_context(make_field(zp({-1, -1, 1})));
  auto P5 = first(L.K, 5), P107 = first(L.K, 107);
  auto B = selmer_basis(L, {P5}, 3);
  CHECK(B.dim() == 1);
  CHECK(B.certified);
  auto h = rusb_dim_via_h1(L, {P5, P107}, 3);
  CHECK(h.dim_h1 == 1);
  CHECK(h.delta_p == 0);
  CHECK(h.r == 2);
  CHECK(h.rusb == 1);
  CHECK(crosscheck_rusb(L, {P5, P107}, 3).equal);

  auto C = make_context(make_field(zp({-1, -2, 1, 1})));
  std::vector<PrimeIdeal> S{first(C.K, 7)};
  std::vector<PrimeIdeal> T = S;
  for (long q : {181, 293}) T.push_back(first(C.K, q));
  std::vector<PrimeIdeal> V = T;
  for (long q : {307, 349}) V.push_back(first(C.K, q));
  CHECK(selmer_basis(C, {}, 2).dim() == 3);
  CHECK(selmer_basis(C, S, 2).dim() == 2);
  CHECK(selmer_basis(C, T, 2).dim() == 2);
  CHECK(selmer_basis(C, V, 2).dim() == 0);
  auto hT = rusb_dim_via_h1(C, T, 2);
  CHECK(hT.dim_h1 == 2);
  CHECK(hT.delta_p == 1);
  CHECK(hT.r == 3);
  CHECK(hT.rusb == 2);
  for (const auto& X : {std::vector<PrimeIdeal>{}, S, T, V}) CHECK(crosscheck_rusb(C, X, 2).equal);
}

TEST_CASE("dim V_empty = units mod p plus p-rank of Cl, and generators re-verify") {
  for (long d : {-23, -47, 5, 10, 79, -31, 12 + 1, 229}) {
    auto ctx = make_context(quadratic(d));
    for (std::uint64_t p : {2u, 3u, 5u}) {
      auto B = selmer_basis(ctx, {}, p);
      CHECK(B.certified);
      CHECK(B.dim() == u_mod_p_dim(ctx.K, ctx.units, p) + ctx.cl.group.p_rank(Int(static_cast<unsigned long>(p))));
      for (const auto& g : B.generator_values) {
        std::string why;
        CHECK_MESSAGE(verify_selmer_element(ctx.K, {}, p, g, &why), why);
      }
    }
  }
}

TEST_CASE("anti-monotonicity and inert conditions") {
  std::mt19937_64 rng(7);
  auto ctx = make_context(make_field(zp({-1, -1, 1})));
  const auto& K = ctx.K;
  std::vector<PrimeIdeal> pool;
  for (long q : {11, 19, 29, 31, 41, 59, 61, 71, 79, 89})
    for (auto& P : factor_prime(K, Int(q))) pool.push_back(P);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<PrimeIdeal> S(pool.begin(), pool.begin() + 2), S2(pool.begin(), pool.begin() + 4);
    auto a = selmer_basis(ctx, S, 3), b = selmer_basis(ctx, S2, 3);
    CHECK(b.dim() <= a.dim());
    for (const auto& g : b.generator_values) CHECK(verify_selmer_element(K, S2, 3, g));
  }
  // primes with Nq != 1 mod 3 impose nothing
  auto base = selmer_basis(ctx, {}, 3).dim();
  for (long q : {2, 7, 13, 17, 23}) {
    auto P = first(K, q);
    if ((P.norm - 1) % 3 == 0) continue;
    CHECK(selmer_basis(ctx, {P}, 3).dim() == base);
  }
}

TEST_CASE("selmer coordinates of basis elements") {
  auto C = make_context(make_field(zp({-1, -2, 1, 1})));
  auto B = selmer_basis(C, {first(C.K, 7)}, 2);
  for (std::size_t i = 0; i < B.dim(); ++i) {
    auto c = selmer_coordinates(C.K, B, B.generators[i]);
    REQUIRE(c.has_value());
    for (std::size_t j = 0; j < B.dim(); ++j) CHECK((*c)[j] == (i == j ? 1u : 0u));
  }
}

TEST_CASE("exceptionality") {
  auto Q = make_context(make_field(zp({0, 1})));
  auto rq = is_exceptional(Q, {first(Q.K, 5)});
  CHECK(rq.condition_a);
  CHECK_FALSE(rq.condition_b);
  CHECK_FALSE(rq.exceptional);

  auto G = make_context(make_field(zp({1, 0, 1})));
  auto rg = is_exceptional(G, {});
  CHECK_FALSE(rg.condition_a);
  CHECK_FALSE(rg.exceptional);

  auto C = make_context(make_field(zp({-1, -2, 1, 1})));
  std::vector<PrimeIdeal> T{first(C.K, 7), first(C.K, 181), first(C.K, 293)};
  auto rc = is_exceptional(C, T);
  REQUIRE(rc.condition_c_primes.size() == 3);
  CHECK_FALSE(rc.condition_c_primes[0].second);
  CHECK(rc.condition_c_primes[1].second);
  CHECK(rc.condition_c_primes[2].second);
  CHECK_FALSE(rc.condition_c);
  CHECK_FALSE(rc.exceptional);

  // Q(sqrt 2): 2 = (sqrt 2)^2, so (b) holds
  auto R2 = make_context(make_field(zp({-2, 0, 1})));
  auto r2 = is_exceptional(R2, {});
  CHECK(r2.condition_a);
  CHECK(r2.condition_b);
  CHECK(r2.exceptional);
}
