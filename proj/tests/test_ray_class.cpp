#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tclab/ray_class.hpp"

using namespace tclab;

namespace {

ZPoly zp(std::initializer_list<long> c) {
  ZPoly f;
  for (long x : c) f.push_back(x);
  return f;
}

PrimeIdeal first(const NumberField& K, long q) { return factor_prime(K, Int(q))[0]; }

}  // namespace

TEST_CASE("ray class groups of Q(sqrt 5) at p = 3") {
  auto ctx = make_context(make_field(zp({-1, -1, 1})), {3});
  const auto& K = ctx.K;
  auto P5 = first(K, 5), P107 = first(K, 107), P197 = first(K, 197);
  auto rc = make_ray_context(ctx, 3, {P5, P107, P197});
  auto S = ray_class_p_part(rc, {P5});
  auto T = ray_class_p_part(rc, {P5, P107});
  auto V = ray_class_p_part(rc, {P5, P107, P197});
  CHECK(S.group.is_trivial());
  CHECK(T.group == FinAbGroup({3}));
  CHECK(V.group == FinAbGroup({27}));

  auto k = rcg_surjection_kernel(rc, T, V);
  CHECK(k.kernel == FinAbGroup({9}));
  CHECK(k.dim_mod_p == 1);
  CHECK(rcg_surjection_kernel(rc, T, T).kernel.is_trivial());

  // conjugation theta -> 1 - theta acts by -1
  auto sigma = K.sub(K.one(), K.theta());
  auto A = ray_action(rc, T, sigma);
  auto a = ray_action_mod_p(T, A);
  REQUIRE(a.rows() == 1);
  CHECK(a(0, 0) == 2);
  auto Av = ray_action(rc, V, sigma);
  auto ak = kernel_action_mod_p(V, k, Av);
  REQUIRE(ak.rows() == 1);
  CHECK(ak(0, 0) == 2);

  // ray_class_log agrees with the generator classes
  for (std::size_t i = 0; i < V.fb_count; ++i) {
    auto v = ray_class_log(rc, V, rc.gen_prime(i));
    CHECK(v[i] == 1);
  }
  // the class of a prime is an element of the group: multiplying by the order kills it
  auto P11 = first(K, 11);
  auto v = ray_class_log(rc, V, P11);
  for (auto& x : v) x *= 27;
  IntMatrix test = V.relations;
  test.append_row(v);
  CHECK(cokernel(test).p_part(3) == V.group);
}

TEST_CASE("ray class groups are unchanged by primes with Nq != 1 mod p") {
  auto ctx = make_context(make_field(zp({-1, -1, 1})), {3});
  const auto& K = ctx.K;
  auto P5 = first(K, 5), P107 = first(K, 107);
  for (long q : {11, 29, 41, 59, 71}) {
    auto Q = first(K, q);
    if ((Q.norm - 1) % 3 == 0) continue;
    auto rc = make_ray_context(ctx, 3, {P5, P107, Q});
    CHECK(ray_class_p_part(rc, {P5, P107}).group == ray_class_p_part(rc, {P5, P107, Q}).group);
  }
}

TEST_CASE("ray class groups of the cubic field at p = 2") {
  auto ctx = make_context(make_field(zp({-1, -2, 1, 1})), {2});
  const auto& K = ctx.K;
  auto S = std::vector<PrimeIdeal>{first(K, 7)};
  auto T = S;
  for (long q : {181, 293}) T.push_back(first(K, q));
  auto V = T;
  for (long q : {307, 349}) V.push_back(first(K, q));
  auto rc = make_ray_context(ctx, 2, V);
  CHECK(ray_class_p_part(rc, S).group.is_trivial());
  auto GT = ray_class_p_part(rc, T);
  auto GV = ray_class_p_part(rc, V);
  CHECK(GT.group == FinAbGroup({2, 2}));
  CHECK(GV.group == FinAbGroup({4, 4}));
  auto k = rcg_surjection_kernel(rc, GT, GV);
  CHECK(k.kernel.order() * GT.group.order() == GV.group.order());
  CHECK(k.dim_mod_p == 2);
}

TEST_CASE("class group is a quotient of every ray class group") {
  auto ctx = make_context(make_field(zp({6, 0, 1})), {2, 3});
  const auto& K = ctx.K;
  auto Q = first(K, 7);
  auto R = first(K, 13);
  for (std::uint64_t p : {2u, 3u}) {
    auto G = ray_class_p_part(ctx, {Q, R}, p);
    CHECK(G.group.p_rank(Int(static_cast<unsigned long>(p))) >=
          ctx.cl.group.p_rank(Int(static_cast<unsigned long>(p))));
  }
}
