#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tclab/class_unit.hpp"

#include <cmath>

using namespace tclab;

namespace {

ZPoly zp(std::initializer_list<long> c) {
  ZPoly f;
  for (long x : c) f.push_back(x);
  return f;
}

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

// log of the fundamental unit of Q(sqrt d) from the continued fraction of the
// basis generator w: the first convergent h/k with h - k*w a unit.
long double cf_regulator(long d) {
  const bool one_mod_4 = ((d % 4) + 4) % 4 == 1;
  const long double sd = std::sqrt(static_cast<long double>(d));
  // w = (P + sqrt d)/Q
  long P = one_mod_4 ? 1 : 0, Q = one_mod_4 ? 2 : 1;
  Int h_prev = 0, h = 1, k_prev = 1, k = 0;
  for (int i = 0; i < 2000; ++i) {
    long a = static_cast<long>(std::floor((P + sd) / Q));
    Int h_new = a * h + h_prev, k_new = a * k + k_prev;
    h_prev = h;
    h = h_new;
    k_prev = k;
    k = k_new;
    Int n = one_mod_4 ? Int(h * h - h * k - Int((d - 1) / 4) * k * k) : Int(h * h - Int(d) * k * k);
    if (abs(n) == 1) {
      long double wconj = one_mod_4 ? (1 - sd) / 2 : -sd;
      return std::log(std::fabs(h.get_d() - k.get_d() * wconj));
    }
    P = a * Q - P;
    Q = (d - P * P) / Q;
  }
  return -1;
}

}  // namespace

TEST_CASE("units of quadratic fields") {
  auto K = make_field(zp({-1, -1, 1}));
  auto U = unit_group(K);
  REQUIRE(U.units.size() == 1);
  CHECK(U.units[0] == K.from_int_coords({0, 1}));
  CHECK(U.w == 2);
  auto F = quadratic(5);
  auto UF = unit_group(F);
  CHECK(UF.units[0] == F.from_int_coords({0, 1}));

  for (long d : {2, 3, 6, 7, 10, 13, 19, 21, 29, 31, 43, 46, 61, 94, 193}) {
    auto Kd = quadratic(d);
    auto Ud = unit_group(Kd);
    REQUIRE(Ud.units.size() == 1);
    CHECK(abs(Kd.norm(Ud.units[0])) == 1);
    auto e = Kd.embed(Ud.units[0]);
    long double reg = std::log(std::max(std::abs(e[0]), std::abs(e[1])));
    CHECK(std::fabs(reg - cf_regulator(d)) < 1e-8L * std::max(1.0L, reg));
  }
  auto I = quadratic(-23);
  auto UI = unit_group(I);
  CHECK(UI.units.empty());
  CHECK(UI.w == 2);
  auto G = make_field(zp({1, 0, 1}));
  CHECK(unit_group(G).w == 4);
  CHECK(unit_group(quadratic(-3)).w == 6);
}

TEST_CASE("units of the cubic field") {
  auto C = make_field(zp({-1, -2, 1, 1}));
  auto U = unit_group(C);
  REQUIRE(U.units.size() == 2);
  for (auto& u : U.units) CHECK(abs(C.norm(u)) == 1);
  CHECK(!U.witness_primes.empty());
  CHECK(u_mod_p_dim(C, U, 2) == 3);
  CHECK(u_mod_p_dim(make_field(zp({0, 1})), unit_group(make_field(zp({0, 1}))), 3) == 0);
  auto K = make_field(zp({-1, -1, 1}));
  CHECK(u_mod_p_dim(K, unit_group(K), 3) == 1);
}

TEST_CASE("saturation") {
  auto K = make_field(zp({-1, -1, 1}));
  auto U = unit_group(K);
  auto eps = U.units[0];
  U.units[0] = K.pow(eps, 15);
  saturate(K, U, 3);
  saturate(K, U, 5);
  CHECK(U.is_saturated_at(3));
  long double l = std::fabs(std::log(std::abs(K.embed(U.units[0])[0])));
  long double l1 = std::fabs(std::log(std::abs(K.embed(eps)[0])));
  CHECK(std::fabs(l - l1) < 1e-9L);

  // each unit is not a p-th power: a nonzero class at an auxiliary prime
  auto C = make_field(zp({-1, -2, 1, 1}));
  auto UC = unit_group(C);
  saturate(C, UC, 2);
  saturate(C, UC, 3);
  for (std::uint64_t p : {2u, 3u}) {
    for (const auto& u : UC.units) {
      int tried = 0;
      bool nonzero = false;
      for (auto q : primes_up_to(2000)) {
        if (q == p || tried >= 5) continue;
        for (auto& P : factor_prime(C, Int(static_cast<unsigned long>(q)))) {
          if ((P.norm - 1) % p != 0 || tried >= 5) continue;
          ++tried;
          if (power_residue_class(C, u, P, p).value != 0) nonzero = true;
        }
      }
      CHECK(nonzero);
    }
  }
}

TEST_CASE("class groups") {
  auto K = make_field(zp({-1, -1, 1}));
  auto cK = class_group(K, unit_group(K));
  CHECK(cK.group.is_trivial());
  CHECK(cK.certified);

  auto C = make_field(zp({-1, -2, 1, 1}));
  CHECK(class_group(C, unit_group(C)).group.is_trivial());

  auto H = quadratic(-23);
  auto UH = unit_group(H);
  auto cH = class_group(H, UH);
  CHECK(cH.group == FinAbGroup({3}));
  CHECK(cH.certified);
  // brute force: nothing of norm 2, something of norm 8 = N(P^3) for P above 2
  auto norm_form = [](long a, long b) { return a * a + a * b + 6 * b * b; };
  bool has2 = false, has8 = false;
  for (long a = -10; a <= 10; ++a)
    for (long b = -10; b <= 10; ++b) {
      if (norm_form(a, b) == 2) has2 = true;
      if (norm_form(a, b) == 8) has8 = true;
    }
  CHECK_FALSE(has2);
  CHECK(has8);
  auto P2 = factor_prime(H, 2)[0];
  CHECK_FALSE(principal_generator(H, UH, P2.ideal).has_value());
  CHECK(principal_generator(H, UH, ideal_pow(H, P2.ideal, 3)).has_value());

  // Kummer element: (alpha) is the d-th power of the generator ideal
  auto pos = cH.nontrivial_positions();
  REQUIRE(pos.size() == 1);
  auto alpha = fe_evaluate(H, cH.kummer_element(pos[0]));
  auto v = fb_vector(H, cH.factor_base, alpha);
  REQUIRE(v.has_value());
  auto g = cH.generator_exponents(pos[0]);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK((*v)[i] == 3 * g[i]);

  for (long d : {-47, -31, 10, 79, -19}) {
    auto F = quadratic(d);
    auto UF = unit_group(F);
    Int h = class_group(F, UF).group.order();
    long expected = d == -47 ? 5 : d == -31 ? 3 : d == 10 ? 2 : d == 79 ? 3 : 1;
    CHECK(h == expected);
  }
}

TEST_CASE("class group is independent of the factor-base order") {
  for (long d : {-23, -47, -14, 79, 82}) {
    auto F = quadratic(d);
    auto U = unit_group(F);
    auto base = class_group(F, U).group;
    for (std::uint64_t seed : {11u, 12u, 13u}) {
      ClassGroupOptions o;
      o.shuffle_seed = seed;
      CHECK(class_group(F, U, o).group == base);
    }
  }
}
