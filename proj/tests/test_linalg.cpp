#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tclab/linalg.hpp"

#include <random>

using namespace tclab;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

bool is_diagonal(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("smith form of tiny relation matrices") {
  IntMatrix id = IntMatrix::identity(2);
  CHECK(smith_form(id).torsion.is_trivial());
  CHECK(smith_form(id).free_rank == 0);

  IntMatrix three = IntMatrix::from_rows({{3}});
  auto s = smith_form(three);
  CHECK(s.torsion.to_string() == "Z/3");

  IntMatrix zero(0, 2);
  CHECK(smith_form(zero).free_rank == 2);

  IntMatrix m = IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  auto t = smith_form(m);
  CHECK(t.diagonal == std::vector<Int>{2, 6, 12});
  CHECK(t.torsion.order() == 144);
  CHECK(abs(determinant(m)) == 144);
}

TEST_CASE("p-rank of finite abelian groups") {
  FinAbGroup g({4, 4});
  CHECK(p_rank(g, 2) == 2);
  CHECK(p_rank(FinAbGroup({27}), 3) == 1);
  CHECK(p_rank(FinAbGroup(), 5) == 0);
  CHECK(FinAbGroup({2, 3}).invariant_factors() == std::vector<Int>{6});
  CHECK(FinAbGroup({12, 18}).p_part(2).to_string() == "Z/2 x Z/4");
  CHECK(FinAbGroup({12, 18}).p_part(3).to_string() == "Z/3 x Z/9");
  CHECK_THROWS(FinAbGroup::from_invariant_factors({4, 6}));
}

TEST_CASE("smith form invariants on random matrices") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int iter = 0; iter < 200; ++iter) {
    std::size_t r = dim(rng), c = dim(rng);
    IntMatrix m = random_matrix(rng, r, c, 9);
    SmithForm s = smith_form(m);
    IntMatrix d = s.U * m * s.V;
    REQUIRE(is_diagonal(d));
    for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
      CHECK(d(i, i) == s.diagonal[i]);
      CHECK(s.diagonal[i] >= 0);
      if (i + 1 < s.diagonal.size() && s.diagonal[i] != 0)
        CHECK(mpz_divisible_p(s.diagonal[i + 1].get_mpz_t(), s.diagonal[i].get_mpz_t()));
      if (i + 1 < s.diagonal.size() && s.diagonal[i] == 0) CHECK(s.diagonal[i + 1] == 0);
    }
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    CHECK(s.V * s.V_inv == IntMatrix::identity(c));
    if (r == c && determinant(m) != 0) {
      CHECK(s.free_rank == 0);
      CHECK(s.torsion.order() == abs(determinant(m)));
    }
  }
}

TEST_CASE("hermite form, kernels and solving") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 100; ++iter) {
    IntMatrix m = random_matrix(rng, 4, 3, 6);
    HermiteForm h = hermite_form(m);
    CHECK(h.T * m == h.H);
    CHECK(abs(determinant(h.T)) == 1);
    IntMatrix k = left_kernel(m);
    CHECK(k.rows() + h.rank() == m.rows());
    CHECK((k * m).is_zero());
    std::vector<Int> x{1, -2, 0, 3};
    auto v = x * m;
    auto y = solve_left(m, v);
    REQUIRE(y.has_value());
    CHECK(*y * m == v);
  }
  IntMatrix two = IntMatrix::from_rows({{2, 0}, {0, 2}});
  CHECK(!solve_left(two, {1, 0}).has_value());
}

TEST_CASE("induced kernel of a surjection") {
  // Z/27 -> Z/3 reduction has kernel Z/9
  IntMatrix big = IntMatrix::from_rows({{27}});
  IntMatrix phi = IntMatrix::from_rows({{1}});
  IntMatrix small = IntMatrix::from_rows({{3}});
  CHECK(induced_kernel(big, phi, small).to_string() == "Z/9");
  // (Z/4)^2 -> (Z/2)^2
  IntMatrix b2 = IntMatrix::from_rows({{4, 0}, {0, 4}});
  IntMatrix s2 = IntMatrix::from_rows({{2, 0}, {0, 2}});
  CHECK(induced_kernel(b2, IntMatrix::identity(2), s2).to_string() == "Z/2 x Z/2");
}

TEST_CASE("kernels over F_p") {
  FpMatrix z(2, 3, 7);
  CHECK(fp_kernel(z).rows() == 3);
  CHECK(fp_kernel(FpMatrix::identity(3, 5)).rows() == 0);

  std::mt19937_64 rng(99);
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL}) {
    std::uniform_int_distribution<int> dim(1, 7);
    for (int iter = 0; iter < 200; ++iter) {
      std::size_t r = dim(rng), c = dim(rng);
      FpMatrix m(r, c, p);
      std::uniform_int_distribution<int> e(0, static_cast<int>(p) - 1);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, e(rng));
      FpMatrix k = fp_kernel(m);
      CHECK(k.rows() + m.rank() == c);
      CHECK(k.rank() == k.rows());
      if (k.rows()) CHECK((m * k.transpose()).is_zero());
    }
  }
}

TEST_CASE("quotient action and inverses over F_p") {
  FpMatrix a = FpMatrix::from_rows({{0, 1}, {1, 1}}, 2);
  auto inv = a.inverse();
  REQUIRE(inv.has_value());
  CHECK((a * *inv).is_identity());
  CHECK((a * a * a).is_identity());

  // swap action on F_3^2 modulo the diagonal: induced action is -1
  FpMatrix swap = FpMatrix::from_rows({{0, 1}, {1, 0}}, 3);
  FpMatrix diag = FpMatrix::from_rows({{1, 1}}, 3);
  QuotientSpace q(diag, 2);
  CHECK(q.dim() == 1);
  CHECK(q.induced(swap) == FpMatrix::from_rows({{-1}}, 3));

  auto x = fp_solve_left(FpMatrix::identity(2, 3), {2, 1});
  REQUIRE(x.has_value());
  CHECK(*x == std::vector<std::uint64_t>{2, 1});
  CHECK(kronecker(a, a).rows() == 4);
}

TEST_CASE("rational matrices") {
  RatMatrix m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = Rat(1, 2);
  m(1, 1) = 2;
  CHECK(m.determinant() == 2);
  auto inv = m.inverse();
  REQUIRE(inv.has_value());
  CHECK(m * *inv == RatMatrix::identity(2));
}
