#include <gtest/gtest.h>

#include <random>

#include "ecbits/errors.hpp"
#include "ecbits/poly.hpp"

using namespace ecbits;

namespace {

DensePoly random_poly(const PrimeField& F, std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<std::uint64_t> coeff(0, F.modulus() - 1);
  std::vector<Fp> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& v : c) v = Fp{coeff(rng)};
  c.back() = Fp{1 + coeff(rng) % (F.modulus() - 1)};
  return DensePoly(F, c);
}

}  // namespace

TEST(DensePoly, TrimsAndEvaluates) {
  PrimeField F(7);
  auto f = DensePoly::from_ints(F, {1, 0, 3, 0, 0});
  EXPECT_EQ(f.degree(), 2);
  EXPECT_EQ(f(Fp{2}), Fp{(1 + 12) % 7});
  EXPECT_EQ(DensePoly(F).degree(), -1);
  EXPECT_TRUE((f - f).is_zero());
}

TEST(DensePoly, DivmodReconstructs) {
  std::mt19937_64 rng(11);
  PrimeField F(13);
  for (int i = 0; i < 200; ++i) {
    auto f = random_poly(F, rng, 12), g = random_poly(F, rng, 6);
    auto [q, r] = f.divmod(g);
    EXPECT_EQ(q * g + r, f);
    EXPECT_LT(r.degree(), g.degree());
  }
  EXPECT_THROW(DensePoly::x(F).divmod(DensePoly(F)), DomainError);
  EXPECT_THROW(DensePoly::x(F).exact_div(DensePoly::from_ints(F, {1, 1})), ConsistencyError);
}

TEST(DensePoly, DegreeOfProduct) {
  std::mt19937_64 rng(3);
  for (std::uint64_t p : {7ULL, 11ULL, 13ULL}) {
    PrimeField F(p);
    for (int i = 0; i < 100; ++i) {
      auto f = random_poly(F, rng, 8), g = random_poly(F, rng, 8);
      EXPECT_EQ((f * g).degree(), f.degree() + g.degree());
    }
  }
}

TEST(PolyGcd, Examples) {
  PrimeField F(7);
  auto X = DensePoly::x(F);
  auto one = DensePoly::from_ints(F, {1});
  EXPECT_EQ(poly_gcd(DensePoly::from_ints(F, {-1, 0, 1}), DensePoly::from_ints(F, {-1, 1})),
            DensePoly::from_ints(F, {-1, 1}));
  EXPECT_EQ(poly_gcd(X, one), one);
  auto xp1 = DensePoly::from_ints(F, {1, 1});
  auto xp2 = DensePoly::from_ints(F, {2, 1});
  EXPECT_EQ(poly_gcd(xp1 * xp1, xp1 * xp2), xp1);
  EXPECT_THROW(poly_gcd(DensePoly(F), DensePoly(F)), DomainError);
  EXPECT_EQ(poly_gcd(DensePoly(F), xp2.scaled(Fp{3})), xp2);
}

TEST(SquarefreePart, Examples) {
  PrimeField F(7);
  auto xp1 = DensePoly::from_ints(F, {1, 1});
  EXPECT_EQ(squarefree_part(xp1 * xp1), xp1);
  EXPECT_EQ(squarefree_part(DensePoly::monomial(F, 7, Fp{1})), DensePoly::x(F));
  auto sf = DensePoly::from_ints(F, {3, 0, 2});  // 2X^2 + 3, square-free
  EXPECT_EQ(squarefree_part(sf), sf.monic());
}

TEST(SquarefreePart, PthPowerFactors) {
  PrimeField F(5);
  auto g = DensePoly::from_ints(F, {1, 0, 1});  // X^2 + 1 = (X-2)(X-3) over F_5
  auto h = DensePoly::from_ints(F, {1, 1});
  auto f = g.pow(10) * h.pow(3);
  EXPECT_EQ(squarefree_part(f), (g * h).monic());
  auto decomposition = squarefree_decomposition(f);
  DensePoly rebuilt = DensePoly::from_ints(F, {1});
  for (const auto& [factor, m] : decomposition) rebuilt = rebuilt * factor.pow(m);
  EXPECT_EQ(rebuilt, f.monic());
}

TEST(SquarefreePart, SquareFactorIsAbsorbed) {
  std::mt19937_64 rng(5);
  for (std::uint64_t p : {7ULL, 11ULL, 13ULL}) {
    PrimeField F(p);
    for (int i = 0; i < 60; ++i) {
      auto f = random_poly(F, rng, 5), g = random_poly(F, rng, 5);
      EXPECT_EQ(squarefree_part(f * f * g), squarefree_part(f * g));
    }
  }
}

TEST(PthPowerRoot, Examples) {
  PrimeField F(7);
  auto f = DensePoly::from_ints(F, {3, 1, 4});
  EXPECT_EQ(pth_power_root(f, 0), f);
  auto x7p1 = DensePoly::monomial(F, 7, Fp{1}) + DensePoly::from_ints(F, {1});
  EXPECT_EQ(pth_power_root(x7p1, 1), DensePoly::from_ints(F, {1, 1}));
  auto g = DensePoly::monomial(F, 14, Fp{1}) + DensePoly::monomial(F, 7, Fp{2}) + DensePoly::from_ints(F, {1});
  EXPECT_EQ(pth_power_root(g, 1), DensePoly::from_ints(F, {1, 2, 1}));
  EXPECT_THROW(pth_power_root(DensePoly::monomial(F, 8, Fp{1}), 1), StructureError);
}

TEST(PthPowerRoot, RaisesBack) {
  std::mt19937_64 rng(9);
  for (std::uint64_t p : {5ULL, 7ULL}) {
    PrimeField F(p);
    for (unsigned r = 0; r <= 2; ++r) {
      for (int i = 0; i < 20; ++i) {
        auto g = random_poly(F, rng, 4);
        std::uint64_t e = 1;
        for (unsigned j = 0; j < r; ++j) e *= p;
        EXPECT_EQ(pth_power_root(g.pow(e), r), g);
      }
    }
  }
}

TEST(RationalSquareTest, Examples) {
  PrimeField F(7);
  auto one = DensePoly::from_ints(F, {1});
  auto xp1 = DensePoly::from_ints(F, {1, 1});
  auto xp2 = DensePoly::from_ints(F, {2, 1});
  EXPECT_TRUE(rational_square_test({xp1 * xp1, one}));
  EXPECT_FALSE(rational_square_test({DensePoly::x(F), one}));
  EXPECT_TRUE(rational_square_test({DensePoly::from_ints(F, {1, 2, 1}), xp2 * xp2}));
  EXPECT_THROW(rational_square_test({DensePoly(F), one}), DomainError);
}

TEST(RationalSquareTest, SquaresAndTwistedSquares) {
  std::mt19937_64 rng(21);
  for (std::uint64_t p : {7ULL, 11ULL, 13ULL}) {
    PrimeField F(p);
    for (int i = 0; i < 60; ++i) {
      RationalFn r{random_poly(F, rng, 4), random_poly(F, rng, 4)};
      RationalFn sq{r.num * r.num, r.den * r.den};
      EXPECT_TRUE(rational_square_test(sq));
      EXPECT_FALSE(rational_square_test({DensePoly::x(F) * sq.num, sq.den}));
    }
  }
}

TEST(RationalFn, ReducedAndChi) {
  PrimeField F(11);
  auto xp1 = DensePoly::from_ints(F, {1, 1});
  RationalFn r{xp1 * DensePoly::from_ints(F, {3, 1}), xp1.scaled(Fp{2})};
  auto red = r.reduced();
  EXPECT_EQ(red.den, DensePoly::from_ints(F, {1}));
  EXPECT_EQ(red.num.degree(), 1);
  for (std::uint64_t u = 0; u < 11; ++u) {
    Fp d = r.den(Fp{u});
    if (d.value != 0) EXPECT_EQ(r.chi_at(Fp{u}), F.chi(F.div(r.num(Fp{u}), d)));
  }
}
