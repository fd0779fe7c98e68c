#include <gtest/gtest.h>

#include "ecbits/divpoly.hpp"

using namespace ecbits;

namespace {

struct CurveCase {
  std::uint64_t p;
  std::int64_t a;
  std::int64_t b;
};

const std::vector<CurveCase> kCurves{{7, 1, 1}, {11, 1, 1}, {13, 1, 2}, {17, 2, 3}};

}  // namespace

TEST(Psi, BaseCases) {
  DivPolyCache cache(Curve::make(7, 1, 1));
  PrimeField F(7);
  EXPECT_EQ(cache.psi(1).w, DensePoly::from_ints(F, {1}));
  EXPECT_FALSE(cache.psi(1).y_factor);
  EXPECT_EQ(cache.psi(2).w, DensePoly::from_ints(F, {2}));
  EXPECT_TRUE(cache.psi(2).y_factor);
  EXPECT_EQ(cache.psi(3).w, DensePoly::from_ints(F, {6, 5, 6, 0, 3}));
  EXPECT_TRUE(cache.psi(0).w.is_zero());
  for (std::size_t n = 1; n <= 15; ++n) EXPECT_EQ(cache.psi(n).y_factor, n % 2 == 0);
}

TEST(FGH, SmallCases) {
  DivPolyCache cache(Curve::make(7, 1, 1));
  PrimeField F(7);
  auto t1 = cache.f_g_h(1);
  EXPECT_EQ(t1.f, DensePoly::x(F));
  EXPECT_EQ(t1.g, DensePoly::from_ints(F, {1}));
  EXPECT_EQ(t1.h, DensePoly::from_ints(F, {1}));
  auto t2 = cache.f_g_h(2);
  EXPECT_EQ(t2.f, DensePoly::from_ints(F, {1, 6, 5, 0, 1}));
  EXPECT_EQ(t2.g, DensePoly::from_ints(F, {4, 4, 0, 4}));
  EXPECT_EQ(t2.h, DensePoly::from_ints(F, {2}));
  // x(2P) for P = (0, 1): f_2(0) / g_2(0) = 1/4 = 2.
  EXPECT_EQ(F.div(t2.f(Fp{0}), t2.g(Fp{0})), Fp{2});
}

TEST(FGH, DegreesAndShapeUpTo20) {
  for (const auto& c : kCurves) {
    DivPolyCache cache(Curve::make(c.p, c.a, c.b));
    for (std::size_t n = 1; n <= 20; ++n) {
      auto outcome = verify_degrees(cache, n);
      EXPECT_TRUE(outcome) << outcome.detail;
      auto t = cache.f_g_h(n);
      EXPECT_EQ(t.f.degree(), static_cast<int>(n * n));
      EXPECT_LE(t.g.degree(), static_cast<int>(n * n) - 1);
      const auto& psi = cache.psi(n);
      DensePoly sq = psi.w * psi.w;
      if (psi.y_factor) sq = sq * cache.cubic();
      EXPECT_EQ(t.g, sq);
    }
  }
}

TEST(Xfg, HoldsUpTo12) {
  for (const auto& c : kCurves) {
    DivPolyCache cache(Curve::make(c.p, c.a, c.b));
    for (std::size_t n = 1; n <= 12; ++n) {
      auto outcome = verify_xfg(cache, n);
      EXPECT_TRUE(outcome) << c.p << " n=" << n << " " << outcome.detail;
    }
  }
}

TEST(Xfg, DetectsPerturbedPsi3) {
  DivPolyCache cache(Curve::make(11, 1, 1));
  auto bad = cache.psi(3);
  bad.w = bad.w + DensePoly::from_ints(PrimeField(11), {1});
  cache.override_base(3, bad);
  EXPECT_FALSE(verify_xfg(cache, 3));
}

TEST(TorsionRoots, MatchTorsion) {
  for (const auto& c : kCurves) {
    DivPolyCache cache(Curve::make(c.p, c.a, c.b));
    for (std::size_t n = 2; n <= 10; ++n) {
      auto outcome = verify_torsion_roots(cache, n);
      EXPECT_TRUE(outcome) << c.p << " n=" << n << " " << outcome.detail;
    }
  }
  // Whole toy group has order 5: every affine x kills g_5.
  DivPolyCache toy(Curve::make(7, 1, 1));
  auto g5 = toy.f_g_h(5).g;
  EXPECT_EQ(g5(Fp{0}), Fp{0});
  EXPECT_EQ(g5(Fp{2}), Fp{0});
}

TEST(DivisionPointRoots, ToyHandValues) {
  DivPolyCache cache(Curve::make(7, 1, 1));
  auto f2 = cache.f_g_h(2).f;
  std::vector<std::uint64_t> roots;
  for (std::uint64_t u = 0; u < 7; ++u)
    if (f2(Fp{u}).value == 0) roots.push_back(u);
  EXPECT_EQ(roots, std::vector<std::uint64_t>{2});
  auto C = Curve::make(7, 1, 1);
  EXPECT_EQ(scalar_mul(C, 2, Point::affine(Fp{2}, Fp{2})), Point::affine(Fp{0}, Fp{1}));
  EXPECT_EQ(scalar_mul(C, 2, Point::affine(Fp{2}, Fp{5})), Point::affine(Fp{0}, Fp{6}));
  auto f1 = cache.f_g_h(1).f;
  EXPECT_EQ(f1(Fp{0}), Fp{0});
}

TEST(DivisionPointRoots, UpTo8) {
  for (const auto& c : kCurves) {
    DivPolyCache cache(Curve::make(c.p, c.a, c.b));
    for (std::size_t n = 1; n <= 8; ++n) {
      auto outcome = verify_division_point_roots(cache, n);
      EXPECT_TRUE(outcome) << c.p << " n=" << n << " " << outcome.detail;
    }
  }
  DivPolyCache zero_b(Curve::make(13, 1, 0));
  EXPECT_THROW(verify_division_point_roots(zero_b, 2), PreconditionError);
}

TEST(FTilde, CoprimeIndexIsIdentity) {
  DivPolyCache cache(Curve::make(7, 1, 1));
  EXPECT_EQ(cache.f_tilde(2), cache.f_g_h(2).f);
  EXPECT_EQ(cache.f_tilde(2).degree(), 4);
}

TEST(FTilde, PIndexOrdinary) {
  DivPolyCache cache(Curve::make(7, 1, 1));
  ASSERT_TRUE(cache.ordinary());
  EXPECT_EQ(cache.f_tilde(7).degree(), 7);
  EXPECT_EQ(cache.f_tilde(14).degree(), 28);
  EXPECT_TRUE(verify_ftilde_structure(cache, 7));
  EXPECT_TRUE(verify_ftilde_structure(cache, 14));
}

TEST(FTilde, PIndexSupersingular) {
  DivPolyCache cache(Curve::make(7, 1, 0));
  ASSERT_FALSE(cache.ordinary());
  EXPECT_EQ(cache.f_tilde(7).degree(), 1);
  EXPECT_TRUE(verify_ftilde_structure(cache, 7));
  EXPECT_EQ(torsion_size(7, 14, false), 4u);
  EXPECT_EQ(torsion_size(7, 14, true), 28u);
}

TEST(FTilde, SquareFreeWhenBNonzero) {
  for (const auto& c : kCurves) {
    DivPolyCache cache(Curve::make(c.p, c.a, c.b));
    auto outcome = verify_squarefree_ftilde(cache, 10);
    EXPECT_TRUE(outcome) << c.p << " " << outcome.detail;
  }
}

TEST(FTilde, ZeroBBreaksSquareFreeness) {
  // With b = 0, (0, 0) is 2-torsion and f_n picks up a repeated root.
  bool found = false;
  for (std::uint64_t p : {5ULL, 7ULL, 11ULL, 13ULL})
    for (std::int64_t a = 1; a < static_cast<std::int64_t>(p) && !found; ++a) {
      DivPolyCache cache(Curve::make(p, a, 0));
      for (std::size_t n = 2; n <= 6 && !found; n += 2) {
        auto ft = cache.f_tilde(n);
        found = squarefree_part(ft).degree() < ft.degree();
      }
    }
  EXPECT_TRUE(found);
}

TEST(PhiPsi, SmallCases) {
  DivPolyCache cache(Curve::make(7, 1, 1));
  PrimeField F(7);
  auto [phi, psi] = cache.phi_psi(1, 1);
  auto red = phi.reduced();
  EXPECT_EQ(red.num, DensePoly::x(F) * DensePoly::x(F));
  EXPECT_EQ(red.den, DensePoly::from_ints(F, {1}));
  EXPECT_EQ(psi.reduced().num, cache.cubic() * DensePoly::x(F) * DensePoly::x(F));
  auto [phi12, psi12] = cache.phi_psi(1, 2);
  auto t2 = cache.f_g_h(2);
  EXPECT_EQ(phi12.num, DensePoly::x(F) * t2.f);
  EXPECT_EQ(phi12.den, t2.g);
}

TEST(PhiPsi, NeverSquaresAndOddDegreeGap) {
  for (const auto& c : kCurves) {
    DivPolyCache cache(Curve::make(c.p, c.a, c.b));
    ASSERT_TRUE(cache.ordinary());
    for (std::size_t m = 1; m <= 8; ++m)
      for (std::size_t n = m + 1; n <= 8; ++n) {
        auto outcome = verify_not_square(cache, m, n);
        EXPECT_TRUE(outcome) << c.p << " " << outcome.detail;
        auto [phi, psi] = cache.phi_psi(m, n);
        EXPECT_EQ((psi.num.degree() - psi.den.degree()) % 2 != 0, true) << m << "," << n;
      }
  }
}
