#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ecbits/curve.hpp"

using namespace ecbits;

namespace {

Point pt(std::uint64_t x, std::uint64_t y) { return Point::affine(Fp{x}, Fp{y}); }

}  // namespace

TEST(Curve, RejectsSingularAndSmallFields) {
  EXPECT_THROW(Curve::make(7, 0, 0), DomainError);
  EXPECT_THROW(Curve::make(3, 1, 1), DomainError);
  EXPECT_NO_THROW(Curve::make(7, 1, 1));
}

TEST(PointAdd, HandExamples) {
  auto C = Curve::make(7, 1, 1);
  EXPECT_EQ(point_add(C, pt(0, 1), Point::at_infinity()), pt(0, 1));
  EXPECT_EQ(point_add(C, pt(0, 1), pt(0, 1)), pt(2, 5));
  EXPECT_EQ(point_add(C, pt(2, 5), pt(0, 1)), pt(2, 2));
  EXPECT_EQ(point_add(C, pt(0, 1), pt(0, 6)), Point::at_infinity());
  EXPECT_THROW(point_add(C, pt(1, 1), pt(0, 1)), DomainError);
}

TEST(ScalarMul, HandExamples) {
  auto C = Curve::make(7, 1, 1);
  EXPECT_EQ(scalar_mul(C, 1, pt(0, 1)), pt(0, 1));
  EXPECT_EQ(scalar_mul(C, 4, pt(0, 1)), pt(0, 6));
  EXPECT_EQ(scalar_mul(C, 5, pt(0, 1)), Point::at_infinity());
  EXPECT_EQ(scalar_mul(C, 0, pt(0, 1)), Point::at_infinity());
}

TEST(Enumerate, ToyGroup) {
  auto C = Curve::make(7, 1, 1);
  std::vector<Point> expected{Point::at_infinity(), pt(0, 1), pt(0, 6), pt(2, 2), pt(2, 5)};
  EXPECT_EQ(enumerate_points(C), expected);
  EXPECT_EQ(curve_order_via_character(C), 5u);
  EXPECT_TRUE(is_ordinary(C));
}

TEST(CurveOrder, CharacterMatchesEnumerationUpTo31) {
  for (std::uint64_t p : {5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL}) {
    for (std::uint64_t a = 0; a < p; ++a)
      for (std::uint64_t b = 0; b < p; ++b) {
        PrimeField F(p);
        Fp disc = F.add(F.mul(F.from_int(4), F.pow(Fp{a}, 3)), F.mul(F.from_int(27), F.mul(Fp{b}, Fp{b})));
        if (disc.value == 0) continue;
        Curve C(F, Fp{a}, Fp{b});
        const auto order = curve_order_via_character(C);
        ASSERT_EQ(order, enumerate_points(C).size());
        const double slack = 2.0 * std::sqrt(static_cast<double>(p));
        EXPECT_LE(std::fabs(static_cast<double>(order) - static_cast<double>(p + 1)), slack);
        EXPECT_EQ(is_ordinary(C), order != p + 1);
      }
  }
}

TEST(CurveOrder, Eleven) {
  auto C = Curve::make(11, 1, 1);
  EXPECT_EQ(curve_order_via_character(C), enumerate_points(C).size());
}

TEST(IsOrdinary, SupersingularFound) {
  // y^2 = x^3 + x is supersingular for p = 3 mod 4.
  auto C = Curve::make(7, 1, 0);
  EXPECT_FALSE(is_ordinary(C));
  EXPECT_EQ(curve_order_via_character(C), 8u);
  int supersingular = 0;
  for (std::uint64_t p : {11ULL, 17ULL, 23ULL, 29ULL, 41ULL, 47ULL})
    for (std::uint64_t b = 1; b < p; ++b) {
      auto D = Curve::make(p, 0, static_cast<std::int64_t>(b));
      if (!is_ordinary(D)) {
        ++supersingular;
        EXPECT_EQ(curve_order_via_character(D), p + 1);
      }
    }
  EXPECT_GT(supersingular, 0);
}

TEST(GroupLaw, AxiomsOnSmallCurves) {
  for (auto [p, a, b] : {std::tuple{7, 1, 1}, std::tuple{11, 1, 3}, std::tuple{13, 3, 5}, std::tuple{17, 0, 7}}) {
    auto C = Curve::make(p, a, b);
    auto pts = enumerate_points(C);
    ASSERT_LE(pts.size(), 100u);
    for (const auto& P : pts) {
      EXPECT_EQ(point_add(C, P, C.group().negate(P)), Point::at_infinity());
      EXPECT_EQ(scalar_mul(C, pts.size(), P), Point::at_infinity());
      for (const auto& Q : pts) {
        EXPECT_EQ(point_add(C, P, Q), point_add(C, Q, P));
        for (const auto& R : pts)
          ASSERT_EQ(point_add(C, point_add(C, P, Q), R), point_add(C, P, point_add(C, Q, R)));
      }
    }
  }
}

TEST(GroupStructure, ToyIsCyclic) {
  auto C = Curve::make(7, 1, 1);
  auto gs = group_structure(C);
  EXPECT_EQ(gs.order, 5u);
  EXPECT_EQ(gs.d1, 1u);
  EXPECT_EQ(gs.d2, 5u);
  EXPECT_EQ(point_order(C, gs.g2, 5), 5u);
}

TEST(GroupStructure, RegeneratesNonCyclic) {
  // y^2 = x^3 - x over F_13 has full rational 2-torsion.
  for (auto [p, a, b] : {std::tuple{13, -1, 0}, std::tuple{31, 2, 3}, std::tuple{101, 1, 1}, std::tuple{37, -1, 0}}) {
    auto C = Curve::make(p, a, b);
    auto gs = group_structure(C);
    EXPECT_EQ(gs.d1 * gs.d2, gs.order);
    EXPECT_EQ(gs.d2 % gs.d1, 0u);
    EXPECT_EQ((static_cast<std::uint64_t>(p) - 1) % gs.d1, 0u);
    std::vector<Point> regenerated;
    for (std::uint64_t i = 0; i < gs.d1; ++i)
      for (std::uint64_t j = 0; j < gs.d2; ++j)
        regenerated.push_back(point_add(C, scalar_mul(C, i, gs.g1), scalar_mul(C, j, gs.g2)));
    std::sort(regenerated.begin(), regenerated.end(), point_less);
    EXPECT_EQ(regenerated, enumerate_points(C));
  }
  EXPECT_GT(group_structure(Curve::make(13, -1, 0)).d1, 1u);
}

TEST(Subgroup, Examples) {
  auto C = Curve::make(7, 1, 1);
  EXPECT_EQ(subgroup_of_order(C, 1), std::vector<Point>{Point::at_infinity()});
  EXPECT_EQ(subgroup_of_order(C, 5), enumerate_points(C));
  EXPECT_THROW(subgroup_of_order(C, 3), AmbiguityError);
  // Z/2 x Z/... has three subgroups of order 2.
  auto D = Curve::make(13, -1, 0);
  EXPECT_THROW(subgroup_of_order(D, 2), AmbiguityError);
}

TEST(DivisionPoints, Examples) {
  auto C = Curve::make(7, 1, 1);
  auto Q = lift(pt(0, 1));
  EXPECT_EQ(rational_division_points(C, 1, Q, 1), std::vector<ExtPoint>{Q});
  EXPECT_EQ(rational_division_points(C, 2, Q, 1), std::vector<ExtPoint>{lift(pt(2, 2))});
}

TEST(DivisionPoints, CosetOfRationalTorsion) {
  auto C = Curve::make(13, -1, 0);
  const auto pts = enumerate_points(C);
  for (std::uint64_t n : {2ULL, 3ULL, 4ULL}) {
    auto torsion = rational_division_points(C, n, ExtPoint::at_infinity(), 1);
    EXPECT_EQ((n * n) % torsion.size(), 0u);
    for (const auto& Q : pts) {
      auto div = rational_division_points(C, n, lift(Q), 1);
      for (const auto& P : div)
        for (const auto& T : torsion) {
          auto S = C.ext_group().add(P, T);
          EXPECT_NE(std::find(div.begin(), div.end(), S), div.end());
        }
    }
  }
}

TEST(RandomPoint, OnCurveAndDeterministic) {
  auto C = Curve::make(1000003, 2, 5);
  std::mt19937_64 r1(42), r2(42);
  for (int i = 0; i < 50; ++i) {
    auto P = random_point(C, r1);
    EXPECT_TRUE(C.contains(P));
    EXPECT_EQ(P, random_point(C, r2));
  }
}

TEST(Factorize, Basic) {
  EXPECT_EQ(factorize(360), (std::vector<std::pair<std::uint64_t, unsigned>>{{2, 3}, {3, 2}, {5, 1}}));
  EXPECT_TRUE(factorize(1).empty());
}
