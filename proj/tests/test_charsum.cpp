#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ecbits/charsum.hpp"
#include "ecbits/divpoly.hpp"

using namespace ecbits;

namespace {

Point pt(std::uint64_t x, std::uint64_t y) { return Point::affine(Fp{x}, Fp{y}); }

Curve prime_order_curve(std::uint64_t p) {
  for (std::int64_t a = 1; a < static_cast<std::int64_t>(p); ++a)
    for (std::int64_t b = 1; b < static_cast<std::int64_t>(p); ++b) {
      try {
        auto C = Curve::make(p, a, b);
        auto n = curve_order_via_character(C);
        if (n > 6 && is_prime(n)) return C;
      } catch (const DomainError&) {
      }
    }
  throw std::runtime_error("no prime-order curve");
}

}  // namespace

TEST(SumS, Examples) {
  auto C = Curve::make(7, 1, 1);
  EXPECT_EQ(sum_S(C, pt(0, 1), pt(0, 1), 1), 0);
  EXPECT_EQ(sum_S(C, pt(0, 1), pt(0, 1), 2), 1);
  for (const auto& P : enumerate_points(C))
    for (const auto& Q : enumerate_points(C)) EXPECT_LE(std::abs(sum_S(C, P, Q, 9)), 9);
}

TEST(SumU, ToyMatchesBruteForce) {
  auto C = Curve::make(7, 1, 1);
  const auto pts = enumerate_points(C);
  for (std::uint64_t N : {1ULL, 2ULL, 3ULL, 6ULL}) {
    std::int64_t brute = 0, diagonal = 0;
    for (const auto& P : pts)
      for (const auto& Q : pts) {
        auto s = sum_S(C, P, Q, N);
        brute += s * s;
        if (P == Q) diagonal += s * s;
      }
    auto u = sum_U(C, N, {.jobs = 3});
    EXPECT_EQ(u.value, brute);
    EXPECT_GE(u.value, diagonal);
    if (N == 1) EXPECT_LE(u.value, 25);
    EXPECT_EQ(sum_U_rearranged(C, N).total, u.value);
  }
}

TEST(SumU, RearrangementAgreesAndIsJobIndependent) {
  auto C = Curve::make(101, 3, 7);
  for (std::uint64_t N : {2ULL, 5ULL}) {
    auto u1 = sum_U(C, N, {.jobs = 1});
    auto u8 = sum_U(C, N, {.jobs = 8});
    auto split = sum_U_rearranged(C, N, {.jobs = 4});
    EXPECT_EQ(u1.value, u8.value);
    EXPECT_EQ(split.total, u1.value);
    EXPECT_EQ(split.diagonal + split.off_diagonal, split.total);
    EXPECT_EQ(u1.report.rhs_terms.size(), 2u);
  }
  EXPECT_THROW(sum_U(C, 4, {.jobs = 1, .work_budget = 10}), ResourceError);
}

TEST(ProofIdentity, PairSumsMatchRationalSums) {
  auto C = prime_order_curve(23);
  DivPolyCache cache(C);
  for (std::size_t m = 1; m <= 6; ++m)
    for (std::size_t n = 1; n <= 6; ++n) {
      if (m == n) continue;
      auto [phi, psi] = cache.phi_psi(m, n);
      EXPECT_EQ(pair_character_sum(C, m, n), rational_character_sum(phi) + rational_character_sum(psi))
          << m << "," << n;
    }
}

TEST(SumT, Examples) {
  auto C = Curve::make(7, 1, 1);
  Complex t = sum_T(C, SumSpecT{{Fp{1}}, pt(0, 1), 1});
  EXPECT_LT(std::abs(t - 1.0), 1e-12);
  Complex o = sum_T(C, SumSpecT{{Fp{1}, Fp{3}}, Point::at_infinity(), 5});
  EXPECT_DOUBLE_EQ(o.real(), 25.0);
  EXPECT_THROW(sum_T(C, SumSpecT{{Fp{0}, Fp{0}}, pt(0, 1), 2}), DomainError);
}

TEST(SumT, SingleLoopAgreement) {
  auto C = Curve::make(1009, 5, 11);
  AdditiveCharacter psi(C.field());
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10; ++i) {
    auto R = random_point(C, rng);
    Fp c{static_cast<std::uint64_t>(i + 1)};
    Complex direct{};
    for (std::uint64_t n = 1; n <= 40; ++n) direct += psi(C.field().mul(c, scalar_mul(C, n, R).x_formal()));
    Complex t = sum_T(C, SumSpecT{{c}, R, 40});
    EXPECT_LT(std::abs(t - direct), 1e-9);
    EXPECT_LE(std::abs(t), 40.0 + 1e-12 * 40);
  }
}

TEST(SumV, DegenerateSubgroup) {
  auto C = Curve::make(7, 1, 1);
  std::vector<Point> H{Point::at_infinity()};
  for (std::size_t k : {1u, 2u}) {
    std::vector<Fp> c(k, Fp{1});
    auto v = sum_V(C, H, c, 4);
    EXPECT_DOUBLE_EQ(v.value, std::pow(4.0, 2.0 * static_cast<double>(k)));
  }
}

TEST(SumV, ToyBruteForce) {
  auto C = Curve::make(7, 1, 1);
  auto H = subgroup_of_order(C, 5);
  std::vector<Fp> c{Fp{1}};
  AdditiveCharacter psi(C.field());
  double brute = 0.0;
  for (const auto& R : H) {
    Complex t{};
    for (std::uint64_t n = 1; n <= 4; ++n) t += psi(scalar_mul(C, n, R).x_formal());
    brute += std::norm(t);
  }
  auto v = sum_V(C, H, c, 4);
  EXPECT_NEAR(v.value, brute, 1e-9);
  EXPECT_GE(v.value, 0.0);
  EXPECT_LE(v.value, 5 * 16 * (1 + 1e-12));
  EXPECT_THROW(sum_V(C, H, c, 5), PreconditionError);
}

TEST(SumV, ExpansionAgrees) {
  auto C = prime_order_curve(211);
  auto H = enumerate_points(C);
  for (std::size_t k : {1u, 2u}) {
    std::vector<Fp> c(k, Fp{0});
    c.back() = Fp{3};
    c.front() = Fp{5};
    auto direct = sum_V(C, H, c, 5, {.jobs = 4});
    auto expanded = sum_V_expanded(C, H, c, 5, {.jobs = 2});
    EXPECT_NEAR(direct.value, expanded, 1e-6 * direct.value);
    EXPECT_DOUBLE_EQ(direct.value, sum_V(C, H, c, 5, {.jobs = 1}).value);
  }
}

TEST(SubgroupSum, ToyExample) {
  auto C = Curve::make(7, 1, 1);
  auto H = subgroup_of_order(C, 5);
  std::vector<std::uint64_t> d{1};
  std::vector<Fp> c{Fp{1}};
  auto s = subgroup_sum(C, H, d, c);
  Complex expected = 2.0 + 2.0 * std::polar(1.0, 4.0 * std::numbers::pi / 7.0);
  EXPECT_LT(std::abs(s.value - expected), 1e-12);
  EXPECT_LE(std::abs(s.value), 4.0);
}

TEST(SubgroupSum, Preconditions) {
  auto C = Curve::make(7, 1, 1);
  auto H = subgroup_of_order(C, 5);
  std::vector<Fp> c2{Fp{1}, Fp{1}};
  std::vector<std::uint64_t> unordered{2, 1}, shares{1, 5};
  EXPECT_THROW(subgroup_sum(C, H, unordered, c2), PreconditionError);
  EXPECT_THROW(subgroup_sum(C, H, shares, c2), PreconditionError);
  std::vector<std::uint64_t> d{1, 2};
  std::vector<Fp> last_zero{Fp{1}, Fp{0}};
  EXPECT_THROW(subgroup_sum(C, H, d, last_zero), PreconditionError);
}

TEST(SubgroupSum, FullGroupMatchesEnumeration) {
  auto C = prime_order_curve(97);
  auto H = enumerate_points(C);
  AdditiveCharacter psi(C.field());
  std::vector<std::uint64_t> d{1};
  std::vector<Fp> c{Fp{5}};
  // Every affine x = u occurs 1 + chi(u^3 + au + b) times.
  Complex direct{};
  for (std::uint64_t u = 0; u < C.p(); ++u)
    direct += static_cast<double>(1 + C.field().chi(C.rhs(Fp{u}))) * psi(C.field().mul(c[0], Fp{u}));
  EXPECT_LT(std::abs(subgroup_sum(C, H, d, c).value - direct), 1e-9);
}

TEST(ProductCollisions, Examples) {
  std::vector<Fp> c1{Fp{1}};
  EXPECT_EQ(count_product_collisions(3, 1, c1), 2u);
  for (std::uint64_t N : {3ULL, 5ULL, 8ULL}) {
    std::vector<Fp> c{Fp{1}, Fp{0}};
    EXPECT_EQ(count_product_collisions(N, 2, c), (N - 1) * (N - 1) * (N - 1));
  }
  std::vector<Fp> zero{Fp{0}};
  EXPECT_THROW(count_product_collisions(3, 1, zero), DomainError);
}

TEST(ProductCollisions, WithinBound) {
  for (std::uint64_t N = 2; N <= 8; ++N)
    for (auto c : {std::vector<Fp>{Fp{1}}, std::vector<Fp>{Fp{0}, Fp{2}}, std::vector<Fp>{Fp{1}, Fp{1}}}) {
      EXPECT_LE(count_product_collisions(N, c.size(), c), product_collision_bound(N, c.size()));
    }
}

TEST(CoprimeToFactorial, Basic) {
  EXPECT_TRUE(coprime_to_factorial(4, 5));
  EXPECT_FALSE(coprime_to_factorial(5, 5));
  EXPECT_TRUE(coprime_to_factorial(1, 6));
}
