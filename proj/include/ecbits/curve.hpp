#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ecbits/errors.hpp"
#include "ecbits/field.hpp"

namespace ecbits {

/// Affine point or the point at infinity. The coordinate type is Fp for
/// rational points and Fp2 for points over the quadratic extension.
template <class Elt>
struct AffinePoint {
  bool infinity = true;
  Elt x{};
  Elt y{};

  static AffinePoint at_infinity() { return {}; }
  static AffinePoint affine(Elt x, Elt y) { return {false, x, y}; }

  // The formal convention O = (0, infinity): x of the neutral element is 0.
  Elt x_formal() const { return infinity ? Elt{} : x; }

  friend bool operator==(const AffinePoint& l, const AffinePoint& r) {
    if (l.infinity || r.infinity) return l.infinity == r.infinity;
    return l.x == r.x && l.y == r.y;
  }
};

using Point = AffinePoint<Fp>;
using ExtPoint = AffinePoint<Fp2>;

std::string to_string(const Point& P);
std::string to_string(const ExtPoint& P);

// Orders points by (x, y) integer value with O first.
bool point_less(const Point& l, const Point& r);

/// Group law of y^2 = x^3 + a x + b over a coordinate field. The methods do
/// not check membership; Curve-level entry points do.
template <class Field>
class WeierstrassGroup {
 public:
  using Elt = typename Field::Elt;
  using PointT = AffinePoint<Elt>;

  WeierstrassGroup(Field field, Elt a, Elt b) : field_(std::move(field)), a_(a), b_(b) {}

  const Field& field() const { return field_; }

  Elt rhs(const Elt& x) const {
    const Field& f = field_;
    return f.add(f.mul(f.add(f.mul(x, x), a_), x), b_);
  }

  bool contains(const PointT& P) const {
    if (P.infinity) return true;
    return field_.mul(P.y, P.y) == rhs(P.x);
  }

  PointT negate(const PointT& P) const {
    if (P.infinity) return P;
    return PointT::affine(P.x, field_.neg(P.y));
  }

  PointT add(const PointT& P, const PointT& Q) const {
    const Field& f = field_;
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    Elt slope;
    if (P.x == Q.x) {
      if (f.is_zero(f.add(P.y, Q.y))) return PointT::at_infinity();
      // tangent: (3x^2 + a) / 2y
      Elt num = f.add(f.mul(f.from_int(3), f.mul(P.x, P.x)), a_);
      slope = f.div(num, f.add(P.y, P.y));
    } else {
      slope = f.div(f.sub(Q.y, P.y), f.sub(Q.x, P.x));
    }
    Elt x3 = f.sub(f.sub(f.mul(slope, slope), P.x), Q.x);
    Elt y3 = f.sub(f.mul(slope, f.sub(P.x, x3)), P.y);
    return PointT::affine(x3, y3);
  }

  PointT mul(std::uint64_t n, PointT P) const {
    PointT acc = PointT::at_infinity();
    while (n != 0) {
      if (n & 1) acc = add(acc, P);
      n >>= 1;
      if (n != 0) P = add(P, P);
    }
    return acc;
  }

 private:
  Field field_;
  Elt a_;
  Elt b_;
};

/// Short Weierstrass curve y^2 = x^3 + a x + b over F_p with p > 3 and
/// 4a^3 + 27b^2 != 0.
class Curve {
 public:
  Curve(const PrimeField& field, Fp a, Fp b);
  static Curve make(std::uint64_t p, std::int64_t a, std::int64_t b);

  const PrimeField& field() const { return field_; }
  std::uint64_t p() const { return field_.modulus(); }
  Fp a() const { return a_; }
  Fp b() const { return b_; }

  const WeierstrassGroup<PrimeField>& group() const { return group_; }
  WeierstrassGroup<QuadExtField> ext_group() const;

  Fp rhs(Fp x) const { return group_.rhs(x); }
  bool contains(const Point& P) const { return group_.contains(P); }

  std::string to_string() const;

 private:
  PrimeField field_;
  Fp a_;
  Fp b_;
  WeierstrassGroup<PrimeField> group_;
};

// Curve-level entry points; these validate membership.
Point point_add(const Curve& C, const Point& P, const Point& Q);
Point scalar_mul(const Curve& C, std::uint64_t n, const Point& P);

// Rational points sorted by (x, y), O first. Throws ResourceError if p
// exceeds max_p.
std::vector<Point> enumerate_points(const Curve& C, std::uint64_t max_p = 2'000'000);

// All points with coordinates in F_{p^2}, O first. Throws ResourceError if
// p^2 exceeds max_size.
std::vector<ExtPoint> enumerate_ext_points(const Curve& C, std::uint64_t max_size = 100'000);

// #E(F_p) = p + 1 + sum_u chi(u^3 + a u + b).
std::uint64_t curve_order_via_character(const Curve& C);

// For p >= 5 the trace p + 1 - #E is divisible by p only when it is zero.
bool is_ordinary(const Curve& C);
bool is_ordinary(const Curve& C, std::uint64_t order);

std::uint64_t point_order(const Curve& C, const Point& P, std::uint64_t group_order);

struct GroupStructure {
  std::uint64_t order = 0;
  std::uint64_t d1 = 1;  // d1 | d2, d1 * d2 = order
  std::uint64_t d2 = 1;
  Point g1;  // order d1
  Point g2;  // order d2
};

// Invariant factors and generators, verified by regenerating every point.
// Throws ResourceError when #E exceeds max_order.
GroupStructure group_structure(const Curve& C, std::uint64_t max_order = 1'000'000);

// The unique subgroup of order t, sorted with O first. Throws
// AmbiguityError when t does not divide #E or the t-torsion has more than t
// rational points.
std::vector<Point> subgroup_of_order(const Curve& C, std::uint64_t t);

// Points P over F_{p^ext} with nP = Q, sorted. ext is 1 or 2.
std::vector<ExtPoint> rational_division_points(const Curve& C, std::uint64_t n, const ExtPoint& Q, int ext,
                                               std::uint64_t max_size = 100'000);

ExtPoint lift(const Point& P);

// Uniformly random affine rational point (rejection sampling on x and the
// sign of y).
Point random_point(const Curve& C, std::mt19937_64& rng);

// Prime factorisation by trial division, ascending primes with multiplicity
// collapsed: {(q, e)}.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

}  // namespace ecbits
