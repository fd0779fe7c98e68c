#include "ecbits/curve.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace ecbits {

namespace {

std::uint64_t point_key(const Point& P, std::uint64_t p) {
  return P.infinity ? ~std::uint64_t{0} : P.x.value * p + P.y.value;
}

bool ext_less(const ExtPoint& l, const ExtPoint& r) {
  if (l.infinity != r.infinity) return l.infinity;
  if (l.infinity) return false;
  return std::tie(l.x, l.y) < std::tie(r.x, r.y);
}

}  // namespace

std::string to_string(const Point& P) {
  if (P.infinity) return "O";
  std::ostringstream os;
  os << '(' << P.x.value << ',' << P.y.value << ')';
  return os.str();
}

std::string to_string(const ExtPoint& P) {
  if (P.infinity) return "O";
  std::ostringstream os;
  os << "((" << P.x.re.value << '+' << P.x.im.value << "w),(" << P.y.re.value << '+' << P.y.im.value << "w))";
  return os.str();
}

bool point_less(const Point& l, const Point& r) {
  if (l.infinity != r.infinity) return l.infinity;
  if (l.infinity) return false;
  return std::tie(l.x, l.y) < std::tie(r.x, r.y);
}

Curve::Curve(const PrimeField& field, Fp a, Fp b) : field_(field), a_(a), b_(b), group_(field, a, b) {
  if (field_.modulus() <= 3) throw DomainError("curve needs p > 3");
  const PrimeField& f = field_;
  Fp disc = f.add(f.mul(f.from_int(4), f.pow(a, 3)), f.mul(f.from_int(27), f.mul(b, b)));
  if (disc.value == 0) throw DomainError("singular curve: 4a^3 + 27b^2 = 0");
}

Curve Curve::make(std::uint64_t p, std::int64_t a, std::int64_t b) {
  PrimeField f(p);
  return Curve(f, f.from_int(a), f.from_int(b));
}

WeierstrassGroup<QuadExtField> Curve::ext_group() const {
  QuadExtField ext(field_);
  return WeierstrassGroup<QuadExtField>(ext, ext.embed(a_), ext.embed(b_));
}

std::string Curve::to_string() const {
  std::ostringstream os;
  os << "y^2 = x^3 + " << a_.value << "x + " << b_.value << " over F_" << p();
  return os.str();
}

Point point_add(const Curve& C, const Point& P, const Point& Q) {
  if (!C.contains(P) || !C.contains(Q)) throw DomainError("point_add: point not on curve");
  return C.group().add(P, Q);
}

Point scalar_mul(const Curve& C, std::uint64_t n, const Point& P) {
  if (!C.contains(P)) throw DomainError("scalar_mul: point not on curve");
  return C.group().mul(n, P);
}

std::vector<Point> enumerate_points(const Curve& C, std::uint64_t max_p) {
  const std::uint64_t p = C.p();
  if (p > max_p) throw ResourceError("point enumeration over F_" + std::to_string(p) + " exceeds budget");
  const PrimeField& f = C.field();
  std::vector<Point> out{Point::at_infinity()};
  for (std::uint64_t u = 0; u < p; ++u) {
    Fp x{u};
    auto y = f.sqrt(C.rhs(x));
    if (!y) continue;
    out.push_back(Point::affine(x, *y));
    if (y->value != 0) out.push_back(Point::affine(x, f.neg(*y)));
  }
  std::sort(out.begin(), out.end(), point_less);
  return out;
}

std::vector<ExtPoint> enumerate_ext_points(const Curve& C, std::uint64_t max_size) {
  const std::uint64_t p = C.p();
  if (p * p > max_size) throw ResourceError("F_p^2 enumeration exceeds budget");
  auto group = C.ext_group();
  const QuadExtField& ext = group.field();
  std::vector<ExtPoint> out{ExtPoint::at_infinity()};
  for (std::uint64_t re = 0; re < p; ++re) {
    for (std::uint64_t im = 0; im < p; ++im) {
      Fp2 x{Fp{re}, Fp{im}};
      auto y = ext.sqrt(group.rhs(x));
      if (!y) continue;
      out.push_back(ExtPoint::affine(x, *y));
      if (!ext.is_zero(*y)) out.push_back(ExtPoint::affine(x, ext.neg(*y)));
    }
  }
  std::sort(out.begin(), out.end(), ext_less);
  return out;
}

std::uint64_t curve_order_via_character(const Curve& C) {
  const std::uint64_t p = C.p();
  std::int64_t acc = 0;
  for (std::uint64_t u = 0; u < p; ++u) acc += C.field().chi(C.rhs(Fp{u}));
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(p) + 1 + acc);
}

bool is_ordinary(const Curve& C, std::uint64_t order) { return order != C.p() + 1; }

bool is_ordinary(const Curve& C) { return is_ordinary(C, curve_order_via_character(C)); }

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    unsigned e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t point_order(const Curve& C, const Point& P, std::uint64_t group_order) {
  std::uint64_t ord = group_order;
  for (auto [q, e] : factorize(group_order)) {
    for (unsigned i = 0; i < e && ord % q == 0; ++i) {
      if (!C.group().mul(ord / q, P).infinity) break;
      ord /= q;
    }
  }
  return ord;
}

GroupStructure group_structure(const Curve& C, std::uint64_t max_order) {
  const std::uint64_t n = curve_order_via_character(C);
  if (n > max_order) throw ResourceError("group of order " + std::to_string(n) + " exceeds budget");
  const auto points = enumerate_points(C);
  if (points.size() != n) throw ConsistencyError("point count disagrees with character sum");
  const auto& G = C.group();
  const std::uint64_t p = C.p();

  // The exponent is the lcm of point orders and is attained by some point.
  std::uint64_t exponent = 1;
  Point g2 = Point::at_infinity();
  for (const Point& P : points) {
    if (G.mul(exponent, P).infinity) continue;
    std::uint64_t ord = point_order(C, P, n);
    exponent = std::lcm(exponent, ord);
  }
  for (const Point& P : points) {
    if (point_order(C, P, n) == exponent) {
      g2 = P;
      break;
    }
  }

  GroupStructure gs;
  gs.order = n;
  gs.d2 = exponent;
  gs.d1 = n / exponent;
  gs.g2 = g2;
  if (gs.d2 % gs.d1 != 0) throw ConsistencyError("invariant factors do not divide");

  if (gs.d1 > 1) {
    std::unordered_set<std::uint64_t> cyclic;
    Point R = Point::at_infinity();
    for (std::uint64_t i = 0; i < gs.d2; ++i, R = G.add(R, g2)) cyclic.insert(point_key(R, p));
    bool found = false;
    for (const Point& P : points) {
      if (P.infinity || !G.mul(gs.d1, P).infinity || point_order(C, P, n) != gs.d1) continue;
      bool meets = false;
      Point M = P;
      for (std::uint64_t i = 1; i < gs.d1; ++i, M = G.add(M, P)) {
        if (cyclic.count(point_key(M, p)) != 0) {
          meets = true;
          break;
        }
      }
      if (!meets) {
        gs.g1 = P;
        found = true;
        break;
      }
    }
    if (!found) throw ConsistencyError("no complement generator found");
  }

  // Regenerate the whole group from the generators.
  std::unordered_set<std::uint64_t> seen;
  Point row = Point::at_infinity();
  for (std::uint64_t i = 0; i < gs.d1; ++i, row = G.add(row, gs.g1)) {
    Point Q = row;
    for (std::uint64_t j = 0; j < gs.d2; ++j, Q = G.add(Q, gs.g2)) seen.insert(point_key(Q, p));
  }
  if (seen.size() != n) throw ConsistencyError("generators do not span the group");
  for (const Point& P : points)
    if (seen.count(point_key(P, p)) == 0) throw ConsistencyError("generators miss a point");
  return gs;
}

std::vector<Point> subgroup_of_order(const Curve& C, std::uint64_t t) {
  if (t == 0) throw DomainError("subgroup order must be positive");
  const std::uint64_t n = curve_order_via_character(C);
  if (n % t != 0)
    throw AmbiguityError("no subgroup of order " + std::to_string(t) + " in a group of order " + std::to_string(n));
  std::vector<Point> out;
  for (const Point& P : enumerate_points(C))
    if (C.group().mul(t, P).infinity) out.push_back(P);
  if (out.size() != t)
    throw AmbiguityError("rational " + std::to_string(t) + "-torsion has " + std::to_string(out.size()) +
                         " points; subgroup of order " + std::to_string(t) + " is not unique");
  return out;
}

ExtPoint lift(const Point& P) {
  if (P.infinity) return ExtPoint::at_infinity();
  return ExtPoint::affine(Fp2{P.x, Fp{0}}, Fp2{P.y, Fp{0}});
}

std::vector<ExtPoint> rational_division_points(const Curve& C, std::uint64_t n, const ExtPoint& Q, int ext,
                                               std::uint64_t max_size) {
  if (ext != 1 && ext != 2) throw DomainError("extension degree must be 1 or 2");
  auto group = C.ext_group();
  if (!group.contains(Q)) throw DomainError("division target not on curve");
  std::vector<ExtPoint> candidates;
  if (ext == 1) {
    for (const Point& P : enumerate_points(C, max_size)) candidates.push_back(lift(P));
  } else {
    candidates = enumerate_ext_points(C, max_size);
  }
  std::vector<ExtPoint> out;
  for (const ExtPoint& P : candidates)
    if (group.mul(n, P) == Q) out.push_back(P);
  return out;
}

Point random_point(const Curve& C, std::mt19937_64& rng) {
  const PrimeField& f = C.field();
  std::uniform_int_distribution<std::uint64_t> pick(0, C.p() - 1);
  std::bernoulli_distribution coin(0.5);
  for (;;) {
    Fp x{pick(rng)};
    bool sign = coin(rng);
    Fp r = C.rhs(x);
    if (r.value == 0) {
      if (sign) return Point::affine(x, Fp{0});
      continue;
    }
    auto y = f.sqrt(r);
    if (!y) continue;
    return Point::affine(x, sign ? f.neg(*y) : *y);
  }
}

}  // namespace ecbits
