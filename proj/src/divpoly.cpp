#include "ecbits/divpoly.hpp"

#include <sstream>

namespace ecbits {

struct DivPolyCache::YPoly {
  DensePoly w;
  int y_power;  // 0 or 1
};

namespace {

std::string tuple_str(const Curve& C, const char* what, std::size_t n) {
  std::ostringstream os;
  os << what << " failed at (p=" << C.p() << ", a=" << C.a().value << ", b=" << C.b().value << ", n=" << n << ")";
  return os.str();
}

unsigned p_adic_valuation(std::uint64_t n, std::uint64_t p) {
  unsigned r = 0;
  while (n % p == 0) {
    n /= p;
    ++r;
  }
  return r;
}

}  // namespace

DivPolyCache::DivPolyCache(Curve curve) : curve_(std::move(curve)), cubic_(curve_.field()) {
  const PrimeField& f = curve_.field();
  const Fp a = curve_.a(), b = curve_.b();
  cubic_ = DensePoly(f, {b, a, Fp{0}, f.one()});

  auto c = [&](std::int64_t k) { return f.from_int(k); };
  const Fp a2 = f.mul(a, a), a3 = f.mul(a2, a), ab = f.mul(a, b), b2 = f.mul(b, b);

  memo_.resize(5);
  memo_[0] = ReducedDivPoly{DensePoly(f), true};
  memo_[1] = ReducedDivPoly{DensePoly::constant(f, f.one()), false};
  memo_[2] = ReducedDivPoly{DensePoly::constant(f, c(2)), true};
  // 3X^4 + 6aX^2 + 12bX - a^2
  memo_[3] = ReducedDivPoly{DensePoly(f, {f.neg(a2), f.mul(c(12), b), f.mul(c(6), a), Fp{0}, c(3)}), false};
  // 4Y(X^6 + 5aX^4 + 20bX^3 - 5a^2X^2 - 4abX - 8b^2 - a^3)
  DensePoly inner(f, {f.sub(f.neg(f.mul(c(8), b2)), a3), f.neg(f.mul(c(4), ab)), f.neg(f.mul(c(5), a2)),
                      f.mul(c(20), b), f.mul(c(5), a), Fp{0}, f.one()});
  memo_[4] = ReducedDivPoly{inner.scaled(c(4)), true};
}

DivPolyCache::YPoly DivPolyCache::as_ypoly(const ReducedDivPoly& r) const { return {r.w, r.y_factor ? 1 : 0}; }

DivPolyCache::YPoly DivPolyCache::times(const YPoly& l, const YPoly& r) const {
  DensePoly w = l.w * r.w;
  int e = l.y_power + r.y_power;
  if (e == 2) {
    w = w * cubic_;
    e = 0;
  }
  return {std::move(w), e};
}

const ReducedDivPoly& DivPolyCache::psi(std::size_t n) {
  if (n < memo_.size() && memo_[n]) return *memo_[n];
  return compute(n);
}

const ReducedDivPoly& DivPolyCache::compute(std::size_t n) {
  const PrimeField& f = curve_.field();
  const std::size_t m = n / 2;
  auto get = [&](std::size_t i) { return as_ypoly(psi(i)); };
  auto sub = [&](const YPoly& l, const YPoly& r) {
    if (l.y_power != r.y_power && !l.w.is_zero() && !r.w.is_zero())
      throw ConsistencyError("division polynomial recurrence mixes Y parities");
    return YPoly{l.w - r.w, l.w.is_zero() ? r.y_power : l.y_power};
  };

  ReducedDivPoly out{DensePoly(f), n % 2 == 0};
  if (n % 2 == 1) {
    // psi_{2m+1} = psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3
    YPoly pm = get(m), pm1 = get(m + 1);
    YPoly lhs = times(get(m + 2), times(pm, times(pm, pm)));
    YPoly rhs = times(get(m - 1), times(pm1, times(pm1, pm1)));
    YPoly r = sub(lhs, rhs);
    if (r.y_power != 0 && !r.w.is_zero()) throw ConsistencyError("odd division polynomial carries Y");
    out.w = std::move(r.w);
  } else {
    // psi_{2m} = psi_m (psi_{m+2} psi_{m-1}^2 - psi_{m-2} psi_{m+1}^2) / (2Y)
    YPoly pm1 = get(m - 1), pp1 = get(m + 1);
    YPoly bracket = sub(times(get(m + 2), times(pm1, pm1)), times(get(m - 2), times(pp1, pp1)));
    YPoly prod = times(get(m), bracket);
    DensePoly w = prod.y_power == 1 ? prod.w : prod.w.exact_div(cubic_);
    out.w = w.scaled(f.inv(f.from_int(2)));
  }
  if (memo_.size() <= n) memo_.resize(n + 1);
  memo_[n] = std::move(out);
  return *memo_[n];
}

void DivPolyCache::warm_up(std::size_t n_max) {
  for (std::size_t n = 0; n <= n_max + 1; ++n) psi(n);
}

bool DivPolyCache::ordinary() {
  if (!ordinary_) ordinary_ = is_ordinary(curve_);
  return *ordinary_;
}

void DivPolyCache::override_base(std::size_t n, ReducedDivPoly value) {
  if (n > 4) throw DomainError("only psi_0..psi_4 are base values");
  memo_.resize(5);
  memo_[n] = std::move(value);
}

DivisionTriple DivPolyCache::f_g_h(std::size_t n) {
  if (n == 0) throw DomainError("f_n, g_n are defined for n >= 1");
  const PrimeField& f = curve_.field();
  YPoly pn = as_ypoly(psi(n));
  YPoly g = times(pn, pn);
  YPoly cross = times(as_ypoly(psi(n - 1)), as_ypoly(psi(n + 1)));
  if (g.y_power != 0 || cross.y_power != 0) throw ConsistencyError("f_n or g_n carries Y");
  DensePoly fn = DensePoly::x(f) * g.w - cross.w;

  DensePoly h = psi(n).w;
  DensePoly shape = h * h;
  if (n % 2 == 0) shape = shape * cubic_;
  if (!(shape == g.w))
    throw ConsistencyError("g_" + std::to_string(n) + " does not have the h^2 / (X^3+aX+b) h^2 shape");
  return {std::move(fn), std::move(g.w), std::move(h)};
}

DensePoly DivPolyCache::f_tilde(std::size_t n) {
  DensePoly fn = f_g_h(n).f;
  const unsigned r = p_adic_valuation(n, curve_.p());
  if (r == 0) return fn;
  try {
    return pth_power_root(fn, ordinary() ? r : 2 * r);
  } catch (const StructureError& e) {
    throw StructureError(std::string("f_n is not a p-power as the ") + (ordinary() ? "ordinary" : "supersingular") +
                         " classification predicts: " + e.what());
  }
}

std::pair<RationalFn, RationalFn> DivPolyCache::phi_psi(std::size_t m, std::size_t n) {
  DivisionTriple tm = f_g_h(m), tn = f_g_h(n);
  DensePoly num = tm.f * tn.f;
  DensePoly den = tm.g * tn.g;
  return {RationalFn{num, den}, RationalFn{cubic_ * num, den}};
}

std::uint64_t torsion_size(std::uint64_t p, std::uint64_t n, bool ordinary) {
  std::uint64_t n_star = n;
  while (n_star % p == 0) n_star /= p;
  return ordinary ? n * n_star : n_star * n_star;
}

CheckOutcome verify_degrees(DivPolyCache& cache, std::size_t n) {
  const Curve& C = cache.curve();
  std::optional<DivisionTriple> t;
  try {
    t = cache.f_g_h(n);
  } catch (const ConsistencyError& e) {
    return CheckOutcome::fail(tuple_str(C, "g_n shape", n) + ": " + e.what());
  }
  const auto n2 = static_cast<int>(n * n);
  if (t->f.degree() != n2) return CheckOutcome::fail(tuple_str(C, "deg f_n = n^2", n));
  if (t->g.degree() > n2 - 1) return CheckOutcome::fail(tuple_str(C, "deg g_n <= n^2 - 1", n));
  return {};
}

CheckOutcome verify_xfg(DivPolyCache& cache, std::size_t n) {
  const Curve& C = cache.curve();
  const PrimeField& f = C.field();
  DivisionTriple t = cache.f_g_h(n);
  for (const Point& P : enumerate_points(C)) {
    if (P.infinity) continue;
    const Fp fu = t.f(P.x), gu = t.g(P.x);
    const Point Q = C.group().mul(n, P);
    if (gu.value == 0) {
      if (!Q.infinity) return CheckOutcome::fail(tuple_str(C, "verify_xfg (g_n root but nP != O)", n));
      if (fu.value == 0) return CheckOutcome::fail(tuple_str(C, "verify_xfg (f_n, g_n share a root)", n));
      continue;
    }
    if (Q.infinity || f.mul(Q.x, gu) != fu)
      return CheckOutcome::fail(tuple_str(C, "verify_xfg", n) + " at P=" + to_string(P));
  }
  return {};
}

CheckOutcome verify_torsion_roots(DivPolyCache& cache, std::size_t n) {
  if (n < 2) throw DomainError("torsion root check needs n >= 2");
  const Curve& C = cache.curve();
  const PrimeField& f = C.field();
  const auto ext = C.ext_group();
  const DensePoly g = cache.f_g_h(n).g;
  for (std::uint64_t u = 0; u < C.p(); ++u) {
    const Fp x{u};
    const bool root = g(x).value == 0;
    const ExtPoint P = ExtPoint::affine(Fp2{x, Fp{0}}, sqrt_in_base_or_ext(f, C.rhs(x)));
    const bool torsion = ext.mul(n, P).infinity;
    if (root != torsion)
      return CheckOutcome::fail(tuple_str(C, "verify_torsion_roots", n) + " at x=" + std::to_string(u));
  }
  return {};
}

CheckOutcome verify_division_point_roots(DivPolyCache& cache, std::size_t n) {
  const Curve& C = cache.curve();
  if (C.b().value == 0) throw PreconditionError("division-point roots need b != 0");
  const PrimeField& f = C.field();
  const auto group = C.ext_group();
  const QuadExtField& ext = group.field();
  const DensePoly fn = cache.f_g_h(n).f;
  const ExtPoint P0 = ExtPoint::affine(ext.zero(), sqrt_in_base_or_ext(f, C.b()));
  const ExtPoint minus_P0 = group.negate(P0);

  for (std::uint64_t u = 0; u < C.p(); ++u) {
    const Fp x{u};
    if (fn(x).value != 0) continue;
    const ExtPoint P = ExtPoint::affine(Fp2{x, Fp{0}}, sqrt_in_base_or_ext(f, C.rhs(x)));
    const ExtPoint Q = group.mul(n, P);
    if (!(Q == P0) && !(Q == minus_P0))
      return CheckOutcome::fail(tuple_str(C, "verify_division_point_roots (root does not lift)", n) +
                                " at x=" + std::to_string(u));
  }

  const std::uint64_t p = C.p();
  const int degree = p * p <= 100'000 ? 2 : 1;
  for (const ExtPoint& P : rational_division_points(C, n, P0, degree)) {
    if (!ext.is_zero(fn(ext, P.x)))
      return CheckOutcome::fail(tuple_str(C, "verify_division_point_roots (division point misses f_n)", n) +
                                " at P=" + to_string(P));
  }
  return {};
}

CheckOutcome verify_squarefree_ftilde(DivPolyCache& cache, std::size_t n_max) {
  const Curve& C = cache.curve();
  if (C.b().value == 0) throw PreconditionError("square-freeness of f_tilde needs b != 0");
  for (std::size_t n = 1; n <= n_max; ++n) {
    DensePoly ft = cache.f_tilde(n);
    if (squarefree_part(ft).degree() != ft.degree())
      return CheckOutcome::fail(tuple_str(C, "verify_squarefree_ftilde", n));
  }
  return {};
}

CheckOutcome verify_ftilde_structure(DivPolyCache& cache, std::size_t n) {
  const Curve& C = cache.curve();
  DensePoly ft(C.field());
  try {
    ft = cache.f_tilde(n);
  } catch (const StructureError& e) {
    return CheckOutcome::fail(tuple_str(C, "f_tilde extraction", n) + ": " + e.what());
  }
  const bool ord = cache.ordinary();
  const std::uint64_t expected = torsion_size(C.p(), n, ord);
  if (static_cast<std::uint64_t>(ft.degree()) != expected)
    return CheckOutcome::fail(tuple_str(C, "deg f_tilde_n = #E[n]", n));
  const unsigned r = p_adic_valuation(n, C.p());
  std::uint64_t e = 1;
  for (unsigned i = 0; i < (ord ? r : 2 * r); ++i) e *= C.p();
  if (!(ft.pow(e) == cache.f_g_h(n).f))
    return CheckOutcome::fail(tuple_str(C, "f_tilde_n^{p^r} = f_n", n));
  return {};
}

CheckOutcome verify_not_square(DivPolyCache& cache, std::size_t m, std::size_t n) {
  const Curve& C = cache.curve();
  auto [phi, psi] = cache.phi_psi(m, n);
  std::ostringstream tag;
  tag << " (m=" << m << ")";
  if (rational_square_test(phi)) return CheckOutcome::fail(tuple_str(C, "Phi_{m,n} is not a square", n) + tag.str());
  if (rational_square_test(psi)) return CheckOutcome::fail(tuple_str(C, "Psi_{m,n} is not a square", n) + tag.str());
  return {};
}

}  // namespace ecbits
