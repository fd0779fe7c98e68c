#include "ecbits/field.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ecbits/errors.hpp"

namespace ecbits {

namespace {

constexpr std::size_t kCharacterTableLimit = std::size_t{1} << 22;

// Tonelli-Shanks over any field whose multiplicative group has order
// group_order. `nonsquare` must be a quadratic non-residue of that field.
template <class Field>
std::optional<typename Field::Elt> tonelli_shanks(const Field& f, typename Field::Elt a,
                                                  std::uint64_t group_order,
                                                  typename Field::Elt nonsquare) {
  using Elt = typename Field::Elt;
  if (f.is_zero(a)) return f.zero();
  if (f.pow(a, group_order / 2) != f.one()) return std::nullopt;

  std::uint64_t q = group_order;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  Elt z = f.pow(nonsquare, q);
  Elt x = f.pow(a, (q + 1) / 2);
  Elt b = f.pow(a, q);
  unsigned m = s;
  while (b != f.one()) {
    unsigned i = 0;
    Elt t = b;
    while (t != f.one()) {
      t = f.mul(t, t);
      ++i;
    }
    if (i >= m) return std::nullopt;
    Elt w = z;
    for (unsigned j = 0; j + 1 < m - i; ++j) w = f.mul(w, w);
    x = f.mul(x, w);
    z = f.mul(w, w);
    b = f.mul(b, z);
    m = i;
  }
  return x;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 3 || p >= kMaxModulus || !is_prime(p))
    throw DomainError("modulus must be an odd prime below 2^31, got " + std::to_string(p));
  for (std::uint64_t d = 2; d < p; ++d) {
    if (chi(Fp{d}) == -1) {
      nonresidue_ = Fp{d};
      break;
    }
  }
}

Fp PrimeField::from_int(std::int64_t v) const {
  auto m = static_cast<std::int64_t>(p_);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return Fp{static_cast<std::uint64_t>(r)};
}

Fp PrimeField::pow(Fp x, std::uint64_t e) const {
  Fp result = one();
  while (e != 0) {
    if (e & 1) result = mul(result, x);
    x = mul(x, x);
    e >>= 1;
  }
  return result;
}

Fp PrimeField::inv(Fp x) const {
  if (x.value == 0) throw DomainError("inverse of zero in F_" + std::to_string(p_));
  std::int64_t r0 = static_cast<std::int64_t>(p_), r1 = static_cast<std::int64_t>(x.value);
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  return from_int(t0);
}

int PrimeField::chi(Fp x) const {
  if (x.value == 0) return 0;
  return pow(x, (p_ - 1) / 2).value == 1 ? 1 : -1;
}

std::optional<Fp> PrimeField::sqrt(Fp x) const {
  auto r = tonelli_shanks(*this, x, p_ - 1, nonresidue_);
  if (!r) return std::nullopt;
  Fp other = neg(*r);
  return other.value < r->value ? other : *r;
}

QuadExtField::QuadExtField(const PrimeField& base) : base_(base), d_(base.nonresidue()) {
  // A non-square of F_{p^2} is any element whose norm is a non-residue of F_p.
  const std::uint64_t p = base_.modulus();
  for (std::uint64_t im = 1; im < p; ++im) {
    for (std::uint64_t re = 0; re < p; ++re) {
      Fp2 z{Fp{re}, Fp{im}};
      Fp norm = base_.sub(base_.mul(z.re, z.re), base_.mul(d_, base_.mul(z.im, z.im)));
      if (base_.chi(norm) == -1) {
        nonsquare_ = z;
        return;
      }
    }
  }
  throw ConsistencyError("no non-square found in F_p^2");
}

Fp2 QuadExtField::mul(const Fp2& x, const Fp2& y) const {
  const PrimeField& f = base_;
  Fp re = f.add(f.mul(x.re, y.re), f.mul(d_, f.mul(x.im, y.im)));
  Fp im = f.add(f.mul(x.re, y.im), f.mul(x.im, y.re));
  return {re, im};
}

Fp2 QuadExtField::pow(Fp2 x, std::uint64_t e) const {
  Fp2 result = one();
  while (e != 0) {
    if (e & 1) result = mul(result, x);
    x = mul(x, x);
    e >>= 1;
  }
  return result;
}

Fp2 QuadExtField::inv(const Fp2& x) const {
  if (is_zero(x)) throw DomainError("inverse of zero in F_p^2");
  const PrimeField& f = base_;
  Fp norm = f.sub(f.mul(x.re, x.re), f.mul(d_, f.mul(x.im, x.im)));
  Fp n_inv = f.inv(norm);
  return {f.mul(x.re, n_inv), f.mul(f.neg(x.im), n_inv)};
}

std::optional<Fp2> QuadExtField::sqrt(const Fp2& x) const {
  const std::uint64_t p = base_.modulus();
  auto r = tonelli_shanks(*this, x, p * p - 1, nonsquare_);
  if (!r) return std::nullopt;
  Fp2 other = neg(*r);
  return other < *r ? other : *r;
}

Fp fp_inv(const PrimeField& field, Fp x) { return field.inv(x); }

int legendre_chi(const PrimeField& field, Fp u) { return field.chi(u); }

Fp2 sqrt_in_base_or_ext(const PrimeField& field, Fp u) {
  if (auto r = field.sqrt(u)) return Fp2{*r, Fp{0}};
  // u = e^2 d with u/d a residue.
  Fp e = *field.sqrt(field.div(u, field.nonresidue()));
  return Fp2{Fp{0}, e};
}

AdditiveCharacter::AdditiveCharacter(const PrimeField& field) : field_(field) {
  const std::uint64_t p = field_.modulus();
  if (p > kCharacterTableLimit) return;
  table_.reserve(p);
  for (std::uint64_t u = 0; u < p; ++u) table_.push_back(additive_psi(field_, Fp{u}));
}

Complex AdditiveCharacter::operator()(Fp u) const {
  if (!table_.empty()) return table_[u.value];
  return additive_psi(field_, u);
}

Complex additive_psi(const PrimeField& field, Fp u) {
  if (u.value == 0) return {1.0, 0.0};
  double angle = 2.0 * std::numbers::pi * static_cast<double>(u.value) /
                 static_cast<double>(field.modulus());
  return {std::cos(angle), std::sin(angle)};
}

Complex orthogonality_indicator(const PrimeField& field, Fp v) {
  const std::uint64_t p = field.modulus();
  Complex total{0.0, 0.0};
  for (std::uint64_t c = 0; c < p; ++c) total += additive_psi(field, field.mul(Fp{c}, v));
  return total / static_cast<double>(p);
}

Complex incomplete_geometric_sum(const PrimeField& field, Fp c, std::uint64_t L) {
  if (L >= field.modulus()) throw DomainError("incomplete geometric sum needs L < p");
  Fp minus_c = field.neg(c);
  Complex total{0.0, 0.0};
  Fp arg{0};
  for (std::uint64_t y = 0; y <= L; ++y) {
    total += additive_psi(field, arg);
    arg = field.add(arg, minus_c);
  }
  return total;
}

double geometric_sum_bound(const PrimeField& field, Fp c) {
  if (c.value == 0) throw DomainError("geometric sum bound needs c != 0");
  const std::uint64_t p = field.modulus();
  std::uint64_t m = std::min(c.value, p - c.value);
  return static_cast<double>(p) / (2.0 * static_cast<double>(m));
}

}  // namespace ecbits
