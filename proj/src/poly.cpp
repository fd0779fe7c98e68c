#include "ecbits/poly.hpp"

#include <algorithm>
#include <sstream>

#include "ecbits/errors.hpp"

namespace ecbits {

DensePoly::DensePoly(const PrimeField& field, std::vector<Fp> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
  for (Fp& c : coeffs_) c.value %= field_.modulus();
  trim();
}

DensePoly DensePoly::from_ints(const PrimeField& field, std::initializer_list<std::int64_t> coeffs) {
  std::vector<Fp> out;
  out.reserve(coeffs.size());
  for (std::int64_t c : coeffs) out.push_back(field.from_int(c));
  return DensePoly(field, std::move(out));
}

DensePoly DensePoly::constant(const PrimeField& field, Fp c) { return DensePoly(field, {c}); }

DensePoly DensePoly::monomial(const PrimeField& field, std::size_t degree, Fp c) {
  std::vector<Fp> out(degree + 1, Fp{0});
  out[degree] = c;
  return DensePoly(field, std::move(out));
}

void DensePoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().value == 0) coeffs_.pop_back();
}

Fp DensePoly::operator()(Fp u) const {
  Fp acc{0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = field_.add(field_.mul(acc, u), *it);
  return acc;
}

Fp2 DensePoly::operator()(const QuadExtField& ext, const Fp2& u) const {
  Fp2 acc = ext.zero();
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = ext.add(ext.mul(acc, u), ext.embed(*it));
  return acc;
}

DensePoly DensePoly::derivative() const {
  if (coeffs_.size() <= 1) return DensePoly(field_);
  std::vector<Fp> out(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    out[i - 1] = field_.mul(coeffs_[i], field_.from_int(static_cast<std::int64_t>(i % field_.modulus())));
  return DensePoly(field_, std::move(out));
}

DensePoly DensePoly::monic() const {
  if (is_zero()) return *this;
  return scaled(field_.inv(leading()));
}

DensePoly DensePoly::scaled(Fp c) const {
  std::vector<Fp> out(coeffs_);
  for (Fp& v : out) v = field_.mul(v, c);
  return DensePoly(field_, std::move(out));
}

DensePoly DensePoly::pow(std::uint64_t e) const {
  DensePoly result = constant(field_, field_.one());
  DensePoly base = *this;
  while (e != 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

std::pair<DensePoly, DensePoly> DensePoly::divmod(const DensePoly& divisor) const {
  if (divisor.is_zero()) throw DomainError("polynomial division by zero");
  if (degree() < divisor.degree()) return {DensePoly(field_), *this};
  std::vector<Fp> rem(coeffs_);
  const std::size_t dd = divisor.coeffs_.size() - 1;
  std::vector<Fp> quot(rem.size() - dd, Fp{0});
  Fp lead_inv = field_.inv(divisor.leading());
  for (std::size_t i = rem.size(); i-- > dd;) {
    Fp q = field_.mul(rem[i], lead_inv);
    if (q.value == 0) continue;
    quot[i - dd] = q;
    for (std::size_t j = 0; j <= dd; ++j)
      rem[i - dd + j] = field_.sub(rem[i - dd + j], field_.mul(q, divisor.coeffs_[j]));
  }
  rem.resize(dd);
  return {DensePoly(field_, std::move(quot)), DensePoly(field_, std::move(rem))};
}

DensePoly DensePoly::exact_div(const DensePoly& divisor) const {
  auto [q, r] = divmod(divisor);
  if (!r.is_zero()) throw ConsistencyError("inexact polynomial division");
  return q;
}

DensePoly& DensePoly::operator+=(const DensePoly& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Fp{0});
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = field_.add(coeffs_[i], o.coeffs_[i]);
  trim();
  return *this;
}

DensePoly& DensePoly::operator-=(const DensePoly& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Fp{0});
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = field_.sub(coeffs_[i], o.coeffs_[i]);
  trim();
  return *this;
}

DensePoly operator*(const DensePoly& l, const DensePoly& r) {
  if (l.is_zero() || r.is_zero()) return DensePoly(l.field_);
  const std::uint64_t p = l.field_.modulus();
  std::vector<std::uint64_t> acc(l.coeffs_.size() + r.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < l.coeffs_.size(); ++i) {
    const std::uint64_t a = l.coeffs_[i].value;
    if (a == 0) continue;
    for (std::size_t j = 0; j < r.coeffs_.size(); ++j) {
      std::uint64_t& slot = acc[i + j];
      slot = (slot + a * r.coeffs_[j].value) % p;
    }
  }
  std::vector<Fp> out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = Fp{acc[i]};
  return DensePoly(l.field_, std::move(out));
}

DensePoly DensePoly::operator-() const {
  std::vector<Fp> out(coeffs_);
  for (Fp& v : out) v = field_.neg(v);
  return DensePoly(field_, std::move(out));
}

std::string DensePoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i].value == 0) continue;
    if (!first) os << " + ";
    first = false;
    const bool unit = coeffs_[i].value == 1 && i > 0;
    if (!unit) os << coeffs_[i].value << (i > 0 ? "*" : "");
    if (i >= 1) os << 'X';
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

RationalFn RationalFn::reduced() const {
  if (den.is_zero()) throw DomainError("rational function with zero denominator");
  if (num.is_zero()) return {num, DensePoly::constant(den.field(), den.field().one())};
  DensePoly g = poly_gcd(num, den);
  DensePoly n = num.exact_div(g);
  DensePoly d = den.exact_div(g);
  Fp lead_inv = d.field().inv(d.leading());
  return {n.scaled(lead_inv), d.scaled(lead_inv)};
}

int RationalFn::chi_at(Fp u) const {
  const PrimeField& f = num.field();
  return f.chi(f.mul(num(u), den(u)));
}

DensePoly poly_gcd(const DensePoly& f, const DensePoly& g) {
  if (f.is_zero() && g.is_zero()) throw DomainError("gcd of two zero polynomials");
  DensePoly a = f, b = g;
  while (!b.is_zero()) {
    DensePoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<SquarefreeFactor> squarefree_decomposition(const DensePoly& f) {
  if (f.is_zero()) throw DomainError("square-free decomposition of zero");
  const PrimeField& field = f.field();
  const std::uint64_t p = field.modulus();
  std::vector<SquarefreeFactor> out;
  if (f.degree() == 0) return out;

  DensePoly fprime = f.derivative();
  if (fprime.is_zero()) {
    for (auto& part : squarefree_decomposition(pth_power_root(f, 1)))
      out.push_back({std::move(part.factor), part.multiplicity * p});
    return out;
  }

  // Yun-style loop; whatever survives in c afterwards is a p-th power.
  DensePoly c = poly_gcd(f, fprime);
  DensePoly w = f.exact_div(c).monic();
  std::uint64_t i = 1;
  while (w.degree() > 0) {
    DensePoly y = poly_gcd(w, c);
    DensePoly z = w.exact_div(y).monic();
    if (z.degree() > 0) out.push_back({z, i});
    w = y;
    c = c.exact_div(y);
    ++i;
  }
  if (c.degree() > 0) {
    for (auto& part : squarefree_decomposition(pth_power_root(c.monic(), 1)))
      out.push_back({std::move(part.factor), part.multiplicity * p});
  }

  // Yun multiplicities are prime to p and the recursive ones are multiples
  // of p, but recursion may still return repeats among themselves.
  std::sort(out.begin(), out.end(),
            [](const SquarefreeFactor& l, const SquarefreeFactor& r) { return l.multiplicity < r.multiplicity; });
  std::vector<SquarefreeFactor> merged;
  for (auto& part : out) {
    if (!merged.empty() && merged.back().multiplicity == part.multiplicity)
      merged.back().factor = (merged.back().factor * part.factor).monic();
    else
      merged.push_back(std::move(part));
  }
  return merged;
}

DensePoly squarefree_part(const DensePoly& f) {
  DensePoly out = DensePoly::constant(f.field(), f.field().one());
  for (const auto& part : squarefree_decomposition(f)) out = out * part.factor;
  return out.monic();
}

DensePoly odd_multiplicity_part(const DensePoly& f) {
  DensePoly out = DensePoly::constant(f.field(), f.field().one());
  for (const auto& part : squarefree_decomposition(f))
    if (part.multiplicity % 2 == 1) out = out * part.factor;
  return out.monic();
}

DensePoly pth_power_root(const DensePoly& f, unsigned r) {
  if (r == 0) return f;
  const std::uint64_t p = f.field().modulus();
  std::uint64_t step = 1;
  for (unsigned i = 0; i < r; ++i) step *= p;
  const auto& c = f.coeffs();
  std::vector<Fp> out(c.empty() ? 0 : (c.size() - 1) / step + 1, Fp{0});
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].value == 0) continue;
    if (i % step != 0)
      throw StructureError("exponent " + std::to_string(i) + " is not divisible by " + std::to_string(step));
    // Frobenius fixes F_p, so every coefficient is its own p^r-th root.
    out[i / step] = c[i];
  }
  return DensePoly(f.field(), std::move(out));
}

bool rational_square_test(const RationalFn& r) {
  if (r.num.is_zero() || r.den.is_zero()) throw DomainError("square test of the zero function");
  return odd_multiplicity_part(r.num * r.den).degree() == 0;
}

}  // namespace ecbits
