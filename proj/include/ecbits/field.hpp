#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace ecbits {

using Complex = std::complex<double>;

// Canonical residue in [0, p-1]. The modulus lives in the PrimeField that
// produced the value; mixing residues of different fields is a caller bug.
struct Fp {
  std::uint64_t value = 0;

  friend constexpr bool operator==(Fp, Fp) = default;
  friend constexpr auto operator<=>(Fp, Fp) = default;
};

// Element re + im * sqrt(d) of F_p(sqrt(d)), d the smallest non-residue.
struct Fp2 {
  Fp re;
  Fp im;

  friend constexpr bool operator==(const Fp2&, const Fp2&) = default;
  friend constexpr auto operator<=>(const Fp2&, const Fp2&) = default;
};

bool is_prime(std::uint64_t n);

/// Arithmetic modulo an odd prime p < 2^31, so every product of two
/// residues fits in 64 bits.
class PrimeField {
 public:
  using Elt = Fp;

  static constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 31);

  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  Fp zero() const { return Fp{0}; }
  Fp one() const { return Fp{1}; }
  Fp from_int(std::int64_t v) const;
  Fp embed(Fp x) const { return x; }

  Fp add(Fp x, Fp y) const {
    std::uint64_t s = x.value + y.value;
    return Fp{s >= p_ ? s - p_ : s};
  }
  Fp sub(Fp x, Fp y) const { return Fp{x.value >= y.value ? x.value - y.value : x.value + p_ - y.value}; }
  Fp neg(Fp x) const { return Fp{x.value == 0 ? 0 : p_ - x.value}; }
  Fp mul(Fp x, Fp y) const { return Fp{(x.value * y.value) % p_}; }
  Fp pow(Fp x, std::uint64_t e) const;
  // Throws DomainError for zero.
  Fp inv(Fp x) const;
  Fp div(Fp x, Fp y) const { return mul(x, inv(y)); }
  bool is_zero(Fp x) const { return x.value == 0; }

  // Legendre symbol with chi(0) = 0, by Euler's criterion.
  int chi(Fp x) const;

  // Square root with the smaller integer representative, if x is a square.
  std::optional<Fp> sqrt(Fp x) const;

  // Smallest quadratic non-residue.
  Fp nonresidue() const { return nonresidue_; }

  friend bool operator==(const PrimeField& l, const PrimeField& r) { return l.p_ == r.p_; }

 private:
  std::uint64_t p_;
  Fp nonresidue_;
};

/// F_{p^2} realised as F_p(sqrt(d)). Only used for point coordinates.
class QuadExtField {
 public:
  using Elt = Fp2;

  explicit QuadExtField(const PrimeField& base);

  const PrimeField& base() const { return base_; }
  Fp nonresidue() const { return d_; }

  Fp2 zero() const { return Fp2{}; }
  Fp2 one() const { return Fp2{Fp{1}, Fp{0}}; }
  Fp2 embed(Fp x) const { return Fp2{x, Fp{0}}; }
  Fp2 from_int(std::int64_t v) const { return embed(base_.from_int(v)); }
  bool in_base(const Fp2& x) const { return x.im.value == 0; }

  Fp2 add(const Fp2& x, const Fp2& y) const { return {base_.add(x.re, y.re), base_.add(x.im, y.im)}; }
  Fp2 sub(const Fp2& x, const Fp2& y) const { return {base_.sub(x.re, y.re), base_.sub(x.im, y.im)}; }
  Fp2 neg(const Fp2& x) const { return {base_.neg(x.re), base_.neg(x.im)}; }
  Fp2 mul(const Fp2& x, const Fp2& y) const;
  Fp2 pow(Fp2 x, std::uint64_t e) const;
  Fp2 inv(const Fp2& x) const;
  Fp2 div(const Fp2& x, const Fp2& y) const { return mul(x, inv(y)); }
  bool is_zero(const Fp2& x) const { return x.re.value == 0 && x.im.value == 0; }

  // Square root inside F_{p^2}; of the two roots, the lexicographically
  // smaller (re, im) pair is returned.
  std::optional<Fp2> sqrt(const Fp2& x) const;

 private:
  PrimeField base_;
  Fp d_;
  Fp2 nonsquare_;  // generator of the 2-Sylow part for Tonelli-Shanks
};

Fp fp_inv(const PrimeField& field, Fp x);
int legendre_chi(const PrimeField& field, Fp u);

// Root of b in F_p when chi(b) >= 0, otherwise a pure multiple of sqrt(d).
Fp2 sqrt_in_base_or_ext(const PrimeField& field, Fp u);

/// The additive character u -> exp(2 pi i u / p). Values are tabulated for
/// p up to 2^22 so bulk sums do not pay for sin/cos per term.
class AdditiveCharacter {
 public:
  explicit AdditiveCharacter(const PrimeField& field);

  Complex operator()(Fp u) const;
  const PrimeField& field() const { return field_; }

 private:
  PrimeField field_;
  std::vector<Complex> table_;
};

Complex additive_psi(const PrimeField& field, Fp u);

// (1/p) sum_{c in F_p} psi(c v), by direct summation in fixed order.
Complex orthogonality_indicator(const PrimeField& field, Fp v);

// sum_{y=0}^{L} psi(-c y), requires L < p.
Complex incomplete_geometric_sum(const PrimeField& field, Fp c, std::uint64_t L);

// p / (2 min(c, p - c)); the closed form |sin(pi c (L+1)/p) / sin(pi c/p)|
// never exceeds it. Requires c != 0.
double geometric_sum_bound(const PrimeField& field, Fp c);

}  // namespace ecbits
