#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "ecbits/field.hpp"

namespace ecbits {

/// Dense univariate polynomial over F_p, lowest degree first. The
/// coefficient vector never carries trailing zeros, so the zero polynomial
/// has an empty vector and degree -1.
class DensePoly {
 public:
  explicit DensePoly(const PrimeField& field) : field_(field) {}
  DensePoly(const PrimeField& field, std::vector<Fp> coeffs);

  static DensePoly from_ints(const PrimeField& field, std::initializer_list<std::int64_t> coeffs);
  static DensePoly constant(const PrimeField& field, Fp c);
  static DensePoly monomial(const PrimeField& field, std::size_t degree, Fp c);
  static DensePoly x(const PrimeField& field) { return monomial(field, 1, field.one()); }

  const PrimeField& field() const { return field_; }
  const std::vector<Fp>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  Fp coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Fp{0}; }
  Fp leading() const { return coeffs_.empty() ? Fp{0} : coeffs_.back(); }

  Fp operator()(Fp u) const;
  Fp2 operator()(const QuadExtField& ext, const Fp2& u) const;

  DensePoly derivative() const;
  DensePoly monic() const;
  DensePoly scaled(Fp c) const;
  DensePoly pow(std::uint64_t e) const;

  // Quotient and remainder; throws DomainError on a zero divisor.
  std::pair<DensePoly, DensePoly> divmod(const DensePoly& divisor) const;
  // Quotient, throwing ConsistencyError when the division is not exact.
  DensePoly exact_div(const DensePoly& divisor) const;

  DensePoly& operator+=(const DensePoly& o);
  DensePoly& operator-=(const DensePoly& o);
  friend DensePoly operator+(DensePoly l, const DensePoly& r) { return l += r; }
  friend DensePoly operator-(DensePoly l, const DensePoly& r) { return l -= r; }
  friend DensePoly operator*(const DensePoly& l, const DensePoly& r);
  DensePoly operator-() const;

  friend bool operator==(const DensePoly& l, const DensePoly& r) {
    return l.field_ == r.field_ && l.coeffs_ == r.coeffs_;
  }

  std::string to_string() const;

 private:
  void trim();

  PrimeField field_;
  std::vector<Fp> coeffs_;
};

/// Quotient of two polynomials. `reduced()` cancels the gcd and makes the
/// denominator monic.
struct RationalFn {
  DensePoly num;
  DensePoly den;

  RationalFn reduced() const;
  // chi(num(u) * den(u)): equals chi(r(u)) wherever den(u) != 0 and is 0
  // at poles.
  int chi_at(Fp u) const;
};

struct SquarefreeFactor {
  DensePoly factor;
  std::uint64_t multiplicity;
};

DensePoly poly_gcd(const DensePoly& f, const DensePoly& g);

// f = prod factor_i^{multiplicity_i} up to a unit, the factors monic,
// square-free and pairwise coprime. Handles inseparable parts by taking
// p-th roots.
std::vector<SquarefreeFactor> squarefree_decomposition(const DensePoly& f);

// Radical of f, monic.
DensePoly squarefree_part(const DensePoly& f);

// Product of the factors that occur with odd multiplicity, monic.
DensePoly odd_multiplicity_part(const DensePoly& f);

// g with g^{p^r} = f. Throws StructureError when some exponent of f is not
// divisible by p^r.
DensePoly pth_power_root(const DensePoly& f, unsigned r);

// True iff r is a square in the function field over the algebraic closure.
bool rational_square_test(const RationalFn& r);

}  // namespace ecbits
