#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecbits/curve.hpp"
#include "ecbits/poly.hpp"

namespace ecbits {

/// psi_n with Y^2 = X^3 + aX + b eliminated: psi_n = w (n odd) or Y * w
/// (n even).
struct ReducedDivPoly {
  DensePoly w;
  bool y_factor = false;
};

/// f_n = X psi_n^2 - psi_{n-1} psi_{n+1}, g_n = psi_n^2 and h_n with
/// g_n = h_n^2 (n odd) or (X^3 + aX + b) h_n^2 (n even).
struct DivisionTriple {
  DensePoly f;
  DensePoly g;
  DensePoly h;
};

/// Outcome of an executable check; `detail` names the first failing instance.
struct CheckOutcome {
  bool passed = true;
  std::string detail;

  explicit operator bool() const { return passed; }
  static CheckOutcome fail(std::string why) { return {false, std::move(why)}; }
};

/// Memoised division polynomials of one curve. Filling is sequential; once
/// `warm_up(n_max)` has run, reads up to n_max do not mutate and may be
/// shared across threads.
class DivPolyCache {
 public:
  explicit DivPolyCache(Curve curve);

  const Curve& curve() const { return curve_; }
  // X^3 + aX + b.
  const DensePoly& cubic() const { return cubic_; }

  const ReducedDivPoly& psi(std::size_t n);
  DivisionTriple f_g_h(std::size_t n);
  DensePoly f_tilde(std::size_t n);
  // Phi_{m,n} = f_m f_n / (g_m g_n) and Psi_{m,n} = (X^3+aX+b) Phi_{m,n},
  // both unreduced.
  std::pair<RationalFn, RationalFn> phi_psi(std::size_t m, std::size_t n);

  void warm_up(std::size_t n_max);
  bool ordinary();

  // Replaces one of the base polynomials psi_0..psi_4 and drops everything
  // derived from it. Used to check that the verifiers notice corruption.
  void override_base(std::size_t n, ReducedDivPoly value);

 private:
  struct YPoly;
  YPoly as_ypoly(const ReducedDivPoly& r) const;
  YPoly times(const YPoly& l, const YPoly& r) const;
  const ReducedDivPoly& compute(std::size_t n);

  Curve curve_;
  DensePoly cubic_;
  std::vector<std::optional<ReducedDivPoly>> memo_;
  std::optional<bool> ordinary_;
};

// Degree bookkeeping and the shape of g_n; n >= 1.
CheckOutcome verify_degrees(DivPolyCache& cache, std::size_t n);
// x(nP) g_n(x(P)) = f_n(x(P)) for every rational P, nP = O exactly when g_n(x(P)) = 0.
CheckOutcome verify_xfg(DivPolyCache& cache, std::size_t n);
// F_p-roots of g_n are exactly the x-coordinates of nontrivial n-torsion
// (points over F_p or F_{p^2}).
CheckOutcome verify_torsion_roots(DivPolyCache& cache, std::size_t n);
// F_p-roots of f_n lift to P with nP = +-P0, P0 = (0, sqrt(b)); every
// F_{p^2}-rational n-division point of P0 has x killing f_n. Needs b != 0.
CheckOutcome verify_division_point_roots(DivPolyCache& cache, std::size_t n);
// f_tilde_n is square-free for 1 <= n <= n_max. Needs b != 0.
CheckOutcome verify_squarefree_ftilde(DivPolyCache& cache, std::size_t n_max);
// f_n = f_tilde_n^{p^r} (or p^{2r}) with deg f_tilde_n = #E[n].
CheckOutcome verify_ftilde_structure(DivPolyCache& cache, std::size_t n);
// Neither Phi_{m,n} nor Psi_{m,n} is a square of a rational function.
CheckOutcome verify_not_square(DivPolyCache& cache, std::size_t m, std::size_t n);

// #E[n] over the algebraic closure: n * n_star (ordinary) or n_star^2.
std::uint64_t torsion_size(std::uint64_t p, std::uint64_t n, bool ordinary);

}  // namespace ecbits
