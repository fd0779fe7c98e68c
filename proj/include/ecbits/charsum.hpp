#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ecbits/curve.hpp"
#include "ecbits/field.hpp"
#include "ecbits/parallel.hpp"
#include "ecbits/poly.hpp"

namespace ecbits {

struct BoundTerm {
  std::string name;
  double value = 0.0;
};

/// A measured left-hand side next to the summands of a bound whose implied
/// constant is unknown. `ratio` = lhs / sum(rhs_terms) stands in for that
/// constant.
struct BoundReport {
  double lhs = 0.0;
  std::vector<BoundTerm> rhs_terms;
  double ratio = 0.0;
  std::vector<std::pair<std::string, double>> metadata;

  double rhs_total() const;
  static BoundReport make(double lhs, std::vector<BoundTerm> terms,
                          std::vector<std::pair<std::string, double>> metadata = {});
};

// S(P,Q;N) = sum_{n=1}^N chi(x(nP) x(nQ)), with x(O) = 0.
std::int64_t sum_S(const Curve& C, const Point& P, const Point& Q, std::uint64_t N);

struct USum {
  std::int64_t value = 0;
  BoundReport report;  // against N^6 p + N p^2
};

// U(N) = sum_{P,Q} |S(P,Q;N)|^2 over all rational P, Q (O included).
USum sum_U(const Curve& C, std::uint64_t N, const RunOptions& opts = {});

struct USplit {
  std::int64_t total = 0;
  std::int64_t diagonal = 0;      // m = n
  std::int64_t off_diagonal = 0;  // m != n
};

// U(N) = sum_{m,n} |sum_P chi(x(mP) x(nP))|^2, split by m = n.
USplit sum_U_rearranged(const Curve& C, std::uint64_t N, const RunOptions& opts = {});

// sum_P chi(x(mP) x(nP)) over every rational P.
std::int64_t pair_character_sum(const Curve& C, std::uint64_t m, std::uint64_t n);

// sum_{u in F_p} chi(r(u)), read as chi(num(u) den(u)) (0 at poles).
std::int64_t rational_character_sum(const RationalFn& r);

/// T_k(c, R; N) data; k = c.size().
struct SumSpecT {
  std::vector<Fp> c;
  Point R;
  std::uint64_t N = 1;
};

// sum_{n_1..n_k=1}^N psi(sum_j c_j x((n_1 ... n_j) R)).
Complex sum_T(const Curve& C, const SumSpecT& spec);
Complex sum_T(const Curve& C, const SumSpecT& spec, const AdditiveCharacter& psi);

struct VSum {
  double value = 0.0;
  BoundReport report;  // against k N^{4k} p^{1/2} + k N^{2k-1} t
};

// V_k(c, H; N) = sum_{R in H} |T_k(c, R; N)|^2. H must have gcd(N!, #H) = 1.
VSum sum_V(const Curve& C, std::span<const Point> H, std::span<const Fp> c, std::uint64_t N,
           const RunOptions& opts = {});

// The same quantity after squaring out: sum over index pairs of the inner
// sum over R. Real part returned.
double sum_V_expanded(const Curve& C, std::span<const Point> H, std::span<const Fp> c, std::uint64_t N,
                      const RunOptions& opts = {});

struct SubgroupSum {
  Complex value;
  BoundReport report;  // against s D^2 p^{1/2}
};

// sum_{Q in H, Q != O} psi(sum_i c_i x(d_i Q)); 1 <= d_1 < ... < d_s,
// c_s != 0, gcd(#H, d_1 ... d_s) = 1, curve ordinary.
SubgroupSum subgroup_sum(const Curve& C, std::span<const Point> H, std::span<const std::uint64_t> d,
                         std::span<const Fp> c);

// Tuples (m, n) in [2, N]^{2k} whose partial products agree at some j with
// c_j != 0. Throws ConsistencyError if the count exceeds k N^{2k-1}.
std::uint64_t count_product_collisions(std::uint64_t N, std::size_t k, std::span<const Fp> c,
                                       std::uint64_t work_budget = 1'000'000'000ULL);

std::uint64_t product_collision_bound(std::uint64_t N, std::size_t k);

// True when no prime q <= N divides t.
bool coprime_to_factorial(std::uint64_t N, std::uint64_t t);

}  // namespace ecbits
