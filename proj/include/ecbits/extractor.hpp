#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ecbits/charsum.hpp"
#include "ecbits/curve.hpp"
#include "ecbits/parallel.hpp"

namespace ecbits {

using BitSequence = std::vector<bool>;

/// k windows of ell least significant bits over index range [1, N]^k, with
/// the target patterns given by their integer values sigma_j < 2^ell.
struct BitWindowSpec {
  std::size_t k = 1;
  unsigned ell = 1;
  std::uint64_t N = 1;
  std::vector<std::uint64_t> sigma;

  // Throws DomainError unless 2^ell < p, sigma has k entries and each is < 2^ell.
  void validate(const PrimeField& field) const;
  // ceil((p - sigma_j) / 2^ell) - 1
  std::uint64_t L(const PrimeField& field, std::size_t j) const;
  // 1 / 2^ell in F_p
  Fp lambda(const PrimeField& field) const;
};

// Last ell bits of x, most significant first. Throws DomainError if 2^ell >= p.
std::string lsb_string(const PrimeField& field, Fp x, unsigned ell);

// Number of (n_1..n_k) in [1,N]^k whose windows of x((n_1...n_j) R) match sigma.
std::uint64_t count_A(const Curve& C, const Point& R, const BitWindowSpec& spec);

// Counts for every pattern tuple at once. Bin index concatenates the k
// windows with sigma_1 in the most significant position.
std::vector<std::uint64_t> pattern_histogram(const Curve& C, const Point& R, std::size_t k, unsigned ell,
                                             std::uint64_t N);

// A_{k,ell} evaluated through the additive-character expansion:
// p^-k sum_c T_k(lambda c, R; N) psi(-lambda sum c_j sigma_j) prod_j sum_{y<=L_j} psi(-c_j y).
Complex count_A_fourier(const Curve& C, const Point& R, const BitWindowSpec& spec,
                        std::uint64_t work_budget = 200'000'000ULL);

/// |A - 2^{-k ell} N^k| scaled to an integer numerator over 2^{k ell}.
struct ScaledDeviation {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
  friend bool operator==(const ScaledDeviation&, const ScaledDeviation&) = default;
};

// max over patterns of |A - 2^{-k ell} N^k| for one point.
ScaledDeviation max_deviation(const Curve& C, const Point& R, std::size_t k, unsigned ell, std::uint64_t N);

struct DeviationReport {
  std::vector<ScaledDeviation> per_point;  // in the order of H
  ScaledDeviation total;                   // sum over all of H
  ScaledDeviation total_without_identity;  // O excluded
  double expected = 0.0;                   // 2^{-k ell} N^k
  double constant = 1.0;                   // C in (C log p)^k
  std::vector<BoundTerm> bound_terms;
  double ratio = 0.0;  // total / sum(bound_terms)
  std::size_t k = 1;
  unsigned ell = 1;
  std::uint64_t N = 1;
  std::uint64_t p = 0;
  std::uint64_t t = 0;
};

// N^{2k} p^{1/4} t^{1/2} (C log p)^k and N^{k-1/2} t (C log p)^k.
std::vector<BoundTerm> delta_bound_terms(std::uint64_t p, std::uint64_t t, std::size_t k, std::uint64_t N,
                                         double constant);

// Delta_{k,ell}(H, N) and the bound (N^{2k} p^{1/4} t^{1/2} + N^{k-1/2} t)(C log p)^k.
// Needs gcd(N!, t) = 1 and p > k.
DeviationReport delta(const Curve& C, std::span<const Point> H, std::size_t k, unsigned ell, std::uint64_t N,
                      double constant = 1.0, const RunOptions& opts = {});

/// Main term of the character expansion (zero vector c) against 2^{-k ell} N^k.
struct ZeroTermCheck {
  double main_term = 0.0;  // (L_1+1)...(L_k+1) N^k / p^k
  double expected = 0.0;   // 2^{-k ell} N^k
  double bound = 0.0;      // k 2^{-(k-1) ell} N^k / p
  bool within = false;     // decided in exact integer arithmetic
};
ZeroTermCheck zero_term_check(const PrimeField& field, const BitWindowSpec& spec);

// Windows of every index tuple in lexicographic order; length k ell N^k.
// Throws DomainError for R = O.
BitSequence bitstream(const Curve& C, const Point& R, std::size_t k, unsigned ell, std::uint64_t N);

// Bit i goes to byte i / 8 at bit position i % 8 (least significant first);
// the final byte is zero-padded.
std::vector<std::uint8_t> pack_bits(const BitSequence& bits);
BitSequence unpack_bits(std::span<const std::uint8_t> bytes, std::size_t bit_count);

struct ChiSquareReport {
  double statistic = 0.0;
  unsigned degrees_of_freedom = 0;
  double p_value = 1.0;
  std::vector<std::uint64_t> histogram;
};

// Chi-square of the block-value histogram (blocks read most significant bit
// first) against the uniform distribution on 2^block values.
ChiSquareReport chi_square_uniformity(const BitSequence& bits, unsigned block);

double chi_square_quantile(unsigned degrees_of_freedom, double probability);

}  // namespace ecbits
