#include "ecbits/extractor.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <functional>

#include "ecbits/errors.hpp"

namespace ecbits {

namespace {

void check_window(const PrimeField& field, unsigned ell) {
  if (ell == 0 || ell >= 31 || (std::uint64_t{1} << ell) >= field.modulus())
    throw DomainError("window of " + std::to_string(ell) + " bits needs 0 < ell and 2^ell < p");
}

std::uint64_t power(std::uint64_t base, std::size_t e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (base != 0 && r > cap / base) throw ResourceError("index range exceeds the work budget");
    r *= base;
  }
  return r;
}

std::vector<Fp> multiples_x(const Curve& C, const Point& R, std::uint64_t count) {
  std::vector<Fp> xs(count + 1);
  Point M = Point::at_infinity();
  for (std::uint64_t m = 0; m <= count; ++m) {
    xs[m] = M.x_formal();
    M = C.group().add(M, R);
  }
  return xs;
}

// Calls visit(windows) for each tuple in lexicographic order, where
// windows[j] is the low ell bits of x((n_1...n_j) R).
template <class Visit>
void walk_windows(const Curve& C, const Point& R, std::size_t k, unsigned ell, std::uint64_t N, Visit&& visit) {
  const std::uint64_t span = power(N, k, 2'000'000'000ULL);
  const auto xs = multiples_x(C, R, span);
  const std::uint64_t mask = (std::uint64_t{1} << ell) - 1;
  std::vector<std::uint64_t> windows(k);
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t j, std::uint64_t prod) {
    if (j == k) {
      visit(windows);
      return;
    }
    for (std::uint64_t n = 1; n <= N; ++n) {
      windows[j] = xs[prod * n].value & mask;
      rec(j + 1, prod * n);
    }
  };
  rec(0, 1);
}

}  // namespace

void BitWindowSpec::validate(const PrimeField& field) const {
  check_window(field, ell);
  if (k == 0) throw DomainError("dimension k must be positive");
  if (N == 0) throw DomainError("N must be positive");
  if (sigma.size() != k) throw DomainError("need one pattern per dimension");
  for (std::uint64_t s : sigma)
    if (s >= (std::uint64_t{1} << ell)) throw DomainError("pattern value does not fit in ell bits");
}

std::uint64_t BitWindowSpec::L(const PrimeField& field, std::size_t j) const {
  const std::uint64_t width = std::uint64_t{1} << ell;
  const std::uint64_t span = field.modulus() - sigma.at(j);
  return (span + width - 1) / width - 1;
}

Fp BitWindowSpec::lambda(const PrimeField& field) const {
  return field.inv(field.from_int(static_cast<std::int64_t>(std::uint64_t{1} << ell)));
}

std::string lsb_string(const PrimeField& field, Fp x, unsigned ell) {
  check_window(field, ell);
  std::string out(ell, '0');
  for (unsigned i = 0; i < ell; ++i)
    if ((x.value >> i) & 1) out[ell - 1 - i] = '1';
  return out;
}

std::uint64_t count_A(const Curve& C, const Point& R, const BitWindowSpec& spec) {
  spec.validate(C.field());
  std::uint64_t count = 0;
  walk_windows(C, R, spec.k, spec.ell, spec.N, [&](const std::vector<std::uint64_t>& w) {
    for (std::size_t j = 0; j < spec.k; ++j)
      if (w[j] != spec.sigma[j]) return;
    ++count;
  });
  return count;
}

std::vector<std::uint64_t> pattern_histogram(const Curve& C, const Point& R, std::size_t k, unsigned ell,
                                             std::uint64_t N) {
  check_window(C.field(), ell);
  if (k * ell > 24) throw ResourceError("2^(k ell) histogram bins exceed the budget");
  std::vector<std::uint64_t> bins(std::size_t{1} << (k * ell), 0);
  walk_windows(C, R, k, ell, N, [&](const std::vector<std::uint64_t>& w) {
    std::size_t index = 0;
    for (std::uint64_t v : w) index = (index << ell) | v;
    ++bins[index];
  });
  return bins;
}

Complex count_A_fourier(const Curve& C, const Point& R, const BitWindowSpec& spec, std::uint64_t work_budget) {
  const PrimeField& f = C.field();
  spec.validate(f);
  const std::uint64_t p = f.modulus();
  const std::uint64_t vectors = power(p, spec.k, work_budget);
  const std::uint64_t span = power(spec.N, spec.k, work_budget);
  if (vectors > work_budget / span) throw ResourceError("character expansion exceeds the work budget");

  const AdditiveCharacter psi(f);
  const Fp lambda = spec.lambda(f);

  // Geometric sums G_j(c) = sum_{y=0}^{L_j} psi(-c y), tabulated per j.
  std::vector<std::vector<Complex>> geometric(spec.k, std::vector<Complex>(p));
  for (std::size_t j = 0; j < spec.k; ++j)
    for (std::uint64_t c = 0; c < p; ++c) geometric[j][c] = incomplete_geometric_sum(f, Fp{c}, spec.L(f, j));

  Complex total{0.0, 0.0};
  std::vector<Fp> c(spec.k, Fp{0});
  for (std::uint64_t index = 0; index < vectors; ++index) {
    std::uint64_t rest = index;
    for (std::size_t j = spec.k; j-- > 0;) {
      c[j] = Fp{rest % p};
      rest /= p;
    }
    std::vector<Fp> scaled(spec.k);
    Fp shift{0};
    Complex weight{1.0, 0.0};
    for (std::size_t j = 0; j < spec.k; ++j) {
      scaled[j] = f.mul(lambda, c[j]);
      shift = f.add(shift, f.mul(scaled[j], f.from_int(static_cast<std::int64_t>(spec.sigma[j]))));
      weight *= geometric[j][c[j].value];
    }
    Complex t_sum;
    bool zero = true;
    for (Fp v : c) zero = zero && v.value == 0;
    if (zero)
      t_sum = Complex(static_cast<double>(span), 0.0);
    else
      t_sum = sum_T(C, SumSpecT{scaled, R, spec.N}, psi);
    total += t_sum * psi(f.neg(shift)) * weight;
  }
  double scale = 1.0;
  for (std::size_t j = 0; j < spec.k; ++j) scale /= static_cast<double>(p);
  return total * scale;
}

ScaledDeviation max_deviation(const Curve& C, const Point& R, std::size_t k, unsigned ell, std::uint64_t N) {
  const auto bins = pattern_histogram(C, R, k, ell, N);
  const std::uint64_t denom = std::uint64_t{1} << (k * ell);
  const std::uint64_t target = power(N, k, ~std::uint64_t{0} / denom);
  std::uint64_t worst = 0;
  for (std::uint64_t a : bins) {
    const std::uint64_t scaled = a * denom;
    worst = std::max(worst, scaled > target ? scaled - target : target - scaled);
  }
  return {worst, denom};
}

std::vector<BoundTerm> delta_bound_terms(std::uint64_t p, std::uint64_t t, std::size_t k, std::uint64_t N,
                                         double constant) {
  const double n = static_cast<double>(N), kd = static_cast<double>(k);
  const double pd = static_cast<double>(p), td = static_cast<double>(t);
  const double log_factor = std::pow(constant * std::log(pd), kd);
  return {{"N^(2k)*p^(1/4)*t^(1/2)*(C log p)^k", std::pow(n, 2 * kd) * std::pow(pd, 0.25) * std::sqrt(td) * log_factor},
          {"N^(k-1/2)*t*(C log p)^k", std::pow(n, kd - 0.5) * td * log_factor}};
}

DeviationReport delta(const Curve& C, std::span<const Point> H, std::size_t k, unsigned ell, std::uint64_t N,
                      double constant, const RunOptions& opts) {
  const std::uint64_t t = H.size();
  const std::uint64_t p = C.p();
  if (!coprime_to_factorial(N, t))
    throw PreconditionError("hypothesis gcd(N!, t) = 1 fails: t = " + std::to_string(t) + ", N = " +
                            std::to_string(N));
  if (p <= k) throw PreconditionError("hypothesis p > k fails");
  check_window(C.field(), ell);

  DeviationReport out;
  out.k = k;
  out.ell = ell;
  out.N = N;
  out.p = p;
  out.t = t;
  out.constant = constant;
  const std::uint64_t denom = std::uint64_t{1} << (k * ell);
  const auto chunks = map_chunks<std::vector<ScaledDeviation>>(t, opts.jobs, [&](std::size_t b, std::size_t e) {
    std::vector<ScaledDeviation> part;
    for (std::size_t i = b; i < e; ++i) part.push_back(max_deviation(C, H[i], k, ell, N));
    return part;
  });
  for (const auto& part : chunks) out.per_point.insert(out.per_point.end(), part.begin(), part.end());
  out.total = {0, denom};
  out.total_without_identity = {0, denom};
  for (std::size_t i = 0; i < t; ++i) {
    out.total.numerator += out.per_point[i].numerator;
    if (!H[i].infinity) out.total_without_identity.numerator += out.per_point[i].numerator;
  }

  out.expected = std::ldexp(std::pow(static_cast<double>(N), static_cast<double>(k)), -static_cast<int>(k * ell));
  out.bound_terms = delta_bound_terms(p, t, k, N, constant);
  double rhs = 0.0;
  for (const auto& term : out.bound_terms) rhs += term.value;
  out.ratio = rhs > 0.0 ? out.total.value() / rhs : 0.0;
  return out;
}

ZeroTermCheck zero_term_check(const PrimeField& field, const BitWindowSpec& spec) {
  spec.validate(field);
  if (spec.k > 3) throw DomainError("zero-term check supports k <= 3");
  using Wide = __int128;
  const Wide p = static_cast<Wide>(field.modulus());
  Wide prod = 1, p_k = 1, p_k1 = 1;
  for (std::size_t j = 0; j < spec.k; ++j) {
    prod *= static_cast<Wide>(spec.L(field, j) + 1);
    p_k *= p;
    if (j + 1 < spec.k) p_k1 *= p;
  }
  const Wide scale = Wide{1} << (spec.k * spec.ell);
  Wide diff = prod * scale - p_k;
  if (diff < 0) diff = -diff;
  // |prod/p^k - 2^{-k ell}| <= k 2^{-(k-1) ell} / p, multiplied by p^k 2^{k ell}.
  const Wide limit = static_cast<Wide>(spec.k) * (Wide{1} << spec.ell) * p_k1;

  ZeroTermCheck out;
  const double n_k = std::pow(static_cast<double>(spec.N), static_cast<double>(spec.k));
  out.main_term = static_cast<double>(prod) * n_k / static_cast<double>(p_k);
  out.expected = n_k / static_cast<double>(scale);
  out.bound = static_cast<double>(spec.k) * n_k /
              (std::pow(2.0, static_cast<double>((spec.k - 1) * spec.ell)) * static_cast<double>(p));
  out.within = diff <= limit;
  return out;
}

BitSequence bitstream(const Curve& C, const Point& R, std::size_t k, unsigned ell, std::uint64_t N) {
  if (R.infinity) throw DomainError("bitstream from the point at infinity is degenerate");
  check_window(C.field(), ell);
  BitSequence bits;
  bits.reserve(k * ell * power(N, k, 2'000'000'000ULL));
  walk_windows(C, R, k, ell, N, [&](const std::vector<std::uint64_t>& w) {
    for (std::uint64_t v : w)
      for (unsigned i = ell; i-- > 0;) bits.push_back(((v >> i) & 1) != 0);
  });
  return bits;
}

std::vector<std::uint8_t> pack_bits(const BitSequence& bits) {
  std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
  return out;
}

BitSequence unpack_bits(std::span<const std::uint8_t> bytes, std::size_t bit_count) {
  if (bit_count > bytes.size() * 8) throw DomainError("not enough bytes for the requested bit count");
  BitSequence bits(bit_count);
  for (std::size_t i = 0; i < bit_count; ++i) bits[i] = ((bytes[i / 8] >> (i % 8)) & 1) != 0;
  return bits;
}

ChiSquareReport chi_square_uniformity(const BitSequence& bits, unsigned block) {
  if (block == 0 || block > 20) throw DomainError("block size must be in [1, 20]");
  if (bits.empty() || bits.size() % block != 0) throw DomainError("stream length is not a multiple of the block size");
  ChiSquareReport out;
  const std::size_t cells = std::size_t{1} << block;
  out.histogram.assign(cells, 0);
  for (std::size_t i = 0; i < bits.size(); i += block) {
    std::size_t v = 0;
    for (unsigned j = 0; j < block; ++j) v = (v << 1) | (bits[i + j] ? 1 : 0);
    ++out.histogram[v];
  }
  const double expected = static_cast<double>(bits.size() / block) / static_cast<double>(cells);
  for (std::uint64_t obs : out.histogram) {
    const double d = static_cast<double>(obs) - expected;
    out.statistic += d * d / expected;
  }
  out.degrees_of_freedom = static_cast<unsigned>(cells - 1);
  boost::math::chi_squared_distribution<double> dist(out.degrees_of_freedom);
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  return out;
}

double chi_square_quantile(unsigned degrees_of_freedom, double probability) {
  boost::math::chi_squared_distribution<double> dist(degrees_of_freedom);
  return boost::math::quantile(dist, probability);
}

}  // namespace ecbits
