#include "ecbits/charsum.hpp"

#include <cmath>
#include <functional>
#include <numeric>

#include "ecbits/errors.hpp"

namespace ecbits {

namespace {

// x(mR) for m = 0..count, with x(O) = 0.
std::vector<Fp> multiples_x(const Curve& C, const Point& R, std::uint64_t count) {
  std::vector<Fp> xs(count + 1);
  Point M = Point::at_infinity();
  for (std::uint64_t m = 0; m <= count; ++m) {
    xs[m] = M.x_formal();
    M = C.group().add(M, R);
  }
  return xs;
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t e, std::uint64_t cap, const char* what) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (base != 0 && r > cap / base) throw ResourceError(std::string(what) + " exceeds the work budget");
    r *= base;
  }
  return r;
}

// Visits the arguments sum_j c_j x((n_1...n_j) R) in lexicographic order of
// (n_1, ..., n_k) in [1, N]^k.
template <class Visit>
void walk_tuples(const PrimeField& f, std::span<const Fp> c, const std::vector<Fp>& xs, std::uint64_t N,
                 Visit&& visit) {
  const std::size_t k = c.size();
  std::function<void(std::size_t, std::uint64_t, Fp)> rec = [&](std::size_t j, std::uint64_t prod, Fp acc) {
    if (j == k) {
      visit(acc);
      return;
    }
    for (std::uint64_t n = 1; n <= N; ++n) {
      const std::uint64_t next = prod * n;
      rec(j + 1, next, f.add(acc, f.mul(c[j], xs[next])));
    }
  };
  rec(0, 1, Fp{0});
}

void require_nonzero(std::span<const Fp> c) {
  if (c.empty()) throw DomainError("coefficient tuple is empty");
  for (Fp v : c)
    if (v.value != 0) return;
  throw DomainError("coefficient tuple is the zero vector");
}

}  // namespace

double BoundReport::rhs_total() const {
  double total = 0.0;
  for (const auto& t : rhs_terms) total += t.value;
  return total;
}

BoundReport BoundReport::make(double lhs, std::vector<BoundTerm> terms,
                              std::vector<std::pair<std::string, double>> metadata) {
  BoundReport r;
  r.lhs = lhs;
  r.rhs_terms = std::move(terms);
  r.metadata = std::move(metadata);
  const double total = r.rhs_total();
  r.ratio = total > 0.0 ? lhs / total : 0.0;
  return r;
}

bool coprime_to_factorial(std::uint64_t N, std::uint64_t t) {
  for (std::uint64_t q = 2; q <= N; ++q)
    if (t % q == 0) return false;
  return true;
}

std::int64_t sum_S(const Curve& C, const Point& P, const Point& Q, std::uint64_t N) {
  const PrimeField& f = C.field();
  const auto& G = C.group();
  std::int64_t total = 0;
  Point nP = P, nQ = Q;
  for (std::uint64_t n = 1; n <= N; ++n) {
    total += f.chi(f.mul(nP.x_formal(), nQ.x_formal()));
    nP = G.add(nP, P);
    nQ = G.add(nQ, Q);
  }
  return total;
}

namespace {

// chi(x(nP)) for n = 1..N, one row per rational point.
std::vector<std::vector<std::int8_t>> chi_rows(const Curve& C, const std::vector<Point>& points, std::uint64_t N) {
  const PrimeField& f = C.field();
  std::vector<std::vector<std::int8_t>> rows(points.size(), std::vector<std::int8_t>(N));
  for (std::size_t i = 0; i < points.size(); ++i) {
    Point M = points[i];
    for (std::uint64_t n = 0; n < N; ++n) {
      rows[i][n] = static_cast<std::int8_t>(f.chi(M.x_formal()));
      M = C.group().add(M, points[i]);
    }
  }
  return rows;
}

}  // namespace

USum sum_U(const Curve& C, std::uint64_t N, const RunOptions& opts) {
  const auto points = enumerate_points(C);
  const std::uint64_t count = points.size();
  if (count * count > opts.work_budget / std::max<std::uint64_t>(N, 1))
    throw ResourceError("U(N) over " + std::to_string(count) + " points exceeds the work budget");
  const auto rows = chi_rows(C, points, N);

  auto partial = map_chunks<std::int64_t>(count, opts.jobs, [&](std::size_t b, std::size_t e) {
    std::int64_t acc = 0;
    for (std::size_t i = b; i < e; ++i) {
      for (std::size_t j = 0; j < count; ++j) {
        std::int64_t s = 0;
        for (std::uint64_t n = 0; n < N; ++n) s += rows[i][n] * rows[j][n];
        acc += s * s;
      }
    }
    return acc;
  });
  USum out;
  out.value = std::accumulate(partial.begin(), partial.end(), std::int64_t{0});
  const double p = static_cast<double>(C.p()), n = static_cast<double>(N);
  out.report = BoundReport::make(static_cast<double>(out.value),
                                 {{"N^6*p", std::pow(n, 6) * p}, {"N*p^2", n * p * p}},
                                 {{"p", p}, {"a", double(C.a().value)}, {"b", double(C.b().value)}, {"N", n}});
  return out;
}

USplit sum_U_rearranged(const Curve& C, std::uint64_t N, const RunOptions& opts) {
  const auto points = enumerate_points(C);
  if (points.size() * N * N > opts.work_budget) throw ResourceError("rearranged U(N) exceeds the work budget");
  const auto rows = chi_rows(C, points, N);
  USplit out;
  for (std::uint64_t m = 0; m < N; ++m) {
    for (std::uint64_t n = 0; n < N; ++n) {
      std::int64_t inner = 0;
      for (const auto& row : rows) inner += row[m] * row[n];
      (m == n ? out.diagonal : out.off_diagonal) += inner * inner;
    }
  }
  out.total = out.diagonal + out.off_diagonal;
  return out;
}

std::int64_t pair_character_sum(const Curve& C, std::uint64_t m, std::uint64_t n) {
  const PrimeField& f = C.field();
  std::int64_t total = 0;
  for (const Point& P : enumerate_points(C)) {
    const Point mP = C.group().mul(m, P), nP = C.group().mul(n, P);
    total += f.chi(f.mul(mP.x_formal(), nP.x_formal()));
  }
  return total;
}

std::int64_t rational_character_sum(const RationalFn& r) {
  std::int64_t total = 0;
  const std::uint64_t p = r.num.field().modulus();
  for (std::uint64_t u = 0; u < p; ++u) total += r.chi_at(Fp{u});
  return total;
}

Complex sum_T(const Curve& C, const SumSpecT& spec) { return sum_T(C, spec, AdditiveCharacter(C.field())); }

Complex sum_T(const Curve& C, const SumSpecT& spec, const AdditiveCharacter& psi) {
  require_nonzero(spec.c);
  const std::uint64_t span = checked_pow(spec.N, spec.c.size(), 1'000'000'000ULL, "T_k table");
  const auto xs = multiples_x(C, spec.R, span);
  Complex total{0.0, 0.0};
  walk_tuples(C.field(), spec.c, xs, spec.N, [&](Fp arg) { total += psi(arg); });
  return total;
}

VSum sum_V(const Curve& C, std::span<const Point> H, std::span<const Fp> c, std::uint64_t N,
           const RunOptions& opts) {
  require_nonzero(c);
  const std::uint64_t t = H.size();
  if (!coprime_to_factorial(N, t))
    throw PreconditionError("V_k needs gcd(N!, t) = 1; t = " + std::to_string(t) + ", N = " + std::to_string(N));
  const std::uint64_t span = checked_pow(N, c.size(), opts.work_budget, "V_k");
  if (span > opts.work_budget / std::max<std::uint64_t>(t, 1)) throw ResourceError("V_k exceeds the work budget");
  const AdditiveCharacter psi(C.field());

  auto partial = map_chunks<double>(t, opts.jobs, [&](std::size_t b, std::size_t e) {
    double acc = 0.0;
    for (std::size_t i = b; i < e; ++i) acc += std::norm(sum_T(C, SumSpecT{{c.begin(), c.end()}, H[i], N}, psi));
    return acc;
  });
  VSum out;
  for (double v : partial) out.value += v;
  const double k = static_cast<double>(c.size()), n = static_cast<double>(N);
  const double p = static_cast<double>(C.p());
  out.report = BoundReport::make(out.value,
                                 {{"k*N^(4k)*p^(1/2)", k * std::pow(n, 4 * k) * std::sqrt(p)},
                                  {"k*N^(2k-1)*t", k * std::pow(n, 2 * k - 1) * static_cast<double>(t)}},
                                 {{"p", p}, {"N", n}, {"k", k}, {"t", static_cast<double>(t)}});
  return out;
}

double sum_V_expanded(const Curve& C, std::span<const Point> H, std::span<const Fp> c, std::uint64_t N,
                      const RunOptions& opts) {
  require_nonzero(c);
  const std::uint64_t span = checked_pow(N, c.size(), opts.work_budget, "expanded V_k");
  if (span * span > opts.work_budget / std::max<std::size_t>(H.size(), 1))
    throw ResourceError("expanded V_k exceeds the work budget");
  const PrimeField& f = C.field();
  const AdditiveCharacter psi(f);

  auto partial = map_chunks<double>(H.size(), opts.jobs, [&](std::size_t b, std::size_t e) {
    double acc = 0.0;
    std::vector<Fp> args;
    for (std::size_t i = b; i < e; ++i) {
      const auto xs = multiples_x(C, H[i], span);
      args.clear();
      walk_tuples(f, c, xs, N, [&](Fp a) { args.push_back(a); });
      Complex inner{0.0, 0.0};
      for (Fp am : args)
        for (Fp an : args) inner += psi(f.sub(am, an));
      acc += inner.real();
    }
    return acc;
  });
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

SubgroupSum subgroup_sum(const Curve& C, std::span<const Point> H, std::span<const std::uint64_t> d,
                         std::span<const Fp> c) {
  if (d.empty() || d.size() != c.size()) throw PreconditionError("d and c must be non-empty and of equal length");
  if (d.front() < 1) throw PreconditionError("d_1 must be at least 1");
  for (std::size_t i = 1; i < d.size(); ++i)
    if (d[i] <= d[i - 1]) throw PreconditionError("d must be strictly increasing");
  if (c.back().value == 0) throw PreconditionError("c_s must be nonzero");
  const std::uint64_t t = H.size();
  for (std::uint64_t di : d)
    if (std::gcd(t, di) != 1) throw PreconditionError("gcd(t, d_1...d_s) != 1 for d_i = " + std::to_string(di));
  if (!is_ordinary(C)) throw PreconditionError("subgroup sum bound needs an ordinary curve");

  const PrimeField& f = C.field();
  const AdditiveCharacter psi(f);
  Complex total{0.0, 0.0};
  for (const Point& Q : H) {
    if (Q.infinity) continue;
    Fp arg{0};
    for (std::size_t i = 0; i < d.size(); ++i) arg = f.add(arg, f.mul(c[i], C.group().mul(d[i], Q).x_formal()));
    total += psi(arg);
  }
  const double s = static_cast<double>(d.size()), D = static_cast<double>(d.back());
  const double p = static_cast<double>(C.p());
  SubgroupSum out{total, {}};
  out.report = BoundReport::make(std::abs(total), {{"s*D^2*p^(1/2)", s * D * D * std::sqrt(p)}},
                                 {{"p", p}, {"s", s}, {"D", D}, {"t", static_cast<double>(t)}});
  return out;
}

std::uint64_t product_collision_bound(std::uint64_t N, std::size_t k) {
  std::uint64_t r = k;
  for (std::size_t i = 0; i + 1 < 2 * k; ++i) r *= N;
  return r;
}

std::uint64_t count_product_collisions(std::uint64_t N, std::size_t k, std::span<const Fp> c,
                                       std::uint64_t work_budget) {
  if (c.size() != k) throw DomainError("coefficient tuple length must equal k");
  require_nonzero(c);
  if (N < 2) return 0;
  checked_pow(N - 1, 2 * k, work_budget, "product collision count");

  // Prefix products of every tuple in [2, N]^k, in lexicographic order.
  std::vector<std::vector<std::uint64_t>> prefixes;
  std::vector<std::uint64_t> cur(k);
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t j, std::uint64_t prod) {
    if (j == k) {
      prefixes.push_back(cur);
      return;
    }
    for (std::uint64_t n = 2; n <= N; ++n) {
      cur[j] = prod * n;
      rec(j + 1, cur[j]);
    }
  };
  rec(0, 1);

  std::uint64_t count = 0;
  for (const auto& m : prefixes) {
    for (const auto& n : prefixes) {
      for (std::size_t j = 0; j < k; ++j) {
        if (c[j].value != 0 && m[j] == n[j]) {
          ++count;
          break;
        }
      }
    }
  }
  if (count > product_collision_bound(N, k))
    throw ConsistencyError("product collision count exceeds k N^(2k-1)");
  return count;
}

}  // namespace ecbits
