#include "ecbits/cli/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "ecbits/charsum.hpp"
#include "ecbits/divpoly.hpp"
#include "ecbits/errors.hpp"
#include "ecbits/extractor.hpp"

namespace ecbits::cli {

namespace {

const std::vector<std::string> kAllChecks{"degrees",    "xfg",    "torsion",  "division",
                                          "squarefree", "ftilde", "notsquare"};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

json curve_inputs(const Curve& C) {
  return {{"p", C.p()}, {"a", C.a().value}, {"b", C.b().value}};
}

Curve curve_from(const json& inputs) {
  return Curve::make(inputs.at("p").get<std::uint64_t>(), inputs.at("a").get<std::int64_t>(),
                     inputs.at("b").get<std::int64_t>());
}

json terms_json(const std::vector<BoundTerm>& terms) {
  json out = json::array();
  for (const auto& t : terms) out.push_back({{"name", t.name}, {"value", t.value}});
  return out;
}

json make_record(const std::string& experiment, json inputs, json lhs, const std::vector<BoundTerm>& terms,
                 double ratio, bool exact, double wall_ms) {
  return {{"schema", 1},       {"experiment", experiment},   {"inputs", std::move(inputs)},
          {"lhs", std::move(lhs)}, {"bound_terms", terms_json(terms)}, {"ratio", ratio},
          {"exact", exact},    {"wall_ms", wall_ms}};
}

std::vector<Fp> coefficients(const Curve& C, const std::vector<std::int64_t>& raw) {
  std::vector<Fp> out;
  for (std::int64_t v : raw) out.push_back(C.field().from_int(v));
  return out;
}

// c as given, or a single entry repeated k times.
std::vector<std::int64_t> coefficients_for_k(const std::vector<std::int64_t>& c, std::size_t k) {
  if (c.size() == k) return c;
  if (c.size() == 1) return std::vector<std::int64_t>(k, c.front());
  throw ConfigError("coefficient tuple has " + std::to_string(c.size()) + " entries, expected 1 or " +
                    std::to_string(k));
}

bool unique_subgroup(std::uint64_t p, std::uint64_t n, std::uint64_t t) {
  // E(F_p) ~ Z/d1 x Z/d2 with d1 | p - 1; the order-t subgroup is unique
  // unless some q | t also divides d1, which needs q | p - 1 and q^2 | n.
  for (auto [q, e] : factorize(t)) {
    (void)e;
    if ((p - 1) % q == 0 && n % (q * q) == 0) return false;
  }
  return true;
}

std::uint64_t max_n(const ExperimentConfig& cfg) { return *std::max_element(cfg.big_n.begin(), cfg.big_n.end()); }

struct Resolved {
  Curve curve;
  std::uint64_t order;
  std::uint64_t t;
};

// The configured explicit curve with its policy subgroup, or the first
// admissible curve of the scan.
Resolved resolve_curve(const ExperimentConfig& cfg, std::uint64_t N) {
  if (cfg.p && cfg.a && cfg.b) {
    Curve C = Curve::make(*cfg.p, *cfg.a, *cfg.b);
    const std::uint64_t n = curve_order_via_character(C);
    const std::uint64_t t = subgroup_order_for(n, N, cfg.t_policy);
    if (t == 0) throw ConfigError("no subgroup order for policy " + cfg.t_policy + " with N = " + std::to_string(N));
    if (!unique_subgroup(C.p(), n, t)) throw ConfigError("subgroup of order " + std::to_string(t) + " is not unique");
    return {C, n, t};
  }
  ExperimentConfig scan = cfg;
  scan.big_n = {N};
  FoundCurve f = find_curve(scan);
  return {f.curve, f.order, f.t};
}

// H itself, or `samples` points (#E/t) * P for uniformly random affine P.
std::vector<Point> subgroup_points(const Curve& C, std::uint64_t order, std::uint64_t t, std::uint64_t samples,
                                   std::uint64_t seed) {
  if (samples == 0) return subgroup_of_order(C, t);
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  out.reserve(samples);
  const std::uint64_t cofactor = order / t;
  for (std::uint64_t i = 0; i < samples; ++i) out.push_back(C.group().mul(cofactor, random_point(C, rng)));
  return out;
}

CheckOutcome run_check(DivPolyCache& cache, const std::string& check, std::size_t n, std::size_t m) {
  if (check == "degrees") return verify_degrees(cache, n);
  if (check == "xfg") return verify_xfg(cache, n);
  if (check == "torsion") return verify_torsion_roots(cache, n);
  if (check == "division") return verify_division_point_roots(cache, n);
  if (check == "squarefree") return verify_squarefree_ftilde(cache, n);
  if (check == "ftilde") return verify_ftilde_structure(cache, n);
  if (check == "notsquare") return verify_not_square(cache, m, n);
  throw ConfigError("unknown check " + check);
}

void inject(DivPolyCache& cache, const std::string& fault) {
  if (fault.empty()) return;
  if (fault != "psi3") throw ConfigError("unknown fault " + fault);
  ReducedDivPoly bad = cache.psi(3);
  bad.w = bad.w + DensePoly::constant(cache.curve().field(), Fp{1});
  cache.override_base(3, bad);
}

json verify_record(DivPolyCache& cache, const std::string& check, std::size_t n, std::size_t m,
                   const std::string& fault) {
  const auto start = Clock::now();
  const CheckOutcome outcome = run_check(cache, check, n, m);
  json inputs = curve_inputs(cache.curve());
  inputs["n"] = n;
  if (check == "notsquare") inputs["m"] = m;
  if (!fault.empty()) inputs["fault"] = fault;
  json rec = make_record("verify:" + check, inputs, outcome.passed ? 1 : 0, {}, 0.0, true, elapsed_ms(start));
  rec["passed"] = outcome.passed;
  if (!outcome.passed) rec["detail"] = outcome.detail;
  return rec;
}

json u_record(const Curve& C, std::uint64_t N, const RunOptions& opts) {
  const auto start = Clock::now();
  USum u = sum_U(C, N, opts);
  json inputs = curve_inputs(C);
  inputs["N"] = N;
  return make_record("U", inputs, u.value, u.report.rhs_terms, u.report.ratio, true, elapsed_ms(start));
}

json v_record(const Curve& C, std::uint64_t order, std::uint64_t t, std::size_t k,
              const std::vector<std::int64_t>& c_raw, std::uint64_t N, const RunOptions& opts) {
  const auto start = Clock::now();
  const auto H = subgroup_points(C, order, t, 0, 0);
  const auto c = coefficients(C, c_raw);
  VSum v = sum_V(C, H, c, N, opts);
  json inputs = curve_inputs(C);
  inputs.update({{"order", order}, {"t", t}, {"k", k}, {"c", c_raw}, {"N", N}});
  json rec = make_record("V", inputs, v.value, v.report.rhs_terms, v.report.ratio, false, elapsed_ms(start));
  rec["rounding_budget"] = 2e-12 * static_cast<double>(t) * std::pow(static_cast<double>(N), 2.0 * k);
  return rec;
}

json lemma5_record(const Curve& C, std::uint64_t order, std::uint64_t t, const std::vector<std::uint64_t>& d,
                   const std::vector<std::int64_t>& c_raw) {
  const auto start = Clock::now();
  const auto H = subgroup_points(C, order, t, 0, 0);
  const auto c = coefficients(C, c_raw);
  SubgroupSum s = subgroup_sum(C, H, d, c);
  json inputs = curve_inputs(C);
  inputs.update({{"order", order}, {"t", t}, {"d", d}, {"c", c_raw}});
  json rec = make_record("lemma5", inputs, std::abs(s.value), s.report.rhs_terms, s.report.ratio, false,
                         elapsed_ms(start));
  rec["value"] = {s.value.real(), s.value.imag()};
  rec["rounding_budget"] = 1e-12 * static_cast<double>(t);
  return rec;
}

json delta_record(const Curve& C, std::uint64_t order, std::uint64_t t, std::size_t k, unsigned ell,
                  std::uint64_t N, std::uint64_t samples, std::uint64_t seed, double constant,
                  const RunOptions& opts) {
  const auto start = Clock::now();
  const auto H = subgroup_points(C, order, t, samples, seed);
  json inputs = curve_inputs(C);
  inputs.update({{"order", order}, {"t", t}, {"k", k}, {"ell", ell}, {"N", N}, {"samples", samples},
                 {"seed", seed}, {"C", constant}});
  json rec;
  if (samples == 0) {
    DeviationReport d = delta(C, H, k, ell, N, constant, opts);
    rec = make_record("delta", inputs, d.total.value(), d.bound_terms, d.ratio, true, elapsed_ms(start));
    rec["lhs_exact"] = {{"numerator", d.total.numerator}, {"denominator", d.total.denominator}};
    rec["without_identity"] = d.total_without_identity.value();
    rec["expected"] = d.expected;
  } else {
    // Sampled estimate of Delta: t times the mean per-point deviation.
    if (!coprime_to_factorial(N, t)) throw PreconditionError("hypothesis gcd(N!, t) = 1 fails");
    const auto parts = map_chunks<std::uint64_t>(H.size(), opts.jobs, [&](std::size_t b, std::size_t e) {
      std::uint64_t s = 0;
      for (std::size_t i = b; i < e; ++i) s += max_deviation(C, H[i], k, ell, N).numerator;
      return s;
    });
    const std::uint64_t numerator = std::accumulate(parts.begin(), parts.end(), std::uint64_t{0});
    const double denom = std::ldexp(1.0, static_cast<int>(k * ell));
    const double mean = static_cast<double>(numerator) / denom / static_cast<double>(samples);
    const double estimate = mean * static_cast<double>(t);
    const auto terms = delta_bound_terms(C.p(), t, k, N, constant);
    const double rhs = terms[0].value + terms[1].value;
    rec = make_record("delta", inputs, estimate, terms, estimate / rhs, true, elapsed_ms(start));
    rec["lhs_exact"] = {{"numerator", numerator}, {"denominator", static_cast<std::uint64_t>(denom)}};
    rec["mean_normalized"] = mean / std::pow(static_cast<double>(N), static_cast<double>(k));
    rec["expected"] = std::ldexp(std::pow(static_cast<double>(N), static_cast<double>(k)), -static_cast<int>(k * ell));
  }
  return rec;
}

json bitstream_record(const Curve& C, const Point& R, std::size_t k, unsigned ell, std::uint64_t N,
                      BitSequence* bits_out) {
  const auto start = Clock::now();
  BitSequence bits = bitstream(C, R, k, ell, N);
  const auto ones = static_cast<std::uint64_t>(std::count(bits.begin(), bits.end(), true));
  json inputs = curve_inputs(C);
  inputs.update({{"Rx", R.x.value}, {"Ry", R.y.value}, {"k", k}, {"ell", ell}, {"N", N}});
  json rec = make_record("bitstream", inputs, ones, {}, 0.0, true, elapsed_ms(start));
  rec["length"] = bits.size();
  std::string prefix;
  for (std::size_t i = 0; i < std::min<std::size_t>(bits.size(), 64); ++i) prefix += bits[i] ? '1' : '0';
  rec["head"] = prefix;
  if (bits_out) *bits_out = std::move(bits);
  return rec;
}

void apply_slack(json& rec, const ExperimentConfig& cfg, const std::string& key, RunResult& result) {
  auto it = cfg.slack.find(key);
  if (it == cfg.slack.end()) return;
  const bool within = rec.at("ratio").get<double>() <= it->second;
  rec["slack"] = it->second;
  rec["within_slack"] = within;
  if (!within) {
    result.exit_code = kVerificationFailed;
    result.failures.push_back(key + " ratio " + std::to_string(rec.at("ratio").get<double>()) + " exceeds slack " +
                              std::to_string(it->second) + " at " + rec.at("inputs").dump());
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (p && (!is_prime(*p) || *p <= 3)) throw ConfigError("p must be a prime > 3");
  if ((a.has_value() || b.has_value()) && !p) throw ConfigError("a and b need an explicit p");
  if (p_min > p_max) throw ConfigError("empty prime range");
  if (big_n.empty() || k.empty() || ell.empty()) throw ConfigError("N, k and ell ranges must be non-empty");
  for (auto v : big_n)
    if (v == 0) throw ConfigError("N must be positive");
  for (auto v : k)
    if (v == 0) throw ConfigError("k must be positive");
  for (auto v : ell)
    if (v == 0) throw ConfigError("ell must be positive");
  if (t_policy != "largest" && t_policy != "prime") throw ConfigError("t-policy must be largest or prime");
  if (n_max == 0) throw ConfigError("n-max must be positive");
  if (curves == 0) throw ConfigError("curves must be positive");
  if (work_budget == 0) throw ConfigError("work budget must be positive");
  for (const auto& [name, value] : slack)
    if (!(value > 0.0)) throw ConfigError("slack for " + name + " must be positive");
}

json ExperimentConfig::to_json() const {
  json j{{"p_min", p_min}, {"p_max", p_max}, {"curves", curves}, {"n_max", n_max}, {"k", k},
         {"ell", ell},     {"N", big_n},     {"t_policy", t_policy}, {"seed", seed}, {"samples", samples}};
  if (p) j["p"] = *p;
  if (a) j["a"] = *a;
  if (b) j["b"] = *b;
  return j;
}

std::uint64_t subgroup_order_for(std::uint64_t n, std::uint64_t N, const std::string& policy) {
  const auto factors = factorize(n);
  if (policy == "prime") {
    for (auto it = factors.rbegin(); it != factors.rend(); ++it)
      if (it->first > N) return it->first;
    return 0;
  }
  std::uint64_t t = 1;
  for (auto [q, e] : factors)
    if (q > N)
      for (unsigned i = 0; i < e; ++i) t *= q;
  return t;
}

std::vector<FoundCurve> find_curves(const ExperimentConfig& cfg, std::size_t count) {
  const std::uint64_t N = max_n(cfg);
  std::uint64_t lo = cfg.p.value_or(cfg.p_min), hi = cfg.p.value_or(cfg.p_max);
  std::map<std::string, std::uint64_t> rejected;
  std::vector<FoundCurve> found;
  for (std::uint64_t p = std::max<std::uint64_t>(lo, 5); p <= hi && found.size() < count; ++p) {
    if (!is_prime(p)) continue;
    PrimeField F(p);
    const std::int64_t a_lo = cfg.a.value_or(1), a_hi = cfg.a.value_or(static_cast<std::int64_t>(p) - 1);
    for (std::int64_t a = a_lo; a <= a_hi && found.size() < count; ++a) {
      const std::int64_t b_lo = cfg.b.value_or(1), b_hi = cfg.b.value_or(static_cast<std::int64_t>(p) - 1);
      for (std::int64_t b = b_lo; b <= b_hi && found.size() < count; ++b) {
        Fp fa = F.from_int(a), fb = F.from_int(b);
        if (fb.value == 0) {
          ++rejected["b = 0"];
          continue;
        }
        Fp disc = F.add(F.mul(F.from_int(4), F.pow(fa, 3)), F.mul(F.from_int(27), F.mul(fb, fb)));
        if (disc.value == 0) {
          ++rejected["singular"];
          continue;
        }
        Curve C(F, fa, fb);
        const std::uint64_t n = curve_order_via_character(C);
        if (!is_ordinary(C, n)) {
          ++rejected["supersingular"];
          continue;
        }
        const std::uint64_t t = subgroup_order_for(n, N, cfg.t_policy);
        if (t == 0 || static_cast<double>(t) < std::sqrt(static_cast<double>(p))) {
          ++rejected["no subgroup with gcd(N!, t) = 1 and t >= sqrt(p)"];
          continue;
        }
        if (!unique_subgroup(p, n, t)) {
          ++rejected["subgroup not unique"];
          continue;
        }
        FoundCurve fc{C, n, t, n / t, std::nullopt};
        if (n <= FoundCurve::kStructureCap) fc.structure = group_structure(C);
        found.push_back(std::move(fc));
      }
    }
  }
  if (found.size() < count) {
    std::ostringstream msg;
    msg << "found " << found.size() << " of " << count << " admissible curves in p in [" << lo << ", " << hi
        << "], N = " << N << "; rejected:";
    if (rejected.empty()) msg << " (no candidates)";
    for (const auto& [why, n] : rejected) msg << " " << why << " x" << n << ";";
    throw ExhaustionError(msg.str());
  }
  return found;
}

FoundCurve find_curve(const ExperimentConfig& cfg) { return find_curves(cfg, 1).front(); }

RunResult run_find_curve(const ExperimentConfig& cfg) {
  const auto start = Clock::now();
  FoundCurve f = find_curve(cfg);
  json inputs = cfg.to_json();
  json rec = make_record("find-curve", inputs, f.t, {}, 0.0, true, elapsed_ms(start));
  rec["curve"] = curve_inputs(f.curve);
  rec["order"] = f.order;
  rec["t"] = f.t;
  rec["cofactor"] = f.cofactor;
  if (f.structure) rec["structure"] = {{"d1", f.structure->d1}, {"d2", f.structure->d2}};
  RunResult result;
  result.records.push_back(rec);
  return result;
}

RunResult run_verify(const ExperimentConfig& cfg) {
  if (cfg.checks.empty()) throw ConfigError("empty check list");
  for (const auto& c : cfg.checks)
    if (std::find(kAllChecks.begin(), kAllChecks.end(), c) == kAllChecks.end()) throw ConfigError("unknown check " + c);

  std::vector<Curve> curves;
  if (cfg.p && cfg.a && cfg.b) {
    curves.push_back(Curve::make(*cfg.p, *cfg.a, *cfg.b));
  } else {
    for (auto& f : find_curves(cfg, cfg.curves)) curves.push_back(f.curve);
  }

  RunResult result;
  for (const Curve& C : curves) {
    DivPolyCache cache(C);
    inject(cache, cfg.inject_fault);
    auto add = [&](const std::string& check, std::size_t n, std::size_t m) {
      json rec = verify_record(cache, check, n, m, cfg.inject_fault);
      if (!rec.at("passed").get<bool>()) {
        result.exit_code = kVerificationFailed;
        const std::string where = "verify_" + check + " failed at (p,a,b,n" +
                                  std::string(check == "notsquare" ? ",m" : "") + ") = (" + std::to_string(C.p()) +
                                  "," + std::to_string(C.a().value) + "," + std::to_string(C.b().value) + "," +
                                  std::to_string(n) + (check == "notsquare" ? "," + std::to_string(m) : "") + ")";
        result.failures.push_back(where);
      }
      result.records.push_back(std::move(rec));
    };
    for (const auto& check : cfg.checks) {
      if (check == "squarefree") {
        add(check, cfg.n_max, 0);
      } else if (check == "notsquare") {
        const std::size_t top = std::min<std::size_t>(cfg.n_max, 8);
        for (std::size_t n = 2; n <= top; ++n)
          for (std::size_t m = 1; m < n; ++m) add(check, n, m);
      } else if (check == "ftilde") {
        for (std::size_t n = 1; n <= cfg.n_max; ++n) add(check, n, 0);
        if (C.p() <= 13) {
          add(check, C.p(), 0);
          add(check, 2 * C.p(), 0);
        }
      } else {
        const std::size_t first = check == "torsion" ? 2 : 1;
        const std::size_t top = check == "division" ? std::min<std::size_t>(cfg.n_max, 8) : cfg.n_max;
        for (std::size_t n = first; n <= top; ++n) add(check, n, 0);
      }
    }
  }
  return result;
}

RunResult run_sums(const ExperimentConfig& cfg) {
  const RunOptions opts{cfg.jobs, cfg.work_budget};
  if (cfg.sum != "U" && cfg.sum != "V" && cfg.sum != "lemma5") throw ConfigError("sum must be U, V or lemma5");
  if (cfg.sum != "U") {
    if (cfg.c.empty()) throw ConfigError("empty coefficient tuple");
    if (std::all_of(cfg.c.begin(), cfg.c.end(), [](std::int64_t v) { return v == 0; }))
      throw ConfigError("coefficient tuple is the zero vector");
  }
  if (cfg.sum == "V")
    for (std::size_t k : cfg.k) (void)coefficients_for_k(cfg.c, k);

  RunResult result;
  try {
    if (cfg.sum == "U") {
      const Resolved r = resolve_curve(cfg, max_n(cfg));
      for (std::uint64_t N : cfg.big_n) {
        result.records.push_back(u_record(r.curve, N, opts));
        apply_slack(result.records.back(), cfg, "U", result);
      }
    } else if (cfg.sum == "V") {
      const Resolved r = resolve_curve(cfg, max_n(cfg));
      for (std::size_t k : cfg.k)
        for (std::uint64_t N : cfg.big_n) {
          result.records.push_back(v_record(r.curve, r.order, r.t, k, coefficients_for_k(cfg.c, k), N, opts));
          apply_slack(result.records.back(), cfg, "V", result);
        }
    } else {
      const Resolved r = resolve_curve(cfg, max_n(cfg));
      result.records.push_back(lemma5_record(r.curve, r.order, r.t, cfg.d, cfg.c));
      apply_slack(result.records.back(), cfg, "lemma5", result);
    }
  } catch (const ResourceError& e) {
    result.incomplete = true;
    result.exit_code = kBudgetExceeded;
    result.failures.push_back(std::string("budget exceeded: ") + e.what());
  }
  return result;
}

RunResult run_extract(const ExperimentConfig& cfg) {
  if (cfg.out.empty()) throw ConfigError("extract needs --out");
  const RunOptions opts{cfg.jobs, cfg.work_budget};
  const std::size_t k = cfg.k.front();
  const unsigned ell = cfg.ell.front();
  const std::uint64_t N = cfg.big_n.front();
  const Resolved r = resolve_curve(cfg, N);
  if (r.curve.p() <= k) throw PreconditionError("hypothesis p > k fails");
  if ((std::uint64_t{1} << ell) >= r.curve.p()) throw ConfigError("2^ell must be below p");

  RunResult result;
  const double constant = cfg.slack.count("C") ? cfg.slack.at("C") : 1.0;
  result.records.push_back(delta_record(r.curve, r.order, r.t, k, ell, N, cfg.samples, cfg.seed, constant, opts));
  apply_slack(result.records.back(), cfg, "delta", result);

  // Stream from the first non-identity point of H (or of the sample).
  Point R = Point::at_infinity();
  if (cfg.samples == 0) {
    for (const Point& P : subgroup_of_order(r.curve, r.t))
      if (!P.infinity) {
        R = P;
        break;
      }
  } else {
    std::mt19937_64 rng(cfg.seed ^ 0x5eedULL);
    while (R.infinity) R = r.curve.group().mul(r.order / r.t, random_point(r.curve, rng));
  }
  BitSequence bits;
  result.records.push_back(bitstream_record(r.curve, R, k, ell, N, &bits));
  const auto bytes = pack_bits(bits);
  std::ofstream bin(cfg.out + ".bin", std::ios::binary);
  if (!bin) throw ConfigError("cannot write " + cfg.out + ".bin");
  bin.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  return result;
}

json rerun_record(const json& record, unsigned jobs) {
  const std::string experiment = record.at("experiment").get<std::string>();
  const json& in = record.at("inputs");
  const RunOptions opts{jobs, 4'000'000'000ULL};
  if (experiment.rfind("verify:", 0) == 0) {
    Curve C = curve_from(in);
    DivPolyCache cache(C);
    const std::string fault = in.value("fault", "");
    inject(cache, fault);
    return verify_record(cache, experiment.substr(7), in.at("n").get<std::size_t>(), in.value("m", std::size_t{0}),
                         fault);
  }
  if (experiment == "U") return u_record(curve_from(in), in.at("N").get<std::uint64_t>(), opts);
  if (experiment == "V")
    return v_record(curve_from(in), in.at("order"), in.at("t"), in.at("k"), in.at("c").get<std::vector<std::int64_t>>(),
                    in.at("N"), opts);
  if (experiment == "lemma5")
    return lemma5_record(curve_from(in), in.at("order"), in.at("t"), in.at("d").get<std::vector<std::uint64_t>>(),
                         in.at("c").get<std::vector<std::int64_t>>());
  if (experiment == "delta")
    return delta_record(curve_from(in), in.at("order"), in.at("t"), in.at("k"), in.at("ell"), in.at("N"),
                        in.at("samples"), in.at("seed"), in.at("C"), opts);
  if (experiment == "bitstream") {
    Curve C = curve_from(in);
    Point R = Point::affine(Fp{in.at("Rx").get<std::uint64_t>()}, Fp{in.at("Ry").get<std::uint64_t>()});
    return bitstream_record(C, R, in.at("k"), in.at("ell"), in.at("N"), nullptr);
  }
  if (experiment == "find-curve") {
    ExperimentConfig cfg;
    if (in.contains("p")) cfg.p = in.at("p").get<std::uint64_t>();
    if (in.contains("a")) cfg.a = in.at("a").get<std::int64_t>();
    if (in.contains("b")) cfg.b = in.at("b").get<std::int64_t>();
    cfg.p_min = in.at("p_min");
    cfg.p_max = in.at("p_max");
    cfg.big_n = in.at("N").get<std::vector<std::uint64_t>>();
    cfg.t_policy = in.at("t_policy");
    return run_find_curve(cfg).records.front();
  }
  throw ConfigError("unknown experiment " + experiment);
}

bool record_matches(const json& stored, const json& fresh) {
  if (stored.at("exact").get<bool>()) {
    if (stored.at("lhs") != fresh.at("lhs")) return false;
    if (stored.contains("lhs_exact") && stored.at("lhs_exact") != fresh.at("lhs_exact")) return false;
    if (stored.contains("curve") && stored.at("curve") != fresh.at("curve")) return false;
    return true;
  }
  const double budget = stored.value("rounding_budget", 0.0);
  return std::fabs(stored.at("lhs").get<double>() - fresh.at("lhs").get<double>()) <= budget;
}

RunResult run_report(const std::string& path, unsigned jobs) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
  json records = doc.is_array() ? doc : json::array({doc});
  RunResult result;
  for (const json& stored : records) {
    if (stored.value("schema", 0) != 1) throw ConfigError("unsupported report schema");
    json fresh;
    try {
      fresh = rerun_record(stored, jobs);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("record is missing inputs: ") + e.what());
    }
    const bool same = record_matches(stored, fresh);
    json rec{{"schema", 1},
             {"experiment", "report"},
             {"of", stored.at("experiment")},
             {"inputs", stored.at("inputs")},
             {"stored_lhs", stored.at("lhs")},
             {"lhs", fresh.at("lhs")},
             {"reproduced", same},
             {"exact", stored.at("exact")},
             {"wall_ms", fresh.at("wall_ms")}};
    if (!same) {
      result.exit_code = kVerificationFailed;
      result.failures.push_back(stored.at("experiment").get<std::string>() + " at " + stored.at("inputs").dump() +
                                " did not reproduce");
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

std::string records_to_csv(const json& records) {
  std::ostringstream out;
  out << "schema,experiment,inputs,lhs,ratio,exact,wall_ms\n";
  for (const json& r : records) {
    std::string inputs = r.at("inputs").dump();
    std::string quoted;
    for (char ch : inputs) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    out << r.value("schema", 1) << "," << r.at("experiment").get<std::string>() << ",\"" << quoted << "\","
        << r.at("lhs").dump() << "," << r.value("ratio", 0.0) << "," << (r.value("exact", true) ? "true" : "false")
        << "," << r.value("wall_ms", 0.0) << "\n";
  }
  return out.str();
}

void write_outputs(const RunResult& result, const std::string& out) {
  if (out.empty()) return;
  json doc = result.records;
  if (result.incomplete)
    for (auto& r : doc) r["incomplete"] = true;
  std::ofstream js(out + ".json");
  std::ofstream csv(out + ".csv");
  if (!js || !csv) throw ConfigError("cannot write outputs under " + out);
  js << doc.dump(2) << "\n";
  csv << records_to_csv(result.records);
}

}  // namespace ecbits::cli
