#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ecbits/curve.hpp"

namespace ecbits::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kConfigError = 2, kBudgetExceeded = 3 };

// Bad or inconsistent configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Search found nothing admissible; the message lists per-predicate
// rejection counts.
class ExhaustionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  // Curve: explicit p (and optionally a, b), otherwise the scan range.
  std::optional<std::uint64_t> p;
  std::optional<std::int64_t> a;
  std::optional<std::int64_t> b;
  std::uint64_t p_min = 7;
  std::uint64_t p_max = 1000;
  std::size_t curves = 3;  // admissible curves collected by verify

  std::uint64_t n_max = 10;
  std::vector<std::size_t> k{1};
  std::vector<unsigned> ell{1};
  std::vector<std::uint64_t> big_n{4};
  std::string t_policy = "largest";  // "largest" or "prime"
  std::map<std::string, double> slack;

  std::vector<std::string> checks;
  std::string sum = "U";  // U, V or lemma5
  std::vector<std::int64_t> c{1};
  std::vector<std::uint64_t> d{1};

  std::uint64_t samples = 0;  // 0 = whole subgroup
  std::string out;
  unsigned jobs = 0;
  std::uint64_t seed = 1;
  std::uint64_t work_budget = 4'000'000'000ULL;
  std::string inject_fault;  // "psi3" perturbs one coefficient of psi_3

  void validate() const;
  json to_json() const;
};

struct FoundCurve {
  Curve curve;
  std::uint64_t order = 0;
  std::uint64_t t = 0;         // subgroup order
  std::uint64_t cofactor = 0;  // order / t
  std::optional<GroupStructure> structure;  // filled when order <= kStructureCap

  static constexpr std::uint64_t kStructureCap = 200'000;
};

// Subgroup order picked by the policy: "largest" keeps the part of n free of
// primes <= N, "prime" the largest prime factor of n above N. 0 if none.
std::uint64_t subgroup_order_for(std::uint64_t n, std::uint64_t N, const std::string& policy);

// Deterministic scan over ascending p, then a = 1.., then b = 1.. for curves
// that are ordinary, have b != 0 and a unique subgroup of order t >= sqrt(p)
// with gcd(N!, t) = 1. N is the largest configured big_n.
std::vector<FoundCurve> find_curves(const ExperimentConfig& cfg, std::size_t count);
FoundCurve find_curve(const ExperimentConfig& cfg);

// Accumulated output of a subcommand.
struct RunResult {
  int exit_code = kOk;
  json records = json::array();
  std::vector<std::string> failures;
  bool incomplete = false;
};

RunResult run_find_curve(const ExperimentConfig& cfg);
RunResult run_verify(const ExperimentConfig& cfg);
RunResult run_sums(const ExperimentConfig& cfg);
RunResult run_extract(const ExperimentConfig& cfg);

// Recomputes one record from its inputs.
json rerun_record(const json& record, unsigned jobs);
// Compares a stored record with its recomputation: exact records must match
// bit for bit, complex ones within the stored rounding budget.
bool record_matches(const json& stored, const json& fresh);
RunResult run_report(const std::string& path, unsigned jobs);

// One CSV row per record with a schema column.
std::string records_to_csv(const json& records);

void write_outputs(const RunResult& result, const std::string& out);

}  // namespace ecbits::cli
