// ecbits: curve search, lemma checks, character-sum sweeps and bit extraction.
#include <algorithm>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ecbits/cli/experiment.hpp"
#include "ecbits/errors.hpp"

using namespace ecbits;
using namespace ecbits::cli;

namespace {

template <class T>
std::vector<T> parse_list(const std::string& text, const std::string& what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      if constexpr (std::is_unsigned_v<T>) {
        if (v < 0) throw std::invalid_argument(item);
      }
      out.push_back(static_cast<T>(v));
    } catch (const std::exception&) {
      throw ConfigError("bad " + what + " entry '" + item + "'");
    }
  }
  return out;
}

// INI reader that files top-level keys under the chosen subcommand, so a flat
// key=value file configures whichever subcommand runs.
class FlatConfig : public CLI::ConfigINI {
 public:
  explicit FlatConfig(std::string section) : section_(std::move(section)) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigINI::from_config(input);
    if (section_.empty()) return items;
    for (auto& item : items)
      if (item.parents.empty() && item.name != "++" && item.name != "--") item.parents = {section_};
    return items;
  }

 private:
  std::string section_;
};

struct RawOptions {
  std::int64_t a = 0, b = 0;
  std::string k = "1", ell = "1", big_n = "4", c = "1", d = "1", checks = "all";
  double slack_u = 0, slack_v = 0, slack_lemma5 = 0, slack_delta = 0, constant = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudorandom LSBs of elliptic-curve points: identities, character sums and bounds"};
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "flat key=value file; command-line flags override it");

  ExperimentConfig cfg;
  RawOptions raw;
  std::string report_in;
  std::uint64_t p_opt = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--p", p_opt, "prime modulus");
    sub->add_option("--a", raw.a, "curve coefficient a (needs --p)");
    sub->add_option("--b", raw.b, "curve coefficient b (needs --p)");
    sub->add_option("--p-min", cfg.p_min, "scan start")->capture_default_str();
    sub->add_option("--p-max", cfg.p_max, "scan end")->capture_default_str();
    sub->add_option("--curves", cfg.curves, "admissible curves to collect")->capture_default_str();
    sub->add_option("--n-max", cfg.n_max, "largest division-polynomial index")->capture_default_str();
    sub->add_option("--k", raw.k, "dimension list, e.g. 1,2")->capture_default_str();
    sub->add_option("--ell", raw.ell, "window width list")->capture_default_str();
    sub->add_option("--big-n", raw.big_n, "index range list N")->capture_default_str();
    sub->add_option("--t-policy", cfg.t_policy, "largest | prime")->capture_default_str();
    sub->add_option("--slack-u", raw.slack_u, "fail when U ratio exceeds this");
    sub->add_option("--slack-v", raw.slack_v, "fail when V ratio exceeds this");
    sub->add_option("--slack-lemma5", raw.slack_lemma5, "fail when the subgroup-sum ratio exceeds this");
    sub->add_option("--slack-delta", raw.slack_delta, "fail when the Delta ratio exceeds this");
    sub->add_option("--constant", raw.constant, "C in (C log p)^k for Delta (default 1)");
    sub->add_option("--out", cfg.out, "output prefix: writes <out>.json, <out>.csv (and <out>.bin)");
    sub->add_option("--jobs", cfg.jobs, "worker threads, 0 = all cores")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "seed for sampled runs")->capture_default_str();
    sub->add_option("--budget", cfg.work_budget, "cap on elementary terms")->capture_default_str();
  };

  auto* find = app.add_subcommand("find-curve", "first admissible curve of the scan");
  auto* verify = app.add_subcommand("verify", "division-polynomial identities and lemma checks");
  auto* sums = app.add_subcommand("sums", "U(N), V_k or subgroup sums with bound reports");
  auto* extract = app.add_subcommand("extract", "bit stream and deviation report");
  auto* report = app.add_subcommand("report", "re-run the records of a report and compare");
  for (auto* sub : {find, verify, sums, extract}) add_common(sub);
  verify->add_option("--checks", raw.checks, "comma list or 'all'")->capture_default_str();
  verify->add_option("--inject-fault", cfg.inject_fault)->group("");  // hidden
  sums->add_option("--sum", cfg.sum, "U | V | lemma5")->capture_default_str();
  sums->add_option("--c", raw.c, "coefficient tuple")->capture_default_str();
  sums->add_option("--d", raw.d, "multiplier tuple for lemma5")->capture_default_str();
  extract->add_option("--samples", cfg.samples, "sampled points of H, 0 = all of H")->capture_default_str();
  report->add_option("--in", report_in, "report JSON to re-run")->required();
  report->add_option("--jobs", cfg.jobs, "worker threads");
  report->add_option("--out", cfg.out, "output prefix");

  // --config belongs to the root app; hoist it so it may follow the subcommand.
  std::vector<std::string> args, hoisted;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      hoisted = {arg, argv[++i]};
    } else if (arg.rfind("--config=", 0) == 0) {
      hoisted = {arg};
    } else {
      args.push_back(arg);
    }
  }
  for (const auto& arg : args) {
    if (arg == "find-curve" || arg == "verify" || arg == "sums" || arg == "extract" || arg == "report") {
      app.config_formatter(std::make_shared<FlatConfig>(arg));
      break;
    }
  }
  args.insert(args.begin(), hoisted.begin(), hoisted.end());
  std::reverse(args.begin(), args.end());  // CLI11 consumes from the back

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    RunResult result;
    if (report->parsed()) {
      result = run_report(report_in, cfg.jobs);
    } else {
      CLI::App* sub = app.get_subcommands().front();
      if (p_opt != 0) cfg.p = p_opt;
      if (sub->count("--a")) cfg.a = raw.a;
      if (sub->count("--b")) cfg.b = raw.b;
      cfg.k = parse_list<std::size_t>(raw.k, "k");
      cfg.ell = parse_list<unsigned>(raw.ell, "ell");
      cfg.big_n = parse_list<std::uint64_t>(raw.big_n, "N");
      cfg.c = parse_list<std::int64_t>(raw.c, "c");
      cfg.d = parse_list<std::uint64_t>(raw.d, "d");
      if (raw.checks == "all") {
        cfg.checks = {"degrees", "xfg", "torsion", "division", "squarefree", "ftilde", "notsquare"};
      } else {
        std::stringstream ss(raw.checks);
        for (std::string item; std::getline(ss, item, ',');)
          if (!item.empty()) cfg.checks.push_back(item);
      }
      if (sub->count("--slack-u")) cfg.slack["U"] = raw.slack_u;
      if (sub->count("--slack-v")) cfg.slack["V"] = raw.slack_v;
      if (sub->count("--slack-lemma5")) cfg.slack["lemma5"] = raw.slack_lemma5;
      if (sub->count("--slack-delta")) cfg.slack["delta"] = raw.slack_delta;
      if (sub->count("--constant")) cfg.slack["C"] = raw.constant;
      cfg.validate();

      if (sub == find) result = run_find_curve(cfg);
      if (sub == verify) result = run_verify(cfg);
      if (sub == sums) result = run_sums(cfg);
      if (sub == extract) result = run_extract(cfg);
    }

    write_outputs(result, cfg.out);
    if (cfg.out.empty()) std::cout << result.records.dump(2) << "\n";
    else std::cout << "wrote " << result.records.size() << " records to " << cfg.out << ".json\n";
    for (const auto& f : result.failures) std::cerr << f << "\n";
    return result.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const AmbiguityError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ExhaustionError& e) {
    std::cerr << "search exhausted: " << e.what() << "\n";
    return kConfigError;
  } catch (const ResourceError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const std::exception& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerificationFailed;
  }
}
