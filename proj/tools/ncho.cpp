#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ncho/errors.hpp"
#include "ncho/run_record.hpp"
#include "ncho/verify.hpp"
#include "ncho/zeta_values.hpp"

namespace {

using namespace ncho;

enum ExitCode { kOk = 0, kDomain = 1, kVerification = 2, kNumeric = 3 };

struct QuadFlags {
  std::optional<std::int64_t> samples;
  int batches = 16;
  std::uint64_t seed = QuadConfig{}.seed;
  std::string transform = "corner";
  int corner_power = 2;
  bool no_control_variate = false;
  int threads = 1;

  void add_to(CLI::App* app) {
    app->add_option("--samples", samples, "Sobol points per batch (default 2^(12+n))");
    app->add_option("--batches", batches, "randomized batches")->capture_default_str();
    app->add_option("--seed", seed, "RNG seed")->capture_default_str();
    app->add_option("--transform", transform, "corner transform")
        ->check(CLI::IsMember({"none", "corner"}))
        ->capture_default_str();
    app->add_option("--corner-power", corner_power, "p in u = 1 - (1 - v)^p")->capture_default_str();
    app->add_flag("--no-control-variate", no_control_variate, "disable the control variate");
    app->add_option("--threads", threads, "worker threads, 0 = all cores")->capture_default_str();
  }

  // samples == 0 marks "per-order default" in records that span several orders.
  QuadConfig base() const {
    QuadConfig cfg;
    cfg.samples = samples.value_or(0);
    cfg.batches = batches;
    cfg.seed = seed;
    cfg.transform = transform_from_string(transform);
    cfg.corner_power = corner_power;
    cfg.use_control_variate = !no_control_variate;
    cfg.threads = threads;
    return cfg;
  }
};

QuadConfig config_for(const QuadConfig& base, int n) {
  QuadConfig cfg = base;
  if (cfg.samples == 0) cfg.samples = default_config(n).samples;
  return cfg;
}

std::string value_output(const SpecialValueResult& r, const std::string& format) {
  if (format == "csv") return table_csv({r}, r.n);
  return value_record(r).dump();
}

std::string table_output(int n_max, double alpha, double beta, const QuadConfig& base,
                         const std::string& format) {
  if (n_max < 2 || n_max > 8) throw DomainError("table: --n-max must lie in [2, 8]");
  std::vector<SpecialValueResult> rows;
  for (int n = 2; n <= n_max; ++n) rows.push_back(zeta_Q(n, alpha, beta, config_for(base, n)));
  if (format == "csv") return table_csv(rows, n_max);
  return table_record(rows, n_max, base).dump();
}

void print_checks(const std::vector<CheckResult>& checks) {
  for (const CheckResult& c : checks) {
    std::fprintf(stderr, "%s  %s  error=%.3e tolerance=%.3e margin=%.3e%s%s\n", c.passed ? "ok  " : "FAIL",
                 c.name.c_str(), c.error, c.tolerance, c.margin(), c.detail.empty() ? "" : "  ",
                 c.detail.c_str());
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Special values of the spectral zeta function of the non-commutative harmonic oscillator"};
  app.require_subcommand(1);

  std::string format = "json";
  double alpha = 3.0;
  double beta = 2.0;

  int n = 2;
  QuadFlags value_flags;
  auto* value = app.add_subcommand("value", "zeta_Q(n) with its R-decomposition");
  value->add_option("-n,--order", n, "order n >= 2")->required();
  value->add_option("--alpha", alpha, "alpha")->capture_default_str();
  value->add_option("--beta", beta, "beta")->capture_default_str();
  value->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
  value_flags.add_to(value);

  std::string suite;
  SuiteOptions sopts;
  QuadFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("-n,--order", sopts.n, "order for the oracle suite")->capture_default_str();
  verify->add_option("--alpha", sopts.alpha, "alpha")->capture_default_str();
  verify->add_option("--beta", sopts.beta, "beta")->capture_default_str();
  verify->add_option("-q", sopts.q, "q for the closedform suite")->capture_default_str();
  verify->add_option("--oracle-N", sopts.oracle_N, "Hermite modes per component")->capture_default_str();
  verify->add_option("--instances", sopts.instances, "random instances (0 = suite default)");
  verify->add_option("--format", format, "output format")->check(CLI::IsMember({"json"}));
  verify_flags.add_to(verify);

  int n_max = 4;
  QuadFlags table_flags;
  auto* table = app.add_subcommand("table", "zeta_Q(n) for n = 2..n_max");
  table->add_option("--n-max", n_max, "largest order, at most 8")->capture_default_str();
  table->add_option("--alpha", alpha, "alpha")->capture_default_str();
  table->add_option("--beta", beta, "beta")->capture_default_str();
  table->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
  table_flags.add_to(table);

  std::string record_path;
  auto* replay = app.add_subcommand("replay", "rerun the value or table command stored in a JSON record");
  replay->add_option("record", record_path, "record file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kDomain;
  }

  try {
    if (value->parsed()) {
      const SpecialValueResult r = zeta_Q(n, alpha, beta, config_for(value_flags.base(), n));
      std::cout << value_output(r, format);
      return kOk;
    }
    if (table->parsed()) {
      std::cout << table_output(n_max, alpha, beta, table_flags.base(), format);
      return kOk;
    }
    if (verify->parsed()) {
      sopts.seed = verify_flags.seed;
      sopts.quad = verify_flags.base();
      sopts.quad_is_default = !verify_flags.samples && verify_flags.batches == 16 &&
                              verify_flags.transform == "corner" && verify_flags.corner_power == 2 &&
                              !verify_flags.no_control_variate && verify_flags.seed == QuadConfig{}.seed;
      if (!sopts.quad_is_default && sopts.quad.samples == 0) sopts.quad.samples = QuadConfig{}.samples;
      const auto checks = run_suite(suite, sopts);
      print_checks(checks);
      std::cout << verify_record(suite, checks, sopts).dump();
      for (const CheckResult& c : checks) {
        if (!c.passed) {
          std::fprintf(stderr, "verification failed: %s\n", c.name.c_str());
          return kVerification;
        }
      }
      return kOk;
    }
    if (replay->parsed()) {
      std::ifstream in(record_path);
      std::stringstream buffer;
      buffer << in.rdbuf();
      const RecordInputs rec = parse_record(buffer.str());
      if (rec.command == "value") {
        if (!rec.n) throw DomainError("replay: value record has no n");
        std::cout << value_output(zeta_Q(*rec.n, rec.alpha, rec.beta, rec.config), "json");
        return kOk;
      }
      if (rec.command == "table") {
        if (!rec.n_max) throw DomainError("replay: table record has no n_max");
        std::cout << table_output(*rec.n_max, rec.alpha, rec.beta, rec.config, "json");
        return kOk;
      }
      throw DomainError("replay: unsupported command '" + rec.command + "'");
    }
  } catch (const DomainError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return kDomain;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return kNumeric;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
