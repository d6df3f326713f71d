#pragma once

// Named invariant suites shared by the command line and the acceptance run.

#include <cstdint>
#include <string>
#include <vector>

#include "ncho/quadrature.hpp"

namespace ncho {

struct CheckResult {
  std::string name;
  double error = 0.0;      ///< observed discrepancy
  double tolerance = 0.0;  ///< allowed discrepancy
  bool passed = false;
  std::string detail;

  double margin() const { return tolerance - error; }
};

struct SuiteOptions {
  int n = 2;
  double alpha = 3.0;
  double beta = 2.0;
  double q = 0.5;
  int oracle_N = 400;
  int instances = 0;  ///< 0 = suite default
  std::uint64_t seed = 20090401;
  QuadConfig quad;    ///< used by quadrature-backed checks
  bool quad_is_default = true;  ///< replace quad with default_config(n) per check
};

const std::vector<std::string>& suite_names();

/// Throws DomainError for an unknown suite name.
std::vector<CheckResult> run_suite(const std::string& suite, const SuiteOptions& opts);

bool all_passed(const std::vector<CheckResult>& checks);

}  // namespace ncho
