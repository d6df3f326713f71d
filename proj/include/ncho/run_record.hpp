#pragma once

// Machine-readable output records. JSON is canonical; CSV is a projection.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncho/quadrature.hpp"
#include "ncho/special_functions.hpp"
#include "ncho/verify.hpp"
#include "ncho/zeta_values.hpp"

namespace ncho {

inline constexpr const char* kVersion = "0.1.0";

struct LabeledValue {
  std::string label;
  double value = 0.0;
  double error = 0.0;
};

struct RunRecord {
  std::string command;
  std::optional<int> n;
  std::optional<Params> params;
  QuadConfig config;
  std::vector<LabeledValue> results;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
  std::string dump() const;  ///< two-space indented, trailing newline
};

/// Inputs recovered from a serialized record, enough to rerun it.
struct RecordInputs {
  std::string command;
  std::optional<int> n;
  std::optional<int> n_max;
  double alpha = 0.0;
  double beta = 0.0;
  QuadConfig config;
};
RecordInputs parse_record(const std::string& json_text);

nlohmann::ordered_json config_json(const QuadConfig& cfg);
nlohmann::ordered_json params_json(const Params& p);

RunRecord value_record(const SpecialValueResult& r);
RunRecord table_record(const std::vector<SpecialValueResult>& rows, int n_max, const QuadConfig& cfg);
RunRecord verify_record(const std::string& suite, const std::vector<CheckResult>& checks,
                        const SuiteOptions& opts);

/// n,zeta_Q,std_error,zeta_half_term,R1,R1_err,... with n_max/2 R columns.
std::string table_csv(const std::vector<SpecialValueResult>& rows, int n_max);

}  // namespace ncho
