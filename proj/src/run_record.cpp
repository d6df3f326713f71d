#include "ncho/run_record.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ncho/errors.hpp"

namespace ncho {

namespace {

using nlohmann::ordered_json;

std::string number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ordered_json orbit_json(const OrbitIntegral& o) {
  ordered_json j;
  j["composition"] = o.representative.parts;
  j["subset"] = o.subset;
  j["weight"] = o.weight;
  j["value"] = o.estimate.value;
  j["error"] = o.estimate.std_error;
  j["cv_applied"] = o.estimate.cv_applied;
  j["samples_used"] = o.estimate.samples_used;
  return j;
}

ordered_json value_json(const SpecialValueResult& r) {
  ordered_json j;
  j["n"] = r.n;
  j["zeta_Q"] = r.value;
  j["error"] = r.std_error;
  j["exact"] = r.exact;
  j["zeta_half_term"] = r.zeta_half;
  j["zeta_half_error"] = 0.0;
  ordered_json terms = ordered_json::array();
  for (const RTerm& t : r.R) {
    ordered_json tj;
    tj["k"] = t.k;
    tj["value"] = t.value;
    tj["error"] = t.std_error;
    tj["evaluated"] = t.evaluated;
    tj["weight"] = std::pow(r.params.skew_factor, t.k);
    ordered_json orbits = ordered_json::array();
    for (const OrbitIntegral& o : t.orbits) orbits.push_back(orbit_json(o));
    tj["orbits"] = orbits;
    terms.push_back(tj);
  }
  j["R"] = terms;
  return j;
}

}  // namespace

ordered_json config_json(const QuadConfig& cfg) {
  ordered_json j;
  j["samples"] = cfg.samples;
  j["batches"] = cfg.batches;
  j["transform"] = to_string(cfg.transform);
  j["corner_power"] = cfg.corner_power;
  j["control_variate"] = cfg.use_control_variate;
  j["seed"] = cfg.seed;
  return j;
}

ordered_json params_json(const Params& p) {
  ordered_json j;
  j["alpha"] = p.alpha;
  j["beta"] = p.beta;
  j["epsilon"] = p.epsilon;
  j["q"] = p.q;
  j["mean_factor"] = p.mean_factor;
  j["skew_factor"] = p.skew_factor;
  return j;
}

ordered_json RunRecord::to_json() const {
  ordered_json j;
  j["command"] = command;
  if (n) j["n"] = *n;
  j["params"] = params ? params_json(*params) : ordered_json(nullptr);
  j["config"] = config_json(config);
  ordered_json res = ordered_json::array();
  for (const LabeledValue& v : results) {
    ordered_json e;
    e["label"] = v.label;
    e["value"] = v.value;
    e["error"] = v.error;
    res.push_back(e);
  }
  j["results"] = res;
  j["details"] = details;
  ordered_json prov;
  prov["version"] = kVersion;
  prov["seed"] = config.seed;
  j["provenance"] = prov;
  return j;
}

std::string RunRecord::dump() const { return to_json().dump(2) + "\n"; }

RecordInputs parse_record(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("parse_record: ") + e.what());
  }
  RecordInputs in;
  try {
    in.command = j.at("command").get<std::string>();
    if (j.contains("n")) in.n = j.at("n").get<int>();
    if (j.at("details").contains("n_max")) in.n_max = j.at("details").at("n_max").get<int>();
    if (!j.at("params").is_null()) {
      in.alpha = j.at("params").at("alpha").get<double>();
      in.beta = j.at("params").at("beta").get<double>();
    }
    const auto& c = j.at("config");
    in.config.samples = c.at("samples").get<std::int64_t>();
    in.config.batches = c.at("batches").get<int>();
    in.config.transform = transform_from_string(c.at("transform").get<std::string>());
    in.config.corner_power = c.at("corner_power").get<int>();
    in.config.use_control_variate = c.at("control_variate").get<bool>();
    in.config.seed = c.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("parse_record: ") + e.what());
  }
  return in;
}

RunRecord value_record(const SpecialValueResult& r) {
  RunRecord rec;
  rec.command = "value";
  rec.n = r.n;
  rec.params = r.params;
  rec.config = r.config;
  rec.results.push_back({"zeta_Q", r.value, r.std_error});
  rec.results.push_back({"zeta_half_term", r.zeta_half, 0.0});
  for (const RTerm& t : r.R) rec.results.push_back({"R" + std::to_string(t.k), t.value, t.std_error});
  rec.details = value_json(r);
  return rec;
}

RunRecord table_record(const std::vector<SpecialValueResult>& rows, int n_max, const QuadConfig& cfg) {
  RunRecord rec;
  rec.command = "table";
  if (!rows.empty()) rec.params = rows.front().params;
  rec.config = cfg;
  ordered_json table = ordered_json::array();
  for (const SpecialValueResult& r : rows) {
    rec.results.push_back({"zeta_Q(" + std::to_string(r.n) + ")", r.value, r.std_error});
    table.push_back(value_json(r));
  }
  rec.details["n_max"] = n_max;
  rec.details["rows"] = table;
  return rec;
}

RunRecord verify_record(const std::string& suite, const std::vector<CheckResult>& checks,
                        const SuiteOptions& opts) {
  RunRecord rec;
  rec.command = "verify " + suite;
  rec.n = opts.n;
  try {
    rec.params = derive_params(opts.alpha, opts.beta);
  } catch (const DomainError&) {
    rec.params.reset();
  }
  rec.config = opts.quad_is_default ? default_config(opts.n) : opts.quad;
  ordered_json list = ordered_json::array();
  for (const CheckResult& c : checks) {
    rec.results.push_back({c.name, c.error, c.tolerance});
    ordered_json e;
    e["name"] = c.name;
    e["error"] = c.error;
    e["tolerance"] = c.tolerance;
    e["margin"] = c.margin();
    e["passed"] = c.passed;
    e["detail"] = c.detail;
    list.push_back(e);
  }
  rec.details["suite"] = suite;
  rec.details["passed"] = all_passed(checks);
  rec.details["checks"] = list;
  return rec;
}

std::string table_csv(const std::vector<SpecialValueResult>& rows, int n_max) {
  std::ostringstream os;
  const int k_max = n_max / 2;
  os << "n,zeta_Q,std_error,zeta_half_term";
  for (int k = 1; k <= k_max; ++k) os << ",R" << k << ",R" << k << "_err";
  os << "\n";
  for (const SpecialValueResult& r : rows) {
    os << r.n << ',' << number(r.value) << ',' << number(r.std_error) << ',' << number(r.zeta_half);
    for (int k = 1; k <= k_max; ++k) {
      // R_{n,k} is an empty sum when 2k > n.
      double value = 0.0;
      double error = 0.0;
      if (k <= static_cast<int>(r.R.size())) {
        value = r.R[k - 1].value;
        error = r.R[k - 1].std_error;
      }
      os << ',' << number(value) << ',' << number(error);
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace ncho
