#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hktred/types.hpp"

namespace hktred {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSuiteSchemaVersion = "hktred-suite/1";
inline constexpr const char* kReportSchemaVersion = "hktred-report/1";
inline constexpr std::uint64_t kDefaultSeed = 20011;

struct ConfigError : Error {
  using Error::Error;
};

/// Per-check or global overrides; unset fields fall back to the check defaults.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> points;
  std::optional<double> tol;
  std::optional<double> fd_step;
  std::optional<double> box;
  std::optional<double> lambda;
  std::optional<std::vector<double>> h_coeffs;

  /// Fields set in `over` replace those set here.
  Overrides merged(const Overrides& over) const;
};

struct CheckSpec {
  std::string name;
  std::optional<bool> expect_fail;
  Overrides overrides;
};

struct SuiteConfig {
  std::string schema_version = kSuiteSchemaVersion;
  Overrides overrides;
  std::vector<CheckSpec> checks;
};

/// Resolved inputs handed to a check.
struct CheckContext {
  std::uint64_t seed = kDefaultSeed;
  int points = 0;
  double tol = 0.0;
  double fd_step = 1e-4;
  double box = 2.0;
  std::optional<double> lambda;
  std::optional<std::vector<double>> h_coeffs;
};

/// One measured quantity. Upper bounds pass when value < tol, lower bounds when value > tol.
struct Component {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool lower_bound = false;

  bool pass() const { return lower_bound ? value > tol : value < tol; }
  /// value/tol for upper bounds and tol/value for lower bounds; below 1 means pass.
  double ratio() const;
};

struct CheckOutcome {
  double max_residual = 0.0;
  Vec argmax;
  Json params = Json::object();
  std::vector<Component> components;
};

struct CheckDef {
  std::string name;
  std::string description;
  std::string metric;
  std::string action;
  int default_points = 0;
  double default_tol = 0.0;
  /// Negative controls and lower-bound conditions: the raw quantity is reported against tol,
  /// so the expected outcome is pass = false.
  bool default_expect_fail = false;
  std::function<CheckOutcome(const CheckContext&)> run;
};

struct CheckReport {
  std::string name;
  std::string metric;
  std::string action;
  Json params = Json::object();
  int n_points = 0;
  std::uint64_t seed = 0;
  double fd_step = 0.0;
  double tol = 0.0;
  double max_residual = 0.0;
  std::vector<double> argmax_point;
  bool pass = false;
  bool expect_fail = false;
  bool expected = false;
  std::vector<Component> components;
};

struct SuiteResult {
  std::vector<CheckReport> checks;
  int exit_code = 0;  // 0 all as expected, 1 otherwise
};

const std::vector<CheckDef>& check_registry();
const CheckDef& find_check(const std::string& name);

/// The default suite: one composite check per acceptance criterion.
SuiteConfig default_suite(const std::string& name = "paper-all");
std::vector<std::string> suite_names();

SuiteConfig parse_config(const std::string& text);
Json config_to_json(const SuiteConfig& config);

CheckContext resolve_context(const CheckDef& def, const Overrides& global, const Overrides& local);
CheckReport run_check(const CheckDef& def, const CheckContext& ctx, bool expect_fail);
/// Runs the checks in listed order. Throws ConfigError for an empty or unknown suite.
SuiteResult run_suite(const SuiteConfig& config);

Json report_to_json(const SuiteConfig& config, const SuiteResult& result);
/// Deterministic text with 17 significant digits for every number.
std::string emit_report(const SuiteConfig& config, const SuiteResult& result);
std::string dump_json(const Json& j, int indent = 2);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace hktred
