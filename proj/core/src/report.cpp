#include "hktred/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace hktred {

double Component::ratio() const {
  if (lower_bound) return value > 0.0 ? tol / value : std::numeric_limits<double>::infinity();
  return value / tol;
}

Overrides Overrides::merged(const Overrides& over) const {
  Overrides out = *this;
  if (over.seed) out.seed = over.seed;
  if (over.points) out.points = over.points;
  if (over.tol) out.tol = over.tol;
  if (over.fd_step) out.fd_step = over.fd_step;
  if (over.box) out.box = over.box;
  if (over.lambda) out.lambda = over.lambda;
  if (over.h_coeffs) out.h_coeffs = over.h_coeffs;
  return out;
}

namespace {

void reject_unknown(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

double number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  return v.get<double>();
}

Overrides parse_overrides(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  reject_unknown(j, {"seed", "points", "tol", "fd_step", "box", "lambda", "h_coeffs"}, where);
  Overrides o;
  if (j.contains("seed")) {
    const Json& v = j["seed"];
    if (!v.is_number_unsigned()) throw ConfigError(where + ".seed: expected a non-negative integer");
    o.seed = v.get<std::uint64_t>();
  }
  if (j.contains("points")) {
    const Json& v = j["points"];
    if (!v.is_number_integer()) throw ConfigError(where + ".points: expected an integer");
    o.points = v.get<int>();
  }
  if (j.contains("tol")) o.tol = number(j["tol"], where + ".tol");
  if (j.contains("fd_step")) o.fd_step = number(j["fd_step"], where + ".fd_step");
  if (j.contains("box")) o.box = number(j["box"], where + ".box");
  if (j.contains("lambda")) o.lambda = number(j["lambda"], where + ".lambda");
  if (j.contains("h_coeffs")) {
    const Json& v = j["h_coeffs"];
    if (!v.is_array()) throw ConfigError(where + ".h_coeffs: expected an array of numbers");
    std::vector<double> c;
    for (std::size_t i = 0; i < v.size(); ++i)
      c.push_back(number(v[i], where + ".h_coeffs[" + std::to_string(i) + "]"));
    o.h_coeffs = c;
  }
  return o;
}

Json overrides_to_json(const Overrides& o) {
  Json j = Json::object();
  if (o.seed) j["seed"] = *o.seed;
  if (o.points) j["points"] = *o.points;
  if (o.tol) j["tol"] = *o.tol;
  if (o.fd_step) j["fd_step"] = *o.fd_step;
  if (o.box) j["box"] = *o.box;
  if (o.lambda) j["lambda"] = *o.lambda;
  if (o.h_coeffs) j["h_coeffs"] = *o.h_coeffs;
  return j;
}

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void emit_number(std::ostringstream& os, const Json& j) {
  if (j.is_number_unsigned()) {
    os << j.get<std::uint64_t>();
  } else if (j.is_number_integer()) {
    os << j.get<std::int64_t>();
  } else {
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
      os << "null";
      return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
  }
}

void emit(std::ostringstream& os, const Json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{' << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad << Json(it.key()).dump() << (indent > 0 ? ": " : ":");
        emit(os, it.value(), indent, depth + 1);
      }
      os << nl << close_pad << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Short numeric arrays stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_number(); });
      os << '[';
      if (!flat) os << nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ',' << (flat ? (indent > 0 ? " " : "") : nl);
        if (!flat) os << pad;
        emit(os, j[i], indent, depth + 1);
      }
      if (!flat) os << nl << close_pad;
      os << ']';
      return;
    }
    case Json::value_t::number_float:
    case Json::value_t::number_integer:
    case Json::value_t::number_unsigned:
      emit_number(os, j);
      return;
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::ostringstream os;
  emit(os, j, indent, 0);
  return os.str();
}

SuiteConfig parse_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config is not valid JSON at " + line_col(text, e.byte));
  }
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  reject_unknown(j, {"schema_version", "suite", "overrides", "checks"}, "config");
  SuiteConfig cfg;
  if (j.contains("schema_version")) {
    if (!j["schema_version"].is_string() || j["schema_version"].get<std::string>() != kSuiteSchemaVersion)
      throw ConfigError(std::string("config.schema_version: expected \"") + kSuiteSchemaVersion + "\"");
  }
  if (j.contains("overrides")) cfg.overrides = parse_overrides(j["overrides"], "config.overrides");
  if (j.contains("suite") && j.contains("checks"))
    throw ConfigError("config: 'suite' and 'checks' are mutually exclusive");
  if (j.contains("suite")) {
    if (!j["suite"].is_string()) throw ConfigError("config.suite: expected a string");
    cfg.checks = default_suite(j["suite"].get<std::string>()).checks;
  }
  if (j.contains("checks")) {
    const Json& arr = j["checks"];
    if (!arr.is_array()) throw ConfigError("config.checks: expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "config.checks[" + std::to_string(i) + "]";
      const Json& c = arr[i];
      CheckSpec spec;
      if (c.is_string()) {
        spec.name = c.get<std::string>();
      } else if (c.is_object()) {
        reject_unknown(c, {"name", "expect_fail", "overrides"}, where);
        if (!c.contains("name") || !c["name"].is_string()) throw ConfigError(where + ".name: expected a string");
        spec.name = c["name"].get<std::string>();
        if (c.contains("expect_fail")) {
          if (!c["expect_fail"].is_boolean()) throw ConfigError(where + ".expect_fail: expected a boolean");
          spec.expect_fail = c["expect_fail"].get<bool>();
        }
        if (c.contains("overrides")) spec.overrides = parse_overrides(c["overrides"], where + ".overrides");
      } else {
        throw ConfigError(where + ": expected a check name or object");
      }
      find_check(spec.name);
      cfg.checks.push_back(std::move(spec));
    }
  }
  return cfg;
}

Json config_to_json(const SuiteConfig& config) {
  Json j;
  j["schema_version"] = config.schema_version;
  j["overrides"] = overrides_to_json(config.overrides);
  Json checks = Json::array();
  for (const auto& c : config.checks) {
    Json e;
    e["name"] = c.name;
    if (c.expect_fail) e["expect_fail"] = *c.expect_fail;
    const Json o = overrides_to_json(c.overrides);
    if (!o.empty()) e["overrides"] = o;
    checks.push_back(e);
  }
  j["checks"] = checks;
  return j;
}

CheckContext resolve_context(const CheckDef& def, const Overrides& global, const Overrides& local) {
  const Overrides o = global.merged(local);
  CheckContext ctx;
  ctx.seed = o.seed.value_or(kDefaultSeed);
  ctx.points = o.points.value_or(def.default_points);
  ctx.tol = o.tol.value_or(def.default_tol);
  ctx.fd_step = o.fd_step.value_or(1e-4);
  ctx.box = o.box.value_or(2.0);
  ctx.lambda = o.lambda;
  ctx.h_coeffs = o.h_coeffs;
  const std::string where = "check '" + def.name + "'";
  if (o.points && *o.points < 1) throw ConfigError(where + ": points must be at least 1");
  if (!(ctx.tol > 0.0) || !std::isfinite(ctx.tol)) throw ConfigError(where + ": tol must be positive");
  if (!(ctx.fd_step > 0.0 && ctx.fd_step <= 0.1)) throw ConfigError(where + ": fd_step must lie in (0, 0.1]");
  if (!(ctx.box > 0.0) || !std::isfinite(ctx.box)) throw ConfigError(where + ": box must be positive");
  if (ctx.lambda && !(*ctx.lambda > 0.0 && std::isfinite(*ctx.lambda)))
    throw ConfigError(where + ": lambda must be positive");
  if (ctx.h_coeffs && ctx.h_coeffs->empty()) throw ConfigError(where + ": h_coeffs must not be empty");
  return ctx;
}

CheckReport run_check(const CheckDef& def, const CheckContext& ctx, bool expect_fail) {
  CheckOutcome out = def.run(ctx);
  CheckReport r;
  r.name = def.name;
  r.metric = def.metric;
  r.action = def.action;
  r.params = std::move(out.params);
  if (ctx.lambda) r.params["lambda"] = *ctx.lambda;
  if (ctx.h_coeffs) r.params["h_coeffs"] = *ctx.h_coeffs;
  r.params["box"] = ctx.box;
  r.n_points = ctx.points;
  r.seed = ctx.seed;
  r.fd_step = ctx.fd_step;
  r.tol = ctx.tol;
  r.max_residual = out.max_residual;
  r.argmax_point.assign(out.argmax.data(), out.argmax.data() + out.argmax.size());
  r.pass = out.max_residual < ctx.tol;
  r.expect_fail = expect_fail;
  r.expected = r.pass != expect_fail;
  r.components = std::move(out.components);
  return r;
}

SuiteResult run_suite(const SuiteConfig& config) {
  if (config.checks.empty()) throw ConfigError("suite contains no checks");
  // Resolve everything first so a bad entry fails before any work is done.
  std::vector<std::pair<const CheckDef*, CheckContext>> plan;
  for (const auto& spec : config.checks) {
    const CheckDef& def = find_check(spec.name);
    plan.emplace_back(&def, resolve_context(def, config.overrides, spec.overrides));
  }
  SuiteResult res;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const bool expect_fail = config.checks[i].expect_fail.value_or(plan[i].first->default_expect_fail);
    res.checks.push_back(run_check(*plan[i].first, plan[i].second, expect_fail));
    if (!res.checks.back().expected) res.exit_code = 1;
  }
  return res;
}

Json report_to_json(const SuiteConfig& config, const SuiteResult& result) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["config"] = config_to_json(config);
  Json checks = Json::array();
  int passed = 0, expected = 0;
  for (const auto& c : result.checks) {
    Json e;
    e["name"] = c.name;
    e["metric"] = c.metric;
    e["action"] = c.action;
    e["params"] = c.params;
    e["n_points"] = c.n_points;
    e["seed"] = c.seed;
    e["fd_step"] = c.fd_step;
    e["tol"] = c.tol;
    e["max_residual"] = c.max_residual;
    e["argmax_point"] = c.argmax_point;
    e["pass"] = c.pass;
    e["expect_fail"] = c.expect_fail;
    e["expected"] = c.expected;
    Json comps = Json::array();
    for (const auto& k : c.components) {
      Json kc;
      kc["name"] = k.name;
      kc["value"] = k.value;
      kc["tol"] = k.tol;
      kc["bound"] = k.lower_bound ? "lower" : "upper";
      kc["pass"] = k.pass();
      comps.push_back(kc);
    }
    e["components"] = comps;
    checks.push_back(e);
    passed += c.pass;
    expected += c.expected;
  }
  j["checks"] = checks;
  j["summary"] = {{"total", result.checks.size()},
                  {"passed", passed},
                  {"as_expected", expected},
                  {"exit_code", result.exit_code}};
  return j;
}

std::string emit_report(const SuiteConfig& config, const SuiteResult& result) {
  return dump_json(report_to_json(config, result)) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace hktred
