#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "hktred/report.hpp"

using namespace hktred;

namespace {

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

SuiteConfig small_suite() {
  return parse_config(R"({
    "schema_version": "hktred-suite/1",
    "overrides": {"points": 12},
    "checks": ["flat-hermiticity", {"name": "conformal-hkt", "overrides": {"h_coeffs": [1, 0, 1]}},
               "negative-control-hkt"]
  })");
}

}  // namespace

TEST_CASE("config parsing") {
  const SuiteConfig c = small_suite();
  REQUIRE(c.checks.size() == 3);
  CHECK(c.overrides.points == 12);
  CHECK(c.checks[0].name == "flat-hermiticity");
  CHECK(!c.checks[0].expect_fail);
  CHECK(c.checks[1].overrides.h_coeffs->size() == 3);

  const SuiteConfig s = parse_config(R"({"suite": "fine", "overrides": {"seed": 7, "tol": 1e-3}})");
  CHECK(s.checks.size() == default_suite("fine").checks.size());
  CHECK(*s.overrides.seed == 7);

  // round trip through the echoed form
  const SuiteConfig back = parse_config(dump_json(config_to_json(c)));
  CHECK(dump_json(config_to_json(back)) == dump_json(config_to_json(c)));
}

TEST_CASE("config errors") {
  CHECK(config_error(R"({"checkz": []})").find("checkz") != std::string::npos);
  CHECK(config_error(R"({"overrides": {"pts": 3}})").find("pts") != std::string::npos);
  CHECK(config_error(R"({"checks": [{"name": "flat-hkt", "expect": true}]})").find("expect") != std::string::npos);
  CHECK(!config_error(R"({"suite": "fine", "checks": []})").empty());
  CHECK(!config_error(R"({"schema_version": "hktred-suite/9"})").empty());
  CHECK(!config_error(R"({"checks": [{"name": "flat-hkt", "expect_fail": 1}]})").empty());
  CHECK(!config_error(R"({"overrides": {"points": 2.5}})").empty());
  const std::string bad = config_error("{\n  \"checks\": [\n    \"flat-hkt\",,\n  ]\n}");
  CHECK(bad.find("line 3") != std::string::npos);
  CHECK(bad.find("column") != std::string::npos);
  CHECK_THROWS_AS(parse_config(R"({"suite": "nope"})"), ConfigError);
}

TEST_CASE("empty and unknown suites are configuration errors") {
  CHECK_THROWS_AS(run_suite(parse_config(R"({"checks": []})")), ConfigError);
  CHECK_THROWS_AS(run_suite(parse_config(R"({"checks": ["no-such-check"]})")), ConfigError);
  CHECK_THROWS_AS(find_check("no-such-check"), ConfigError);
}

TEST_CASE("context resolution and validation") {
  const CheckDef& def = find_check("flat-hkt");
  const CheckContext d = resolve_context(def, {}, {});
  CHECK(d.seed == kDefaultSeed);
  CHECK(d.points == def.default_points);
  CHECK(d.tol == def.default_tol);
  CHECK(d.fd_step == 1e-4);
  CHECK(d.box == 2.0);

  Overrides g, l;
  g.seed = 5;
  g.points = 9;
  l.points = 3;
  const CheckContext c = resolve_context(def, g, l);
  CHECK(c.seed == 5);
  CHECK(c.points == 3);

  auto rejects = [&](auto set) {
    Overrides o;
    set(o);
    CHECK_THROWS_AS(resolve_context(def, {}, o), ConfigError);
  };
  rejects([](Overrides& o) { o.points = 0; });
  rejects([](Overrides& o) { o.tol = 0.0; });
  rejects([](Overrides& o) { o.fd_step = 0.5; });
  rejects([](Overrides& o) { o.box = -1.0; });
  rejects([](Overrides& o) { o.lambda = 0.0; });
  rejects([](Overrides& o) { o.h_coeffs = std::vector<double>{}; });
}

TEST_CASE("verdicts and expectations") {
  const SuiteResult r = run_suite(small_suite());
  REQUIRE(r.checks.size() == 3);
  for (const auto& c : r.checks) {
    CHECK(c.pass == (c.max_residual < c.tol));
    CHECK(c.expected == (c.pass != c.expect_fail));
    CHECK(c.n_points == 12);
    CHECK(!c.components.empty());
  }
  CHECK(r.checks[0].pass);
  CHECK(r.checks[1].pass);
  const CheckReport& neg = r.checks[2];
  CHECK(neg.expect_fail);
  CHECK(!neg.pass);
  CHECK(neg.expected);
  CHECK(r.exit_code == 0);

  // flipping the expectation on a passing check makes the suite fail
  SuiteConfig flipped = small_suite();
  flipped.checks[0].expect_fail = true;
  flipped.checks.resize(1);
  const SuiteResult f = run_suite(flipped);
  CHECK(f.checks[0].pass);
  CHECK(!f.checks[0].expected);
  CHECK(f.exit_code == 1);

  // a tolerance tighter than the measured residual
  SuiteConfig tight = parse_config(R"({"checks": [{"name": "conformal-hkt", "overrides": {"tol": 1e-300}}]})");
  const SuiteResult t = run_suite(tight);
  CHECK(t.checks[0].pass == (t.checks[0].max_residual < 1e-300));
}

TEST_CASE("component ratios") {
  CHECK(Component{"u", 1.0, 4.0, false}.ratio() == 0.25);
  CHECK(Component{"l", 4.0, 1.0, true}.ratio() == 0.25);
  CHECK(Component{"u", 1.0, 4.0, false}.pass());
  CHECK(!Component{"l", 0.5, 1.0, true}.pass());
}

TEST_CASE("report text is deterministic") {
  const SuiteConfig cfg = small_suite();
  unsetenv("HKTRED_THREADS");
  const std::string a = emit_report(cfg, run_suite(cfg));
  const std::string b = emit_report(cfg, run_suite(cfg));
  CHECK(a == b);
  setenv("HKTRED_THREADS", "4", 1);
  const std::string c = emit_report(cfg, run_suite(cfg));
  unsetenv("HKTRED_THREADS");
  CHECK(a == c);

  const Json j = Json::parse(a);
  CHECK(j["schema_version"] == kReportSchemaVersion);
  CHECK(j["summary"]["total"] == 3);
  CHECK(j["summary"]["as_expected"] == 3);
  CHECK(j["summary"]["exit_code"] == 0);
  CHECK(j["checks"][2]["components"][0]["bound"].is_string());
  CHECK(a.back() == '\n');
}

TEST_CASE("number formatting") {
  Json j = Json::object();
  j["third"] = 1.0 / 3.0;
  j["nan"] = std::numeric_limits<double>::quiet_NaN();
  j["inf"] = -std::numeric_limits<double>::infinity();
  j["v"] = std::vector<double>{0.1, 2.0};
  j["n"] = 3;
  j["s"] = "a\"b";
  const std::string t = dump_json(j);
  CHECK(t.find("0.33333333333333331") != std::string::npos);
  CHECK(t.find("\"nan\": null") != std::string::npos);
  CHECK(t.find("\"inf\": null") != std::string::npos);
  CHECK(t.find("[0.10000000000000001, 2]") != std::string::npos);
  CHECK(t.find("\"n\": 3") != std::string::npos);
  const Json back = Json::parse(t);
  CHECK(back["third"].get<double>() == 1.0 / 3.0);
  CHECK(back["s"] == "a\"b");
}

TEST_CASE("writing to an unwritable path fails") {
  CHECK_THROWS_AS(write_text_file("/nonexistent-dir/x/report.json", "{}"), Error);
}

namespace {

Json load_schema(const std::string& file) {
  std::ifstream in(std::string(HKTRED_SCHEMA_DIR) + "/" + file);
  REQUIRE(in.good());
  return Json::parse(std::string(std::istreambuf_iterator<char>(in), {}));
}

// Every key present must be declared, and every required key must be present.
void conforms(const Json& value, const Json& schema, const Json& root) {
  if (schema.contains("$ref")) {
    const std::string ref = schema["$ref"].get<std::string>().substr(std::string("#/$defs/").size());
    return conforms(value, root["$defs"][ref], root);
  }
  if (schema.contains("required"))
    for (const auto& k : schema["required"]) CHECK_MESSAGE(value.contains(k.get<std::string>()), k);
  if (schema.contains("properties") && value.is_object()) {
    for (const auto& [k, v] : value.items()) {
      CHECK_MESSAGE(schema["properties"].contains(k), k);
      if (schema["properties"].contains(k)) conforms(v, schema["properties"][k], root);
    }
  }
  if (schema.contains("items") && value.is_array())
    for (const auto& v : value) conforms(v, schema["items"], root);
  if (schema.contains("const")) CHECK(value == schema["const"]);
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& e : schema["enum"]) found = found || e == value;
    CHECK(found);
  }
}

}  // namespace

TEST_CASE("report and echoed config follow the shipped schemas") {
  const SuiteConfig cfg = small_suite();
  const Json report = Json::parse(emit_report(cfg, run_suite(cfg)));
  const Json rs = load_schema("report.schema.json");
  conforms(report, rs, rs);
  CHECK(report["checks"].size() == 3);

  const Json ss = load_schema("suite.schema.json");
  const Json props = ss["properties"];
  for (const auto& [k, v] : report["config"].items()) CHECK(props.contains(k));
  const Json over = ss["$defs"]["overrides"]["properties"];
  for (const char* k : {"seed", "points", "tol", "fd_step", "box", "lambda", "h_coeffs"}) CHECK(over.contains(k));
}
