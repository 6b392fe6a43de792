#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hktred/catalog.hpp"
#include "hktred/reduction.hpp"
#include "hktred/report.hpp"
#include "hktred/sampling.hpp"

using namespace hktred;

namespace {

struct Flags {
  std::optional<std::uint64_t> seed;
  std::optional<int> points;
  std::optional<double> tol, fd_step, box, lambda;
  std::vector<double> h_coeffs;
  std::string out;

  void add_to(CLI::App* app, bool with_tol = true) {
    app->add_option("--seed", seed, "RNG seed");
    app->add_option("--points", points, "number of sample points");
    if (with_tol) app->add_option("--tol", tol, "tolerance override");
    app->add_option("--fd-step", fd_step, "first-order finite-difference step");
    app->add_option("--box", box, "half-width of the sampling box");
    app->add_option("--lambda", lambda, "Taub-NUT parameter");
    app->add_option("--h-coeffs", h_coeffs, "coefficients of h(r), constant term first")->delimiter(',');
    app->add_option("--out", out, "write the JSON document here instead of stdout");
  }

  Overrides overrides() const {
    Overrides o;
    o.seed = seed;
    o.points = points;
    o.tol = tol;
    o.fd_step = fd_step;
    o.box = box;
    o.lambda = lambda;
    if (!h_coeffs.empty()) o.h_coeffs = h_coeffs;
    return o;
  }
};

void deliver(const std::string& text, const std::string& out) {
  if (out.empty())
    std::cout << text;
  else
    write_text_file(out, text);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_and_emit(SuiteConfig cfg, const std::string& out) {
  const SuiteResult res = run_suite(cfg);
  deliver(emit_report(cfg, res), out);
  for (const auto& c : res.checks)
    std::cerr << (c.expected ? "ok   " : "FAIL ") << c.name << "  max_residual=" << c.max_residual
              << " tol=" << c.tol << (c.expect_fail ? " (expect_fail)" : "") << '\n';
  return res.exit_code;
}

Json matrix_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json vec_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

int reduce(const std::string& example, const Flags& f) {
  const double lambda = f.lambda.value_or(1.0);
  const int points = f.points.value_or(5);
  const std::uint64_t seed = f.seed.value_or(kDefaultSeed);
  if (points < 1) throw ConfigError("--points must be at least 1");
  if (!(lambda > 0.0)) throw ConfigError("--lambda must be positive");
  ChartDomainOptions opt;
  if (f.box) opt.r_box = *f.box;
  const double r_max = std::sqrt(3.0) * opt.r_box;
  const Polynomial h = f.h_coeffs.empty() ? Polynomial{{1.0, 0.0, 1.0}} : Polynomial{f.h_coeffs};

  ReductionSetup s;
  std::function<Mat(const Vec&)> closed;
  int blocks = 1;
  Mat lwy = Mat::Zero(2, 2);
  lwy(0, 0) = 1.0;
  lwy(1, 1) = 2.0;
  const std::vector<Polynomial> f_lwy = {{{1.0, 1.0}}, {{1.0, 1.0}}};
  if (example == "taub-nut") {
    s = taub_nut_setup(lambda);
    closed = [lambda](const Vec& c) { return eval_metric(TaubNUT{lambda}, c); };
  } else if (example == "conformal") {
    s = taub_nut_setup(lambda, metric_field(ConformalH{h}, r_max));
    closed = [h, lambda](const Vec& c) { return eval_metric(HKTTaubNUTQuotient{h, lambda}, c); };
  } else if (example == "lwy") {
    s = lwy_setup(lwy);
    closed = [lwy](const Vec& c) { return eval_metric(LWYProduct{lwy.diagonal()}, c); };
    blocks = 2;
  } else if (example == "lwy-conformal") {
    s = lwy_setup(lwy, metric_field(LWYConformal{f_lwy, lwy.diagonal()}, r_max));
    closed = [f_lwy, lwy](const Vec& c) { return eval_metric(LWYQuotientDiagonal{f_lwy, lwy.diagonal()}, c); };
    blocks = 2;
  } else {
    throw ConfigError("unknown example '" + example + "' (taub-nut, conformal, lwy, lwy-conformal)");
  }

  Json doc;
  doc["schema_version"] = "hktred-reduce/1";
  doc["example"] = example;
  doc["setup"] = s.name;
  doc["seed"] = seed;
  Json rows = Json::array();
  for (const LevelSample& ls : level_samples(blocks, seed, points, opt)) {
    const Vec p = s.level_point(ls);
    const ReducedMetricSample red = reduced_metric_at(s, p);
    const Mat expect = closed(red.chart);
    Json row;
    row["level_point"] = vec_json(p);
    row["chart"] = vec_json(red.chart);
    row["g"] = matrix_json(red.g);
    row["closed_form"] = matrix_json(expect);
    row["relative_error"] = relative_frobenius(red.g, expect);
    for (int a = 0; a < 3; ++a) {
      row["I" + std::to_string(a + 1)] = matrix_json(red.I[a]);
      row["F" + std::to_string(a + 1)] = matrix_json(red.F[a]);
    }
    rows.push_back(row);
  }
  doc["samples"] = rows;
  deliver(dump_json(doc) + "\n", f.out);
  return 0;
}

void list_everything() {
  std::cout << "checks:\n";
  for (const auto& d : check_registry()) {
    std::cout << "  " << d.name << "  [metric " << d.metric << ", action " << d.action << ", points "
              << d.default_points << ", tol " << d.default_tol << (d.default_expect_fail ? ", expect_fail" : "")
              << "]\n      " << d.description << '\n';
  }
  std::cout << "suites:";
  for (const auto& s : suite_names()) std::cout << ' ' << s;
  std::cout << "\nmetrics: flat conformal-h t-conformal-flat lwy-flat lwy-conformal taub-nut "
               "hkt-taub-nut-quotient strong-taub-nut lwy-quotient-diagonal lwy-product\n"
               "reduce examples: taub-nut conformal lwy lwy-conformal\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HKT reduction toolkit: run verification checks and reductions"};
  app.require_subcommand(1);

  Flags check_flags, suite_flags, reduce_flags;
  std::string check_name, config_path, suite_name = "paper-all", example = "taub-nut";
  bool expect_fail = false;

  CLI::App* check = app.add_subcommand("check", "run a single named check");
  check->add_option("name", check_name, "check name (see `list`)")->required();
  check->add_flag("--expect-fail", expect_fail, "treat a failing verdict as the expected outcome");
  check_flags.add_to(check);

  CLI::App* suite = app.add_subcommand("suite", "run a suite config or a named default suite");
  suite->add_option("--config", config_path, "suite config file");
  suite->add_option("--name", suite_name, "built-in suite when no config is given");
  suite_flags.add_to(suite);

  CLI::App* red = app.add_subcommand("reduce", "dump reduced metric samples for an example");
  red->add_option("example", example, "taub-nut, conformal, lwy or lwy-conformal");
  reduce_flags.add_to(red, false);

  CLI::App* list = app.add_subcommand("list", "list checks, suites and metrics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      list_everything();
      return 0;
    }
    if (check->parsed()) {
      SuiteConfig cfg;
      cfg.overrides = check_flags.overrides();
      CheckSpec spec{check_name, {}, {}};
      if (expect_fail) spec.expect_fail = true;
      find_check(check_name);
      cfg.checks.push_back(spec);
      return run_and_emit(cfg, check_flags.out);
    }
    if (suite->parsed()) {
      SuiteConfig cfg = config_path.empty() ? default_suite(suite_name) : parse_config(read_file(config_path));
      cfg.overrides = cfg.overrides.merged(suite_flags.overrides());
      return run_and_emit(cfg, suite_flags.out);
    }
    if (red->parsed()) return reduce(example, reduce_flags);
  } catch (const std::exception& e) {
    std::cerr << "hktred: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
