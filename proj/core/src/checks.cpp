#include <algorithm>
#include <cctype>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "hktred/catalog.hpp"
#include "hktred/kt_hkt.hpp"
#include "hktred/lie_algebra.hpp"
#include "hktred/reduction.hpp"
#include "hktred/report.hpp"
#include "hktred/sampling.hpp"
#include "hktred/symmetry.hpp"

namespace hktred {

namespace {

// A component together with the point that produced it.
struct Measure {
  Component c;
  Vec argmax;
};

Measure upper(std::string name, const SampleMax& s, double tol) {
  return {{std::move(name), s.value, tol, false}, s.point};
}
Measure upper(std::string name, double v, double tol, Vec at = {}) {
  return {{std::move(name), v, tol, false}, std::move(at)};
}
Measure lower(std::string name, double v, double tol, Vec at = {}) {
  return {{std::move(name), v, tol, true}, std::move(at)};
}

FdOptions first_order(const CheckContext& ctx) { return {ctx.fd_step, 2}; }
double lambda_or(const CheckContext& ctx, double fallback) { return ctx.lambda.value_or(fallback); }
Polynomial h_or(const CheckContext& ctx, Polynomial fallback) {
  return ctx.h_coeffs ? Polynomial{*ctx.h_coeffs} : std::move(fallback);
}
double chart_r_max(const CheckContext& ctx) { return std::sqrt(3.0) * ctx.box; }

std::vector<Vec> ambient(const CheckContext& ctx, int m) {
  AmbientDomainOptions opt;
  opt.box = ctx.box;
  return ambient_domain(m, ctx.seed, ctx.points, opt).samples();
}

std::vector<LevelSample> level(const CheckContext& ctx, int m) {
  ChartDomainOptions opt;
  opt.r_box = ctx.box;
  return level_samples(m, ctx.seed, ctx.points, opt);
}

Mat lwy_lambda() {
  Mat l = Mat::Zero(2, 2);
  l(0, 0) = 1.0;
  l(1, 1) = 2.0;
  return l;
}

Vec diag_of(const Mat& m) { return m.diagonal(); }

KFormField zero_one_form(int n) {
  return [n](const Vec&) { return Form(1, n); };
}

// ---- measurements ---------------------------------------------------------

Measure flat_hermiticity(const CheckContext& ctx) {
  const auto hh = with_constant_structure(metric_field(Flat{1}), HypercomplexTriple::standard(2));
  return upper("flat hermiticity", hermiticity_residual(hh, ambient(ctx, 1)), 1e-8);
}

Measure flat_kaehler_closure(const CheckContext& ctx) {
  const auto hh = with_constant_structure(metric_field(Flat{1}), HypercomplexTriple::standard(2));
  const auto pts = ambient(ctx, 1);
  SampleMax worst;
  for (int a = 1; a <= 3; ++a) {
    const SampleMax s = kaehler_closure_residual(hh, a, pts, first_order(ctx));
    worst.update(s.value, s.index, s.point);
  }
  return upper("flat dF_a", worst, 1e-8);
}

Measure flat_hkt(const CheckContext& ctx) {
  const auto hh = with_constant_structure(metric_field(Flat{1}), HypercomplexTriple::standard(2));
  return upper("flat hkt residual", hkt_residual(hh, ambient(ctx, 1), first_order(ctx)), 1e-8);
}

Measure conformal_hkt(const CheckContext& ctx) {
  const Polynomial h = h_or(ctx, {{1.0, 0.0, 1.0}});
  const auto hh = with_constant_structure(metric_field(ConformalH{h}), HypercomplexTriple::standard(2));
  return upper("conformal hkt residual", hkt_residual(hh, ambient(ctx, 1), first_order(ctx)), 1e-6);
}

Measure negative_control_hkt(const CheckContext& ctx) {
  const auto hh = with_constant_structure(metric_field(TConformalFlat{1}), HypercomplexTriple::standard(2));
  const SampleMax s = hkt_residual(hh, ambient(ctx, 1), first_order(ctx));
  return lower("(1+t1^2) flat hkt residual", s.value, 1e-3, s.point);
}

Measure cr_taub_nut(const CheckContext& ctx) {
  return upper("taub-nut cauchy-riemann",
               cauchy_riemann_residual(taub_nut_moment(lambda_or(ctx, 1.0)), HypercomplexTriple::standard(2),
                                       ambient(ctx, 1)),
               1e-8);
}

Measure cr_lwy(const CheckContext& ctx) {
  return upper("lwy cauchy-riemann",
               cauchy_riemann_residual(lwy_moment(lwy_lambda()), HypercomplexTriple::standard(4), ambient(ctx, 2)),
               1e-8);
}

Measure equivariance_taub_nut(const CheckContext& ctx) {
  const double lambda = lambda_or(ctx, 1.0);
  return upper("taub-nut equivariance",
               equivariance_residual(taub_nut_moment(lambda), taub_nut_action(lambda), ambient(ctx, 1)), 1e-8);
}

Measure equivariance_lwy(const CheckContext& ctx) {
  return upper("lwy equivariance",
               equivariance_residual(lwy_moment(lwy_lambda()), lwy_action(lwy_lambda()), ambient(ctx, 2)), 1e-8);
}

Measure transversality_taub_nut(const CheckContext& ctx) {
  const ReductionSetup s = taub_nut_setup(lambda_or(ctx, 1.0));
  const SampleMax t = transversality_minimum(s.moment, s.action, s.triple, level_points(s, level(ctx, 1)));
  return lower("taub-nut transversality minimum", t.value, 1e-6, t.point);
}

Measure transversality_lwy(const CheckContext& ctx) {
  const ReductionSetup s = lwy_setup(lwy_lambda());
  const SampleMax t = transversality_minimum(s.moment, s.action, s.triple, level_points(s, level(ctx, 2)));
  return lower("lwy transversality minimum", t.value, 1e-6, t.point);
}

Measure closure_flat(const CheckContext& ctx, Json& params) {
  const double lambda = lambda_or(ctx, 1.0);
  const GroupAction act = taub_nut_action(lambda);
  const MomentMap mm = taub_nut_moment(lambda);
  const auto h = HypercomplexTriple::standard(2);
  const auto pts = ambient(ctx, 1);
  double worst = 0.0;
  Vec at;
  Json kappa = Json::array();
  for (int r = 1; r <= 3; ++r) {
    const ClosureResult c = moment_closure_residual(metric_field(Flat{1}), act.killing[0], zero_one_form(8),
                                                    mm.scalar(0, r), h, r, {}, pts, first_order(ctx));
    if (c.closure >= worst) {
      worst = c.closure;
      at = c.argmax;
    }
    kappa.push_back(c.kappa);
  }
  params["closure_kappa"] = kappa;
  return upper("flat moment closure", worst, 1e-6, at);
}

Measure taub_nut_reduction(const CheckContext& ctx, double lambda) {
  const ReductionSetup s = taub_nut_setup(lambda);
  SampleMax worst;
  const auto ls = level(ctx, 1);
  for (int i = 0; i < static_cast<int>(ls.size()); ++i) {
    const Vec p = s.level_point(ls[i]);
    const ReducedMetricSample red = reduced_metric_at(s, p);
    worst.update(relative_frobenius(red.g, eval_metric(TaubNUT{lambda}, red.chart)), i, red.chart);
  }
  return upper("taub-nut reduction lambda=" + Json(lambda).dump(), worst, 1e-5);
}

Measure conformal_reduction(const CheckContext& ctx, const Polynomial& h, double lambda,
                            const std::string& label) {
  const ReductionSetup s = taub_nut_setup(lambda, metric_field(ConformalH{h}, chart_r_max(ctx)));
  SampleMax worst;
  const auto ls = level(ctx, 1);
  for (int i = 0; i < static_cast<int>(ls.size()); ++i) {
    const ReducedMetricSample red = reduced_metric_at(s, s.level_point(ls[i]));
    const double r = red.chart.head<3>().norm();
    const Mat expected = conformal_factor(h, r, lambda) * eval_metric(TaubNUT{lambda}, red.chart);
    worst.update(relative_frobenius(red.g, expected), i, red.chart);
  }
  return upper("conformal reduction h=" + label + " lambda=" + Json(lambda).dump(), worst, 1e-5);
}

HyperHermitian strong_pair(double lambda) {
  return quotient_pair(taub_nut_setup(lambda), metric_field(StrongTN{lambda}));
}

Measure strong_hkt(const CheckContext& ctx) {
  const double lambda = lambda_or(ctx, 1.0);
  const auto qp = quotient_points(taub_nut_setup(lambda), level(ctx, 1));
  return upper("strong metric hkt residual", hkt_residual(strong_pair(lambda), qp, kNestedFd), 1e-5);
}

Measure strong_dh(const CheckContext& ctx) {
  const double lambda = lambda_or(ctx, 1.0);
  const auto qp = quotient_points(taub_nut_setup(lambda), level(ctx, 1));
  return upper("strong metric |dH|", strong_residual(strong_pair(lambda), qp), 1e-4);
}

Measure weak_dh(const CheckContext& ctx) {
  const double lambda = lambda_or(ctx, 1.0);
  const ReductionSetup s = taub_nut_setup(lambda);
  const auto hh = quotient_pair(s, metric_field(HKTTaubNUTQuotient{{{1.0, 0.0, 0.0, 1.0}}, lambda}));
  const SampleMax d = strong_residual(hh, quotient_points(s, level(ctx, 1)));
  return lower("h=1+r^3 |dH|", d.value, 1e-2, d.point);
}

Measure taub_nut_torsion(const CheckContext& ctx) {
  const double lambda = lambda_or(ctx, 1.0);
  const ReductionSetup s = taub_nut_setup(lambda);
  const auto hh = quotient_pair(s, metric_field(TaubNUT{lambda}));
  const auto qp = quotient_points(s, level(ctx, 1));
  SampleMax worst;
  for (int a = 1; a <= 3; ++a) {
    const KFormField h = bismut_torsion(hh, a, kNestedFd);
    for (int i = 0; i < static_cast<int>(qp.size()); ++i) worst.update(h(qp[i]).max_abs(), i, qp[i]);
  }
  return upper("taub-nut bismut torsion", worst, 1e-5);
}

std::vector<Polynomial> lwy_f(double c1) { return {{{1.0, c1}}, {{1.0, c1}}}; }

Measure lwy_conformal(const CheckContext& ctx) {
  const Mat l = lwy_lambda();
  const auto f = lwy_f(1.0);
  const ReductionSetup s = lwy_setup(l, metric_field(LWYConformal{f, diag_of(l)}, chart_r_max(ctx)));
  SampleMax worst;
  const auto ls = level(ctx, 2);
  for (int i = 0; i < static_cast<int>(ls.size()); ++i) {
    const ReducedMetricSample red = reduced_metric_at(s, s.level_point(ls[i]));
    worst.update(relative_frobenius(red.g, eval_metric(LWYQuotientDiagonal{f, diag_of(l)}, red.chart)), i,
                 red.chart);
  }
  return upper("lwy conformal reduction f=1+r", worst, 1e-5);
}

Measure lwy_product_closed(const CheckContext& ctx) {
  const Vec l = diag_of(lwy_lambda());
  const ReductionSetup s = lwy_setup(lwy_lambda());
  const auto qp = quotient_points(s, level(ctx, 2));
  SampleMax worst;
  for (int i = 0; i < static_cast<int>(qp.size()); ++i)
    worst.update(relative_frobenius(eval_metric(LWYQuotientDiagonal{lwy_f(0.0), l}, qp[i]),
                                    eval_metric(LWYProduct{l}, qp[i])),
                 i, qp[i]);
  return upper("lwy f=1 equals product", worst, 1e-10);
}

Measure lwy_product_numeric(const CheckContext& ctx) {
  const Vec l = diag_of(lwy_lambda());
  const ReductionSetup s = lwy_setup(lwy_lambda());
  SampleMax worst;
  const auto ls = level(ctx, 2);
  for (int i = 0; i < static_cast<int>(ls.size()); ++i) {
    const ReducedMetricSample red = reduced_metric_at(s, s.level_point(ls[i]));
    worst.update(relative_frobenius(red.g, eval_metric(LWYProduct{l}, red.chart)), i, red.chart);
  }
  return upper("lwy flat reduction equals product", worst, 1e-5);
}

Measure lwy_nonconformal(const CheckContext& ctx) {
  const Mat l = lwy_lambda();
  const auto f = lwy_f(1.0);
  const ReductionSetup s = lwy_setup(l, metric_field(LWYConformal{f, diag_of(l)}, chart_r_max(ctx)));
  SampleMax best;
  const auto ls = level(ctx, 2);
  for (int i = 0; i < static_cast<int>(ls.size()); ++i) {
    const ReducedMetricSample red = reduced_metric_at(s, s.level_point(ls[i]));
    const Mat ratio = red.g * eval_metric(LWYProduct{diag_of(l)}, red.chart).inverse();
    const double scale = ratio.trace() / static_cast<double>(ratio.rows());
    const Mat iso = scale * Mat::Identity(ratio.rows(), ratio.cols());
    best.update((ratio - iso).norm() / iso.norm(), i, red.chart);
  }
  return lower("lwy quotient deviation from conformal", best.value, 1e-2, best.point);
}

Measure delta_squared(const CheckContext& ctx, Json& params) {
  std::vector<std::pair<std::string, LieAlgebra>> algebras = {
      {"su2", LieAlgebra::su2()}, {"abelian3", LieAlgebra::abelian(3)}, {"heisenberg", LieAlgebra::heisenberg()}};
  const LieAlgebra bases[] = {LieAlgebra::su2(), LieAlgebra::heisenberg(),
                              LieAlgebra::direct_sum(LieAlgebra::su2(), LieAlgebra::abelian(1)),
                              LieAlgebra::direct_sum(LieAlgebra::heisenberg(), LieAlgebra::su2())};
  Rng rng(ctx.seed);
  for (int i = 0; i < 20; ++i)
    algebras.emplace_back("random" + std::to_string(i), random_conjugate(bases[i % 4], rng));
  double worst = 0.0, jacobi = 0.0;
  for (const auto& [name, g] : algebras) {
    jacobi = std::max(jacobi, g.jacobi_residual());
    worst = std::max(worst, delta_squared_residual(g));
  }
  params["algebras"] = static_cast<int>(algebras.size());
  params["max_jacobi_residual"] = jacobi;
  return upper("delta_G squared", worst, 1e-12);
}

Measure su2_example(const CheckContext&) {
  const LieAlgebra g = LieAlgebra::su2();
  const Form lhs = delta_G(g, Form::basis(3, {0}));
  const Form rhs = -1.0 * wedge(Form::basis(3, {1}), Form::basis(3, {2}));
  return upper("su2 delta theta^1 + theta^2 wedge theta^3", (lhs - rhs).max_abs(), 1e-15);
}

Measure bracket(const CheckContext& ctx) {
  const ReductionSetup s = taub_nut_setup(lambda_or(ctx, 1.0));
  const auto pts = level_points(s, level(ctx, 1));
  const BracketResult b = bracket_vertical_residual(s, pts);
  return upper("bracket vertical residual", std::max({b.horizontal, b.vertical, b.self}), 1e-4);
}

// c with 2F_1 ≈ c (dd_1ρ + d_2d_3ρ) for ρ = |q|^2, fitted by least squares on FD values.
double potential_constant(const std::vector<Vec>& pts) {
  const ReductionSetup s = trivial_setup(1);
  const StructureField st = constant_structure(s.triple);
  const ScalarField rho = [](const Vec& p) { return p.squaredNorm(); };
  double num = 0.0, den = 0.0;
  for (const Vec& p : pts) {
    const Form op = potential_operator(st, rho, 1, p);
    const Form f2 = 2.0 * Form::from_matrix(s.triple.vector(1).transpose());
    for (std::size_t i = 0; i < op.size(); ++i) {
      num += op[i] * f2[i];
      den += op[i] * op[i];
    }
  }
  return num / den;
}

std::vector<Vec> flat_h_points(const CheckContext& ctx) {
  AmbientDomainOptions opt;
  opt.box = ctx.box;
  SamplingDomain d = ambient_domain(1, ctx.seed, ctx.points, opt);
  std::vector<Vec> out;
  for (const Vec& p : d.samples()) out.push_back(p.head(4));
  return out;
}

Measure potential_identity(const CheckContext& ctx, Json& params) {
  const auto pts = flat_h_points(ctx);
  const double c = potential_constant(pts);
  params["potential_constant"] = c;
  const ReductionSetup s = trivial_setup(1);
  const StructureField st = constant_structure(s.triple);
  const ScalarField rho = [c](const Vec& p) { return c * p.squaredNorm(); };
  SampleMax worst;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i)
    for (int a = 1; a <= 3; ++a) {
      const Form two_f = 2.0 * Form::from_matrix(s.triple.vector(a).transpose());
      worst.update((two_f - potential_operator(st, rho, a, pts[i])).max_abs(), i, pts[i]);
    }
  return upper("potential identity c|q|^2", worst, 1e-6);
}

Measure descent_trivial(const CheckContext& ctx) {
  const auto pts = flat_h_points(ctx);
  const double c = potential_constant(pts);
  const DescentResult d =
      potential_descent_check([c](const Vec& p) { return c * p.squaredNorm(); }, trivial_setup(1), pts, pts);
  return upper("descent conclusion (trivial group)", d.evaluated ? d.conclusion : INFINITY, 1e-6);
}

std::vector<Measure> descent_controls(const CheckContext& ctx) {
  const ReductionSetup tn = taub_nut_setup(lambda_or(ctx, 1.0));
  const ScalarField psi = [](const Vec& p) {
    return chart_forward(quaternion_at(p, 0), quaternion_at(p, 4)).psi;
  };
  const auto lp = level_points(tn, level(ctx, 1));
  const DescentResult dpsi = potential_descent_check(psi, tn, lp, quotient_points(tn, level(ctx, 1)));
  const auto pts = flat_h_points(ctx);
  const ReductionSetup tr = trivial_setup(1);
  const DescentResult dzero = potential_descent_check([](const Vec&) { return 0.0; }, tr, pts, pts);
  const double two_f = 2.0 * tr.triple.vector(1).cwiseAbs().maxCoeff();
  return {lower("psi descent hypothesis residual", dpsi.hypothesis, 1.0),
          upper("psi descent conclusion evaluated", dpsi.evaluated ? 1.0 : 0.0, 0.5),
          upper("zero potential conclusion minus |2F|", std::abs(dzero.conclusion - two_f), 1e-8)};
}

Measure dirac_curl(const CheckContext& ctx) {
  SampleMax worst;
  const auto ls = level(ctx, 1);
  for (int i = 0; i < static_cast<int>(ls.size()); ++i) {
    const Vec r = ls[i].r[0];
    const Mat j = jacobian([](const Vec& x) { return Vec(dirac_potential(x)); }, r, {1e-4, 4});
    const Vec3 curl(j(2, 1) - j(1, 2), j(0, 2) - j(2, 0), j(1, 0) - j(0, 1));
    const Vec3 grad = -r / std::pow(r.norm(), 3);
    worst.update((curl - grad).cwiseAbs().maxCoeff(), i, r);
  }
  return upper("curl omega - grad(1/r)", worst, 1e-6);
}

Measure chart_round_trip(const CheckContext& ctx) {
  SampleMax worst;
  const auto pts = ambient(ctx, 1);
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    const auto [q, w] = chart_back(chart_forward(quaternion_at(pts[i], 0), quaternion_at(pts[i], 4)));
    Vec back(8);
    store_quaternion(back, 0, q);
    store_quaternion(back, 4, w);
    worst.update((back - pts[i]).cwiseAbs().maxCoeff(), i, pts[i]);
  }
  return upper("chart round trip", worst, 1e-10);
}

Measure chart_flat_metric(const CheckContext& ctx) {
  const MapField back = [](const Vec& c) {
    ChartPoint cp{c[0], c.segment<3>(1), c[4], c.segment<3>(5)};
    const auto [q, w] = chart_back(cp);
    Vec p(8);
    store_quaternion(p, 0, q);
    store_quaternion(p, 4, w);
    return p;
  };
  const MetricField pulled = pullback_metric(back, [](const Vec&) { return Mat(Mat::Identity(8, 8)); }, {1e-4, 4});
  SampleMax worst;
  const auto ls = level(ctx, 1);
  for (int i = 0; i < static_cast<int>(ls.size()); ++i) {
    const ChartPoint cp{ls[i].psi[0], ls[i].r[0], ls[i].y[0], Vec3(0.3, -0.2, 0.1)};
    Vec c(8);
    c << cp.psi, cp.r, cp.y, cp.yv;
    worst.update((pulled(c) - flat_metric_in_chart(cp)).cwiseAbs().maxCoeff(), i, c);
  }
  return upper("flat metric in chart", worst, 1e-8);
}

Measure theta_mu(const CheckContext& ctx) {
  return upper("ker theta = ker mu = U", theta_mu_residual(lambda_or(ctx, 1.0), level(ctx, 1)), 1e-8);
}

// max |eig(L^{-1/2} g L^{-1/2}) − 1|.
double spectral_deviation(const Mat& g, const Mat& limit) {
  Eigen::SelfAdjointEigenSolver<Mat> es(limit);
  const Mat inv_sqrt = es.operatorInverseSqrt();
  Eigen::SelfAdjointEigenSolver<Mat> rel(inv_sqrt * g * inv_sqrt);
  return (rel.eigenvalues().array() - 1.0).abs().maxCoeff();
}

std::vector<Measure> strong_asymptotics(const CheckContext& ctx) {
  const double lambda = lambda_or(ctx, 1.0);
  const auto ls = level(ctx, 1);
  double far = 0.0, near = 0.0;
  for (const auto& s : ls) {
    const Vec3 dir = s.r[0].normalized();
    Vec c(4);
    c << 1e3 * dir, s.psi[0];
    Mat lim = Mat::Zero(4, 4);
    lim.topLeftCorner(3, 3) = 0.25 / std::pow(lambda, 4) * Mat::Identity(3, 3);
    lim(3, 3) = 0.25;
    far = std::max(far, spectral_deviation(eval_metric(StrongTN{lambda}, c), lim));
    c.head<3>() = 1e-3 * dir;
    Eigen::Vector4d a;
    a << dirac_potential(c.head<3>()), 1.0;
    lim = 0.25 * a * a.transpose();
    lim.topLeftCorner(3, 3) += 0.25 / 1e-6 * Mat::Identity(3, 3);
    near = std::max(near, spectral_deviation(eval_metric(StrongTN{lambda}, c), lim));
  }
  return {upper("strong metric vs S1 x R3 at r=1e3", far, 0.02),
          upper("strong metric vs R x S3 at r=1e-3", near, 0.02)};
}

Measure killing_isometry(const CheckContext& ctx) {
  const double lambda = lambda_or(ctx, 1.0);
  const GroupAction act = taub_nut_action(lambda);
  const auto h = HypercomplexTriple::standard(2);
  const MetricField g = metric_field(Flat{1});
  double worst = 0.0;
  Vec at;
  for (const Vec& p : ambient(ctx, 1)) {
    double r = lie_derivative(act.flows[0], g, p, kNestedFd).cwiseAbs().maxCoeff();
    for (int a = 1; a <= 3; ++a) {
      const Mat va = h.vector(a);
      r = std::max(r, lie_derivative_endomorphism(act.flows[0], [va](const Vec&) { return va; }, p, kNestedFd)
                          .cwiseAbs()
                          .maxCoeff());
    }
    if (r >= worst) {
      worst = r;
      at = p;
    }
  }
  return upper("L_X g and L_X I", worst, 1e-8, at);
}

Measure killing_gradient(const CheckContext& ctx) {
  const GroupAction act = taub_nut_action(lambda_or(ctx, 1.0));
  const auto pts = ambient(ctx, 1);
  const SampleMax s = killing_length_gradient(metric_field(Flat{1}), act.killing[0], pts, first_order(ctx));
  return lower("|d g(X,X)|", s.value, 1e-3, s.point);
}

// ---- check assembly -------------------------------------------------------

CheckOutcome single(Measure m, Json params = Json::object()) {
  CheckOutcome o;
  o.max_residual = m.c.value;
  o.argmax = std::move(m.argmax);
  o.params = std::move(params);
  o.components.push_back(std::move(m.c));
  return o;
}

CheckOutcome composite(std::vector<Measure> ms, Json params = Json::object()) {
  CheckOutcome o;
  o.params = std::move(params);
  double worst = -1.0;
  for (auto& m : ms) {
    const double r = m.c.ratio();
    if (!(r <= worst)) {
      worst = r;
      o.argmax = m.argmax;
    }
    o.components.push_back(std::move(m.c));
  }
  o.max_residual = worst;
  return o;
}

std::vector<double> lambdas_for(const CheckContext& ctx) {
  if (ctx.lambda) return {*ctx.lambda};
  return {0.5, 1.0, 2.0};
}

CheckOutcome ac05(const CheckContext& ctx) {
  std::vector<Measure> ms;
  for (double lambda : lambdas_for(ctx)) {
    if (ctx.h_coeffs) {
      ms.push_back(conformal_reduction(ctx, Polynomial{*ctx.h_coeffs}, lambda, "custom"));
      continue;
    }
    ms.push_back(conformal_reduction(ctx, Polynomial::constant(1.0), lambda, "1"));
    ms.push_back(conformal_reduction(ctx, {{1.0, 1.0}}, lambda, "1+r"));
    ms.push_back(conformal_reduction(ctx, strong_h_polynomial(lambda), lambda, "strong"));
  }
  return composite(std::move(ms));
}

CheckOutcome ac11(const CheckContext& ctx);

std::vector<CheckDef> build_registry() {
  using M = Measure (*)(const CheckContext&);
  std::vector<CheckDef> r;

  // Fine-grained checks: tol and expect_fail defaults mirror the measure's bound.
  struct Fine {
    const char* name;
    const char* desc;
    const char* metric;
    const char* action;
    int points;
    double tol;
    bool lower;
    M measure;
  };
  const Fine fines[] = {
      {"flat-hermiticity", "g(IX,IY) = g(X,Y) for the flat metric, all axes", "flat", "none", 200, 1e-8, false,
       flat_hermiticity},
      {"flat-kaehler-closed", "dF_a = 0 for the flat metric", "flat", "none", 200, 1e-8, false, flat_kaehler_closure},
      {"flat-hkt", "(0,3)-part of d omega_1 for the flat metric", "flat", "none", 200, 1e-8, false, flat_hkt},
      {"conformal-hkt", "(0,3)-part of d omega_1 for ds^2_h (h = 1 + r^2 unless overridden)", "conformal-h", "none",
       200, 1e-6, false, conformal_hkt},
      {"negative-control-hkt", "(1 + t_1^2) g_flat is not HKT", "t-conformal-flat", "none", 200, 1e-3, true,
       negative_control_hkt},
      {"cauchy-riemann-taub-nut", "I_1 dnu_1 = I_2 dnu_2 = I_3 dnu_3", "flat", "taub-nut", 200, 1e-8, false,
       cr_taub_nut},
      {"cauchy-riemann-lwy", "Cauchy-Riemann condition for the LWY moment map", "lwy-flat", "lwy", 200, 1e-8, false,
       cr_lwy},
      {"equivariance-taub-nut", "L_b nu_a - f^c_ba nu_c", "flat", "taub-nut", 200, 1e-8, false,
       equivariance_taub_nut},
      {"equivariance-lwy", "equivariance of the LWY moment map", "lwy-flat", "lwy", 200, 1e-8, false,
       equivariance_lwy},
      {"transversality-taub-nut", "min |I_1 dnu_1(X)| on the level set", "flat", "taub-nut", 200, 1e-6, true,
       transversality_taub_nut},
      {"transversality-lwy", "min |I_1 dnu_b(X_b)| on the level set", "lwy-flat", "lwy", 200, 1e-6, true,
       transversality_lwy},
      {"killing-isometry", "L_X g and L_X I_a vanish for the Taub-NUT action", "flat", "taub-nut", 50, 1e-8, false,
       killing_isometry},
      {"killing-length-gradient", "|d g(X,X)| is nonzero", "flat", "taub-nut", 50, 1e-3, true, killing_gradient},
      {"taub-nut-reduction", "numerical reduction of the flat metric vs ds^2_TN (lambda = 1 unless overridden)",
       "taub-nut", "taub-nut", 50, 1e-5, false,
       [](const CheckContext& c) { return taub_nut_reduction(c, lambda_or(c, 1.0)); }},
      {"strong-hkt", "hkt residual of (1/r + 1/lambda^2) ds^2_TN", "strong-taub-nut", "taub-nut", 20, 1e-5, false,
       strong_hkt},
      {"strong-dh", "|dH| of (1/r + 1/lambda^2) ds^2_TN", "strong-taub-nut", "taub-nut", 20, 1e-4, false, strong_dh},
      {"weak-dh", "|dH| of the h = 1 + r^3 quotient is nonzero", "hkt-taub-nut-quotient", "taub-nut", 20, 1e-2, true,
       weak_dh},
      {"taub-nut-torsion", "Bismut torsion of ds^2_TN vanishes", "taub-nut", "taub-nut", 20, 1e-5, false,
       taub_nut_torsion},
      {"lwy-conformal-reduction", "reduction of sum f_a dq dq + dw dw, f_a = 1 + r_a, lambda = (1, 2)",
       "lwy-quotient-diagonal", "lwy", 50, 1e-5, false, lwy_conformal},
      {"lwy-product-closed-form", "f_a = 1 closed form equals the product LWY metric", "lwy-product", "lwy", 50,
       1e-10, false, lwy_product_closed},
      {"lwy-product-reduction", "numerical reduction of the flat metric vs the product LWY metric", "lwy-product",
       "lwy", 50, 1e-5, false, lwy_product_numeric},
      {"lwy-nonconformal", "quotient metric is not a scalar multiple of the LWY metric", "lwy-quotient-diagonal",
       "lwy", 50, 1e-2, true, lwy_nonconformal},
      {"su2-delta-example", "delta theta^1 = -theta^2 wedge theta^3 for su(2)", "none", "su2", 1, 1e-15, false,
       su2_example},
      {"bracket-vertical", "horizontal (0,1) brackets stay horizontal", "flat", "taub-nut", 10, 1e-4, false, bracket},
      {"descent-trivial", "descent conclusion for c|q|^2 under the trivial group", "flat", "trivial", 20, 1e-6, false,
       descent_trivial},
      {"dirac-curl", "curl omega = grad(1/r)", "none", "none", 200, 1e-6, false, dirac_curl},
      {"chart-round-trip", "chart_back(chart_forward(p)) = p", "flat", "none", 500, 1e-10, false, chart_round_trip},
      {"chart-flat-metric", "flat metric in (psi, r, y, y-vec) coordinates", "flat", "none", 50, 1e-8, false,
       chart_flat_metric},
      {"theta-mu-kernel", "ker theta = ker mu = U on the Taub-NUT level set", "flat", "taub-nut", 50, 1e-8, false,
       theta_mu},
  };
  for (const Fine& f : fines) {
    CheckDef d{f.name, f.desc, f.metric, f.action, f.points, f.tol, f.lower, {}};
    const M measure = f.measure;
    d.run = [measure](const CheckContext& ctx) {
      Measure m = measure(ctx);
      m.c.tol = ctx.tol;
      return single(std::move(m));
    };
    r.push_back(std::move(d));
  }
  // Fine-grained checks with parameters or several outputs.
  r.push_back({"moment-closure-flat", "d(X~ + u - I_r dnu^r) for the flat Taub-NUT data", "flat", "taub-nut", 50,
               1e-6, false, [](const CheckContext& ctx) {
                 Json params;
                 Measure m = closure_flat(ctx, params);
                 m.c.tol = ctx.tol;
                 return single(std::move(m), params);
               }});
  r.push_back({"delta-squared", "delta_G^2 = 0 on su(2), R^3, Heisenberg and 20 conjugates", "none", "lie-algebras",
               1, 1e-12, false, [](const CheckContext& ctx) {
                 Json params;
                 Measure m = delta_squared(ctx, params);
                 m.c.tol = ctx.tol;
                 return single(std::move(m), params);
               }});
  r.push_back({"potential-identity", "2F_a = dd_a rho + d_b d_c rho for rho = c|q|^2, c fitted", "flat", "none", 20,
               1e-6, false, [](const CheckContext& ctx) {
                 Json params;
                 Measure m = potential_identity(ctx, params);
                 m.c.tol = ctx.tol;
                 return single(std::move(m), params);
               }});
  r.push_back({"strong-asymptotics", "limits of the strong metric at r = 1e3 and r = 1e-3", "strong-taub-nut", "none",
               20, 1.0, false, [](const CheckContext& ctx) { return composite(strong_asymptotics(ctx)); }});
  r.push_back({"descent-controls", "descent check reporting for rho = psi and rho = 0", "flat", "taub-nut", 10, 1.0,
               false, [](const CheckContext& ctx) { return composite(descent_controls(ctx)); }});

  // One composite per acceptance criterion; residual = max over components of value/tol
  // (tol/value for lower bounds), so the composite tolerance is 1.
  auto ac = [&](std::string name, std::string desc, std::string metric, std::string action, int points,
                std::function<CheckOutcome(const CheckContext&)> run) {
    r.push_back({std::move(name), std::move(desc), std::move(metric), std::move(action), points, 1.0, false,
                 std::move(run)});
  };
  ac("ac01-flat-baseline", "flat H^2: hermiticity, dF_a and hkt residual below 1e-8", "flat", "none", 200,
     [](const CheckContext& c) { return composite({flat_hermiticity(c), flat_kaehler_closure(c), flat_hkt(c)}); });
  ac("ac02-hkt-condition", "ds^2_h with h = 1 + r^2 is HKT; (1 + t_1^2) g_flat is not", "conformal-h", "none", 200,
     [](const CheckContext& c) { return composite({conformal_hkt(c), negative_control_hkt(c)}); });
  ac("ac03-moment-maps", "Cauchy-Riemann, equivariance, transversality, closure", "flat", "taub-nut,lwy", 200,
     [](const CheckContext& c) {
       Json params;
       CheckContext closure_ctx = c;
       closure_ctx.points = std::min(c.points, 50);
       Measure closure = closure_flat(closure_ctx, params);
       return composite({cr_taub_nut(c), cr_lwy(c), equivariance_taub_nut(c), equivariance_lwy(c),
                         transversality_taub_nut(c), transversality_lwy(c), closure},
                        params);
     });
  ac("ac04-taub-nut-reduction", "reduction of the flat metric equals ds^2_TN for lambda in {0.5, 1, 2}", "taub-nut",
     "taub-nut", 50, [](const CheckContext& c) {
       std::vector<Measure> ms;
       for (double l : lambdas_for(c)) ms.push_back(taub_nut_reduction(c, l));
       return composite(std::move(ms));
     });
  ac("ac05-conformal-factor", "reduction of ds^2_h equals conformal_factor * ds^2_TN", "hkt-taub-nut-quotient",
     "taub-nut", 50, ac05);
  ac("ac06-strong-metric", "strong metric is HKT with dH = 0; h = 1 + r^3 has dH != 0", "strong-taub-nut",
     "taub-nut", 50, [](const CheckContext& c) { return composite({strong_hkt(c), strong_dh(c), weak_dh(c)}); });
  ac("ac07-lwy", "LWY conformal reduction, product case, non-conformality", "lwy-quotient-diagonal", "lwy", 50,
     [](const CheckContext& c) { return composite({lwy_conformal(c), lwy_product_closed(c), lwy_nonconformal(c)}); });
  ac("ac08-delta-complex", "delta_G^2 = 0 and the su(2) example", "none", "lie-algebras", 1,
     [](const CheckContext& c) {
       Json params;
       Measure d = delta_squared(c, params);
       return composite({d, su2_example(c)}, params);
     });
  ac("ac09-bracket", "[X^u, Y^u] has no vertical part on the Taub-NUT patch", "flat", "taub-nut", 10,
     [](const CheckContext& c) { return composite({bracket(c)}); });
  ac("ac10-potential", "HKT potential identity and descent reporting", "flat", "trivial,taub-nut", 20,
     [](const CheckContext& c) {
       Json params;
       std::vector<Measure> ms = {potential_identity(c, params), descent_trivial(c)};
       CheckContext controls = c;
       controls.points = std::min(c.points, 10);
       for (auto& m : descent_controls(controls)) ms.push_back(std::move(m));
       return composite(std::move(ms), params);
     });
  ac("ac11-determinism", "identical reruns and seed-stable verdicts for ac01..ac10", "all", "all", 0, ac11);
  return r;
}

CheckOutcome ac11(const CheckContext& ctx) {
  SuiteConfig base = default_suite("paper-all");
  base.checks.pop_back();  // everything except this check
  base.overrides.seed = ctx.seed;
  const SuiteResult first = run_suite(base);
  const SuiteResult second = run_suite(base);
  const bool identical = emit_report(base, first) == emit_report(base, second);
  int flips = 0;
  Json seeds = Json::array();
  for (std::uint64_t k = 1; k <= 5; ++k) {
    SuiteConfig other = base;
    other.overrides.seed = ctx.seed + 1000 * k;
    seeds.push_back(*other.overrides.seed);
    const SuiteResult res = run_suite(other);
    for (std::size_t i = 0; i < res.checks.size(); ++i)
      if (res.checks[i].pass != first.checks[i].pass) ++flips;
  }
  Json params;
  params["seeds"] = seeds;
  return composite({upper("report bytes differ", identical ? 0.0 : 1.0, 0.5),
                    upper("verdict flips across seeds", static_cast<double>(flips), 0.5)},
                   params);
}

}  // namespace

const std::vector<CheckDef>& check_registry() {
  static const std::vector<CheckDef> registry = build_registry();
  return registry;
}

const CheckDef& find_check(const std::string& name) {
  for (const auto& d : check_registry())
    if (d.name == name) return d;
  throw ConfigError("unknown check '" + name + "'");
}

std::vector<std::string> suite_names() { return {"paper-all", "fine"}; }

SuiteConfig default_suite(const std::string& name) {
  SuiteConfig cfg;
  for (const auto& d : check_registry()) {
    const bool is_ac = d.name.rfind("ac", 0) == 0 && d.name.size() > 4 && std::isdigit(d.name[2]);
    if (name == "paper-all" ? is_ac : (name == "fine" && !is_ac)) cfg.checks.push_back({d.name, {}, {}});
  }
  if (cfg.checks.empty()) throw ConfigError("unknown suite '" + name + "'");
  return cfg;
}

}  // namespace hktred
