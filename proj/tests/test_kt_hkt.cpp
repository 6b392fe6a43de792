#include <doctest.h>

#include <cmath>

#include "hktred/catalog.hpp"
#include "hktred/kt_hkt.hpp"
#include "hktred/reduction.hpp"
#include "hktred/sampling.hpp"
#include "hktred/symmetry.hpp"

using namespace hktred;

namespace {

Vec e(int n, int i) {
  Vec v = Vec::Zero(n);
  v[i] = 1.0;
  return v;
}

HyperHermitian ambient(MetricSpec spec) {
  return with_constant_structure(metric_field(std::move(spec)), HypercomplexTriple::standard(2));
}

std::vector<Vec> pts(int n, std::uint64_t seed = 1) { return ambient_domain(1, seed, n).samples(); }

const Polynomial kOnePlusR2{{1.0, 0.0, 1.0}};

}  // namespace

TEST_CASE("Kähler forms of the flat metric") {
  const HypercomplexTriple h = HypercomplexTriple::standard(1);
  const Mat g = Mat::Identity(4, 4);
  const Form f1 = kaehler_form_at(g, h.vector(1));
  const Form f3 = kaehler_form_at(g, h.vector(3));
  const auto b = [](int i, int j) { return Form::basis(4, {i, j}); };
  CHECK((f1 - (b(0, 1) + b(2, 3))).max_abs() < 1e-15);
  CHECK((f3 - (b(0, 3) + b(1, 2))).max_abs() < 1e-15);
  CHECK(f1.antisymmetry_residual() == 0.0);
}

TEST_CASE("Kähler form of the conformal metric by explicit evaluation") {
  const auto hh = ambient(ConformalH{kOnePlusR2});
  const Vec p = pts(1, 8)[0];
  const Mat g = hh.g(p);
  for (int a = 1; a <= 3; ++a) {
    const Mat v = HypercomplexTriple::standard(2).vector(a);
    const Form f = kaehler_form(hh, a)(p);
    const double rr = quaternion_at(p, 0).t * quaternion_at(p, 0).t + p.segment<3>(1).squaredNorm();
    const double factor = kOnePlusR2(rr) / rr;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        const double direct = (v * e(8, i)).dot(g * e(8, j));  // g(I ∂_i, ∂_j)
        CHECK(std::abs(f({i, j}) - direct) < 1e-13);
        const double flat = (v * e(8, i)).dot(e(8, j));
        CHECK(std::abs(f({i, j}) - (i < 4 && j < 4 ? factor : (i >= 4 && j >= 4 ? 1.0 : 0.0)) * flat) < 1e-12);
      }
  }
}

TEST_CASE("Kähler form input validation") {
  const Mat v = HypercomplexTriple::standard(1).vector(1);
  CHECK_THROWS_AS(kaehler_form_at(Mat::Zero(4, 4), v), DomainError);
  Mat skew = Mat::Identity(4, 4);
  skew(0, 0) = 3.0;  // not Hermitian for I
  CHECK_THROWS_AS(kaehler_form_at(skew, v), DomainError);
  Mat nonsym = Mat::Identity(4, 4);
  nonsym(0, 1) = 0.5;
  CHECK_THROWS_AS(kaehler_form_at(nonsym, v), DomainError);
  CHECK(hermiticity_residual(skew, v) == doctest::Approx(2.0));
}

TEST_CASE("hermiticity of catalog ambient metrics") {
  for (const MetricSpec& s : {MetricSpec{Flat{1}}, MetricSpec{ConformalH{kOnePlusR2}}, MetricSpec{TConformalFlat{1}}})
    CHECK(hermiticity_residual(ambient(s), pts(200)).value < 1e-10);
}

TEST_CASE("omega_1 purity") {
  const auto ops = HypercomplexTriple::standard(2).vector_ops();
  CHECK(omega1_purity_residual(Mat::Identity(8, 8), ops) < 1e-12);
  const auto hh = ambient(ConformalH{kOnePlusR2});
  for (const Vec& p : pts(50)) CHECK(omega1_purity_residual(hh.g(p), ops) < 1e-10);
  CHECK_THROWS(omega1_at(Mat::Zero(8, 8), ops));
}

TEST_CASE("HKT residual: flat, conformal and negative control") {
  CHECK(hkt_residual(ambient(Flat{1}), pts(200)).value < 1e-8);
  CHECK(hkt_residual(ambient(ConformalH{kOnePlusR2}), pts(200)).value < 1e-6);
  const SampleMax neg = hkt_residual(ambient(TConformalFlat{1}), pts(200));
  CHECK(neg.value > 1e-3);
  REQUIRE(neg.index >= 0);
  CHECK(neg.point == pts(200)[static_cast<std::size_t>(neg.index)]);
}

TEST_CASE("dF_a vanishes for the flat metric but not for a conformal one") {
  for (int a = 1; a <= 3; ++a) {
    CHECK(kaehler_closure_residual(ambient(Flat{1}), a, pts(50)).value < 1e-8);
    CHECK(kaehler_closure_residual(ambient(ConformalH{kOnePlusR2}), a, pts(50)).value > 1e-2);
  }
}

TEST_CASE("Bismut torsion") {
  const auto flat = ambient(Flat{1});
  for (const Vec& p : pts(20)) CHECK(bismut_torsion(flat, 1)(p).max_abs() < 1e-8);
  const auto conf = ambient(ConformalH{kOnePlusR2});
  const auto sample = pts(30);
  CHECK(bismut_torsion(conf, 2)(sample[0]).antisymmetry_residual() < 1e-12);
  CHECK(bismut_torsion(conf, 2)(sample[0]).max_abs() > 1e-2);
  CHECK(torsion_axis_agreement(conf, sample).value < 1e-6);
  // HKT ⇔ torsions agree: the negative control disagrees.
  CHECK(torsion_axis_agreement(ambient(TConformalFlat{1}), sample).value > 1e-3);

  const ReductionSetup s = taub_nut_setup(1.0);
  const auto tn = quotient_pair(s, metric_field(TaubNUT{1.0}));
  for (const Vec& q : quotient_points(s, level_samples(1, 5, 10)))
    CHECK(bismut_torsion(tn, 1, kNestedFd)(q).max_abs() < 1e-5);
}

TEST_CASE("strong residual") {
  const ReductionSetup s = taub_nut_setup(1.0);
  const auto qp = quotient_points(s, level_samples(1, 12, 20));
  CHECK(strong_residual(quotient_pair(s, metric_field(StrongTN{1.0})), qp).value < 1e-4);
  CHECK(strong_residual(ambient(Flat{1}), pts(5)).value < 1e-6);
  const auto weak = quotient_pair(s, metric_field(HKTTaubNUTQuotient{{{1.0, 0.0, 0.0, 1.0}}, 1.0}));
  CHECK(strong_residual(weak, qp).value > 1e-2);
}

TEST_CASE("Killing length gradient") {
  const double lambda = 1.3;
  const GroupAction act = taub_nut_action(lambda);
  const MetricField flat = metric_field(Flat{1});
  const auto sample = pts(30);
  // g(X, X) = |q|^2 + λ², so d g(X,X) = 2q on the q block.
  const SampleMax s = killing_length_gradient(flat, act.killing[0], sample);
  double oracle = 0.0;
  for (const Vec& p : sample) oracle = std::max(oracle, 2.0 * p.head<4>().cwiseAbs().maxCoeff());
  CHECK(s.value == doctest::Approx(oracle).epsilon(1e-8));
  for (const Vec& p : sample) CHECK((act.killing[0](p)).squaredNorm() == doctest::Approx(p.head<4>().squaredNorm() + lambda * lambda));
  const VectorField dy = [](const Vec&) { return e(8, 6); };
  CHECK(killing_length_gradient(flat, dy, sample).value < 1e-10);
  const VectorField two_x = [&](const Vec& p) { return Vec(2.0 * act.killing[0](p)); };
  // the length is quadratic in X, so the gradient scales by 4
  CHECK(killing_length_gradient(flat, two_x, sample).value == doctest::Approx(4.0 * s.value).epsilon(1e-8));
}
