#include <doctest.h>

#include <cmath>
#include <random>

#include "hktred/catalog.hpp"
#include "hktred/fields.hpp"
#include "hktred/sampling.hpp"
#include "hktred/symmetry.hpp"

using namespace hktred;

namespace {

Vec pt(std::initializer_list<double> v) {
  Vec p(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

// A smooth non-polynomial 1-form on R^4.
Form wavy(const Vec& p) {
  Vec c(4);
  c << std::sin(p[1]) * p[2], std::exp(0.3 * p[0]), p[3] * p[3] * p[0], std::cos(p[0] + p[2]);
  return Form::covector(c);
}

// A smooth 2-form on R^4.
Form wavy2(const Vec& p) {
  Mat m = Mat::Zero(4, 4);
  m(0, 1) = std::sin(p[2]) * p[3];
  m(0, 3) = p[0] * p[1];
  m(1, 2) = std::exp(0.2 * p[3]);
  m(2, 3) = std::cos(p[0]);
  return Form::from_matrix(m - m.transpose());
}

}  // namespace

TEST_CASE("exterior derivative of a linear function") {
  const KFormField t = [](const Vec& p) { return Form::scalar(p[0], 4); };
  const Form dt = exterior_derivative(t, pt({0.3, 1.0, -0.5, 2.0}));
  CHECK((dt - Form::basis(4, {0})).max_abs() < 1e-10);
  const Vec g = gradient([](const Vec& p) { return p[0] * p[1]; }, pt({2.0, 3.0}));
  CHECK(g[0] == doctest::Approx(3.0));
  CHECK(g[1] == doctest::Approx(2.0));
}

TEST_CASE("d of a 1-form against the coordinate formula") {
  const Vec p = pt({0.4, -0.3, 0.8, 1.1});
  const Form d = exterior_derivative(KFormField(wavy), p);
  // (dβ)_{ij} = ∂_i β_j − ∂_j β_i, analytic.
  Mat j = Mat::Zero(4, 4);  // j(i, k) = ∂_i β_k
  j(1, 0) = std::cos(p[1]) * p[2];
  j(2, 0) = std::sin(p[1]);
  j(0, 1) = 0.3 * std::exp(0.3 * p[0]);
  j(3, 2) = 2.0 * p[3] * p[0];
  j(0, 2) = p[3] * p[3];
  j(0, 3) = -std::sin(p[0] + p[2]);
  j(2, 3) = -std::sin(p[0] + p[2]);
  CHECK((d.as_matrix() - (j - j.transpose())).cwiseAbs().maxCoeff() < 1e-7);
  CHECK(d.antisymmetry_residual() < 1e-12);
}

TEST_CASE("d squared vanishes up to truncation") {
  const auto pts = box_domain(4, -1.0, 1.0, 5, 100).samples();
  const KFormField d1 = exterior_derivative(KFormField(wavy), kNestedFd);
  const KFormField d2 = exterior_derivative(KFormField(wavy2), kNestedFd);
  double worst = 0.0;
  for (const Vec& p : pts) {
    worst = std::max(worst, exterior_derivative(d1, p, kNestedFd).max_abs());
    worst = std::max(worst, exterior_derivative(d2, p, kNestedFd).max_abs());
  }
  CHECK(worst < 1e-6);

  const MomentMap mm = taub_nut_moment(1.0);
  const auto amb = ambient_domain(1, 3, 20).samples();
  for (const Vec& p : amb) {
    const KFormField dnu = differential(mm.scalar(0, 1), kNestedFd);
    CHECK(exterior_derivative(dnu, p, kNestedFd).max_abs() < 1e-6);
  }
}

TEST_CASE("Lie derivatives along the Taub-NUT action") {
  const GroupAction act = taub_nut_action(1.0);
  const auto pts = ambient_domain(1, 17, 30).samples();
  const HypercomplexTriple h = HypercomplexTriple::standard(2);
  const MetricField flat = [](const Vec&) { return Mat(Mat::Identity(8, 8)); };
  for (const Vec& p : pts) {
    CHECK(lie_derivative(act.flows[0], flat, p, kNestedFd).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(lie_derivative(act.flows[0], [](const Vec&) { return 4.0; }, p) == 0.0);
    for (int a = 1; a <= 3; ++a) {
      const Mat v = h.vector(a);
      CHECK(lie_derivative_endomorphism(act.flows[0], [v](const Vec&) { return v; }, p, kNestedFd)
                .cwiseAbs()
                .maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("Lie derivative of a form: flow definition agrees with Cartan's formula") {
  const GroupAction act = taub_nut_action(1.0);
  const KFormField beta = [](const Vec& p) {
    Vec c(8);
    for (int i = 0; i < 8; ++i) c[i] = std::sin(0.5 * i + p[i]) * p[(i + 3) % 8];
    return Form::covector(c);
  };
  for (const Vec& p : ambient_domain(1, 23, 20).samples()) {
    const Form flow = lie_derivative(act.flows[0], beta, p, kNestedFd);
    const Form cartan = cartan_lie_derivative(act.killing[0], beta, p, kNestedFd);
    CHECK((flow - cartan).max_abs() < 1e-6);
  }
}

TEST_CASE("flow derivative at zero reproduces the Killing field") {
  const GroupAction act = lwy_action((Mat(2, 2) << 1.0, 0.5, 0.0, 2.0).finished());
  const auto pts = ambient_domain(2, 2, 20).samples();
  CHECK(act.flow_consistency_residual(pts) < 1e-8);
  for (const Vec& p : pts) CHECK((act.flows[1](p, 0.0) - p).norm() == 0.0);
}

TEST_CASE("pullback of dtau along the chart map") {
  const double lambda = 1.5;
  const MapField to_chart = [](const Vec& p) {
    const ChartPoint c = chart_forward(quaternion_at(p, 0), quaternion_at(p, 4));
    Vec out(8);
    out << c.psi, c.r, c.y, c.yv;
    return out;
  };
  Vec dtau = Vec::Zero(8);
  dtau[0] = 1.0;
  dtau[4] = -2.0 / lambda;
  const KFormField pulled = pullback(to_chart, constant_form(Form::covector(dtau)), {1e-5, 4});
  const GroupAction act = taub_nut_action(lambda);
  ChartPoint c;
  c.psi = 0.4;
  c.r = Vec3(0.5, -0.3, 0.7);
  c.y = 0.2;
  const auto [q, w] = chart_back(c);
  Vec p(8);
  store_quaternion(p, 0, q);
  store_quaternion(p, 4, w);
  const Form f = pulled(p);
  // τ is invariant and the w.t derivative of τ is −2/λ.
  CHECK(std::abs(f.interior(act.killing[0](p))[0]) < 1e-8);
  CHECK(f.as_covector()[4] == doctest::Approx(-2.0 / lambda).epsilon(1e-8));
  // dψ(q i-direction) = 2.
  Vec xi = Vec::Zero(8);
  store_quaternion(xi, 0, qmul(q, Quaternion::i()));
  CHECK(f.as_covector().dot(xi) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("pullback of sum dr_i^2 equals J^T J of the r-vector map") {
  const MapField r = [](const Vec& p) { return Vec(r_vector(quaternion_at(p, 0))); };
  const MetricField dr2 = pullback_metric(r, [](const Vec&) { return Mat(Mat::Identity(3, 3)); }, {1e-4, 4});
  for (const Vec& p : box_domain(4, -1.0, 1.0, 31, 20).samples()) {
    const Mat j = r_vector_jacobian(quaternion_at(p, 0));
    CHECK((dr2(p) - j.transpose() * j).cwiseAbs().maxCoeff() < 1e-8);
  }
  // Identity map
  const MapField id = [](const Vec& p) { return p; };
  const Vec p = pt({0.1, 0.2, 0.3});
  const Form b = Form::basis(3, {0, 2});
  CHECK((pullback(id, constant_form(b))(p) - b).max_abs() < 1e-10);
}

TEST_CASE("Lie bracket of coordinate rotations") {
  const VectorField x = [](const Vec& p) { return pt({-p[1], p[0], 0.0}); };
  const VectorField y = [](const Vec& p) { return pt({0.0, -p[2], p[1]}); };
  const Vec p = pt({0.3, -0.7, 1.2});
  // [X, Y] = DY·X − DX·Y = (−z, 0, x)
  const Vec b = lie_bracket(x, y, p);
  CHECK((b - pt({-p[2], 0.0, p[0]})).norm() < 1e-9);
  CHECK(lie_bracket(x, x, p).norm() < 1e-12);
}

TEST_CASE("central differences") {
  const auto f = [](double h) { return Vec(pt({std::exp(h), std::sin(h)})); };
  const Vec d2 = central_difference(f, 1e-4, 2), d4 = central_difference(f, 1e-2, 4);
  CHECK(std::abs(d2[0] - 1.0) < 1e-8);
  CHECK(std::abs(d4[0] - 1.0) < 1e-9);
  CHECK(std::abs(d4[1] - 1.0) < 1e-9);
}

TEST_CASE("sampling domains are deterministic and honour exclusions") {
  const SamplingDomain d = ambient_domain(2, 99, 100);
  const auto a = d.samples(), b = d.samples();
  REQUIRE(a.size() == 100);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK(d.admits(a[i]));
    CHECK(a[i].cwiseAbs().maxCoeff() <= 2.0);
    for (int k = 0; k < 2; ++k) {
      const Quaternion q = quaternion_at(a[i], 4 * k);
      CHECK(std::sqrt(qnorm2(q)) >= 0.3);
      const Vec3 r = r_vector(q);
      CHECK(!(r[2] < 0.0 && r[0] * r[0] + r[1] * r[1] < 0.05));
    }
  }
  CHECK(ambient_domain(2, 100, 10).samples()[0] != a[0]);
  for (const auto& s : level_samples(2, 4, 50)) {
    for (int k = 0; k < 2; ++k) {
      CHECK(s.r[k].norm() >= 0.09);
      CHECK(std::abs(s.psi[k]) < M_PI - 0.1);
    }
  }
  SamplingDomain impossible = box_domain(2, -1.0, 1.0, 1, 3);
  impossible.exclusions.push_back({"all", [](const Vec&) { return true; }});
  impossible.max_attempts_per_point = 50;
  CHECK_THROWS(impossible.samples());
}

TEST_CASE("parallel_map gathers by index regardless of thread count") {
  const auto out = parallel_map<int>(37, [](int i) { return i * i; });
  REQUIRE(out.size() == 37);
  for (int i = 0; i < 37; ++i) CHECK(out[i] == i * i);
}
