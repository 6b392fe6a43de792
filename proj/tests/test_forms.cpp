#include <doctest.h>

#include <random>

#include "hktred/forms.hpp"

using namespace hktred;

namespace {

Form random_form(int k, int n, std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Form f(k, n);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = u(g);
  return f.antisymmetrized();
}

Vec e(int n, int i) {
  Vec v = Vec::Zero(n);
  v[i] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("wedge normalisation and interior product") {
  const Form dt = Form::basis(4, {0}), dx = Form::basis(4, {1});
  const Form w = wedge(dt, dx);
  CHECK(w({0, 1}) == doctest::Approx(1.0));
  CHECK(w({1, 0}) == doctest::Approx(-1.0));
  const std::vector<Vec> args = {e(4, 0), e(4, 1)};
  CHECK(w.evaluate(args) == doctest::Approx(1.0));
  const Form i_t = w.interior(e(4, 0));
  CHECK((i_t - dx).max_abs() < 1e-15);
  CHECK((Form::basis(4, {0, 1}) - w).max_abs() < 1e-15);
}

TEST_CASE("wedge is graded commutative and associative") {
  std::mt19937_64 g(3);
  for (int n = 0; n < 20; ++n) {
    const Form a = random_form(1, 5, g), b = random_form(2, 5, g), c = random_form(1, 5, g);
    CHECK((wedge(a, b) - wedge(b, a)).max_abs() < 1e-12);
    CHECK((wedge(a, c) + wedge(c, a)).max_abs() < 1e-12);
    CHECK((wedge(wedge(a, b), c) - wedge(a, wedge(b, c))).max_abs() < 1e-12);
    CHECK(wedge(a, a).max_abs() < 1e-14);
    CHECK(wedge(a, b).antisymmetry_residual() < 1e-12);
  }
}

TEST_CASE("wedge of covectors is the determinant") {
  std::mt19937_64 g(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat a(3, 3), x(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      a(i, j) = u(g);
      x(i, j) = u(g);
    }
  const Form w = wedge(wedge(Form::covector(a.row(0).transpose()), Form::covector(a.row(1).transpose())),
                       Form::covector(a.row(2).transpose()));
  const std::vector<Vec> args = {x.col(0), x.col(1), x.col(2)};
  CHECK(w.evaluate(args) == doctest::Approx((a * x).determinant()).epsilon(1e-12));
}

TEST_CASE("transformed and matrix round trip") {
  Mat m(2, 2);
  m << 0.0, 2.0, -2.0, 0.0;
  const Form f = Form::from_matrix(m);
  CHECK(f.as_matrix() == m);
  Mat p(2, 2);
  p << 1.0, 3.0, 0.0, 1.0;
  CHECK((f.transformed(p).as_matrix() - p.transpose() * m * p).cwiseAbs().maxCoeff() < 1e-15);
  const Form c = Form::covector(Vec::LinSpaced(4, 1, 4));
  CHECK(c.as_covector() == Vec::LinSpaced(4, 1, 4));
  CHECK(Form::scalar(2.5, 3)[0] == 2.5);
}

TEST_CASE("antisymmetry detection and index helpers") {
  Form f(2, 3);
  f.at(std::array<int, 2>{0, 1}) = 1.0;
  CHECK(f.antisymmetry_residual() == doctest::Approx(1.0));
  CHECK(f.antisymmetrized().antisymmetry_residual() < 1e-15);
  CHECK(f.antisymmetrized()({1, 0}) == doctest::Approx(-0.5));
  std::array<int, 3> idx{};
  Form h(3, 4);
  for (std::size_t k = 0; k < h.size(); ++k) {
    h.unflatten_index(k, idx);
    CHECK(h.flat_index(idx) == k);
  }
  CHECK(permutation_sign(std::array<int, 3>{1, 0, 2}) == -1);
  CHECK(permutation_sign(std::array<int, 3>{1, 2, 0}) == 1);
  CHECK(factorial(4) == 24.0);
  CHECK_THROWS(wedge(Form(3, 3), Form(1, 3)));  // degree overflow
}
