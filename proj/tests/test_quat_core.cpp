#include <doctest.h>

#include <random>

#include <Eigen/Dense>

#include "hktred/quaternion.hpp"

using namespace hktred;

namespace {

// Independent product: left-multiplication matrix of a acting on (t,x,y,z) of b.
Quaternion oracle_mul(const Quaternion& a, const Quaternion& b) {
  Eigen::Matrix4d l;
  l << a.t, -a.x, -a.y, -a.z,
       a.x, a.t, -a.z, a.y,
       a.y, a.z, a.t, -a.x,
       a.z, -a.y, a.x, a.t;
  const Eigen::Vector4d v = l * Eigen::Vector4d(b.t, b.x, b.y, b.z);
  return {v[0], v[1], v[2], v[3]};
}

double dist(const Quaternion& a, const Quaternion& b) {
  const Quaternion d = a - b;
  return std::sqrt(qnorm2(d));
}

Quaternion random_q(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return {u(g), u(g), u(g), u(g)};
}

}  // namespace

TEST_CASE("defining relations of the Hamilton product") {
  const auto i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k(), one = Quaternion::one();
  CHECK(qmul(i, j) == k);
  CHECK(qmul(j, i) == -1.0 * k);
  CHECK(qmul(i, i) == -1.0 * one);
  CHECK(qmul(j, j) == -1.0 * one);
  CHECK(qmul(k, k) == -1.0 * one);
  CHECK(qmul(qmul(i, j), k) == -1.0 * one);
  const Quaternion q{0.3, -1.2, 0.7, 2.5};
  CHECK(qmul(one, q) == q);
  CHECK(qmul(q, one) == q);
}

TEST_CASE("product matches a matrix oracle and is associative") {
  std::mt19937_64 g(11);
  for (int n = 0; n < 500; ++n) {
    const Quaternion a = random_q(g), b = random_q(g), c = random_q(g);
    CHECK(dist(qmul(a, b), oracle_mul(a, b)) < 1e-13);
    CHECK(dist(qmul(qmul(a, b), c), qmul(a, qmul(b, c))) < 1e-12);
    // bilinearity
    CHECK(dist(qmul(a + 2.0 * b, c), qmul(a, c) + 2.0 * qmul(b, c)) < 1e-12);
  }
}

TEST_CASE("conjugate and norm") {
  const Quaternion q{1.0, 1.0, 0.0, 0.0};
  CHECK(qconj(q) == Quaternion{1.0, -1.0, 0.0, 0.0});
  CHECK(qconj(Quaternion::one()) == Quaternion::one());
  CHECK(qnorm2(q) == doctest::Approx(2.0));
  std::mt19937_64 g(5);
  for (int n = 0; n < 1000; ++n) {
    const Quaternion a = random_q(g);
    CHECK(qconj(qconj(a)) == a);
    const Quaternion aa = qmul(a, qconj(a));
    CHECK(std::abs(aa.t - qnorm2(a)) < 1e-12);
    CHECK(aa.imag().cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("inverse and exp_i") {
  const Quaternion q{0.5, -0.25, 1.5, 0.75};
  CHECK(dist(qmul(q, qinv(q)), Quaternion::one()) < 1e-14);
  CHECK_THROWS_AS(qinv(Quaternion{}), DomainError);
  const Quaternion e = exp_i(0.8);
  CHECK(e.t == doctest::Approx(std::cos(0.8)));
  CHECK(e.x == doctest::Approx(std::sin(0.8)));
  CHECK(e.y == 0.0);
  CHECK(dist(qmul(exp_i(0.3), exp_i(0.5)), exp_i(0.8)) < 1e-15);
}

TEST_CASE("r_vector examples") {
  const Vec3 r1 = r_vector(Quaternion::one());
  CHECK(r1.isApprox(Vec3(1, 0, 0)));
  const Vec3 rj = r_vector(Quaternion::j());
  CHECK((rj - Vec3(-1, 0, 0)).norm() < 1e-15);
  CHECK(r_vector(Quaternion{1, 1, 0, 0}).norm() == doctest::Approx(2.0));
}

TEST_CASE("r_vector norm equals qnorm2 and real part of q i qbar vanishes") {
  std::mt19937_64 g(77);
  for (int n = 0; n < 1000; ++n) {
    const Quaternion q = random_q(g);
    CHECK(std::abs(r_vector(q).norm() - qnorm2(q)) < 1e-12);
    const Quaternion qiq = oracle_mul(oracle_mul(q, Quaternion::i()), qconj(q));
    CHECK(std::abs(qiq.t) < 1e-12);
    CHECK((qiq.imag() - r_vector(q)).norm() < 1e-12);
  }
}

TEST_CASE("HPoint layout and round trip") {
  HPoint p({Quaternion{1, 2, 3, 4}, Quaternion{5, 6, 7, 8}}, {Quaternion{9, 10, 11, 12}, Quaternion{13, 14, 15, 16}});
  const Vec f = p.flatten();
  REQUIRE(f.size() == 16);
  for (int i = 0; i < 16; ++i) CHECK(f[i] == doctest::Approx(i + 1));
  CHECK(HPoint::q_offset(1) == 4);
  CHECK(HPoint::w_offset(2, 0) == 8);
  CHECK(HPoint::w_offset(2, 1) == 12);
  const HPoint back = HPoint::unflatten(f);
  CHECK(back.flatten() == f);
  CHECK(back.w(1) == Quaternion{13, 14, 15, 16});
  CHECK(quaternion_at(f, HPoint::w_offset(2, 0)) == Quaternion{9, 10, 11, 12});
  Vec g = Vec::Zero(8);
  store_quaternion(g, 4, Quaternion::k());
  CHECK(g[7] == 1.0);
  CHECK_THROWS(HPoint::unflatten(Vec::Zero(6)));
}
