#include "hktred/catalog.hpp"

#include <Eigen/LU>
#include <cmath>

#include "hktred/sampling.hpp"

namespace hktred {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_lambda(double lambda) {
  if (lambda == 0.0 || !std::isfinite(lambda)) throw DomainError("lambda must be nonzero");
}

double chart_radius(const Vec3& r) {
  const double n = r.norm();
  if (n <= 0.0) throw DomainError("chart point at r = 0");
  return n;
}

// ¼ c ((1 + r v²)/r dr² + r/(1 + r v²) (dτ + ω·dr)²) written into a 4x4 block.
void lwy_block(Mat& g, int off, const Vec3& rv, double v, double c) {
  const double r = chart_radius(rv);
  const double s = 1.0 + r * v * v;
  Eigen::Vector4d a;
  a << dirac_potential(rv), 1.0;
  Eigen::Matrix4d b = Eigen::Matrix4d::Zero();
  b.topLeftCorner<3, 3>() = (s / r) * Eigen::Matrix3d::Identity();
  b += (r / s) * a * a.transpose();
  g.block<4, 4>(off, off) = 0.25 * c * b;
}

}  // namespace

double Polynomial::operator()(double r) const {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + *it;
  return acc;
}

Quaternion hopf_section(const Vec3& r) {
  const double n = chart_radius(r);
  const double a = r[0] / n, b = r[1] / n, c = r[2] / n;
  if (1.0 + c <= 0.0) throw DomainError("hopf_section: r on the negative r3 axis");
  const double s = std::sqrt(2.0 + 2.0 * c);
  // R1 rotates k to r̂ under conjugation; R0 = (1 − j)/√2 rotates i to k.
  const Quaternion r1{(1.0 + c) / s, -b / s, a / s, 0.0};
  const Quaternion r0{1.0 / std::sqrt(2.0), 0.0, -1.0 / std::sqrt(2.0), 0.0};
  return std::sqrt(n) * qmul(r1, r0);
}

ChartPoint chart_forward(const Quaternion& q, const Quaternion& w) {
  ChartPoint c;
  c.r = r_vector(q);
  const double n = chart_radius(c.r);
  const Quaternion e = (1.0 / n) * qmul(qconj(hopf_section(c.r)), q);
  c.psi = 2.0 * std::atan2(e.x, e.t);
  c.y = w.t;
  c.yv = w.imag();
  return c;
}

std::pair<Quaternion, Quaternion> chart_back(const ChartPoint& c) {
  const Quaternion q = qmul(hopf_section(c.r), exp_i(0.5 * c.psi));
  return {q, Quaternion{c.y, c.yv[0], c.yv[1], c.yv[2]}};
}

Mat flat_metric_in_chart(const ChartPoint& c) {
  const double r = chart_radius(c.r);
  Eigen::Vector4d a;  // dψ + ω·dr in (ψ, r1, r2, r3)
  a << 1.0, dirac_potential(c.r);
  Mat g = Mat::Zero(8, 8);
  Eigen::Matrix4d b = r * a * a.transpose();
  b.bottomRightCorner<3, 3>() += Eigen::Matrix3d::Identity() / r;
  g.topLeftCorner(4, 4) = 0.25 * b;
  g.bottomRightCorner(4, 4) = Mat::Identity(4, 4);
  return g;
}

Vec3 dirac_potential(const Vec3& r) {
  const double n = r.norm();
  const double den = n * (n + r[2]);
  if (!(den > 0.0)) throw DomainError("dirac_potential: on the Dirac string");
  return Vec3(r[1], -r[0], 0.0) / den;
}

double conformal_factor(const Polynomial& h, double r, double lambda) {
  if (!(r > 0.0)) throw DomainError("conformal_factor: r must be positive");
  require_lambda(lambda);
  const double l2 = 1.0 / (lambda * lambda);
  return (h(r) / (r * r) + l2) / (1.0 / r + l2);
}

double strong_h(double r, double lambda) {
  require_lambda(lambda);
  const double l2 = 1.0 / (lambda * lambda);
  return 1.0 + 2.0 * l2 * r + l2 * (l2 - 1.0) * r * r;
}

Polynomial strong_h_polynomial(double lambda) {
  require_lambda(lambda);
  const double l2 = 1.0 / (lambda * lambda);
  return {{1.0, 2.0 * l2, l2 * (l2 - 1.0)}};
}

std::string metric_name(const MetricSpec& spec) {
  return std::visit(overloaded{
                        [](const Flat&) { return std::string("flat"); },
                        [](const ConformalH&) { return std::string("conformal-h"); },
                        [](const TConformalFlat&) { return std::string("t-conformal-flat"); },
                        [](const TaubNUT&) { return std::string("taub-nut"); },
                        [](const HKTTaubNUTQuotient&) { return std::string("hkt-taub-nut-quotient"); },
                        [](const StrongTN&) { return std::string("strong-taub-nut"); },
                        [](const LWYFlat&) { return std::string("lwy-flat"); },
                        [](const LWYConformal&) { return std::string("lwy-conformal"); },
                        [](const LWYQuotientDiagonal&) { return std::string("lwy-quotient-diagonal"); },
                        [](const LWYProduct&) { return std::string("lwy-product"); },
                    },
                    spec);
}

int chart_dim(const MetricSpec& spec) {
  return std::visit(overloaded{
                        [](const Flat& s) { return 8 * s.m; },
                        [](const ConformalH&) { return 8; },
                        [](const TConformalFlat& s) { return 8 * s.m; },
                        [](const TaubNUT&) { return 4; },
                        [](const HKTTaubNUTQuotient&) { return 4; },
                        [](const StrongTN&) { return 4; },
                        [](const LWYFlat& s) { return 8 * static_cast<int>(s.Lambda.rows()); },
                        [](const LWYConformal& s) { return 8 * static_cast<int>(s.f.size()); },
                        [](const LWYQuotientDiagonal& s) { return 4 * static_cast<int>(s.f.size()); },
                        [](const LWYProduct& s) { return 4 * static_cast<int>(s.lambda.size()); },
                    },
                    spec);
}

bool is_quotient_metric(const MetricSpec& spec) {
  return std::holds_alternative<TaubNUT>(spec) || std::holds_alternative<HKTTaubNUTQuotient>(spec) ||
         std::holds_alternative<StrongTN>(spec) ||
         std::holds_alternative<LWYQuotientDiagonal>(spec) || std::holds_alternative<LWYProduct>(spec);
}

void validate(const MetricSpec& spec, double r_max) {
  std::vector<double> radii = {1e-3, 0.05, 1.0, r_max};
  Rng rng(0x5eed);
  for (int i = 0; i < 64; ++i) radii.push_back(rng.uniform(1e-3, r_max));
  auto positive = [&](const Polynomial& p, const char* what) {
    for (double r : radii)
      if (!(p(r) > 0.0)) throw DomainError(std::string(what) + " is not positive on the sampling range");
  };
  auto lambdas = [&](const Vec& l) {
    if (l.size() == 0) throw DomainError("lambda list is empty");
    for (double v : l) require_lambda(v);
  };
  std::visit(overloaded{
                 [](const Flat& s) { if (s.m <= 0) throw DomainError("m must be positive"); },
                 [&](const ConformalH& s) { positive(s.h, "h"); },
                 [](const TConformalFlat& s) { if (s.m <= 0) throw DomainError("m must be positive"); },
                 [](const TaubNUT& s) { require_lambda(s.lambda); },
                 [&](const HKTTaubNUTQuotient& s) { require_lambda(s.lambda); positive(s.h, "h"); },
                 [](const StrongTN& s) { require_lambda(s.lambda); },
                 [](const LWYFlat& s) {
                   if (s.Lambda.rows() == 0 || s.Lambda.rows() != s.Lambda.cols() ||
                       !Eigen::FullPivLU<Mat>(s.Lambda).isInvertible())
                     throw DomainError("Lambda must be square and invertible");
                 },
                 [&](const LWYConformal& s) {
                   lambdas(s.lambda);
                   if (s.f.size() != static_cast<std::size_t>(s.lambda.size()))
                     throw DomainError("f and lambda sizes differ");
                   for (const auto& f : s.f) positive(f, "f_a");
                 },
                 [&](const LWYQuotientDiagonal& s) {
                   lambdas(s.lambda);
                   if (s.f.size() != static_cast<std::size_t>(s.lambda.size()))
                     throw DomainError("f and lambda sizes differ");
                   for (const auto& f : s.f) positive(f, "f_a");
                 },
                 [&](const LWYProduct& s) { lambdas(s.lambda); },
             },
             spec);
}

Mat eval_metric(const MetricSpec& spec, const Vec& p) {
  if (p.size() != chart_dim(spec)) throw ArgumentError("eval_metric: point has wrong dimension");
  return std::visit(
      overloaded{
          [&](const Flat& s) -> Mat { return Mat::Identity(8 * s.m, 8 * s.m); },
          [&](const ConformalH& s) -> Mat {
            const double r = qnorm2(quaternion_at(p, 0));
            if (!(r > 0.0)) throw DomainError("conformal metric at q = 0");
            Mat g = Mat::Identity(8, 8);
            g.topLeftCorner(4, 4) *= s.h(r) / r;
            return g;
          },
          [&](const TConformalFlat& s) -> Mat {
            return (1.0 + p[0] * p[0]) * Mat::Identity(8 * s.m, 8 * s.m);
          },
          [&](const TaubNUT& s) -> Mat {
            const Vec3 rv = p.head<3>();
            const double r = chart_radius(rv);
            const double v = 1.0 / r + 1.0 / (s.lambda * s.lambda);
            Eigen::Vector4d a;
            a << dirac_potential(rv), 1.0;
            Mat g = (0.25 / v) * a * a.transpose();
            g.topLeftCorner(3, 3) += 0.25 * v * Mat::Identity(3, 3);
            return g;
          },
          [&](const HKTTaubNUTQuotient& s) -> Mat {
            const Vec3 rv = p.head<3>();
            const double r = chart_radius(rv);
            const double l2 = 1.0 / (s.lambda * s.lambda);
            const double a_coef = s.h(r) / (r * r) + l2;
            const double v = 1.0 / r + l2;
            Eigen::Vector4d a;
            a << dirac_potential(rv), 1.0;
            Mat g = 0.25 * a_coef / (v * v) * a * a.transpose();
            g.topLeftCorner(3, 3) += 0.25 * a_coef * Mat::Identity(3, 3);
            return g;
          },
          [&](const StrongTN& s) -> Mat {
            const Vec3 rv = p.head<3>();
            const double r = chart_radius(rv);
            const double v = 1.0 / r + 1.0 / (s.lambda * s.lambda);
            Eigen::Vector4d a;
            a << dirac_potential(rv), 1.0;
            Mat g = 0.25 * a * a.transpose();
            g.topLeftCorner(3, 3) += 0.25 * v * v * Mat::Identity(3, 3);
            return g;
          },
          [&](const LWYFlat& s) -> Mat {
            const int n = 8 * static_cast<int>(s.Lambda.rows());
            return Mat::Identity(n, n);
          },
          [&](const LWYConformal& s) -> Mat {
            const int m = static_cast<int>(s.f.size());
            Mat g = Mat::Identity(8 * m, 8 * m);
            for (int a = 0; a < m; ++a) {
              const double r = qnorm2(quaternion_at(p, HPoint::q_offset(a)));
              if (!(r > 0.0)) throw DomainError("conformal metric at q_a = 0");
              g.block(4 * a, 4 * a, 4, 4) *= s.f[a](r);
            }
            return g;
          },
          [&](const LWYQuotientDiagonal& s) -> Mat {
            const int m = static_cast<int>(s.f.size());
            Mat g = Mat::Zero(4 * m, 4 * m);
            for (int a = 0; a < m; ++a) {
              const Vec3 rv = p.segment<3>(4 * a);
              const double r = chart_radius(rv);
              const double v = 1.0 / s.lambda[a];
              const double c = (s.f[a](r) + r * v * v) / (1.0 + r * v * v);
              lwy_block(g, 4 * a, rv, v, c);
            }
            return g;
          },
          [&](const LWYProduct& s) -> Mat {
            const int m = static_cast<int>(s.lambda.size());
            Mat g = Mat::Zero(4 * m, 4 * m);
            for (int a = 0; a < m; ++a) {
              const Vec3 rv = p.segment<3>(4 * a);
              const double r = chart_radius(rv);
              const double vv = 1.0 / r + 1.0 / (s.lambda[a] * s.lambda[a]);
              Eigen::Vector4d w;
              w << dirac_potential(rv), 1.0;
              g.block(4 * a, 4 * a, 4, 4) = (0.25 / vv) * w * w.transpose();
              g.block(4 * a, 4 * a, 3, 3) += 0.25 * vv * Mat::Identity(3, 3);
            }
            return g;
          },
      },
      spec);
}

MetricField metric_field(MetricSpec spec, double r_max) {
  validate(spec, r_max);
  return [spec = std::move(spec)](const Vec& p) { return eval_metric(spec, p); };
}

Eigen::Matrix<double, 3, 4> r_vector_jacobian(const Quaternion& q) {
  // r = (t² + x² − y² − z², 2(xy + tz), 2(xz − ty)).
  Eigen::Matrix<double, 3, 4> j;
  j << 2 * q.t, 2 * q.x, -2 * q.y, -2 * q.z,
       2 * q.z, 2 * q.y, 2 * q.x, 2 * q.t,
      -2 * q.y, 2 * q.z, -2 * q.t, 2 * q.x;
  return j;
}

GroupAction taub_nut_action(double lambda) { return lwy_action(Mat::Constant(1, 1, lambda)); }

MomentMap taub_nut_moment(double lambda) { return lwy_moment(Mat::Constant(1, 1, lambda)); }

GroupAction lwy_action(const Mat& lambda) {
  if (lambda.rows() != lambda.cols() || lambda.rows() == 0)
    throw ArgumentError("lwy_action: Lambda must be square");
  const int m = static_cast<int>(lambda.rows());
  GroupAction act;
  act.algebra = LieAlgebra::abelian(m);
  for (int b = 0; b < m; ++b) {
    act.killing.push_back([lambda, m, b](const Vec& p) {
      Vec x = Vec::Zero(8 * m);
      store_quaternion(x, HPoint::q_offset(b), qmul(quaternion_at(p, HPoint::q_offset(b)), Quaternion::i()));
      for (int a = 0; a < m; ++a) x[HPoint::w_offset(m, a)] = lambda(a, b);
      return x;
    });
    act.flows.push_back([lambda, m, b](const Vec& p, double t) {
      Vec out = p;
      store_quaternion(out, HPoint::q_offset(b), qmul(quaternion_at(p, HPoint::q_offset(b)), exp_i(t)));
      for (int a = 0; a < m; ++a) out[HPoint::w_offset(m, a)] += lambda(a, b) * t;
      return out;
    });
  }
  return act;
}

MomentMap lwy_moment(const Mat& lambda) {
  if (lambda.rows() != lambda.cols() || lambda.rows() == 0)
    throw ArgumentError("lwy_moment: Lambda must be square");
  const int m = static_cast<int>(lambda.rows());
  MomentMap mm;
  mm.generators = m;
  mm.nu = [lambda, m](const Vec& p) {
    Vec nu(3 * m);
    for (int b = 0; b < m; ++b) {
      Vec3 v = 0.5 * r_vector(quaternion_at(p, HPoint::q_offset(b)));
      for (int a = 0; a < m; ++a) v -= lambda(a, b) * quaternion_at(p, HPoint::w_offset(m, a)).imag();
      nu.segment<3>(3 * b) = v;
    }
    return nu;
  };
  mm.dnu = [lambda, m](const Vec& p) {
    Mat d = Mat::Zero(3 * m, 8 * m);
    for (int b = 0; b < m; ++b) {
      d.block(3 * b, HPoint::q_offset(b), 3, 4) =
          0.5 * r_vector_jacobian(quaternion_at(p, HPoint::q_offset(b)));
      for (int a = 0; a < m; ++a)
        d.block(3 * b, HPoint::w_offset(m, a) + 1, 3, 3) = -lambda(a, b) * Mat::Identity(3, 3);
    }
    return d;
  };
  return mm;
}

}  // namespace hktred
