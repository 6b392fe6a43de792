#pragma once

#include <string>
#include <variant>
#include <vector>

#include "hktred/fields.hpp"
#include "hktred/quaternion.hpp"
#include "hktred/symmetry.hpp"

namespace hktred {

/// c_0 + c_1 r + c_2 r^2 + ...
struct Polynomial {
  std::vector<double> c;

  double operator()(double r) const;
  static Polynomial constant(double v) { return {{v}}; }
};

// ---- charts ---------------------------------------------------------------

/// (ψ, r-vec, y, y-vec) with q = s(r) e^{iψ/2}, r-vec = q i q̄, w = y + y-vec.
struct ChartPoint {
  double psi = 0.0;
  Vec3 r = Vec3::Zero();
  double y = 0.0;
  Vec3 yv = Vec3::Zero();
};

/// Section of the Hopf map: r_vector(hopf_section(r)) = r. Smooth off the negative r3 axis.
Quaternion hopf_section(const Vec3& r);
ChartPoint chart_forward(const Quaternion& q, const Quaternion& w);
std::pair<Quaternion, Quaternion> chart_back(const ChartPoint& c);

/// Flat metric in chart coordinates ordered (ψ, r1, r2, r3, y, y1, y2, y3).
Mat flat_metric_in_chart(const ChartPoint& c);

/// ω = (r2, −r1, 0) / (r (r + r3)), curl ω = grad(1/r). Singular on r3 ≤ 0 axis.
Vec3 dirac_potential(const Vec3& r);

double conformal_factor(const Polynomial& h, double r, double lambda);
double strong_h(double r, double lambda);
Polynomial strong_h_polynomial(double lambda);

// ---- metric specifications ------------------------------------------------

struct Flat { int m = 1; };
/// (h(r)/r) dq dq̄ + dw dw̄ on H x H.
struct ConformalH { Polynomial h; };
/// (1 + t_1^2) times the flat metric on H^m x H^m; not HKT.
struct TConformalFlat { int m = 1; };
/// Quotient charts below use (r1, r2, r3, τ) per factor.
struct TaubNUT { double lambda = 1.0; };
struct HKTTaubNUTQuotient { Polynomial h; double lambda = 1.0; };
struct StrongTN { double lambda = 1.0; };
/// Flat metric on H^m x H^m for the action with matrix Λ.
struct LWYFlat { Mat Lambda; };
/// Σ_a f_a(r_a) dq_a dq̄_a + Σ_a dw_a dw̄_a. With f = h/r and m = 1 this is ConformalH.
struct LWYConformal { std::vector<Polynomial> f; Vec lambda; };
struct LWYQuotientDiagonal { std::vector<Polynomial> f; Vec lambda; };
struct LWYProduct { Vec lambda; };

using MetricSpec = std::variant<Flat, ConformalH, TConformalFlat, TaubNUT, HKTTaubNUTQuotient,
                                StrongTN, LWYFlat, LWYConformal, LWYQuotientDiagonal, LWYProduct>;

std::string metric_name(const MetricSpec& spec);
/// Real dimension of the chart the metric is expressed in.
int chart_dim(const MetricSpec& spec);
bool is_quotient_metric(const MetricSpec& spec);
/// Largest r = |q|^2 reached by the default ambient box.
inline constexpr double kAmbientRMax = 16.0;

/// Constructor-time checks: λ ≠ 0, Λ invertible, h and f_a positive on a seeded sample of
/// (0, r_max].
void validate(const MetricSpec& spec, double r_max = kAmbientRMax);

Mat eval_metric(const MetricSpec& spec, const Vec& point);
MetricField metric_field(MetricSpec spec, double r_max = kAmbientRMax);

// ---- actions and moment maps ----------------------------------------------

/// (q, w) -> (q e^{it}, w + λ t) on H x H.
GroupAction taub_nut_action(double lambda);
/// ν = ½ q i q̄ − λ Im(w); its level set ν = 0 is y-vec = r / (2λ).
MomentMap taub_nut_moment(double lambda);

/// q_b -> q_b e^{i t_b}, w_a -> w_a + Σ_b Λ(a, b) t_b on H^m x H^m.
GroupAction lwy_action(const Mat& Lambda);
/// ν_b = ½ r_b − Σ_a Λ(a, b) Im(w_a).
MomentMap lwy_moment(const Mat& Lambda);

/// Analytic Jacobian of r_vector with respect to (t, x, y, z).
Eigen::Matrix<double, 3, 4> r_vector_jacobian(const Quaternion& q);

}  // namespace hktred
