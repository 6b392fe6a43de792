#pragma once

#include <array>
#include <string>
#include <vector>

#include "hktred/catalog.hpp"
#include "hktred/kt_hkt.hpp"
#include "hktred/sampling.hpp"
#include "hktred/symmetry.hpp"

namespace hktred {

/// Everything needed to reduce one example: the ambient hypercomplex manifold, the action,
/// its moment map, an ambient metric and an invariant quotient chart.
struct ReductionSetup {
  std::string name;
  int ambient_dim = 0;
  int quotient_dim = 0;
  HypercomplexTriple triple;
  GroupAction action;
  MomentMap moment;
  MetricField ambient_metric;
  /// Ambient point -> invariant quotient coordinates.
  MapField chart;
  /// Level-set point over quotient coordinates c, moved along the orbit by parameters `orbit`.
  std::function<Vec(const Vec& c, const Vec& orbit)> lift_point;
  /// Level-set point from sampled chart data.
  std::function<Vec(const LevelSample&)> level_point;

  int group_dim() const { return action.dim(); }
};

/// Flat H x H reduced by (q, w) -> (q e^{it}, w + λt); quotient chart (r1, r2, r3, τ), τ = ψ − 2y/λ.
ReductionSetup taub_nut_setup(double lambda, MetricField ambient = {});
/// H^m x H^m reduced by R^m with matrix Λ; chart (r_a, τ_a) with τ_a = ψ_a − 2 Σ_b (Λ^{-1})_{ab} y_b.
ReductionSetup lwy_setup(const Mat& Lambda, MetricField ambient = {});
/// H^blocks with the trivial group; the quotient chart is the identity.
ReductionSetup trivial_setup(int blocks, MetricField ambient = {});

struct TransversalityError : DomainError {
  TransversalityError(const std::string& what, int generator)
      : DomainError(what), generator(generator) {}
  int generator;
};

struct HorizontalFrame {
  Mat horizontal;  // ambient_dim x (ambient_dim − 4 dim g), orthonormal columns
  Mat vertical;    // Killing values, ambient_dim x dim g
  Vec singular_values;
};

/// Null space of the stacked rows [dν; I_r dν^r] at p, via SVD with relative threshold 1e−8.
HorizontalFrame u_distribution(const ReductionSetup& s, const Vec& p);

/// Columns u_j ∈ 𝒰 with dc_k(u_j) = δ_jk; dc is the chart differential at the point.
Mat horizontal_lift(const HorizontalFrame& frame, const Mat& dc);

/// Chart differential used by the pipeline (fourth order, step 1e−3).
inline constexpr FdOptions kChartFd{1e-3, 4};

struct ReducedMetricSample {
  Vec chart;
  Mat g;                    // ĝ_jk = g(u_j, u_k)
  std::array<Mat, 3> I;     // Î_a = dc · I_a · L on chart vectors
  std::array<Mat, 3> F;     // F̂_a = Î_aᵀ ĝ
  Mat lifts;
};

ReducedMetricSample reduced_metric_at(const ReductionSetup& s, const Vec& p);
ReducedMetricSample reduced_metric_at(const ReductionSetup& s, const Vec& p, const Mat& g);

/// Reduced metric and structure as fields on the quotient chart (orbit parameter 0).
MetricField reduced_metric_field(const ReductionSetup& s);
StructureField quotient_structure(const ReductionSetup& s);
/// A closed-form quotient metric paired with the numerically induced quotient triple.
HyperHermitian quotient_pair(const ReductionSetup& s, MetricField quotient_metric);

/// Quotient chart points for sampled level data, i.e. s.chart(s.level_point(sample)).
std::vector<Vec> quotient_points(const ReductionSetup& s, const std::vector<LevelSample>& samples);
std::vector<Vec> level_points(const ReductionSetup& s, const std::vector<LevelSample>& samples);

/// Relative Frobenius error |a − b| / |b|.
double relative_frobenius(const Mat& a, const Mat& b);

struct BracketResult {
  double horizontal = 0.0;  // max over (0,1)-pairs of |dν|, |I_r dν^r| on [Z, W]
  double vertical = 0.0;    // same on [X_b, u_j]
  double self = 0.0;        // [u_j, u_j]
};

/// Brackets of horizontal lift fields near level-set points (frames recomputed at every point).
BracketResult bracket_vertical_residual(const ReductionSetup& s, const std::vector<Vec>& points,
                                        FdOptions fd = kNestedFd);

struct DescentResult {
  double hypothesis = 0.0;  // max |dρ(X_b)|, |dρ(I_a X_b)| on the level set
  double conclusion = 0.0;  // max |2F̂_a − (d d_a ρ_N + d_b d_c ρ_N)| on the quotient chart
  bool evaluated = false;   // false when the hypothesis failed
};

DescentResult potential_descent_check(const ScalarField& rho, const ReductionSetup& s,
                                      const std::vector<Vec>& level_pts,
                                      const std::vector<Vec>& quotient_pts,
                                      double hypothesis_tol = 1e-6, FdOptions fd = kNestedFd);

/// d d_a ρ + d_b d_c ρ for cyclic (a, b, c), on any chart with a structure field.
Form potential_operator(const StructureField& structure, const ScalarField& rho, int axis,
                        const Vec& p, FdOptions fd = kNestedFd);

/// Taub-NUT: θ = ι_{∂y} g_flat on the level set in coordinates (r, τ, y) against
/// μ = dy + (1/2λ)(dτ + ω·dr)/(1/r + 1/λ²). Returns max of |θ/(1 + r/λ²) − μ| and |μ(u_j)|.
double theta_mu_residual(double lambda, const std::vector<LevelSample>& samples);

}  // namespace hktred
