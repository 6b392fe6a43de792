#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hktred/fields.hpp"
#include "hktred/hypercomplex.hpp"
#include "hktred/kt_hkt.hpp"
#include "hktred/lie_algebra.hpp"

namespace hktred {

struct GroupAction {
  LieAlgebra algebra;
  std::vector<VectorField> killing;  // one per generator
  std::vector<Flow> flows;           // closed-form flows, same order

  int dim() const { return algebra.dim(); }
  /// max over samples and generators of |φ_0(p) − p| and |d/dt φ_t(p)|_{t=0} − X(p)|.
  double flow_consistency_residual(const std::vector<Vec>& samples, FdOptions fd = {}) const;
};

/// ν : M → R^3 ⊗ 𝔤*, stored with component (generator a, axis r) at index 3a + (r − 1).
struct MomentMap {
  int generators = 0;
  std::function<Vec(const Vec&)> nu;
  /// Analytic differential, rows in the same order as nu; falls back to FD when empty.
  std::function<Mat(const Vec&)> dnu;

  static int component(int generator, int axis) { return 3 * generator + axis - 1; }
  Mat differential(const Vec& p, FdOptions fd = {}) const;
  ScalarField scalar(int generator, int axis) const;
};

/// max over samples of |D_analytic ν − D_FD ν|.
double moment_differential_residual(const MomentMap& mm, const std::vector<Vec>& samples,
                                    FdOptions fd = {});

/// max |I1 dν_a^1 − I2 dν_a^2| and |I2 dν_a^2 − I3 dν_a^3|.
SampleMax cauchy_riemann_residual(const MomentMap& mm, const HypercomplexTriple& h,
                                  const std::vector<Vec>& samples);

/// min over samples and generators b of |I_1 dν_b^1(X_b)|.
SampleMax transversality_minimum(const MomentMap& mm, const GroupAction& action,
                                 const HypercomplexTriple& h, const std::vector<Vec>& samples);

/// max |ℒ_b ν_a^r − f^c_{ba} ν_c^r| using ℒ_b ν = dν(X_b).
SampleMax equivariance_residual(const MomentMap& mm, const GroupAction& action,
                                const std::vector<Vec>& samples);

struct ClosureResult {
  double closure = 0.0;     // max |d(X̃ + u − I_a dν)|
  double hypothesis = 0.0;  // max |du − i_X H|
  double kappa = 0.0;       // least-squares κ in X̃ + u ≈ κ I_a dν
  Vec argmax;
};

/// Closure test for w = X̃ + u against I_a dν for one generator. Throws HypothesisError when
/// du ≠ i_X H beyond hypothesis_tol; an empty torsion field means H = 0.
ClosureResult moment_closure_residual(const MetricField& g, const VectorField& x,
                                      const KFormField& u, const ScalarField& nu_component,
                                      const HypercomplexTriple& h, int axis,
                                      const KFormField& torsion,
                                      const std::vector<Vec>& samples, FdOptions fd = {},
                                      double hypothesis_tol = 1e-6);

/// max |u_b(X_a) + u_a(X_b)| over samples and generator pairs.
SampleMax equiv_extension_pairing(const std::vector<KFormField>& u, const GroupAction& action,
                                  const std::vector<Vec>& samples);

/// max |ℒ_b φ_a − f^c_{ba} φ_c| with ℒ from the closed-form flows.
SampleMax delta_on_functions(const std::vector<ScalarField>& phi, const GroupAction& action,
                             const std::vector<Vec>& samples, FdOptions fd = {});

struct ShktResult {
  double closedness = 0.0;  // max |dz^r_a|
  double cross_axis = 0.0;  // max |z^r_a − z^s_a|
};

/// z^r_a = X̃_a + u_a − I_r dν^r_a.
ShktResult shkt_moment_residual(const MetricField& g, const GroupAction& action,
                                const MomentMap& mm, const std::vector<KFormField>& u,
                                const HypercomplexTriple& h, const std::vector<Vec>& samples,
                                FdOptions fd = {});

/// Dual 1-form X̃ = g(X, ·).
KFormField dual_one_form(MetricField g, VectorField x);

struct HypothesisError : Error {
  using Error::Error;
};

}  // namespace hktred
