#pragma once

#include <vector>

#include "hktred/fields.hpp"
#include "hktred/hypercomplex.hpp"
#include "hktred/sampling.hpp"

namespace hktred {

/// A metric together with the (possibly point-dependent) triple it is meant to be
/// hyper-Hermitian for.
struct HyperHermitian {
  MetricField g;
  StructureField structure;
};

HyperHermitian with_constant_structure(MetricField g, const HypercomplexTriple& h);

/// Maximum over samples, with the point that attained it.
struct SampleMax {
  double value = 0.0;
  int index = -1;
  Vec point;

  void update(double v, int i, const Vec& p);
};

/// max |g(VX, VY) − g(X, Y)| over basis vectors.
double hermiticity_residual(const Mat& g, const Mat& vector_op);
SampleMax hermiticity_residual(const HyperHermitian& s, const std::vector<Vec>& samples);

/// F(X, Y) = g(V X, Y), i.e. the matrix Vᵀ g. Rejects metrics that are not positive-definite
/// or not Hermitian within herm_tol (relative to the metric scale).
Form kaehler_form_at(const Mat& g, const Mat& vector_op, double herm_tol = 1e-8);
KFormField kaehler_form(const HyperHermitian& s, int axis, double herm_tol = 1e-8);

/// ω1 = F2 − i F3.
ComplexForm omega1_at(const Mat& g, const std::array<Mat, 3>& ops, double herm_tol = 1e-8);
/// Largest component of the (2,0) + (1,1) parts of ω1 with respect to I_1.
double omega1_purity_residual(const Mat& g, const std::array<Mat, 3>& ops);

/// max |dF_a| over samples for one axis.
SampleMax kaehler_closure_residual(const HyperHermitian& s, int axis,
                                   const std::vector<Vec>& samples, FdOptions fd = {});

/// (0,3)-part of dω1 with respect to I_1, evaluated at one point.
double hkt_residual_at(const HyperHermitian& s, const Vec& p, FdOptions fd = {});
SampleMax hkt_residual(const HyperHermitian& s, const std::vector<Vec>& samples,
                       FdOptions fd = {});

/// H = I_a dF_a = −dF_a(I_a·, I_a·, I_a·), antisymmetrized.
KFormField bismut_torsion(const HyperHermitian& s, int axis, FdOptions fd = {});
/// max over samples of |H_1 − H_2| and |H_2 − H_3|.
SampleMax torsion_axis_agreement(const HyperHermitian& s, const std::vector<Vec>& samples,
                                 FdOptions fd = {});

/// max |dH| with H built from axis 1; `inner` is used for dF and `outer` for d of H.
SampleMax strong_residual(const HyperHermitian& s, const std::vector<Vec>& samples,
                          FdOptions inner = kNestedFd, FdOptions outer = kNestedFd);

/// max over samples of the largest component of d(g(X, X)).
SampleMax killing_length_gradient(const MetricField& g, const VectorField& x,
                                  const std::vector<Vec>& samples, FdOptions fd = {});

}  // namespace hktred
