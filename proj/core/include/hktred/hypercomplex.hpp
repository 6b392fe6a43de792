#pragma once

#include <array>

#include "hktred/fields.hpp"
#include "hktred/forms.hpp"

namespace hktred {

/// Three constant complex structures I_1 = I, I_2 = J, I_3 = K on R^{4n}, block-diagonal with one
/// identical 4x4 block per quaternionic factor. Covector matrices C_a have column j equal to the
/// image of dx^j, following
///   I dt = dx, I dx = -dt, I dy = dz, I dz = -dy,
///   J dt = dy, J dx = -dz, J dy = -dt, J dz = dx,
///   K dt = dz, K dx = dy, K dy = -dx, K dz = -dt.
/// On vectors the same structure acts by V_a = -C_a^T (left multiplication by i, j, k).
class HypercomplexTriple {
 public:
  HypercomplexTriple() = default;
  /// Covector operators for axes 1..3.
  explicit HypercomplexTriple(std::array<Mat, 3> covector_ops);

  /// The catalog triple on H^blocks (real dimension 4·blocks).
  static HypercomplexTriple standard(int blocks);
  static Mat standard_block(int axis);

  int dim() const { return static_cast<int>(cov_[0].rows()); }
  const Mat& covector(int axis) const { return cov_.at(check_axis(axis)); }
  const Mat& vector(int axis) const { return vec_.at(check_axis(axis)); }
  std::array<Mat, 3> vector_ops() const { return vec_; }

  static int check_axis(int axis);

 private:
  std::array<Mat, 3> cov_;
  std::array<Mat, 3> vec_;
};

struct QuaternionRelationResidual {
  double i2 = 0.0;  // max |I^2 + Id|
  double j2 = 0.0;
  double k2 = 0.0;
  double ij_k = 0.0;  // max |IJ - K| on covectors
  double max() const;
};

QuaternionRelationResidual verify_quaternion_relations(const HypercomplexTriple& h);

/// (I β)(X1..Xk) = (-1)^k β(I X1, .., I Xk) for an operator I given by its action on vectors.
Form act_on_kform(const Mat& vector_op, const Form& beta, double antisymmetry_tol = 1e-9);
/// Inverse action; I^{-1} = (-1)^k I on k-forms.
Form act_inverse_on_kform(const Mat& vector_op, const Form& beta, double antisymmetry_tol = 1e-9);

Form apply_to_kform(const HypercomplexTriple& h, int axis, const Form& beta,
                    double antisymmetry_tol = 1e-9);

/// Projection onto type (p, q) with respect to the structure with vector action V, where
/// T^{1,0} is the +i eigenspace of V; slots are fed with ½(Id − iV) or ½(Id + iV).
ComplexForm type_project(const Mat& vector_op, int p, int q, const ComplexForm& beta);
ComplexForm type_project(const HypercomplexTriple& h, int axis, int p, int q,
                         const ComplexForm& beta);
ComplexForm type_project(const HypercomplexTriple& h, int axis, int p, int q, const Form& beta);

/// A pointwise (possibly non-constant) triple of vector operators, e.g. on a quotient chart.
using StructureField = std::function<std::array<Mat, 3>(const Vec&)>;
StructureField constant_structure(const HypercomplexTriple& h);

/// Twisted differential d_a β = I_a d (I_a^{-1} β); on functions (d_a ρ)(X) = −dρ(I_a X).
KFormField twisted_differential(StructureField structure, int axis, KFormField beta,
                                FdOptions fd = {});
KFormField twisted_differential(StructureField structure, int axis, ScalarField rho,
                                FdOptions fd = {});
KFormField twisted_differential(const HypercomplexTriple& h, int axis, ScalarField rho,
                                FdOptions fd = {});
KFormField twisted_differential(const HypercomplexTriple& h, int axis, KFormField beta,
                                FdOptions fd = {});

}  // namespace hktred
