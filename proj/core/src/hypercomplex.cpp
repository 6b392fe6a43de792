#include "hktred/hypercomplex.hpp"

#include <bit>
#include <complex>

namespace hktred {

namespace {

Mat covector_table(const std::array<std::pair<int, int>, 4>& images) {
  Mat c = Mat::Zero(4, 4);
  for (int j = 0; j < 4; ++j) c(images[j].first, j) = images[j].second;
  return c;
}

}  // namespace

int HypercomplexTriple::check_axis(int axis) {
  if (axis < 1 || axis > 3) throw ArgumentError("axis must be 1, 2 or 3");
  return axis - 1;
}

Mat HypercomplexTriple::standard_block(int axis) {
  // (index, sign) of the image of dt, dx, dy, dz.
  switch (check_axis(axis)) {
    case 0: return covector_table({{{1, 1}, {0, -1}, {3, 1}, {2, -1}}});
    case 1: return covector_table({{{2, 1}, {3, -1}, {0, -1}, {1, 1}}});
    default: return covector_table({{{3, 1}, {2, 1}, {1, -1}, {0, -1}}});
  }
}

HypercomplexTriple::HypercomplexTriple(std::array<Mat, 3> covector_ops) : cov_(std::move(covector_ops)) {
  for (int a = 0; a < 3; ++a) {
    if (cov_[a].rows() != cov_[0].rows() || cov_[a].cols() != cov_[0].rows())
      throw ArgumentError("HypercomplexTriple: operators must be square and equal size");
    vec_[a] = -cov_[a].transpose();
  }
}

HypercomplexTriple HypercomplexTriple::standard(int blocks) {
  if (blocks <= 0) throw ArgumentError("HypercomplexTriple::standard: blocks must be positive");
  std::array<Mat, 3> ops;
  for (int a = 0; a < 3; ++a) {
    ops[a] = Mat::Zero(4 * blocks, 4 * blocks);
    const Mat b = standard_block(a + 1);
    for (int k = 0; k < blocks; ++k) ops[a].block(4 * k, 4 * k, 4, 4) = b;
  }
  return HypercomplexTriple(std::move(ops));
}

double QuaternionRelationResidual::max() const { return std::max({i2, j2, k2, ij_k}); }

QuaternionRelationResidual verify_quaternion_relations(const HypercomplexTriple& h) {
  const Mat id = Mat::Identity(h.dim(), h.dim());
  const Mat& i = h.covector(1);
  const Mat& j = h.covector(2);
  const Mat& k = h.covector(3);
  QuaternionRelationResidual r;
  r.i2 = (i * i + id).cwiseAbs().maxCoeff();
  r.j2 = (j * j + id).cwiseAbs().maxCoeff();
  r.k2 = (k * k + id).cwiseAbs().maxCoeff();
  r.ij_k = (i * j - k).cwiseAbs().maxCoeff();
  return r;
}

Form act_on_kform(const Mat& vector_op, const Form& beta, double antisymmetry_tol) {
  if (beta.antisymmetry_residual() > antisymmetry_tol * std::max(1.0, beta.max_abs()))
    throw ArgumentError("act_on_kform: input form is not antisymmetric");
  Form out = beta.transformed(vector_op);
  if (beta.degree() % 2 == 1) out *= -1.0;
  return out;
}

Form act_inverse_on_kform(const Mat& vector_op, const Form& beta, double antisymmetry_tol) {
  Form out = act_on_kform(vector_op, beta, antisymmetry_tol);
  if (beta.degree() % 2 == 1) out *= -1.0;
  return out;
}

Form apply_to_kform(const HypercomplexTriple& h, int axis, const Form& beta,
                    double antisymmetry_tol) {
  if (beta.dim() != h.dim()) throw ArgumentError("apply_to_kform: dimension mismatch");
  return act_on_kform(h.vector(axis), beta, antisymmetry_tol);
}

ComplexForm type_project(const Mat& v, int p, int q, const ComplexForm& beta) {
  const int k = beta.degree();
  if (p < 0 || q < 0 || p + q != k) throw ArgumentError("type_project: p + q must equal degree");
  const int n = beta.dim();
  using std::complex_literals::operator""i;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd vc = v.cast<std::complex<double>>();
  const Eigen::MatrixXcd p10 = 0.5 * (id - 1.0i * vc);
  const Eigen::MatrixXcd p01 = 0.5 * (id + 1.0i * vc);
  ComplexForm out{Form(k, n), Form(k, n)};
  std::vector<Eigen::MatrixXcd> slots(k);
  // Sum over the slot subsets that receive a (1,0) vector.
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    if (std::popcount(mask) != p) continue;
    for (int s = 0; s < k; ++s) slots[s] = (mask >> s & 1u) ? p10 : p01;
    out += transform_slots(beta, slots);
  }
  return out;
}

ComplexForm type_project(const HypercomplexTriple& h, int axis, int p, int q,
                         const ComplexForm& beta) {
  return type_project(h.vector(axis), p, q, beta);
}

ComplexForm type_project(const HypercomplexTriple& h, int axis, int p, int q, const Form& beta) {
  return type_project(h.vector(axis), p, q, ComplexForm{beta, Form(beta.degree(), beta.dim())});
}

StructureField constant_structure(const HypercomplexTriple& h) {
  return [ops = h.vector_ops()](const Vec&) { return ops; };
}

KFormField twisted_differential(StructureField structure, int axis, KFormField beta,
                                FdOptions fd) {
  const int a = HypercomplexTriple::check_axis(axis);
  KFormField untwisted = [structure, beta = std::move(beta), a](const Vec& p) {
    return act_inverse_on_kform(structure(p)[a], beta(p));
  };
  KFormField d = exterior_derivative(std::move(untwisted), fd);
  return [structure = std::move(structure), d = std::move(d), a](const Vec& p) {
    return act_on_kform(structure(p)[a], d(p));
  };
}

KFormField twisted_differential(StructureField structure, int axis, ScalarField rho,
                                FdOptions fd) {
  const int a = HypercomplexTriple::check_axis(axis);
  return [structure = std::move(structure), rho = std::move(rho), a, fd](const Vec& p) {
    return act_on_kform(structure(p)[a], Form::covector(gradient(rho, p, fd)));
  };
}

KFormField twisted_differential(const HypercomplexTriple& h, int axis, ScalarField rho,
                                FdOptions fd) {
  return twisted_differential(constant_structure(h), axis, std::move(rho), fd);
}

KFormField twisted_differential(const HypercomplexTriple& h, int axis, KFormField beta,
                                FdOptions fd) {
  return twisted_differential(constant_structure(h), axis, std::move(beta), fd);
}

}  // namespace hktred
