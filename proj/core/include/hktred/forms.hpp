#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "hktred/types.hpp"

namespace hktred {

/// A k-form value at a point of R^n, stored as the full n^k component tensor
/// β_{i1..ik} = β(∂_{i1}, .., ∂_{ik}). Wedge products use the determinant
/// normalisation, so (dx^0 ∧ dx^1)(∂_0, ∂_1) = 1.
class Form {
 public:
  Form() = default;
  Form(int degree, int dim);

  static Form scalar(double value, int dim);
  static Form covector(const Vec& coefficients);
  /// 2-form from its component matrix M_{ij} = β(∂_i, ∂_j). No symmetrisation is applied.
  static Form from_matrix(const Mat& components);
  /// dx^{i1} ∧ ... ∧ dx^{ik}.
  static Form basis(int dim, std::initializer_list<int> indices);
  static Form basis(int dim, std::span<const int> indices);

  int degree() const { return degree_; }
  int dim() const { return dim_; }
  std::size_t size() const { return data_.size(); }

  double operator()(std::initializer_list<int> indices) const;
  double at(std::span<const int> indices) const;
  double& at(std::span<const int> indices);
  double operator[](std::size_t flat) const { return data_[flat]; }
  double& operator[](std::size_t flat) { return data_[flat]; }
  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  /// β(X1, .., Xk).
  double evaluate(std::span<const Vec> vectors) const;

  /// The form (X1..Xk) ↦ β(M X1, .., M Xk); M maps the new space (cols) into this one (rows).
  Form transformed(const Mat& m) const;
  /// i_X β: contraction in the first slot.
  Form interior(const Vec& x) const;

  Vec as_covector() const;
  Mat as_matrix() const;

  double max_abs() const;
  /// Largest violation of β(.., Xi, .., Xj, ..) = -β(.., Xj, .., Xi, ..) over adjacent slot swaps.
  double antisymmetry_residual() const;
  Form antisymmetrized() const;

  Form& operator+=(const Form& other);
  Form& operator-=(const Form& other);
  Form& operator*=(double s);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(double s, Form a) { return a *= s; }

  std::size_t flat_index(std::span<const int> indices) const;
  void unflatten_index(std::size_t flat, std::span<int> indices) const;

 private:
  int degree_ = 0;
  int dim_ = 0;
  std::vector<double> data_ = {0.0};
};

Form wedge(const Form& a, const Form& b);

/// A complex-valued form stored as its real and imaginary parts.
struct ComplexForm {
  Form re;
  Form im;

  int degree() const { return re.degree(); }
  int dim() const { return re.dim(); }
  double max_abs() const;
  ComplexForm& operator+=(const ComplexForm& o);
  ComplexForm& operator-=(const ComplexForm& o);
  friend ComplexForm operator-(ComplexForm a, const ComplexForm& b) { return a -= b; }
  friend ComplexForm operator+(ComplexForm a, const ComplexForm& b) { return a += b; }
};

/// Slotwise transform of a complex tensor: result(X1..Xk) = β(M X1, .., M Xk) with a
/// possibly different matrix per slot.
ComplexForm transform_slots(const ComplexForm& beta, std::span<const Eigen::MatrixXcd> per_slot);

/// Sign of the permutation, k! for small k.
int permutation_sign(std::span<const int> perm);
double factorial(int k);

}  // namespace hktred
