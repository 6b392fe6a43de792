#include "hktred/forms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hktred {

namespace {

std::size_t ipow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

// Contracts slot `slot` of a tensor of shape (n_old)^k with m (n_old x n_new),
// producing shape n_new in that slot: out[.., i, ..] = Σ_j in[.., j, ..] m(j, i).
template <typename T, typename M>
std::vector<T> contract_slot(const std::vector<T>& in, int k, const std::vector<int>& dims,
                             int slot, const M& m) {
  const int n_old = dims[slot];
  const int n_new = static_cast<int>(m.cols());
  std::size_t outer = 1, inner = 1;
  for (int s = 0; s < slot; ++s) outer *= dims[s];
  for (int s = slot + 1; s < k; ++s) inner *= dims[s];
  std::vector<T> out(outer * n_new * inner, T{});
  for (std::size_t a = 0; a < outer; ++a) {
    for (int j = 0; j < n_old; ++j) {
      const T* src = &in[(a * n_old + j) * inner];
      for (int i = 0; i < n_new; ++i) {
        const auto mji = m(j, i);
        if (mji == decltype(mji){}) continue;
        T* dst = &out[(a * n_new + i) * inner];
        for (std::size_t b = 0; b < inner; ++b) dst[b] += src[b] * mji;
      }
    }
  }
  return out;
}

}  // namespace

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

int permutation_sign(std::span<const int> perm) {
  int sign = 1;
  const auto n = perm.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (perm[i] > perm[j]) sign = -sign;
  return sign;
}

Form::Form(int degree, int dim) : degree_(degree), dim_(dim), data_(ipow(dim, degree), 0.0) {
  if (degree < 0 || dim < 0) throw ArgumentError("Form: negative degree or dimension");
}

Form Form::scalar(double value, int dim) {
  Form f(0, dim);
  f.data_[0] = value;
  return f;
}

Form Form::covector(const Vec& c) {
  Form f(1, static_cast<int>(c.size()));
  for (int i = 0; i < c.size(); ++i) f.data_[i] = c[i];
  return f;
}

Form Form::from_matrix(const Mat& m) {
  if (m.rows() != m.cols()) throw ArgumentError("Form::from_matrix: matrix must be square");
  const int n = static_cast<int>(m.rows());
  Form f(2, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f.data_[i * n + j] = m(i, j);
  return f;
}

Form Form::basis(int dim, std::initializer_list<int> indices) {
  return basis(dim, std::span<const int>(indices.begin(), indices.size()));
}

Form Form::basis(int dim, std::span<const int> indices) {
  const int k = static_cast<int>(indices.size());
  Form f(k, dim);
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> idx(k);
  do {
    for (int s = 0; s < k; ++s) idx[s] = indices[perm[s]];
    f.at(idx) += permutation_sign(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return f;
}

std::size_t Form::flat_index(std::span<const int> indices) const {
  if (static_cast<int>(indices.size()) != degree_) throw ArgumentError("Form: wrong index count");
  std::size_t flat = 0;
  for (int i : indices) {
    if (i < 0 || i >= dim_) throw ArgumentError("Form: index out of range");
    flat = flat * dim_ + i;
  }
  return flat;
}

void Form::unflatten_index(std::size_t flat, std::span<int> indices) const {
  for (int s = degree_ - 1; s >= 0; --s) {
    indices[s] = static_cast<int>(flat % dim_);
    flat /= dim_;
  }
}

double Form::operator()(std::initializer_list<int> indices) const {
  return at(std::span<const int>(indices.begin(), indices.size()));
}
double Form::at(std::span<const int> indices) const { return data_[flat_index(indices)]; }
double& Form::at(std::span<const int> indices) { return data_[flat_index(indices)]; }

double Form::evaluate(std::span<const Vec> vectors) const {
  if (static_cast<int>(vectors.size()) != degree_) throw ArgumentError("Form::evaluate: arity");
  std::vector<double> cur = data_;
  std::vector<int> dims(degree_, dim_);
  // Contract the last slot first so the remaining layout stays contiguous.
  for (int s = degree_ - 1; s >= 0; --s) {
    const Vec& x = vectors[s];
    std::vector<double> next(cur.size() / dim_, 0.0);
    for (std::size_t a = 0; a < next.size(); ++a) {
      double acc = 0.0;
      for (int j = 0; j < dim_; ++j) acc += cur[a * dim_ + j] * x[j];
      next[a] = acc;
    }
    cur.swap(next);
  }
  return cur[0];
}

Form Form::transformed(const Mat& m) const {
  if (m.rows() != dim_) throw ArgumentError("Form::transformed: matrix rows must equal dim");
  std::vector<double> cur = data_;
  std::vector<int> dims(degree_, dim_);
  for (int s = 0; s < degree_; ++s) {
    cur = contract_slot(cur, degree_, dims, s, m);
    dims[s] = static_cast<int>(m.cols());
  }
  Form out(degree_, static_cast<int>(m.cols()));
  out.data_ = std::move(cur);
  return out;
}

Form Form::interior(const Vec& x) const {
  if (degree_ == 0) throw ArgumentError("Form::interior: cannot contract a 0-form");
  Form out(degree_ - 1, dim_);
  const std::size_t inner = out.data_.size();
  for (int j = 0; j < dim_; ++j)
    for (std::size_t b = 0; b < inner; ++b) out.data_[b] += x[j] * data_[j * inner + b];
  return out;
}

Vec Form::as_covector() const {
  if (degree_ != 1) throw ArgumentError("Form::as_covector: degree must be 1");
  return Eigen::Map<const Vec>(data_.data(), dim_);
}

Mat Form::as_matrix() const {
  if (degree_ != 2) throw ArgumentError("Form::as_matrix: degree must be 2");
  Mat m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(i, j) = data_[i * dim_ + j];
  return m;
}

double Form::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Form::antisymmetry_residual() const {
  double worst = 0.0;
  std::vector<int> idx(degree_);
  for (std::size_t f = 0; f < data_.size(); ++f) {
    unflatten_index(f, idx);
    for (int s = 0; s + 1 < degree_; ++s) {
      std::swap(idx[s], idx[s + 1]);
      worst = std::max(worst, std::abs(data_[f] + data_[flat_index(idx)]));
      std::swap(idx[s], idx[s + 1]);
    }
  }
  return worst;
}

Form Form::antisymmetrized() const {
  Form out(degree_, dim_);
  std::vector<int> perm(degree_);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> idx(degree_), pidx(degree_);
  const double norm = 1.0 / factorial(degree_);
  do {
    const int sign = permutation_sign(perm);
    for (std::size_t f = 0; f < data_.size(); ++f) {
      unflatten_index(f, idx);
      for (int s = 0; s < degree_; ++s) pidx[s] = idx[perm[s]];
      out.data_[f] += sign * norm * data_[flat_index(pidx)];
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Form& Form::operator+=(const Form& o) {
  if (o.degree_ != degree_ || o.dim_ != dim_) throw ArgumentError("Form: shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Form& Form::operator-=(const Form& o) {
  if (o.degree_ != degree_ || o.dim_ != dim_) throw ArgumentError("Form: shape mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Form& Form::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Form wedge(const Form& a, const Form& b) {
  if (a.dim() != b.dim()) throw ArgumentError("wedge: dimension mismatch");
  const int k = a.degree(), l = b.degree(), n = a.dim();
  if (k + l > n) throw ArgumentError("wedge: degree exceeds dimension");
  Form out(k + l, n);
  std::vector<int> perm(k + l);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> idx(k + l), ia(k), ib(l);
  const double norm = 1.0 / (factorial(k) * factorial(l));
  do {
    const int sign = permutation_sign(perm);
    for (std::size_t f = 0; f < out.size(); ++f) {
      out.unflatten_index(f, idx);
      for (int s = 0; s < k; ++s) ia[s] = idx[perm[s]];
      for (int s = 0; s < l; ++s) ib[s] = idx[perm[k + s]];
      out[f] += sign * norm * a.at(ia) * b.at(ib);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

double ComplexForm::max_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < re.size(); ++i) m = std::max(m, std::hypot(re[i], im[i]));
  return m;
}

ComplexForm& ComplexForm::operator+=(const ComplexForm& o) {
  re += o.re;
  im += o.im;
  return *this;
}

ComplexForm& ComplexForm::operator-=(const ComplexForm& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

ComplexForm transform_slots(const ComplexForm& beta, std::span<const Eigen::MatrixXcd> per_slot) {
  const int k = beta.degree(), n = beta.dim();
  if (static_cast<int>(per_slot.size()) != k) throw ArgumentError("transform_slots: slot count");
  std::vector<std::complex<double>> cur(beta.re.size());
  for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = {beta.re[i], beta.im[i]};
  std::vector<int> dims(k, n);
  for (int s = 0; s < k; ++s) {
    if (per_slot[s].rows() != n || per_slot[s].cols() != n)
      throw ArgumentError("transform_slots: projector shape");
    cur = contract_slot(cur, k, dims, s, per_slot[s]);
  }
  ComplexForm out{Form(k, n), Form(k, n)};
  for (std::size_t i = 0; i < cur.size(); ++i) {
    out.re[i] = cur[i].real();
    out.im[i] = cur[i].imag();
  }
  return out;
}

}  // namespace hktred
