#include "hktred/lie_algebra.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <numeric>

namespace hktred {

LieAlgebra::LieAlgebra(int dim) : dim_(dim), f_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {
  if (dim < 0) throw ArgumentError("LieAlgebra: negative dimension");
}

std::size_t LieAlgebra::index(int c, int a, int b) const {
  if (c < 0 || a < 0 || b < 0 || c >= dim_ || a >= dim_ || b >= dim_)
    throw ArgumentError("LieAlgebra: index out of range");
  return (static_cast<std::size_t>(c) * dim_ + a) * dim_ + b;
}

void LieAlgebra::set(int c, int a, int b, double v) {
  f_[index(c, a, b)] = v;
  f_[index(c, b, a)] = -v;
}

LieAlgebra LieAlgebra::abelian(int dim) { return LieAlgebra(dim); }

LieAlgebra LieAlgebra::su2() {
  LieAlgebra g(3);
  g.set(2, 0, 1, 1.0);
  g.set(0, 1, 2, 1.0);
  g.set(1, 2, 0, 1.0);
  return g;
}

LieAlgebra LieAlgebra::heisenberg() {
  LieAlgebra g(3);
  g.set(2, 0, 1, 1.0);
  return g;
}

LieAlgebra LieAlgebra::direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  LieAlgebra g(a.dim() + b.dim());
  for (int c = 0; c < a.dim(); ++c)
    for (int i = 0; i < a.dim(); ++i)
      for (int j = 0; j < a.dim(); ++j) g.f_[g.index(c, i, j)] = a.f(c, i, j);
  const int o = a.dim();
  for (int c = 0; c < b.dim(); ++c)
    for (int i = 0; i < b.dim(); ++i)
      for (int j = 0; j < b.dim(); ++j) g.f_[g.index(o + c, o + i, o + j)] = b.f(c, i, j);
  return g;
}

LieAlgebra LieAlgebra::conjugated(const Mat& p) const {
  if (p.rows() != dim_ || p.cols() != dim_) throw ArgumentError("conjugated: matrix shape");
  Eigen::FullPivLU<Mat> lu(p);
  if (!lu.isInvertible()) throw ArgumentError("conjugated: matrix is singular");
  const Mat pinv = lu.inverse();
  LieAlgebra out(dim_);
  // [e'_a, e'_b] = p_{ia} p_{jb} f^k_{ij} e_k = p_{ia} p_{jb} f^k_{ij} (p^{-1})_{ck} e'_c.
  for (int c = 0; c < dim_; ++c)
    for (int a = 0; a < dim_; ++a)
      for (int b = a + 1; b < dim_; ++b) {
        double s = 0.0;
        for (int k = 0; k < dim_; ++k)
          for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) s += pinv(c, k) * f(k, i, j) * p(i, a) * p(j, b);
        out.set(c, a, b, s);  // keeps f^c_{ba} = −f^c_{ab} exact
      }
  return out;
}

double LieAlgebra::antisymmetry_residual() const {
  double r = 0.0;
  for (int c = 0; c < dim_; ++c)
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b) r = std::max(r, std::abs(f(c, a, b) + f(c, b, a)));
  return r;
}

double LieAlgebra::jacobi_residual() const {
  // Σ_cyc [[e_a, e_b], e_c] = Σ_cyc f^k_{ab} f^l_{kc} e_l.
  double r = 0.0;
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b)
      for (int c = 0; c < dim_; ++c)
        for (int l = 0; l < dim_; ++l) {
          double s = 0.0;
          for (int k = 0; k < dim_; ++k)
            s += f(k, a, b) * f(l, k, c) + f(k, b, c) * f(l, k, a) + f(k, c, a) * f(l, k, b);
          r = std::max(r, std::abs(s));
        }
  return r;
}

bool LieAlgebra::is_abelian() const {
  return std::all_of(f_.begin(), f_.end(), [](double v) { return v == 0.0; });
}

Form delta_G(const LieAlgebra& g, const Form& theta) {
  const int n = g.dim(), k = theta.degree();
  if (theta.dim() != n) throw ArgumentError("delta_G: cochain dimension != algebra dimension");
  if (k + 1 > n) return Form(k + 1, n);
  // (δθ)(x_0..x_k) = Σ_{i<j} (−1)^{i+j} θ([x_i, x_j], x_0, .., x̂_i, .., x̂_j, .., x_k).
  Form out(k + 1, n);
  std::vector<int> idx(k + 1), rest(k);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    out.unflatten_index(flat, idx);
    double s = 0.0;
    for (int i = 0; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        int pos = 1;
        for (int l = 0; l <= k; ++l)
          if (l != i && l != j) rest[pos++] = idx[l];
        double term = 0.0;
        for (int c = 0; c < n; ++c) {
          const double fc = g.f(c, idx[i], idx[j]);
          if (fc == 0.0) continue;
          rest[0] = c;
          term += fc * theta.at(std::span<const int>(rest.data(), k));
        }
        s += ((i + j) % 2 == 0 ? 1.0 : -1.0) * term;
      }
    out[flat] = s;
  }
  return out;
}

double delta_squared_residual(const LieAlgebra& g) {
  const int n = g.dim();
  double r = 0.0;
  for (int k = 1; k + 2 <= n; ++k) {
    std::vector<int> sel(n, 0);
    std::fill(sel.end() - k, sel.end(), 1);
    do {
      std::vector<int> idx;
      for (int i = 0; i < n; ++i)
        if (sel[i]) idx.push_back(i);
      const Form theta = Form::basis(n, idx);
      r = std::max(r, delta_G(g, delta_G(g, theta)).max_abs());
    } while (std::next_permutation(sel.begin(), sel.end()));
  }
  return r;
}

LieAlgebra random_conjugate(const LieAlgebra& base, Rng& rng) {
  const int n = base.dim();
  Mat p(n, n);
  for (;;) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p(i, j) = rng.uniform(-1.0, 1.0) + (i == j ? 2.0 : 0.0);
    // Well-conditioned P keeps the conjugated constants O(1).
    const Vec sv = Eigen::JacobiSVD<Mat>(p).singularValues();
    if (sv(n - 1) > 0.0 && sv(0) / sv(n - 1) < 3.0) break;
  }
  return base.conjugated(p);
}

}  // namespace hktred
