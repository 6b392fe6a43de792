#pragma once

#include <vector>

#include "hktred/forms.hpp"
#include "hktred/sampling.hpp"
#include "hktred/types.hpp"

namespace hktred {

/// Structure constants [e_a, e_b] = f^c_{ab} e_c.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(int dim);

  static LieAlgebra abelian(int dim);
  static LieAlgebra su2();
  /// [e_1, e_2] = e_3, everything else zero.
  static LieAlgebra heisenberg();
  static LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

  int dim() const { return dim_; }
  double f(int c, int a, int b) const { return f_[index(c, a, b)]; }
  void set(int c, int a, int b, double v);  // also sets f^c_{ba} = −v

  /// The same algebra in the basis e'_a = Σ_b p(b, a) e_b.
  LieAlgebra conjugated(const Mat& p) const;

  double antisymmetry_residual() const;
  double jacobi_residual() const;
  bool is_abelian() const;

 private:
  std::size_t index(int c, int a, int b) const;
  int dim_ = 0;
  std::vector<double> f_;
};

/// Chevalley–Eilenberg differential on Λ^k 𝔤*, normalised so that δθ(ζ, η) = −θ([ζ, η]),
/// i.e. δθ^a = −½ f^a_{bc} θ^b ∧ θ^c.
Form delta_G(const LieAlgebra& g, const Form& cochain);

/// Largest |δ(δ θ)| over all basis cochains of every degree.
double delta_squared_residual(const LieAlgebra& g);

/// su(2), abelian or Heisenberg conjugated by a random well-conditioned matrix.
LieAlgebra random_conjugate(const LieAlgebra& base, Rng& rng);

}  // namespace hktred
