#pragma once

#include <array>
#include <functional>

#include "hktred/forms.hpp"
#include "hktred/types.hpp"

namespace hktred {

using ScalarField = std::function<double(const Vec&)>;
using VectorField = std::function<Vec(const Vec&)>;
using KFormField = std::function<Form(const Vec&)>;
using MetricField = std::function<Mat(const Vec&)>;
/// A (1,1)-tensor field acting on vectors, e.g. a complex structure.
using EndomorphismField = std::function<Mat(const Vec&)>;
using MapField = std::function<Vec(const Vec&)>;
/// One-parameter flow: (p, t) -> φ_t(p).
using Flow = std::function<Vec(const Vec&, double)>;

struct FdOptions {
  double step = 1e-4;
  int order = 2;  // 2 or 4
};

/// Nested derivatives (d of an FD-computed field) use a coarser fourth-order stencil.
inline constexpr FdOptions kNestedFd{1e-3, 4};

/// Central-difference derivative of a vector-valued function of one real variable at 0.
template <typename F>
auto central_difference(F&& f, double h, int order) {
  if (order == 4) {
    auto a = f(2 * h);
    auto b = f(h);
    auto c = f(-h);
    auto d = f(-2 * h);
    return decltype(a)((-a + 8.0 * b - 8.0 * c + d) / (12.0 * h));
  }
  auto a = f(h);
  auto c = f(-h);
  return decltype(a)((a - c) / (2.0 * h));
}

double directional_derivative(const ScalarField& f, const Vec& p, const Vec& dir, FdOptions fd = {});
Vec gradient(const ScalarField& f, const Vec& p, FdOptions fd = {});
/// J(i, j) = ∂F_i / ∂x_j.
Mat jacobian(const MapField& f, const Vec& p, FdOptions fd = {});

/// Partial derivative of a k-form field along coordinate i.
Form partial(const KFormField& f, const Vec& p, int i, FdOptions fd = {});

Form exterior_derivative(const KFormField& f, const Vec& p, FdOptions fd = {});
KFormField exterior_derivative(KFormField f, FdOptions fd = {});
/// dρ as a 1-form field.
KFormField differential(ScalarField rho, FdOptions fd = {});

/// Lie derivatives computed as the t-derivative of the pullback along a flow at t = 0.
double lie_derivative(const Flow& flow, const ScalarField& f, const Vec& p, FdOptions fd = {});
Form lie_derivative(const Flow& flow, const KFormField& beta, const Vec& p, FdOptions fd = {});
/// ℒ_X g for a symmetric 2-tensor field.
Mat lie_derivative(const Flow& flow, const MetricField& g, const Vec& p, FdOptions fd = {});
/// ℒ_X A for a (1,1)-tensor: d/dt (Dφ_t)^{-1} A(φ_t p) Dφ_t.
Mat lie_derivative_endomorphism(const Flow& flow, const EndomorphismField& a, const Vec& p,
                                FdOptions fd = {});

/// Cartan-formula Lie derivative i_X dβ + d i_X β for a vector field.
Form cartan_lie_derivative(const VectorField& x, const KFormField& beta, const Vec& p,
                           FdOptions fd = {});

/// Pullback of β along a map F: (F*β)(p) = β(F(p))(DF·, .., DF·).
KFormField pullback(MapField map, KFormField beta, FdOptions fd = {});
/// Pullback of a symmetric 2-tensor field.
MetricField pullback_metric(MapField map, MetricField g, FdOptions fd = {});

/// Lie bracket [X, Y] = DY·X − DX·Y.
Vec lie_bracket(const VectorField& x, const VectorField& y, const Vec& p, FdOptions fd = {});

/// Constant-coefficient form field.
KFormField constant_form(Form value);

}  // namespace hktred
