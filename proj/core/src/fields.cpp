#include "hktred/fields.hpp"

#include <Eigen/LU>

namespace hktred {

namespace {

Vec shifted(const Vec& p, int i, double s) {
  Vec q = p;
  q[i] += s;
  return q;
}

Form form_from_data(int degree, int dim, const Vec& v) {
  Form f(degree, dim);
  for (Eigen::Index i = 0; i < v.size(); ++i) f[i] = v[i];
  return f;
}

Vec data_of(const Form& f) {
  Vec v(static_cast<Eigen::Index>(f.size()));
  for (std::size_t i = 0; i < f.size(); ++i) v[i] = f[i];
  return v;
}

}  // namespace

double directional_derivative(const ScalarField& f, const Vec& p, const Vec& dir, FdOptions fd) {
  Eigen::Matrix<double, 1, 1> d = central_difference(
      [&](double s) { return Eigen::Matrix<double, 1, 1>(f(p + s * dir)); }, fd.step, fd.order);
  return d(0);
}

Vec gradient(const ScalarField& f, const Vec& p, FdOptions fd) {
  Vec g(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    Eigen::Matrix<double, 1, 1> d = central_difference(
        [&](double s) { return Eigen::Matrix<double, 1, 1>(f(shifted(p, i, s))); }, fd.step,
        fd.order);
    g[i] = d(0);
  }
  return g;
}

Mat jacobian(const MapField& f, const Vec& p, FdOptions fd) {
  Mat j;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    Vec col = central_difference([&](double s) { return Vec(f(shifted(p, i, s))); }, fd.step,
                                 fd.order);
    if (i == 0) j.resize(col.size(), p.size());
    j.col(i) = col;
  }
  return j;
}

Form partial(const KFormField& f, const Vec& p, int i, FdOptions fd) {
  int degree = 0, dim = 0;
  Vec d = central_difference(
      [&](double s) {
        Form v = f(shifted(p, i, s));
        degree = v.degree();
        dim = v.dim();
        return data_of(v);
      },
      fd.step, fd.order);
  return form_from_data(degree, dim, d);
}

Form exterior_derivative(const KFormField& f, const Vec& p, FdOptions fd) {
  const int n = static_cast<int>(p.size());
  std::vector<Form> partials;
  partials.reserve(n);
  for (int i = 0; i < n; ++i) partials.push_back(partial(f, p, i, fd));
  const int k = partials[0].degree();
  if (partials[0].dim() != n) throw ArgumentError("exterior_derivative: form dim != point dim");
  // T_{i0 i1..ik} = ∂_{i0} β_{i1..ik}; dβ = (k+1) Alt(T).
  Form t(k + 1, n);
  const std::size_t inner = partials[0].size();
  for (int i = 0; i < n; ++i)
    for (std::size_t b = 0; b < inner; ++b) t[i * inner + b] = partials[i][b];
  Form out = t.antisymmetrized();
  out *= static_cast<double>(k + 1);
  return out;
}

KFormField exterior_derivative(KFormField f, FdOptions fd) {
  return [f = std::move(f), fd](const Vec& p) { return exterior_derivative(f, p, fd); };
}

KFormField differential(ScalarField rho, FdOptions fd) {
  return [rho = std::move(rho), fd](const Vec& p) { return Form::covector(gradient(rho, p, fd)); };
}

double lie_derivative(const Flow& flow, const ScalarField& f, const Vec& p, FdOptions fd) {
  Eigen::Matrix<double, 1, 1> d = central_difference(
      [&](double t) { return Eigen::Matrix<double, 1, 1>(f(flow(p, t))); }, fd.step, fd.order);
  return d(0);
}

Form lie_derivative(const Flow& flow, const KFormField& beta, const Vec& p, FdOptions fd) {
  int degree = 0, dim = 0;
  Vec d = central_difference(
      [&](double t) {
        Mat dphi = jacobian([&](const Vec& x) { return flow(x, t); }, p, fd);
        Form v = beta(flow(p, t)).transformed(dphi);
        degree = v.degree();
        dim = v.dim();
        return data_of(v);
      },
      fd.step, fd.order);
  return form_from_data(degree, dim, d);
}

Mat lie_derivative(const Flow& flow, const MetricField& g, const Vec& p, FdOptions fd) {
  return central_difference(
      [&](double t) {
        Mat dphi = jacobian([&](const Vec& x) { return flow(x, t); }, p, fd);
        return Mat(dphi.transpose() * g(flow(p, t)) * dphi);
      },
      fd.step, fd.order);
}

Mat lie_derivative_endomorphism(const Flow& flow, const EndomorphismField& a, const Vec& p,
                                FdOptions fd) {
  return central_difference(
      [&](double t) {
        Mat dphi = jacobian([&](const Vec& x) { return flow(x, t); }, p, fd);
        return Mat(dphi.lu().solve(a(flow(p, t)) * dphi));
      },
      fd.step, fd.order);
}

Form cartan_lie_derivative(const VectorField& x, const KFormField& beta, const Vec& p,
                           FdOptions fd) {
  Form ixd = exterior_derivative(beta, p, fd).interior(x(p));
  if (beta(p).degree() == 0) return ixd;
  KFormField ixb = [&](const Vec& q) { return beta(q).interior(x(q)); };
  return ixd + exterior_derivative(ixb, p, fd);
}

KFormField pullback(MapField map, KFormField beta, FdOptions fd) {
  return [map = std::move(map), beta = std::move(beta), fd](const Vec& p) {
    return beta(map(p)).transformed(jacobian(map, p, fd));
  };
}

MetricField pullback_metric(MapField map, MetricField g, FdOptions fd) {
  return [map = std::move(map), g = std::move(g), fd](const Vec& p) {
    Mat j = jacobian(map, p, fd);
    return Mat(j.transpose() * g(map(p)) * j);
  };
}

Vec lie_bracket(const VectorField& x, const VectorField& y, const Vec& p, FdOptions fd) {
  return jacobian(y, p, fd) * x(p) - jacobian(x, p, fd) * y(p);
}

KFormField constant_form(Form value) {
  return [value = std::move(value)](const Vec&) { return value; };
}

}  // namespace hktred
