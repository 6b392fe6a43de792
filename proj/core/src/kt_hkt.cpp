#include "hktred/kt_hkt.hpp"

#include <Eigen/Cholesky>

namespace hktred {

namespace {

double metric_scale(const Mat& g) { return std::max(1.0, g.cwiseAbs().maxCoeff()); }

}  // namespace

HyperHermitian with_constant_structure(MetricField g, const HypercomplexTriple& h) {
  return {std::move(g), constant_structure(h)};
}

void SampleMax::update(double v, int i, const Vec& p) {
  if (index < 0 || v > value) {
    value = v;
    index = i;
    point = p;
  }
}

double hermiticity_residual(const Mat& g, const Mat& v) {
  return (v.transpose() * g * v - g).cwiseAbs().maxCoeff();
}

SampleMax hermiticity_residual(const HyperHermitian& s, const std::vector<Vec>& samples) {
  SampleMax out;
  for (int i = 0; i < static_cast<int>(samples.size()); ++i) {
    const Mat g = s.g(samples[i]);
    const auto ops = s.structure(samples[i]);
    double worst = 0.0;
    for (const Mat& v : ops) worst = std::max(worst, hermiticity_residual(g, v));
    out.update(worst, i, samples[i]);
  }
  return out;
}

Form kaehler_form_at(const Mat& g, const Mat& v, double herm_tol) {
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * metric_scale(g))
    throw DomainError("kaehler_form: metric is not symmetric");
  Eigen::LDLT<Mat> ldlt(g);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || (ldlt.vectorD().array() <= 0).any())
    throw DomainError("kaehler_form: metric is not positive-definite");
  if (hermiticity_residual(g, v) > herm_tol * metric_scale(g))
    throw DomainError("kaehler_form: metric is not Hermitian for this structure");
  return Form::from_matrix(v.transpose() * g);
}

KFormField kaehler_form(const HyperHermitian& s, int axis, double herm_tol) {
  const int a = HypercomplexTriple::check_axis(axis);
  return [s, a, herm_tol](const Vec& p) { return kaehler_form_at(s.g(p), s.structure(p)[a], herm_tol); };
}

ComplexForm omega1_at(const Mat& g, const std::array<Mat, 3>& ops, double herm_tol) {
  Form f2 = kaehler_form_at(g, ops[1], herm_tol);
  Form f3 = kaehler_form_at(g, ops[2], herm_tol);
  f3 *= -1.0;
  return {std::move(f2), std::move(f3)};
}

double omega1_purity_residual(const Mat& g, const std::array<Mat, 3>& ops) {
  const ComplexForm w = omega1_at(g, ops);
  return std::max(type_project(ops[0], 2, 0, w).max_abs(), type_project(ops[0], 1, 1, w).max_abs());
}

SampleMax kaehler_closure_residual(const HyperHermitian& s, int axis,
                                   const std::vector<Vec>& samples, FdOptions fd) {
  const KFormField f = kaehler_form(s, axis);
  SampleMax out;
  for (int i = 0; i < static_cast<int>(samples.size()); ++i)
    out.update(exterior_derivative(f, samples[i], fd).max_abs(), i, samples[i]);
  return out;
}

double hkt_residual_at(const HyperHermitian& s, const Vec& p, FdOptions fd) {
  const Form df2 = exterior_derivative(kaehler_form(s, 2), p, fd);
  Form df3 = exterior_derivative(kaehler_form(s, 3), p, fd);
  df3 *= -1.0;
  return type_project(s.structure(p)[0], 0, 3, ComplexForm{df2, df3}).max_abs();
}

SampleMax hkt_residual(const HyperHermitian& s, const std::vector<Vec>& samples, FdOptions fd) {
  const auto values = parallel_map<double>(static_cast<int>(samples.size()),
                                           [&](int i) { return hkt_residual_at(s, samples[i], fd); });
  SampleMax out;
  for (int i = 0; i < static_cast<int>(samples.size()); ++i) out.update(values[i], i, samples[i]);
  return out;
}

KFormField bismut_torsion(const HyperHermitian& s, int axis, FdOptions fd) {
  const int a = HypercomplexTriple::check_axis(axis);
  KFormField df = exterior_derivative(kaehler_form(s, axis), fd);
  return [s, a, df = std::move(df)](const Vec& p) {
    Form d = df(p);
    return act_on_kform(s.structure(p)[a], d, 1e-6).antisymmetrized();
  };
}

SampleMax torsion_axis_agreement(const HyperHermitian& s, const std::vector<Vec>& samples,
                                 FdOptions fd) {
  const KFormField h1 = bismut_torsion(s, 1, fd);
  const KFormField h2 = bismut_torsion(s, 2, fd);
  const KFormField h3 = bismut_torsion(s, 3, fd);
  SampleMax out;
  for (int i = 0; i < static_cast<int>(samples.size()); ++i) {
    const Form a = h1(samples[i]), b = h2(samples[i]), c = h3(samples[i]);
    out.update(std::max((a - b).max_abs(), (b - c).max_abs()), i, samples[i]);
  }
  return out;
}

SampleMax strong_residual(const HyperHermitian& s, const std::vector<Vec>& samples,
                          FdOptions inner, FdOptions outer) {
  const KFormField h = bismut_torsion(s, 1, inner);
  const auto values = parallel_map<double>(static_cast<int>(samples.size()), [&](int i) {
    return exterior_derivative(h, samples[i], outer).max_abs();
  });
  SampleMax out;
  for (int i = 0; i < static_cast<int>(samples.size()); ++i) out.update(values[i], i, samples[i]);
  return out;
}

SampleMax killing_length_gradient(const MetricField& g, const VectorField& x,
                                  const std::vector<Vec>& samples, FdOptions fd) {
  const ScalarField len2 = [&](const Vec& p) {
    const Vec v = x(p);
    return v.dot(g(p) * v);
  };
  SampleMax out;
  for (int i = 0; i < static_cast<int>(samples.size()); ++i)
    out.update(gradient(len2, samples[i], fd).cwiseAbs().maxCoeff(), i, samples[i]);
  return out;
}

}  // namespace hktred
