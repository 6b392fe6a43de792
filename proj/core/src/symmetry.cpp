#include "hktred/symmetry.hpp"

namespace hktred {

double GroupAction::flow_consistency_residual(const std::vector<Vec>& samples, FdOptions fd) const {
  double r = 0.0;
  for (const Vec& p : samples)
    for (int b = 0; b < dim(); ++b) {
      r = std::max(r, (flows[b](p, 0.0) - p).cwiseAbs().maxCoeff());
      Vec d = central_difference([&](double t) { return Vec(flows[b](p, t)); }, fd.step, fd.order);
      r = std::max(r, (d - killing[b](p)).cwiseAbs().maxCoeff());
    }
  return r;
}

Mat MomentMap::differential(const Vec& p, FdOptions fd) const {
  if (dnu) return dnu(p);
  return jacobian(nu, p, fd);
}

ScalarField MomentMap::scalar(int generator, int axis) const {
  const int c = component(generator, axis);
  return [f = nu, c](const Vec& p) { return f(p)[c]; };
}

double moment_differential_residual(const MomentMap& mm, const std::vector<Vec>& samples,
                                    FdOptions fd) {
  if (!mm.dnu) return 0.0;
  double r = 0.0;
  for (const Vec& p : samples)
    r = std::max(r, (mm.dnu(p) - jacobian(mm.nu, p, fd)).cwiseAbs().maxCoeff());
  return r;
}

SampleMax cauchy_riemann_residual(const MomentMap& mm, const HypercomplexTriple& h,
                                  const std::vector<Vec>& samples) {
  SampleMax out;
  for (int i = 0; i < static_cast<int>(samples.size()); ++i) {
    const Mat d = mm.differential(samples[i]);
    double worst = 0.0;
    for (int a = 0; a < mm.generators; ++a) {
      Vec w[3];
      for (int r = 1; r <= 3; ++r)
        w[r - 1] = h.covector(r) * d.row(MomentMap::component(a, r)).transpose();
      worst = std::max({worst, (w[0] - w[1]).cwiseAbs().maxCoeff(), (w[1] - w[2]).cwiseAbs().maxCoeff()});
    }
    out.update(worst, i, samples[i]);
  }
  return out;
}

SampleMax transversality_minimum(const MomentMap& mm, const GroupAction& action,
                                 const HypercomplexTriple& h, const std::vector<Vec>& samples) {
  if (samples.empty()) throw ArgumentError("transversality_minimum: empty sample set");
  SampleMax out;
  for (int i = 0; i < static_cast<int>(samples.size()); ++i) {
    const Mat d = mm.differential(samples[i]);
    double best = std::numeric_limits<double>::infinity();
    for (int b = 0; b < action.dim(); ++b) {
      const Vec w = h.covector(1) * d.row(MomentMap::component(b, 1)).transpose();
      best = std::min(best, std::abs(w.dot(action.killing[b](samples[i]))));
    }
    // SampleMax tracks a maximum; store the negated minimum.
    out.update(-best, i, samples[i]);
  }
  out.value = -out.value;
  return out;
}

SampleMax equivariance_residual(const MomentMap& mm, const GroupAction& action,
                                const std::vector<Vec>& samples) {
  SampleMax out;
  const LieAlgebra& g = action.algebra;
  for (int i = 0; i < static_cast<int>(samples.size()); ++i) {
    const Vec& p = samples[i];
    const Mat d = mm.differential(p);
    const Vec nu = mm.nu(p);
    double worst = 0.0;
    for (int b = 0; b < action.dim(); ++b) {
      const Vec lie = d * action.killing[b](p);
      for (int a = 0; a < mm.generators; ++a)
        for (int r = 1; r <= 3; ++r) {
          double s = lie[MomentMap::component(a, r)];
          for (int c = 0; c < g.dim(); ++c) s -= g.f(c, b, a) * nu[MomentMap::component(c, r)];
          worst = std::max(worst, std::abs(s));
        }
    }
    out.update(worst, i, p);
  }
  return out;
}

KFormField dual_one_form(MetricField g, VectorField x) {
  return [g = std::move(g), x = std::move(x)](const Vec& p) {
    return Form::covector(g(p) * x(p));
  };
}

ClosureResult moment_closure_residual(const MetricField& g, const VectorField& x,
                                      const KFormField& u, const ScalarField& nu_component,
                                      const HypercomplexTriple& h, int axis,
                                      const KFormField& torsion,
                                      const std::vector<Vec>& samples, FdOptions fd,
                                      double hypothesis_tol) {
  ClosureResult out;
  const KFormField xt = dual_one_form(g, x);
  const KFormField idnu = [&](const Vec& p) {
    return apply_to_kform(h, axis, Form::covector(gradient(nu_component, p, fd)));
  };
  for (const Vec& p : samples) {
    Form du = exterior_derivative(u, p, fd);
    if (torsion) du -= torsion(p).interior(x(p));
    out.hypothesis = std::max(out.hypothesis, du.max_abs());
  }
  if (out.hypothesis > hypothesis_tol)
    throw HypothesisError("moment_closure_residual: du differs from i_X H");

  double num = 0.0, den = 0.0, worst = -1.0;
  const KFormField w = [&](const Vec& p) { return xt(p) + u(p) - idnu(p); };
  for (const Vec& p : samples) {
    const double r = exterior_derivative(w, p, fd).max_abs();
    if (r > worst) {
      worst = r;
      out.argmax = p;
    }
    const Vec a = (xt(p) + u(p)).as_covector();
    const Vec b = idnu(p).as_covector();
    num += a.dot(b);
    den += b.squaredNorm();
  }
  out.closure = std::max(worst, 0.0);
  out.kappa = den > 0.0 ? num / den : 0.0;
  return out;
}

SampleMax equiv_extension_pairing(const std::vector<KFormField>& u, const GroupAction& action,
                                  const std::vector<Vec>& samples) {
  if (static_cast<int>(u.size()) != action.dim())
    throw ArgumentError("equiv_extension_pairing: need one u per generator");
  SampleMax out;
  for (int i = 0; i < static_cast<int>(samples.size()); ++i) {
    const Vec& p = samples[i];
    double worst = 0.0;
    for (int a = 0; a < action.dim(); ++a)
      for (int b = a; b < action.dim(); ++b) {
        const double s = u[b](p).as_covector().dot(action.killing[a](p)) +
                         u[a](p).as_covector().dot(action.killing[b](p));
        worst = std::max(worst, std::abs(s));
      }
    out.update(worst, i, p);
  }
  return out;
}

SampleMax delta_on_functions(const std::vector<ScalarField>& phi, const GroupAction& action,
                             const std::vector<Vec>& samples, FdOptions fd) {
  if (static_cast<int>(phi.size()) != action.dim())
    throw ArgumentError("delta_on_functions: need one component per generator");
  const LieAlgebra& g = action.algebra;
  SampleMax out;
  for (int i = 0; i < static_cast<int>(samples.size()); ++i) {
    const Vec& p = samples[i];
    double worst = 0.0;
    for (int b = 0; b < action.dim(); ++b)
      for (int a = 0; a < action.dim(); ++a) {
        double s = lie_derivative(action.flows[b], phi[a], p, fd);
        for (int c = 0; c < g.dim(); ++c) s -= g.f(c, b, a) * phi[c](p);
        worst = std::max(worst, std::abs(s));
      }
    out.update(worst, i, p);
  }
  return out;
}

ShktResult shkt_moment_residual(const MetricField& g, const GroupAction& action,
                                const MomentMap& mm, const std::vector<KFormField>& u,
                                const HypercomplexTriple& h, const std::vector<Vec>& samples,
                                FdOptions fd) {
  if (static_cast<int>(u.size()) != action.dim())
    throw ArgumentError("shkt_moment_residual: need one u per generator");
  ShktResult out;
  for (int a = 0; a < action.dim(); ++a) {
    const KFormField xt = dual_one_form(g, action.killing[a]);
    std::array<KFormField, 3> z;
    for (int r = 1; r <= 3; ++r) {
      ScalarField nu = mm.scalar(a, r);
      z[r - 1] = [xt, ua = u[a], nu, &h, r, fd](const Vec& p) {
        return xt(p) + ua(p) - apply_to_kform(h, r, Form::covector(gradient(nu, p, fd)));
      };
    }
    for (const Vec& p : samples) {
      Form zv[3];
      for (int r = 0; r < 3; ++r) {
        zv[r] = z[r](p);
        out.closedness = std::max(out.closedness, exterior_derivative(z[r], p, fd).max_abs());
      }
      out.cross_axis = std::max({out.cross_axis, (zv[0] - zv[1]).max_abs(), (zv[1] - zv[2]).max_abs()});
    }
  }
  return out;
}

}  // namespace hktred
