#include "hktred/reduction.hpp"

#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace hktred {

namespace {

MetricField flat_metric(int n) {
  return [n](const Vec&) { return Mat(Mat::Identity(n, n)); };
}

// Stacked covector rows [dν; I_r dν^r_b] at p.
Mat constraint_rows(const ReductionSetup& s, const Vec& p) {
  const int k = s.group_dim();
  const Mat d = s.moment.differential(p);
  Mat rows(6 * k, s.ambient_dim);
  rows.topRows(3 * k) = d;
  for (int b = 0; b < k; ++b)
    for (int r = 1; r <= 3; ++r)
      rows.row(3 * k + MomentMap::component(b, r)) =
          (s.triple.covector(r) * d.row(MomentMap::component(b, r)).transpose()).transpose();
  return rows;
}

Vec lwy_level_point(const Mat& v, const std::vector<Vec3>& r, const std::vector<double>& psi,
                    const std::vector<double>& y) {
  const int m = static_cast<int>(r.size());
  Vec p(8 * m);
  for (int a = 0; a < m; ++a) {
    store_quaternion(p, HPoint::q_offset(a), qmul(hopf_section(r[a]), exp_i(0.5 * psi[a])));
    Vec3 yv = Vec3::Zero();
    for (int c = 0; c < m; ++c) yv += 0.5 * v(c, a) * r[c];
    store_quaternion(p, HPoint::w_offset(m, a), Quaternion{y[a], yv[0], yv[1], yv[2]});
  }
  return p;
}

}  // namespace

ReductionSetup lwy_setup(const Mat& lambda, MetricField ambient) {
  validate(LWYFlat{lambda});
  const int m = static_cast<int>(lambda.rows());
  const Mat v = lambda.inverse();
  ReductionSetup s;
  s.name = m == 1 ? "taub-nut" : "lwy";
  s.ambient_dim = 8 * m;
  s.quotient_dim = 4 * m;
  s.triple = HypercomplexTriple::standard(2 * m);
  s.action = lwy_action(lambda);
  s.moment = lwy_moment(lambda);
  s.ambient_metric = ambient ? std::move(ambient) : flat_metric(8 * m);
  s.chart = [v, m](const Vec& p) {
    Vec c(4 * m);
    for (int a = 0; a < m; ++a) {
      const ChartPoint cp = chart_forward(quaternion_at(p, HPoint::q_offset(a)), Quaternion{});
      double tau = cp.psi;
      for (int b = 0; b < m; ++b) tau -= 2.0 * v(a, b) * p[HPoint::w_offset(m, b)];
      c.segment<3>(4 * a) = cp.r;
      c[4 * a + 3] = tau;
    }
    return c;
  };
  s.lift_point = [v, m](const Vec& c, const Vec& orbit) {
    std::vector<Vec3> r(m);
    std::vector<double> psi(m), y(m);
    for (int a = 0; a < m; ++a) {
      r[a] = c.segment<3>(4 * a);
      y[a] = orbit.size() ? orbit[a] : 0.0;
    }
    for (int a = 0; a < m; ++a) {
      psi[a] = c[4 * a + 3];
      for (int b = 0; b < m; ++b) psi[a] += 2.0 * v(a, b) * y[b];
    }
    return lwy_level_point(v, r, psi, y);
  };
  s.level_point = [v, m](const LevelSample& ls) {
    if (static_cast<int>(ls.r.size()) != m) throw ArgumentError("level_point: sample has wrong m");
    return lwy_level_point(v, ls.r, ls.psi, ls.y);
  };
  return s;
}

ReductionSetup taub_nut_setup(double lambda, MetricField ambient) {
  return lwy_setup(Mat::Constant(1, 1, lambda), std::move(ambient));
}

ReductionSetup trivial_setup(int blocks, MetricField ambient) {
  ReductionSetup s;
  s.name = "trivial";
  s.ambient_dim = 4 * blocks;
  s.quotient_dim = 4 * blocks;
  s.triple = HypercomplexTriple::standard(blocks);
  s.action.algebra = LieAlgebra::abelian(0);
  s.moment.generators = 0;
  s.moment.nu = [](const Vec&) { return Vec(0); };
  s.moment.dnu = [n = 4 * blocks](const Vec&) { return Mat(0, n); };
  s.ambient_metric = ambient ? std::move(ambient) : flat_metric(4 * blocks);
  s.chart = [](const Vec& p) { return p; };
  s.lift_point = [](const Vec& c, const Vec&) { return c; };
  s.level_point = [blocks](const LevelSample& ls) {
    Vec p(4 * blocks);
    for (int a = 0; a < blocks; ++a)
      store_quaternion(p, 4 * a, qmul(hopf_section(ls.r.at(a)), exp_i(0.5 * ls.psi.at(a))));
    return p;
  };
  return s;
}

HorizontalFrame u_distribution(const ReductionSetup& s, const Vec& p) {
  const int n = s.ambient_dim, k = s.group_dim();
  HorizontalFrame f;
  f.vertical.resize(n, k);
  for (int b = 0; b < k; ++b) f.vertical.col(b) = s.action.killing[b](p);
  if (k == 0) {
    f.horizontal = Mat::Identity(n, n);
    return f;
  }
  const Mat rows = constraint_rows(s, p);
  Eigen::JacobiSVD<Mat> svd(rows, Eigen::ComputeFullV);
  f.singular_values = svd.singularValues();
  const double s0 = f.singular_values[0];
  int rank = 0;
  for (Eigen::Index i = 0; i < f.singular_values.size(); ++i)
    if (f.singular_values[i] > 1e-8 * s0) ++rank;
  if (s0 == 0.0 || rank != 4 * k) {
    int worst = 0;
    double worst_val = std::numeric_limits<double>::infinity();
    const Mat d = s.moment.differential(p);
    for (int b = 0; b < k; ++b) {
      const Vec w = s.triple.covector(1) * d.row(MomentMap::component(b, 1)).transpose();
      const double v = std::abs(w.dot(f.vertical.col(b)));
      if (v < worst_val) {
        worst_val = v;
        worst = b;
      }
    }
    throw TransversalityError("transversality fails at generator " + std::to_string(worst) +
                                  " (rank " + std::to_string(rank) + ", expected " +
                                  std::to_string(4 * k) + ")",
                              worst);
  }
  f.horizontal = svd.matrixV().rightCols(n - rank);
  return f;
}

Mat horizontal_lift(const HorizontalFrame& frame, const Mat& dc) {
  const Mat restricted = dc * frame.horizontal;
  if (restricted.rows() != restricted.cols())
    throw DomainError("horizontal_lift: chart dimension does not match dim 𝒰");
  Eigen::FullPivLU<Mat> lu(restricted);
  Eigen::JacobiSVD<Mat> svd(restricted);
  const Vec sv = svd.singularValues();
  if (!lu.isInvertible() || sv[sv.size() - 1] < 1e-10 * sv[0])
    throw DomainError("horizontal_lift: chart differential is singular on 𝒰");
  return frame.horizontal * lu.solve(Mat::Identity(restricted.rows(), restricted.cols()));
}

ReducedMetricSample reduced_metric_at(const ReductionSetup& s, const Vec& p) {
  return reduced_metric_at(s, p, s.ambient_metric(p));
}

ReducedMetricSample reduced_metric_at(const ReductionSetup& s, const Vec& p, const Mat& g) {
  const HorizontalFrame frame = u_distribution(s, p);
  const Mat dc = jacobian(s.chart, p, kChartFd);
  ReducedMetricSample out;
  out.chart = s.chart(p);
  out.lifts = horizontal_lift(frame, dc);
  out.g = out.lifts.transpose() * g * out.lifts;
  out.g = 0.5 * (out.g + out.g.transpose()).eval();
  for (int a = 0; a < 3; ++a) {
    out.I[a] = dc * s.triple.vector(a + 1) * out.lifts;
    out.F[a] = out.I[a].transpose() * out.g;
  }
  return out;
}

MetricField reduced_metric_field(const ReductionSetup& s) {
  return [s](const Vec& c) { return reduced_metric_at(s, s.lift_point(c, Vec())).g; };
}

StructureField quotient_structure(const ReductionSetup& s) {
  return [s](const Vec& c) {
    const Vec p = s.lift_point(c, Vec());
    const HorizontalFrame frame = u_distribution(s, p);
    const Mat dc = jacobian(s.chart, p, kChartFd);
    const Mat l = horizontal_lift(frame, dc);
    std::array<Mat, 3> ops;
    for (int a = 0; a < 3; ++a) ops[a] = dc * s.triple.vector(a + 1) * l;
    return ops;
  };
}

HyperHermitian quotient_pair(const ReductionSetup& s, MetricField quotient_metric) {
  return {std::move(quotient_metric), quotient_structure(s)};
}

std::vector<Vec> level_points(const ReductionSetup& s, const std::vector<LevelSample>& samples) {
  std::vector<Vec> out;
  out.reserve(samples.size());
  for (const auto& ls : samples) out.push_back(s.level_point(ls));
  return out;
}

std::vector<Vec> quotient_points(const ReductionSetup& s, const std::vector<LevelSample>& samples) {
  std::vector<Vec> out;
  out.reserve(samples.size());
  for (LevelSample ls : samples) {
    std::fill(ls.y.begin(), ls.y.end(), 0.0);
    out.push_back(s.chart(s.level_point(ls)));
  }
  return out;
}

double relative_frobenius(const Mat& a, const Mat& b) {
  const double nb = b.norm();
  return nb > 0.0 ? (a - b).norm() / nb : (a - b).norm();
}

BracketResult bracket_vertical_residual(const ReductionSetup& s, const std::vector<Vec>& points,
                                        FdOptions fd) {
  const int n = s.ambient_dim, q = s.quotient_dim, k = s.group_dim();
  if (fd.step <= 0.0) throw ArgumentError("bracket_vertical_residual: step must be positive");
  auto lifts = [&](const Vec& x) {
    return horizontal_lift(u_distribution(s, x), jacobian(s.chart, x, kChartFd));
  };
  const Mat& v1 = s.triple.vector(1);
  BracketResult out;
  for (const Vec& p : points) {
    const Mat rows = constraint_rows(s, p);
    const Mat l = lifts(p);
    std::vector<Mat> dl(n);  // ∂L/∂x_i
    for (int i = 0; i < n; ++i)
      dl[i] = central_difference(
          [&](double t) {
            Vec x = p;
            x[i] += t;
            return Mat(lifts(x));
          },
          fd.step, fd.order);
    auto d_col = [&](int j) {
      Mat d(n, n);
      for (int i = 0; i < n; ++i) d.col(i) = dl[i].col(j);
      return d;
    };
    auto bracket = [](const Mat& da, const Vec& a, const Mat& db, const Vec& b) -> Vec {
      return db * a - da * b;
    };
    auto measure = [&](const Vec& v) { return rows.size() ? (rows * v).cwiseAbs().maxCoeff() : 0.0; };
    for (int j = 0; j < q; ++j) {
      const Mat da = d_col(j), db = v1 * da;
      const Vec a = l.col(j), b = v1 * a;
      out.self = std::max(out.self, bracket(da, a, da, a).cwiseAbs().maxCoeff());
      for (int m = j + 1; m < q; ++m) {
        const Mat dc = d_col(m), dd = v1 * dc;
        const Vec c = l.col(m), d = v1 * c;
        // Z = A + iB, W = C + iD of type (0,1) for I_1.
        const Vec re = bracket(da, a, dc, c) - bracket(db, b, dd, d);
        const Vec im = bracket(da, a, dd, d) + bracket(db, b, dc, c);
        out.horizontal = std::max({out.horizontal, measure(re), measure(im)});
      }
      for (int g = 0; g < k; ++g) {
        const Mat dx = jacobian(s.action.killing[g], p, fd);
        const Vec x = s.action.killing[g](p);
        out.vertical = std::max(out.vertical, measure(bracket(dx, x, da, a)));
      }
    }
  }
  return out;
}

Form potential_operator(const StructureField& structure, const ScalarField& rho, int axis,
                        const Vec& p, FdOptions fd) {
  const int a = axis, b = axis % 3 + 1, c = (axis + 1) % 3 + 1;
  const KFormField da = twisted_differential(structure, a, rho, fd);
  const KFormField dc = twisted_differential(structure, c, rho, fd);
  const KFormField dbdc = twisted_differential(structure, b, dc, fd);
  return exterior_derivative(da, p, fd) + dbdc(p);
}

DescentResult potential_descent_check(const ScalarField& rho, const ReductionSetup& s,
                                      const std::vector<Vec>& level_pts,
                                      const std::vector<Vec>& quotient_pts,
                                      double hypothesis_tol, FdOptions fd) {
  DescentResult out;
  for (const Vec& p : level_pts) {
    const Vec grad = gradient(rho, p, {1e-5, 4});
    for (int b = 0; b < s.group_dim(); ++b) {
      const Vec x = s.action.killing[b](p);
      out.hypothesis = std::max(out.hypothesis, std::abs(grad.dot(x)));
      for (int a = 1; a <= 3; ++a)
        out.hypothesis = std::max(out.hypothesis, std::abs(grad.dot(s.triple.vector(a) * x)));
    }
  }
  if (out.hypothesis > hypothesis_tol) return out;
  out.evaluated = true;
  const ScalarField rho_n = [&](const Vec& c) { return rho(s.lift_point(c, Vec())); };
  const StructureField st = quotient_structure(s);
  for (const Vec& c : quotient_pts) {
    const ReducedMetricSample red = reduced_metric_at(s, s.lift_point(c, Vec()));
    for (int a = 1; a <= 3; ++a) {
      const Form lhs = 2.0 * Form::from_matrix(red.F[a - 1]);
      out.conclusion = std::max(out.conclusion, (lhs - potential_operator(st, rho_n, a, c, fd)).max_abs());
    }
  }
  return out;
}

double theta_mu_residual(double lambda, const std::vector<LevelSample>& samples) {
  const ReductionSetup s = taub_nut_setup(lambda);
  double worst = 0.0;
  for (const LevelSample& ls : samples) {
    const Vec p = s.level_point(ls);
    const Vec c = s.chart(p);
    // Level set parametrised by (r1, r2, r3, τ, y).
    const MapField param = [&](const Vec& z) {
      return s.lift_point(z.head(4), Vec::Constant(1, z[4]));
    };
    Vec z(5);
    z << c, ls.y[0];
    const Mat j = jacobian(param, z, kChartFd);
    const Vec theta = (j.transpose() * j).col(4);
    const double r = ls.r[0].norm();
    const double v = 1.0 / r + 1.0 / (lambda * lambda);
    Vec mu(5);
    mu << dirac_potential(ls.r[0]) / (2.0 * lambda * v), 1.0 / (2.0 * lambda * v), 1.0;
    worst = std::max(worst, (theta / (1.0 + r / (lambda * lambda)) - mu).cwiseAbs().maxCoeff());
    const Mat lifts = reduced_metric_at(s, p).lifts;
    const Mat coords = j.colPivHouseholderQr().solve(lifts);
    worst = std::max(worst, (mu.transpose() * coords).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace hktred
