#include "hktred/sampling.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "hktred/quaternion.hpp"

namespace hktred {

bool SamplingDomain::admits(const Vec& p) const {
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p[i] < lo[i] || p[i] > hi[i]) return false;
  for (const auto& e : exclusions)
    if (e.excluded(p)) return false;
  return true;
}

std::vector<Vec> SamplingDomain::samples() const {
  if (lo.size() != hi.size()) throw ArgumentError("SamplingDomain: bound size mismatch");
  if (n_points <= 0) throw ArgumentError("SamplingDomain: n_points must be positive");
  Rng rng(seed);
  std::vector<Vec> out;
  out.reserve(n_points);
  Vec p(lo.size());
  while (static_cast<int>(out.size()) < n_points) {
    bool accepted = false;
    for (int attempt = 0; attempt < max_attempts_per_point && !accepted; ++attempt) {
      for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = rng.uniform(lo[i], hi[i]);
      accepted = admits(p);
    }
    if (!accepted) throw DomainError("SamplingDomain: exclusions reject the whole box");
    out.push_back(p);
  }
  return out;
}

SamplingDomain box_domain(int dim, double lo, double hi, std::uint64_t seed, int n_points) {
  SamplingDomain d;
  d.lo = Vec::Constant(dim, lo);
  d.hi = Vec::Constant(dim, hi);
  d.seed = seed;
  d.n_points = n_points;
  return d;
}

SamplingDomain ambient_domain(int m, std::uint64_t seed, int n_points,
                              const AmbientDomainOptions& opt) {
  SamplingDomain d = box_domain(8 * m, -opt.box, opt.box, seed, n_points);
  for (int a = 0; a < m; ++a) {
    const int off = HPoint::q_offset(a);
    const double q_min2 = opt.q_min * opt.q_min;
    d.exclusions.push_back({"small |q|", [off, q_min2](const Vec& p) {
                              return qnorm2(quaternion_at(p, off)) < q_min2;
                            }});
    const double rho2 = opt.string_rho2;
    d.exclusions.push_back({"dirac string", [off, rho2](const Vec& p) {
                              Vec3 r = r_vector(quaternion_at(p, off));
                              return r[2] < 0 && r[0] * r[0] + r[1] * r[1] < rho2;
                            }});
  }
  return d;
}

std::vector<LevelSample> level_samples(int m, std::uint64_t seed, int n_points,
                                       const ChartDomainOptions& opt) {
  if (n_points <= 0) throw ArgumentError("level_samples: n_points must be positive");
  Rng rng(seed);
  const double psi_max = std::numbers::pi - opt.psi_margin;
  std::vector<LevelSample> out;
  out.reserve(n_points);
  for (int n = 0; n < n_points; ++n) {
    LevelSample s;
    for (int a = 0; a < m; ++a) {
      Vec3 r;
      int attempts = 0;
      do {
        if (++attempts > 100000) throw DomainError("level_samples: chart box is fully excluded");
        for (int k = 0; k < 3; ++k) r[k] = rng.uniform(-opt.r_box, opt.r_box);
      } while (r.norm() < opt.r_min ||
               (r[2] < 0 && r[0] * r[0] + r[1] * r[1] < opt.string_rho2));
      s.r.push_back(r);
      s.psi.push_back(rng.uniform(-psi_max, psi_max));
      s.y.push_back(rng.uniform(-opt.y_box, opt.y_box));
    }
    out.push_back(std::move(s));
  }
  return out;
}

int thread_count() {
  const char* env = std::getenv("HKTRED_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n > 0 ? n : 1;
}

}  // namespace hktred
