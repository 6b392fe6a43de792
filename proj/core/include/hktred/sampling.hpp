#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hktred/types.hpp"

namespace hktred {

/// Uniform doubles in [0, 1) from a 64-bit Mersenne Twister, using the top 53 bits so the
/// stream is identical on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct Exclusion {
  std::string name;
  std::function<bool(const Vec&)> excluded;
};

/// A box with exclusion predicates, sampled by rejection in a fixed order.
struct SamplingDomain {
  Vec lo;
  Vec hi;
  std::vector<Exclusion> exclusions;
  std::uint64_t seed = 1;
  int n_points = 200;
  int max_attempts_per_point = 10000;

  bool admits(const Vec& p) const;
  std::vector<Vec> samples() const;
};

/// Axis-aligned box [lo, hi]^dim without exclusions.
SamplingDomain box_domain(int dim, double lo, double hi, std::uint64_t seed, int n_points);

struct AmbientDomainOptions {
  double box = 2.0;
  double q_min = 0.3;       // exclude |q_a| < q_min
  double string_rho2 = 0.05;  // exclude r1^2 + r2^2 < string_rho2 with r3 < 0
};

/// Default ambient domain on H^m x H^m: each coordinate in [-box, box], away from q_a = 0 and
/// from the Dirac string of every r_a.
SamplingDomain ambient_domain(int m, std::uint64_t seed, int n_points,
                              const AmbientDomainOptions& opt = {});

struct ChartDomainOptions {
  double r_box = 2.0;        // r-vectors sampled in [-r_box, r_box]^3
  double r_min = 0.09;
  double string_rho2 = 0.05;
  double psi_margin = 0.1;   // |ψ| < π − margin
  double y_box = 2.0;
};

/// A level-set sample described in chart data: per factor a the r-vector, ψ and the real
/// part y of w; the rest of the level point is determined by the moment-map constraint.
struct LevelSample {
  std::vector<Vec3> r;
  std::vector<double> psi;
  std::vector<double> y;
};

std::vector<LevelSample> level_samples(int m, std::uint64_t seed, int n_points,
                                       const ChartDomainOptions& opt = {});

/// Worker count from HKTRED_THREADS, defaulting to 1.
int thread_count();

/// Runs fn(i) for i in [0, n) on thread_count() workers; results are gathered by index so the
/// output never depends on scheduling.
template <typename T>
std::vector<T> parallel_map(int n, const std::function<T(int)>& fn);

}  // namespace hktred

#include "hktred/parallel_impl.hpp"
