#pragma once

#include <array>
#include <span>
#include <vector>

#include "hktred/types.hpp"

namespace hktred {

/// q = t + x i + y j + z k.
struct Quaternion {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static constexpr Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
  static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

  /// Complex number a + b i embedded in the (1, i) plane.
  static Quaternion complex(double re, double im) { return {re, im, 0.0, 0.0}; }
  static Quaternion pure(const Vec3& v) { return {0.0, v[0], v[1], v[2]}; }

  Vec3 imag() const { return {x, y, z}; }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

/// Hamilton product, i^2 = j^2 = k^2 = ijk = -1.
constexpr Quaternion qmul(const Quaternion& a, const Quaternion& b) {
  return {a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z,
          a.t * b.x + a.x * b.t + a.y * b.z - a.z * b.y,
          a.t * b.y - a.x * b.z + a.y * b.t + a.z * b.x,
          a.t * b.z + a.x * b.y - a.y * b.x + a.z * b.t};
}

constexpr Quaternion qconj(const Quaternion& q) { return {q.t, -q.x, -q.y, -q.z}; }

constexpr double qnorm2(const Quaternion& q) {
  return q.t * q.t + q.x * q.x + q.y * q.y + q.z * q.z;
}

constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) {
  return {a.t + b.t, a.x + b.x, a.y + b.y, a.z + b.z};
}
constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) {
  return {a.t - b.t, a.x - b.x, a.y - b.y, a.z - b.z};
}
constexpr Quaternion operator*(double s, const Quaternion& q) {
  return {s * q.t, s * q.x, s * q.y, s * q.z};
}
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) { return qmul(a, b); }

/// Inverse of a nonzero quaternion.
Quaternion qinv(const Quaternion& q);

/// e^{i angle} = cos(angle) + i sin(angle).
Quaternion exp_i(double angle);

/// Imaginary part of q i q̄; |r_vector(q)| = qnorm2(q).
Vec3 r_vector(const Quaternion& q);

/// A point of H^m x H^m. Flattened to R^{8m} as (t,x,y,z) per factor, q-blocks first.
class HPoint {
 public:
  HPoint() = default;
  HPoint(std::vector<Quaternion> qs, std::vector<Quaternion> ws);

  /// Inverse of flatten(); the length must be a multiple of 8.
  static HPoint unflatten(const Vec& flat);

  Vec flatten() const;

  int m() const { return static_cast<int>(qs_.size()); }
  int real_dim() const { return 8 * m(); }

  const std::vector<Quaternion>& qs() const { return qs_; }
  const std::vector<Quaternion>& ws() const { return ws_; }
  Quaternion& q(int a) { return qs_.at(a); }
  Quaternion& w(int a) { return ws_.at(a); }
  const Quaternion& q(int a) const { return qs_.at(a); }
  const Quaternion& w(int a) const { return ws_.at(a); }

  /// Offsets of the first real coordinate of q_a / w_a in the flat vector.
  static int q_offset(int a) { return 4 * a; }
  static int w_offset(int m, int a) { return 4 * m + 4 * a; }

 private:
  std::vector<Quaternion> qs_;
  std::vector<Quaternion> ws_;
};

/// Reads the quaternion stored at flat[offset .. offset+3].
Quaternion quaternion_at(const Vec& flat, int offset);
void store_quaternion(Vec& flat, int offset, const Quaternion& q);

}  // namespace hktred
