#include "hktred/quaternion.hpp"

#include <cmath>

namespace hktred {

Quaternion qinv(const Quaternion& q) {
  const double n2 = qnorm2(q);
  if (n2 == 0.0) {
    throw DomainError("qinv: zero quaternion");
  }
  return (1.0 / n2) * qconj(q);
}

Quaternion exp_i(double angle) { return Quaternion::complex(std::cos(angle), std::sin(angle)); }

Vec3 r_vector(const Quaternion& q) {
  return qmul(qmul(q, Quaternion::i()), qconj(q)).imag();
}

HPoint::HPoint(std::vector<Quaternion> qs, std::vector<Quaternion> ws)
    : qs_(std::move(qs)), ws_(std::move(ws)) {
  if (qs_.size() != ws_.size()) {
    throw ArgumentError("HPoint: q and w blocks must have the same length");
  }
}

HPoint HPoint::unflatten(const Vec& flat) {
  if (flat.size() % 8 != 0) {
    throw ArgumentError("HPoint::unflatten: length must be a multiple of 8");
  }
  const int m = static_cast<int>(flat.size() / 8);
  std::vector<Quaternion> qs(m), ws(m);
  for (int a = 0; a < m; ++a) {
    qs[a] = quaternion_at(flat, q_offset(a));
    ws[a] = quaternion_at(flat, w_offset(m, a));
  }
  return {std::move(qs), std::move(ws)};
}

Vec HPoint::flatten() const {
  Vec flat(real_dim());
  for (int a = 0; a < m(); ++a) {
    store_quaternion(flat, q_offset(a), qs_[a]);
    store_quaternion(flat, w_offset(m(), a), ws_[a]);
  }
  return flat;
}

Quaternion quaternion_at(const Vec& flat, int offset) {
  return {flat[offset], flat[offset + 1], flat[offset + 2], flat[offset + 3]};
}

void store_quaternion(Vec& flat, int offset, const Quaternion& q) {
  flat[offset] = q.t;
  flat[offset + 1] = q.x;
  flat[offset + 2] = q.y;
  flat[offset + 3] = q.z;
}

}  // namespace hktred
