#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace orelp {

using Vec3 = std::array<double, 3>;

inline double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

inline Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  return {v[0] / n, v[1] / n, v[2] / n};
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// w + x·i + y·j + z·k
struct Quaternion {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static Quaternion from_axis(double cos_part, double sin_part, const Vec3& axis) {
    return {cos_part, sin_part * axis[0], sin_part * axis[1], sin_part * axis[2]};
  }

  Vec3 imag() const { return {x, y, z}; }
  double imag_norm() const { return std::sqrt(x * x + y * y + z * z); }
  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

  Quaternion conj() const { return {w, -x, -y, -z}; }

  Quaternion normalized() const {
    const double n = norm();
    return {w / n, x / n, y / n, z / n};
  }

  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }

  friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

/// Distance to the nearer of ±q, the natural metric on SO(3) = S³/{±1}.
inline double sign_distance(const Quaternion& a, const Quaternion& b) {
  auto dist = [](const Quaternion& p, const Quaternion& q, double s) {
    return std::sqrt((p.w - s * q.w) * (p.w - s * q.w) + (p.x - s * q.x) * (p.x - s * q.x) +
                     (p.y - s * q.y) * (p.y - s * q.y) + (p.z - s * q.z) * (p.z - s * q.z));
  };
  return std::min(dist(a, b, 1.0), dist(a, b, -1.0));
}

}  // namespace orelp
