#pragma once

#include <algorithm>
#include <cmath>

namespace ropelab {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
  constexpr bool operator==(const Vec3&) const = default;
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

inline Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  return n > 0.0 ? v / n : v;
}

inline bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

inline Vec3 lerp(const Vec3& a, const Vec3& b, double t) { return a + (b - a) * t; }

/// Angle between two non-zero vectors, in [0, pi].
inline double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

/// 3x3 rotation matrix stored row-major.
struct Mat3 {
  double m[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

  static Mat3 identity() { return {}; }

  Vec3 operator*(const Vec3& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }

  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        r.m[i][j] = 0.0;
        for (int k = 0; k < 3; ++k) r.m[i][j] += m[i][k] * o.m[k][j];
      }
    return r;
  }

  Mat3 operator+(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
    return r;
  }

  Mat3 operator*(double s) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] * s;
    return r;
  }

  Mat3 transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
  }
};

/// Skew-symmetric matrix [w]x with [w]x v = w x v.
inline Mat3 skew(const Vec3& w) {
  Mat3 r;
  r.m[0][0] = 0.0;
  r.m[0][1] = -w.z;
  r.m[0][2] = w.y;
  r.m[1][0] = w.z;
  r.m[1][1] = 0.0;
  r.m[1][2] = -w.x;
  r.m[2][0] = -w.y;
  r.m[2][1] = w.x;
  r.m[2][2] = 0.0;
  return r;
}

/// Rotation by `angle` about the unit axis `axis` (Rodrigues).
inline Mat3 axis_angle(const Vec3& axis, double angle) {
  const Mat3 k = skew(axis);
  return Mat3::identity() + k * std::sin(angle) + (k * k) * (1.0 - std::cos(angle));
}

/// Smallest rotation taking unit vector `from` onto unit vector `to`.
inline Mat3 rotation_between(const Vec3& from, const Vec3& to) {
  const Vec3 a = normalized(from);
  const Vec3 b = normalized(to);
  const Vec3 c = cross(a, b);
  const double s = norm(c);
  const double d = dot(a, b);
  if (s < 1e-15) {
    if (d > 0.0) return Mat3::identity();
    // Antipodal: rotate by pi about any axis orthogonal to `a`.
    Vec3 ortho = std::abs(a.x) < 0.9 ? cross(a, Vec3{1, 0, 0}) : cross(a, Vec3{0, 1, 0});
    return axis_angle(normalized(ortho), M_PI);
  }
  return axis_angle(c / s, std::atan2(s, d));
}

/// Re-orthonormalizes the rows of a near-rotation with Gram-Schmidt.
inline Mat3 orthonormalized(const Mat3& a) {
  Vec3 r0{a.m[0][0], a.m[0][1], a.m[0][2]};
  Vec3 r1{a.m[1][0], a.m[1][1], a.m[1][2]};
  r0 = normalized(r0);
  r1 = normalized(r1 - r0 * dot(r0, r1));
  const Vec3 r2 = cross(r0, r1);
  Mat3 out;
  const Vec3 rows[3] = {r0, r1, r2};
  for (int i = 0; i < 3; ++i) {
    out.m[i][0] = rows[i].x;
    out.m[i][1] = rows[i].y;
    out.m[i][2] = rows[i].z;
  }
  return out;
}

/// Rotation angle of a rotation matrix.
inline double rotation_angle(const Mat3& r) {
  const double tr = r.m[0][0] + r.m[1][1] + r.m[2][2];
  const double c = std::clamp((tr - 1.0) * 0.5, -1.0, 1.0);
  return std::acos(c);
}

}  // namespace ropelab
