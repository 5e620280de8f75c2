#pragma once

// Independent reference computations used to cross-check the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "ropelab/geometry.hpp"
#include "ropelab/knotid.hpp"

namespace ropelab::oracle {

/// Counts Fox p-colorings by trying every assignment of colors to arcs.
/// Each crossing demands 2*over == under_in + under_out (mod p).
inline std::int64_t brute_force_colorings(const Diagram& d, int p) {
  const int arcs = d.arc_count();
  const auto crossings = d.crossings();
  std::vector<int> color(arcs, 0);
  std::int64_t count = 0;
  while (true) {
    bool ok = true;
    for (const auto& c : crossings) {
      if ((2 * color[c.over] - color[c.under_in] - color[c.under_out]) % p != 0) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
    int k = 0;
    while (k < arcs && ++color[k] == p) color[k++] = 0;
    if (k == arcs) break;
  }
  return count;
}

/// Plain O(n^2) sum of segment lengths.
inline double length(std::span<const Vec3> pts) {
  double l = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Vec3 d = pts[i] - pts[i - 1];
    l += std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
  }
  return l;
}

inline double length_x(std::span<const Vec3> pts) {
  double l = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) l += std::abs(pts[i].x - pts[i - 1].x);
  return l;
}

inline double length_yz(std::span<const Vec3> pts) {
  double l = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) l += std::hypot(pts[i].y - pts[i - 1].y, pts[i].z - pts[i - 1].z);
  return l;
}

/// Largest angle between a sample and the positive x-axis, seen from A.
inline double max_polar_angle(std::span<const Vec3> pts) {
  double worst = 0.0;
  for (const Vec3& p : pts) {
    const double r = std::hypot(p.y, p.z);
    if (p.x == 0.0 && r == 0.0) continue;
    worst = std::max(worst, std::atan2(r, p.x));
  }
  return worst;
}

/// Largest distance from a point of `a` to the segment polyline `b`, sampled
/// densely on `a` and measured exactly against every segment of `b`.
inline double directed_hausdorff(std::span<const Vec3> a, std::span<const Vec3> b) {
  auto point_segment = [](const Vec3& p, const Vec3& s0, const Vec3& s1) {
    const Vec3 d = s1 - s0;
    const double dd = d.x * d.x + d.y * d.y + d.z * d.z;
    double u = dd > 0.0 ? ((p.x - s0.x) * d.x + (p.y - s0.y) * d.y + (p.z - s0.z) * d.z) / dd : 0.0;
    u = std::clamp(u, 0.0, 1.0);
    const Vec3 q = s0 + u * d;
    return std::sqrt((p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y) + (p.z - q.z) * (p.z - q.z));
  };
  double worst = 0.0;
  for (const Vec3& p : a) {
    double best = INFINITY;
    for (std::size_t j = 1; j < b.size(); ++j) best = std::min(best, point_segment(p, b[j - 1], b[j]));
    worst = std::max(worst, best);
  }
  return worst;
}

inline double hausdorff(std::span<const Vec3> a, std::span<const Vec3> b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

/// Distance from the polyline to the straight segment AB.
inline double distance_to_tight(std::span<const Vec3> pts) {
  const std::vector<Vec3> ab{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
  return oracle::hausdorff(pts, std::span<const Vec3>(ab));
}

/// Rotation by `angle` about a unit axis (Rodrigues), applied to every point.
inline std::vector<Vec3> rotate(std::span<const Vec3> pts, Vec3 axis, double angle) {
  const double n = std::sqrt(axis.x * axis.x + axis.y * axis.y + axis.z * axis.z);
  axis = axis / n;
  const double c = std::cos(angle), s = std::sin(angle);
  std::vector<Vec3> out;
  for (const Vec3& p : pts) {
    const double dot = axis.x * p.x + axis.y * p.y + axis.z * p.z;
    const Vec3 cr{axis.y * p.z - axis.z * p.y, axis.z * p.x - axis.x * p.z, axis.x * p.y - axis.y * p.x};
    out.push_back(c * p + s * cr + (1.0 - c) * dot * axis);
  }
  return out;
}

}  // namespace ropelab::oracle
