#include <cmath>
#include <numbers>

#include "ropelab/error.hpp"
#include "ropelab/knotid.hpp"

namespace ropelab {

namespace {

Vec3 vertex_tangent(const std::vector<Vec3>& pts, std::size_t i) {
  const std::size_t n = pts.size();
  return normalized(pts[(i + 1) % n] - pts[(i + n - 1) % n]);
}

}  // namespace

void check_transversal(const SingularCurve& s, std::size_t dp) {
  if (dp >= s.double_points.size()) throw RopeError(ErrorCode::NonTransversal, "no such double point");
  const auto& pts = s.curve.points;
  const auto [i, j] = s.double_points[dp];
  if (i >= pts.size() || j >= pts.size() || i == j)
    throw RopeError(ErrorCode::NonTransversal, "double point indices out of range");
  if (distance(pts[i], pts[j]) > s.tol_sing)
    throw RopeError(ErrorCode::NonTransversal, "marked strands are " + std::to_string(distance(pts[i], pts[j])) + " apart");
  const double angle = angle_between(vertex_tangent(pts, i), vertex_tangent(pts, j));
  const double crossing = std::min(angle, std::numbers::pi - angle);
  if (crossing <= 5.0 * std::numbers::pi / 180.0)
    throw RopeError(ErrorCode::NonTransversal, "strands meet at " + std::to_string(crossing) + " rad");
}

ClosedCurve resolve(const SingularCurve& s, std::size_t dp, int sign) {
  check_transversal(s, dp);
  const auto& pts = s.curve.points;
  const std::size_t n = pts.size();
  const auto [i, j] = s.double_points[dp];
  const Vec3 normal = normalized(cross(vertex_tangent(pts, i), vertex_tangent(pts, j)));
  const double eta = 2.0 * s.tol_sing;
  // Current gap along the normal, so the result sits exactly eta apart there.
  const double along = dot(pts[j] - pts[i], normal);
  const double shift = (sign >= 0 ? eta : -eta) - along;
  ClosedCurve out = s.curve;
  constexpr int kReach = 3;
  for (int k = -kReach; k <= kReach; ++k) {
    const double w = 0.5 * (1.0 + std::cos(std::numbers::pi * k / (kReach + 1)));
    const std::size_t idx = (j + n + static_cast<std::size_t>(k + static_cast<int>(n))) % n;
    out.points[idx] = out.points[idx] + normal * (shift * w);
  }
  return out;
}

ClosedCurve resolve_all(const SingularCurve& s, std::span<const int> signs) {
  if (signs.size() != s.double_points.size())
    throw RopeError(ErrorCode::NonTransversal, "one sign per double point is required");
  for (std::size_t dp = 0; dp < s.double_points.size(); ++dp) check_transversal(s, dp);
  SingularCurve work = s;
  for (std::size_t dp = 0; dp < signs.size(); ++dp) {
    work.curve = resolve(work, dp, signs[dp]);
  }
  return work.curve;
}

}  // namespace ropelab
