#include <algorithm>
#include <cmath>

#include "ropelab/error.hpp"
#include "ropelab/homotopies.hpp"

namespace ropelab {

namespace {

constexpr double kMaxStep = 1.0 / 512.0;
constexpr double kMinRadius = 1e-6;

// The rope as a function of its arclength fraction t in [0,1].
struct ArcCurve {
  std::span<const Vec3> pts;
  std::vector<double> s;

  explicit ArcCurve(std::span<const Vec3> p) : pts(p), s(arclength_fractions(p)) {}

  std::size_t segment_of(double t) const {
    auto it = std::upper_bound(s.begin(), s.end(), t);
    std::size_t j = it == s.begin() ? 0 : static_cast<std::size_t>(it - s.begin()) - 1;
    return std::min(j, s.size() - 2);
  }

  Vec3 at(double t) const {
    const std::size_t j = segment_of(t);
    const double f = (t - s[j]) / (s[j + 1] - s[j]);
    return lerp(pts[j], pts[j + 1], f);
  }
};

// Angular velocity (r x r')/|r|^2 of the direction r/|r| on segment j.
Vec3 omega(const ArcCurve& c, std::size_t j, double t) {
  const double ds = c.s[j + 1] - c.s[j];
  const Vec3 d = (c.pts[j + 1] - c.pts[j]) / ds;
  const Vec3 r = c.pts[j] + d * (t - c.s[j]);
  const double r2 = dot(r, r);
  if (r2 < kMinRadius * kMinRadius)
    throw RopeError(ErrorCode::OdeSingular, "rope passes within 1e-6 of A at t=" + std::to_string(t));
  return cross(r, d) / r2;
}

// Solves Q' = [omega] Q backwards from Q(1) = I down to t = t_end. Then
// Q(t) e_x = r(t)/|r(t)|, so Q(t)^T carries the cut direction back to AB.
Mat3 transport(const ArcCurve& c, double t_end) {
  Mat3 q = Mat3::identity();
  const std::size_t j_end = c.segment_of(t_end);
  for (std::size_t j = c.s.size() - 2;; --j) {
    const double hi = c.s[j + 1];
    const double lo = std::max(c.s[j], t_end);
    if (hi > lo) {
      const int steps = std::max(1, static_cast<int>(std::ceil((hi - lo) / kMaxStep)));
      const double h = -(hi - lo) / steps;
      double t = hi;
      for (int k = 0; k < steps; ++k) {
        const Mat3 k1 = skew(omega(c, j, t)) * q;
        const Mat3 w_mid = skew(omega(c, j, t + 0.5 * h));
        const Mat3 k2 = w_mid * (q + k1 * (0.5 * h));
        const Mat3 k3 = w_mid * (q + k2 * (0.5 * h));
        const Mat3 k4 = skew(omega(c, j, t + h)) * (q + k3 * h);
        q = orthonormalized(q + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0));
        t = hi + h * (k + 1);
      }
    }
    if (j == j_end || j == 0) break;
  }
  return q;
}

std::vector<Vec3> tight_along(const std::vector<double>& s) {
  std::vector<Vec3> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = {s[i], 0.0, 0.0};
  out.back() = kPointB;
  return out;
}

DeltaResult contract_above_min(const Rope& rope, const ArcCurve& c, double t) {
  const Vec3 cut = c.at(t);
  const double radius = norm(cut);
  if (radius < kMinRadius) throw RopeError(ErrorCode::OdeSingular, "cut point lies on A");
  const Mat3 rot = transport(c, t).transposed();
  const Vec3 end = rot * (cut / radius);
  const Mat3 fix = rotation_between(end, kPointB);
  const Mat3 m = fix * rot;

  std::vector<Vec3> out(c.s.size());
  for (std::size_t i = 0; i < c.s.size(); ++i) out[i] = m * (c.at(t * c.s[i]) / radius);
  out.front() = kPointA;
  out.back() = kPointB;

  std::optional<Vec3> ta;
  if (rope.given_tangent_a()) ta = m * *rope.given_tangent_a();
  std::optional<Vec3> tb;
  if (t == 1.0) tb = rope.given_tangent_b();
  return {Rope(std::move(out), ta, tb), angle_between(end, kPointB)};
}

}  // namespace

DeltaResult delta_contract_detail(const Rope& rope, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw RopeError(ErrorCode::InvalidRope, "T must lie in [0,1]");
  const ArcCurve c(rope.samples());
  if (t <= kDeltaTMin) return {Rope(tight_along(c.s)), 0.0};
  DeltaResult res = contract_above_min(rope, c, t);
  if (t >= 2.0 * kDeltaTMin) return res;
  // Ramp from the tight rope on [T_min, 2 T_min].
  const double w = (t - kDeltaTMin) / kDeltaTMin;
  const std::vector<Vec3> tight = tight_along(c.s);
  std::vector<Vec3> out(tight.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = lerp(tight[i], res.rope[i], w);
  out.front() = kPointA;
  out.back() = kPointB;
  return {Rope(std::move(out)), res.correction_angle};
}

Rope delta_contract(const Rope& rope, double t) { return delta_contract_detail(rope, t).rope; }

}  // namespace ropelab
