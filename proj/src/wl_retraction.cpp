#include <algorithm>
#include <cmath>
#include <numbers>

#include "ropelab/error.hpp"
#include "ropelab/homotopies.hpp"

namespace ropelab {

namespace {

// Polar angle about +x and the azimuth in the yz-plane.
struct Spherical {
  double rho = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

Spherical to_spherical(const Vec3& p) {
  const double radial = std::hypot(p.y, p.z);
  return {norm(p), std::atan2(radial, p.x), std::atan2(p.z, p.y)};
}

Vec3 from_spherical(const Spherical& s) {
  const double st = std::sin(s.theta);
  return {s.rho * std::cos(s.theta), s.rho * st * std::cos(s.phi), s.rho * st * std::sin(s.phi)};
}

Vec3 scale_polar(const Vec3& p, double factor) {
  Spherical s = to_spherical(p);
  if (s.rho == 0.0) return p;
  if (p.x < 0.0 && std::hypot(p.y, p.z) <= 1e-12 * s.rho)
    throw RopeError(ErrorCode::CoordinateSingularity, "sample on the negative x-axis has polar angle pi");
  s.theta *= factor;
  return from_spherical(s);
}

// Splits the first segment geometrically towards A until it is short
// compared to the squeeze scale, so the squeezed tangent at A is axial.
std::vector<Vec3> refine_near_a(std::span<const Vec3> pts, double delta) {
  std::vector<Vec3> out;
  out.push_back(pts[0]);
  const Vec3 p1 = pts[1];
  const double limit = 1e-4 * delta;
  std::vector<Vec3> inserted;
  for (double lambda = 0.5; std::abs(p1.x) * lambda * 2.0 > limit; lambda *= 0.5) inserted.push_back(p1 * lambda);
  out.insert(out.end(), inserted.rbegin(), inserted.rend());
  out.insert(out.end(), pts.begin() + 1, pts.end());
  return out;
}

}  // namespace

Rope wl_stage1(const Rope& rope, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw RopeError(ErrorCode::InvalidRope, "T must lie in [0,1]");
  if (!extension_singularities(rope).in_wl())
    throw RopeError(ErrorCode::NotInWL, "rope meets the left extension ray");
  const double factor = 1.0 - 5.0 * t / 6.0;
  std::vector<Vec3> out;
  out.reserve(rope.size());
  for (const Vec3& p : rope.samples()) out.push_back(scale_polar(p, factor));
  if (t == 0.0) return rope;
  out.front() = kPointA;
  out.back() = kPointB;
  std::optional<Vec3> ta;
  if (rope.given_tangent_a()) ta = scale_polar(normalized(*rope.given_tangent_a()), factor);
  return Rope(std::move(out), ta);
}

Stage2Params wl_stage2_params(const Rope& rope, double eps) {
  const auto pts = rope.samples();
  const double quarter = std::numbers::pi / 4.0;
  // Good run: x strictly increasing with slope angle below pi/4.
  std::size_t run = 0;
  while (run + 1 < pts.size()) {
    const Vec3 d = pts[run + 1] - pts[run];
    if (d.x <= 0.0 || angle_between(d, kPointB) >= quarter) break;
    ++run;
  }
  Stage2Params p;
  double x_good = run > 0 ? pts[run].x : 0.0;
  for (std::size_t i = run + 1; i < pts.size(); ++i) x_good = std::min(x_good, pts[i].x);
  p.x_good = std::max(0.0, x_good);

  double slack = quarter;
  for (std::size_t i = 0; i < run && pts[i].x <= 0.5 * p.x_good; ++i)
    slack = std::min(slack, quarter - angle_between(pts[i + 1] - pts[i], kPointB));
  p.delta1_hat = 0.25 * std::min(p.x_good, slack);
  p.delta2 = 1.0 + eps - measures(rope).l;
  if (p.delta1_hat <= 0.0)
    throw RopeError(ErrorCode::NotInE, "no shallow single-valued zone next to A");
  if (p.delta2 <= 0.0) throw RopeError(ErrorCode::NotInSpace, "rope length is not below 1+eps");
  p.delta = std::min(p.delta1_hat, p.delta2) / 5.0;
  return p;
}

double squeeze_profile(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return std::sin(0.5 * std::numbers::pi * x);
}

Rope wl_stage2(const Rope& rope, double eps, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw RopeError(ErrorCode::InvalidRope, "T must lie in [0,1]");
  const Stage2Params p = wl_stage2_params(rope, eps);
  std::vector<Vec3> out = refine_near_a(rope.samples(), p.delta);
  for (Vec3& q : out) {
    const double f = t * squeeze_profile(q.x / p.delta) + 1.0 - t;
    q.y *= f;
    q.z *= f;
  }
  out.front() = kPointA;
  out.back() = kPointB;
  std::optional<Vec3> ta;
  if (t == 1.0) ta = kPointB;
  else if (t == 0.0) ta = rope.given_tangent_a();
  return Rope(std::move(out), ta, rope.given_tangent_b());
}

Rope wl_stage3(const Rope& rope, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw RopeError(ErrorCode::InvalidRope, "T must lie in [0,1]");
  if (t == 1.0) return rope;
  const auto pts = rope.samples();
  const double total = measures(rope).l;
  const double spacing = total / static_cast<double>(rope.segment_count());
  if (t == 0.0) return Rope::tight(std::max(8, static_cast<int>(std::ceil(1.0 / spacing))));

  // Cut at arclength T*l, keeping the vertices before the cut.
  std::vector<Vec3> cut{pts[0]};
  const double target = t * total;
  double run = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double seg = distance(pts[i - 1], pts[i]);
    if (run + seg >= target) {
      const Vec3 c = lerp(pts[i - 1], pts[i], (target - run) / seg);
      if (!(c == cut.back())) cut.push_back(c);
      break;
    }
    run += seg;
    cut.push_back(pts[i]);
  }
  if (cut.size() < 2) return Rope::tight(std::max(8, static_cast<int>(std::ceil(1.0 / spacing))));

  const double x_t = cut.back().x;
  std::vector<Vec3> moved;
  if (x_t > 1.0) {
    moved = cut;
    for (Vec3& q : moved) q.x /= x_t;
  } else {
    const double shift = 1.0 - x_t;
    if (shift > 0.0) {
      const int pieces = std::max(1, static_cast<int>(std::ceil(shift / spacing)));
      for (int k = 0; k < pieces; ++k) moved.push_back({shift * k / pieces, 0.0, 0.0});
    }
    for (const Vec3& q : cut) moved.push_back(q + Vec3{shift, 0.0, 0.0});
  }
  // Quadratic shear fixing A and taking the free end to B.
  const Vec3 end_offset = moved.back() - kPointB;
  for (Vec3& q : moved) q -= end_offset * (q.x * q.x);

  auto length_at = [&](double h) {
    double len = 0.0;
    for (std::size_t i = 1; i < moved.size(); ++i) {
      const Vec3 d = moved[i] - moved[i - 1];
      len += std::sqrt(d.x * d.x + h * h * (d.y * d.y + d.z * d.z));
    }
    return len;
  };
  double h = 1.0;
  if (length_at(1.0) > total) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (length_at(mid) > total ? hi : lo) = mid;
    }
    h = lo;
  }
  std::vector<Vec3> out;
  out.reserve(moved.size());
  for (const Vec3& q : moved) {
    const Vec3 s{q.x, h * q.y, h * q.z};
    if (out.empty() || !(s == out.back())) out.push_back(s);
  }
  out.front() = kPointA;
  out.back() = kPointB;
  if (out.size() < 9) return Rope(resample_polyline(out, 8));
  return Rope(std::move(out));
}

RopeFamily wl_retraction(const Rope& rope, double eps, int n_t) {
  if (n_t < 3) throw RopeError(ErrorCode::InvalidRope, "need at least 3 frame intervals");
  const Rope r1 = wl_stage1(rope, 1.0);
  const Rope r2 = wl_stage2(r1, eps, 1.0);
  RopeFamily fam;
  fam.eps = eps;
  for (int i = 0; i <= n_t; ++i) {
    const double u = static_cast<double>(i) / n_t;
    const double s = std::clamp(3.0 * u, 0.0, 3.0);
    if (s <= 1.0) fam.frames.push_back({u, wl_stage1(rope, s)});
    else if (s <= 2.0) fam.frames.push_back({u, wl_stage2(r1, eps, s - 1.0)});
    else fam.frames.push_back({u, wl_stage3(r2, 3.0 - s)});
  }
  return fam;
}

}  // namespace ropelab
