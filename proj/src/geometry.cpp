#include "ropelab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ropelab/error.hpp"

namespace ropelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> cumulative_length(std::span<const Vec3> pts) {
  std::vector<double> cum(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) cum[i] = cum[i - 1] + distance(pts[i - 1], pts[i]);
  return cum;
}

// Walks `steps` chords of length `c` from the start of the polyline. Returns the
// position of the last point reached, the number of completed steps, and the
// arclength index it stopped on.
struct Walk {
  std::vector<Vec3> points;
  bool ran_off = false;
};

Walk chord_walk(std::span<const Vec3> pts, double c, int steps) {
  Walk w;
  w.points.reserve(steps + 1);
  Vec3 q = pts.front();
  w.points.push_back(q);
  std::size_t seg = 0;
  Vec3 seg_start = q;
  const double c2 = c * c;
  for (int k = 0; k < steps; ++k) {
    bool found = false;
    while (seg + 1 < pts.size()) {
      const Vec3& b = pts[seg + 1];
      const Vec3 db = b - q;
      if (dot(db, db) >= c2) {
        // seg_start is inside the sphere, b outside: take the exit root.
        const Vec3 d = b - seg_start;
        const Vec3 f = seg_start - q;
        const double aa = dot(d, d);
        const double bb = 2.0 * dot(f, d);
        const double cc = dot(f, f) - c2;
        const double disc = std::max(0.0, bb * bb - 4.0 * aa * cc);
        double u = (-bb + std::sqrt(disc)) / (2.0 * aa);
        u = std::clamp(u, 0.0, 1.0);
        q = seg_start + d * u;
        seg_start = q;
        found = true;
        break;
      }
      ++seg;
      seg_start = pts[seg];
    }
    if (!found) {
      w.ran_off = true;
      return w;
    }
    w.points.push_back(q);
  }
  return w;
}

}  // namespace

Rope::Rope(std::vector<Vec3> samples, std::optional<Vec3> tangent_a, std::optional<Vec3> tangent_b)
    : samples_(std::move(samples)), tangent_a_(tangent_a), tangent_b_(tangent_b) {
  if (samples_.size() < 9) throw RopeError(ErrorCode::InvalidRope, "a rope needs at least 9 samples");
  if (!(samples_.front() == kPointA)) throw RopeError(ErrorCode::InvalidRope, "first sample must be A=(0,0,0)");
  if (!(samples_.back() == kPointB)) throw RopeError(ErrorCode::InvalidRope, "last sample must be B=(1,0,0)");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!is_finite(samples_[i])) throw RopeError(ErrorCode::InvalidRope, "non-finite sample");
    if (i > 0 && samples_[i] == samples_[i - 1])
      throw RopeError(ErrorCode::InvalidRope, "consecutive samples coincide at index " + std::to_string(i));
  }
  for (auto* t : {&tangent_a_, &tangent_b_}) {
    if (!*t) continue;
    if (!is_finite(**t) || norm(**t) == 0.0) throw RopeError(ErrorCode::InvalidRope, "endpoint tangent must be non-zero");
    **t = normalized(**t);
  }
}

Rope Rope::tight(int segments) {
  if (segments < 8) throw RopeError(ErrorCode::InvalidRope, "tight rope needs at least 8 segments");
  std::vector<Vec3> pts(segments + 1);
  for (int i = 0; i <= segments; ++i) pts[i] = {static_cast<double>(i) / segments, 0.0, 0.0};
  pts.back() = kPointB;
  return Rope(std::move(pts));
}

Vec3 Rope::tangent_a() const { return tangent_a_ ? *tangent_a_ : normalized(samples_[1] - samples_[0]); }

Vec3 Rope::tangent_b() const {
  const std::size_t n = samples_.size();
  return tangent_b_ ? *tangent_b_ : normalized(samples_[n - 1] - samples_[n - 2]);
}

double rope_length(std::span<const Vec3> pts) {
  double l = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) l += distance(pts[i - 1], pts[i]);
  return l;
}

Measures measures(const Rope& rope) {
  Measures m;
  const auto pts = rope.samples();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Vec3 d = pts[i] - pts[i - 1];
    m.l += norm(d);
    m.l_x += std::abs(d.x);
    m.l_yz += std::hypot(d.y, d.z);
  }
  return m;
}

bool is_short(const Rope& rope, double eps) { return measures(rope).l < 1.0 + eps; }

double max_turning_angle(const Rope& rope) {
  double worst = 0.0;
  const auto pts = rope.samples();
  for (std::size_t i = 1; i + 1 < pts.size(); ++i)
    worst = std::max(worst, angle_between(pts[i] - pts[i - 1], pts[i + 1] - pts[i]));
  return worst;
}

void check_smooth(const Rope& rope, double cap) {
  const double worst = max_turning_angle(rope);
  if (worst > cap)
    throw RopeError(ErrorCode::InvalidRope,
                    "turning angle " + std::to_string(worst) + " rad exceeds cap " + std::to_string(cap));
}

void check_embedded(const Rope& rope) {
  const double d = min_self_distance(rope);
  if (!(d > tol::kSingular))
    throw RopeError(ErrorCode::Embedding, "rope is not embedded (min self distance " + std::to_string(d) + ")");
}

std::vector<Vec3> resample_polyline(std::span<const Vec3> pts, int segments) {
  if (segments < 1) throw RopeError(ErrorCode::InvalidRope, "resampling needs at least one segment");
  const double total = rope_length(pts);
  // Equal chords: bisect on the chord length so that the last chord lands on
  // the final sample. The result is a fixed point of this resampling.
  const Vec3 end = pts.back();
  auto residual = [&](double c) {
    Walk w = chord_walk(pts, c, segments - 1);
    if (w.ran_off) return -kInf;
    return distance(w.points.back(), end) - c;
  };
  double hi = total / segments;
  double lo = 0.5 * hi;
  while (residual(lo) <= 0.0 && lo > 1e-300) lo *= 0.5;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  Walk w = chord_walk(pts, lo, segments - 1);
  if (w.ran_off) w = chord_walk(pts, hi, segments - 1);
  std::vector<Vec3> out = std::move(w.points);
  out.push_back(end);
  return out;
}

Rope resample_arclength(const Rope& rope, int segments) {
  if (segments < 8) throw RopeError(ErrorCode::InvalidRope, "resample count must be at least 8");
  std::vector<Vec3> out = resample_polyline(rope.samples(), segments);
  out.front() = kPointA;
  out.back() = kPointB;
  return Rope(std::move(out), rope.given_tangent_a(), rope.given_tangent_b());
}

Vec3 point_at_fraction(std::span<const Vec3> pts, double u) {
  const std::vector<double> cum = cumulative_length(pts);
  const double target = std::clamp(u, 0.0, 1.0) * cum.back();
  auto it = std::upper_bound(cum.begin(), cum.end(), target);
  if (it == cum.end()) return pts.back();
  const std::size_t j = static_cast<std::size_t>(it - cum.begin());
  if (j == 0) return pts.front();
  const double seg = cum[j] - cum[j - 1];
  const double f = seg > 0.0 ? (target - cum[j - 1]) / seg : 0.0;
  return lerp(pts[j - 1], pts[j], f);
}

std::vector<double> arclength_fractions(std::span<const Vec3> pts) {
  std::vector<double> cum = cumulative_length(pts);
  const double total = cum.back();
  for (double& c : cum) c = total > 0.0 ? c / total : 0.0;
  cum.back() = 1.0;
  return cum;
}

int multiplicity(const Rope& rope, double x) {
  const auto pts = rope.samples();
  auto near_sample = [&](double xv) {
    return std::any_of(pts.begin(), pts.end(), [&](const Vec3& p) { return std::abs(p.x - xv) < tol::kFiber; });
  };
  if (near_sample(x)) {
    const double nudged = x + (x < 0.5 ? 2.0 : -2.0) * tol::kFiber;
    if (near_sample(nudged))
      throw RopeError(ErrorCode::NonGenericFiber, "fiber x=" + std::to_string(x) + " passes through a sample");
    x = nudged;
  }
  int count = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double a = pts[i - 1].x - x;
    const double b = pts[i].x - x;
    if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) ++count;
  }
  return count;
}

bool AxisDecomposition::in_a(double x) const {
  return std::any_of(a_components.begin(), a_components.end(), [&](const AxisComponent& c) { return c.contains(x); });
}

double AxisDecomposition::distance_to_a(double x) const {
  double best = kInf;
  for (const auto& c : a_components) {
    if (x >= c.lo && x <= c.hi) return 0.0;
    best = std::min(best, x < c.lo ? c.lo - x : x - c.hi);
  }
  return best;
}

AxisDecomposition axis_decomposition(const Rope& rope) {
  const auto pts = rope.samples();
  std::vector<double> xs;
  xs.reserve(pts.size() + 2);
  for (const auto& p : pts) xs.push_back(p.x);
  xs.push_back(0.0);
  xs.push_back(1.0);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  // Fiber count on each open cell between consecutive breakpoints.
  const std::size_t cells = xs.size() - 1;
  std::vector<int> diff(xs.size() + 1, 0);
  auto index_of = [&](double v) { return static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), v) - xs.begin()); };
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double lo = std::min(pts[i - 1].x, pts[i].x);
    const double hi = std::max(pts[i - 1].x, pts[i].x);
    if (hi <= lo) continue;
    ++diff[index_of(lo)];
    --diff[index_of(hi)];
  }
  std::vector<int> count(cells, 0);
  int running = 0;
  for (std::size_t k = 0; k < cells; ++k) {
    running += diff[k];
    count[k] = running;
  }

  std::vector<AxisComponent> raw;
  for (std::size_t k = 0; k < cells; ++k)
    if (count[k] >= 2) raw.push_back({xs[k], xs[k + 1]});

  const double sin_perp = std::sin(tol::kPerp);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Vec3 d = pts[i] - pts[i - 1];
    if (std::abs(d.x) <= sin_perp * norm(d))
      raw.push_back({std::min(pts[i - 1].x, pts[i].x), std::max(pts[i - 1].x, pts[i].x)});
  }
  if (rope.given_tangent_a() && std::abs(rope.given_tangent_a()->x) <= sin_perp) raw.push_back({0.0, 0.0});
  if (rope.given_tangent_b() && std::abs(rope.given_tangent_b()->x) <= sin_perp) raw.push_back({1.0, 1.0});

  std::sort(raw.begin(), raw.end(), [](const AxisComponent& a, const AxisComponent& b) { return a.lo < b.lo; });
  AxisDecomposition out;
  for (const auto& c : raw) {
    if (!out.a_components.empty() && c.lo <= out.a_components.back().hi + tol::kMergeGap)
      out.a_components.back().hi = std::max(out.a_components.back().hi, c.hi);
    else
      out.a_components.push_back(c);
  }
  for (auto& c : out.a_components) {
    c.contains_a = c.lo <= tol::kMergeGap && c.hi >= -tol::kMergeGap;
    c.contains_b = c.lo <= 1.0 + tol::kMergeGap && c.hi >= 1.0 - tol::kMergeGap;
  }

  for (std::size_t k = 0; k < cells; ++k) {
    const double mid = 0.5 * (xs[k] + xs[k + 1]);
    if (out.in_a(mid)) out.l_a += count[k] * (xs[k + 1] - xs[k]);
  }
  double cursor = 0.0;
  for (const auto& c : out.a_components) {
    if (c.hi < 0.0 || c.lo > 1.0) continue;
    if (c.lo > cursor) out.z_components.push_back({cursor, c.lo});
    cursor = std::max(cursor, c.hi);
  }
  if (cursor < 1.0) out.z_components.push_back({cursor, 1.0});
  for (const auto& z : out.z_components) out.l_z += z.length();
  return out;
}

LongCurve extend(const Rope& rope) {
  const auto pts = rope.samples();
  return LongCurve{std::vector<Vec3>(pts.begin(), pts.end())};
}

namespace {

// Parameter (segment index + fraction) of the unique crossing of {x = xv}.
double crossing_parameter(std::span<const Vec3> pts, double xv) {
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double a = pts[i - 1].x - xv;
    const double b = pts[i].x - xv;
    if ((a <= 0.0 && b > 0.0) || (a >= 0.0 && b < 0.0)) return static_cast<double>(i - 1) + a / (a - b);
  }
  throw RopeError(ErrorCode::NonGenericFiber, "no crossing of x=" + std::to_string(xv));
}

Vec3 at_parameter(std::span<const Vec3> pts, double s) {
  const std::size_t i = std::min(static_cast<std::size_t>(s), pts.size() - 2);
  return lerp(pts[i], pts[i + 1], s - static_cast<double>(i));
}

}  // namespace

std::vector<KnotBlock> knot_blocks(const Rope& rope, const AxisDecomposition& decomp) {
  std::vector<KnotBlock> blocks;
  const auto pts = rope.samples();
  const auto& comps = decomp.a_components;
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const AxisComponent& c = comps[k];
    KnotBlock block{c, ComponentKind::Point, std::nullopt};
    if (c.contains_a || c.contains_b) {
      block.kind = c.contains_a ? ComponentKind::ContainsA : ComponentKind::ContainsB;
      blocks.push_back(block);
      continue;
    }
    if (c.hi < 0.0 || c.lo > 1.0) continue;  // beyond [AB]; such parts belong to endpoint components
    block.kind = c.is_point() ? ComponentKind::Point : ComponentKind::Interval;
    const double left_room = c.lo - (k > 0 ? std::max(comps[k - 1].hi, 0.0) : 0.0);
    const double right_room = (k + 1 < comps.size() ? std::min(comps[k + 1].lo, 1.0) : 1.0) - c.hi;
    const double eta_l = std::min(0.5 * left_room, 1e-4);
    const double eta_r = std::min(0.5 * right_room, 1e-4);
    const double s_in = crossing_parameter(pts, c.lo - eta_l);
    const double s_out = crossing_parameter(pts, c.hi + eta_r);
    LongCurve curve;
    curve.core.push_back(at_parameter(pts, s_in));
    for (std::size_t i = static_cast<std::size_t>(std::floor(s_in)) + 1; static_cast<double>(i) < s_out; ++i)
      if (distance(pts[i], curve.core.back()) > 0.0) curve.core.push_back(pts[i]);
    const Vec3 last = at_parameter(pts, s_out);
    if (distance(last, curve.core.back()) > 0.0) curve.core.push_back(last);
    block.curve = std::move(curve);
    blocks.push_back(std::move(block));
  }
  return blocks;
}

ExtensionSingularities extension_singularities(const Rope& rope, double tol_sing) {
  ExtensionSingularities out;
  const auto pts = rope.samples();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Vec3& p = pts[i - 1];
    const Vec3& q = pts[i];
    const double dy = q.y - p.y;
    const double dz = q.z - p.z;
    const double len2 = dy * dy + dz * dz;
    const bool touches_ray_region = std::min(p.x, q.x) < -tol_sing || std::max(p.x, q.x) > 1.0 + tol_sing;
    if (len2 <= tol_sing * tol_sing) {
      // Parallel to the axis: contact with a ray is tangential, not transversal.
      if (std::hypot(p.y, p.z) <= tol_sing && touches_ray_region)
        throw RopeError(ErrorCode::NonGenericContact, "segment " + std::to_string(i - 1) + " runs along an extension ray");
      continue;
    }
    double u = -(p.y * dy + p.z * dz) / len2;
    u = std::clamp(u, 0.0, 1.0);
    const Vec3 c = lerp(p, q, u);
    if (std::hypot(c.y, c.z) > tol_sing) continue;
    // A crossing through a shared vertex is seen by both of its segments.
    auto record = [&](std::vector<Vec3>& hits) {
      if (hits.empty() || distance(hits.back(), c) > tol_sing) hits.push_back(c);
    };
    if (c.x < -tol_sing)
      record(out.left);
    else if (c.x > 1.0 + tol_sing)
      record(out.right);
  }
  return out;
}

double c1_distance(const Rope& r1, const Rope& r2) {
  if (r1.size() != r2.size())
    throw RopeError(ErrorCode::GridMismatch,
                    "sample counts differ (" + std::to_string(r1.size()) + " vs " + std::to_string(r2.size()) + ")");
  const std::size_t n = r1.size() - 1;
  const double scale = static_cast<double>(n);
  auto derivative = [&](const Rope& r, std::size_t i) {
    if (i == 0) return (r[1] - r[0]) * scale;
    if (i == n) return (r[n] - r[n - 1]) * scale;
    return (r[i + 1] - r[i - 1]) * (0.5 * scale);
  };
  double worst = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double v = distance(r1[i], r2[i]) + distance(derivative(r1, i), derivative(r2, i));
    worst = std::max(worst, v);
  }
  return worst;
}

namespace {

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 d = b - a;
  const double len2 = dot(d, d);
  const double u = len2 > 0.0 ? std::clamp(dot(p - a, d) / len2, 0.0, 1.0) : 0.0;
  return distance(p, a + d * u);
}

double directed_hausdorff(std::span<const Vec3> a, std::span<const Vec3> b) {
  double worst = 0.0;
  for (const Vec3& p : a) {
    double best = kInf;
    if (b.size() == 1) best = distance(p, b[0]);
    for (std::size_t j = 1; j < b.size(); ++j) best = std::min(best, point_segment_distance(p, b[j - 1], b[j]));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff(std::span<const Vec3> a, std::span<const Vec3> b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double segment_distance(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1, double* s_out,
                        double* t_out) {
  const Vec3 d1 = p1 - p0;
  const Vec3 d2 = q1 - q0;
  const Vec3 r = p0 - q0;
  const double a = dot(d1, d1);
  const double e = dot(d2, d2);
  const double f = dot(d2, r);
  double s = 0.0;
  double t = 0.0;
  if (a <= 0.0 && e <= 0.0) {
    s = t = 0.0;
  } else if (a <= 0.0) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = dot(d1, r);
    if (e <= 0.0) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = dot(d1, d2);
      const double denom = a * e - b * b;
      s = denom > 1e-300 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  if (s_out) *s_out = s;
  if (t_out) *t_out = t;
  return distance(p0 + d1 * s, q0 + d2 * t);
}

}  // namespace ropelab
