#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "ropelab/error.hpp"
#include "ropelab/knotid.hpp"

namespace ropelab {

namespace {

struct Box {
  Vec3 lo{}, hi{};
  double diameter() const { return distance(lo, hi); }
};

Box bounding_box(std::span<const Vec3> pts) {
  Box b{pts.front(), pts.front()};
  for (const Vec3& p : pts) {
    b.lo = {std::min(b.lo.x, p.x), std::min(b.lo.y, p.y), std::min(b.lo.z, p.z)};
    b.hi = {std::max(b.hi.x, p.x), std::max(b.hi.y, p.y), std::max(b.hi.z, p.z)};
  }
  return b;
}

struct P2 {
  double x = 0.0, y = 0.0;
};

double cross2(P2 a, P2 b) { return a.x * b.y - a.y * b.x; }
P2 sub2(P2 a, P2 b) { return {a.x - b.x, a.y - b.y}; }
double norm2(P2 a) { return std::hypot(a.x, a.y); }

struct Passage {
  std::size_t seg = 0;
  double param = 0.0;
  int crossing = 0;
  bool over = false;
};

// One projection attempt; nullopt when the projection is not generic enough.
std::optional<Diagram> project(const ClosedCurve& curve, const Vec3& d) {
  const auto& pts = curve.points;
  const std::size_t m = pts.size();
  const Vec3 helper = std::abs(d.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  const Vec3 u = normalized(helper - d * dot(d, helper));
  const Vec3 v = cross(d, u);

  std::vector<P2> q(m);
  std::vector<double> depth(m);
  for (std::size_t i = 0; i < m; ++i) {
    q[i] = {dot(pts[i], u), dot(pts[i], v)};
    depth[i] = dot(pts[i], d);
  }
  const double scale = std::max(bounding_box(pts).diameter(), 1e-300);
  const double tol_len = 1e-10 * scale;
  const double tol_depth = 1e-12 * scale;
  constexpr double kTolSin = 1e-8;

  auto next = [&](std::size_t i) { return (i + 1) % m; };
  for (std::size_t i = 0; i < m; ++i) {
    const P2 a = sub2(q[next(i)], q[i]);
    if (norm2(a) < tol_len) return std::nullopt;
    const P2 b = sub2(q[next(next(i))], q[next(i)]);
    // Projection folds back onto itself.
    if (std::abs(cross2(a, b)) <= kTolSin * norm2(a) * norm2(b) && a.x * b.x + a.y * b.y < 0.0) return std::nullopt;
  }

  // Sweep along the first projected coordinate.
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  auto xmin = [&](std::size_t s) { return std::min(q[s].x, q[next(s)].x); };
  auto xmax = [&](std::size_t s) { return std::max(q[s].x, q[next(s)].x); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xmin(a) < xmin(b); });

  std::vector<Passage> passages;
  std::vector<P2> locations;
  std::vector<int> signs;
  for (std::size_t oi = 0; oi < m; ++oi) {
    const std::size_t s1 = order[oi];
    for (std::size_t oj = oi + 1; oj < m && xmin(order[oj]) <= xmax(s1) + tol_len; ++oj) {
      const std::size_t s2 = order[oj];
      if (next(s1) == s2 || next(s2) == s1) continue;
      const P2 p = q[s1], r = sub2(q[next(s1)], p);
      const P2 qq = q[s2], s = sub2(q[next(s2)], qq);
      const double den = cross2(r, s);
      const P2 diff = sub2(qq, p);
      if (std::abs(den) <= kTolSin * norm2(r) * norm2(s)) {
        // Parallel: only a problem when the segments overlap.
        const double off = std::abs(cross2(r, diff)) / norm2(r);
        if (off < tol_len) {
          const double rr = r.x * r.x + r.y * r.y;
          const double t0 = (diff.x * r.x + diff.y * r.y) / rr;
          const double t1 = ((diff.x + s.x) * r.x + (diff.y + s.y) * r.y) / rr;
          if (std::max(t0, t1) >= 0.0 && std::min(t0, t1) <= 1.0) return std::nullopt;
        }
        continue;
      }
      const double t = cross2(diff, s) / den;  // along s1
      const double w = cross2(diff, r) / den;  // along s2
      const double edge1 = tol_len / norm2(r);
      const double edge2 = tol_len / norm2(s);
      if (t < -edge1 || t > 1.0 + edge1 || w < -edge2 || w > 1.0 + edge2) continue;
      if (t < edge1 || t > 1.0 - edge1 || w < edge2 || w > 1.0 - edge2) return std::nullopt;
      const double h1 = depth[s1] + t * (depth[next(s1)] - depth[s1]);
      const double h2 = depth[s2] + w * (depth[next(s2)] - depth[s2]);
      if (std::abs(h1 - h2) < tol_depth) return std::nullopt;
      const int c = static_cast<int>(signs.size());
      const bool first_over = h1 > h2;
      const P2 over_dir = first_over ? r : s;
      const P2 under_dir = first_over ? s : r;
      signs.push_back(cross2(over_dir, under_dir) > 0.0 ? 1 : -1);
      locations.push_back({p.x + t * r.x, p.y + t * r.y});
      passages.push_back({s1, t, c, first_over});
      passages.push_back({s2, w, c, !first_over});
    }
  }
  // Triple points.
  for (std::size_t a = 0; a < locations.size(); ++a)
    for (std::size_t b = a + 1; b < locations.size(); ++b)
      if (norm2(sub2(locations[a], locations[b])) < tol_len) return std::nullopt;

  std::sort(passages.begin(), passages.end(), [](const Passage& a, const Passage& b) {
    return a.seg != b.seg ? a.seg < b.seg : a.param < b.param;
  });
  Diagram out;
  out.signs = std::move(signs);
  out.gauss.reserve(passages.size());
  for (const Passage& ps : passages) out.gauss.push_back(ps.over ? ps.crossing + 1 : -(ps.crossing + 1));
  return out;
}

// Removes crossing `c` from the code and renumbers the rest.
void drop_crossing(Diagram& d, int c) {
  std::vector<int> code;
  code.reserve(d.gauss.size());
  for (int e : d.gauss) {
    const int id = std::abs(e) - 1;
    if (id == c) continue;
    const int nid = id > c ? id - 1 : id;
    code.push_back(e > 0 ? nid + 1 : -(nid + 1));
  }
  d.gauss = std::move(code);
  d.signs.erase(d.signs.begin() + c);
}

bool reidemeister1(Diagram& d) {
  const std::size_t n = d.gauss.size();
  for (std::size_t i = 0; i < n; ++i) {
    const int a = d.gauss[i];
    const int b = d.gauss[(i + 1) % n];
    if (std::abs(a) == std::abs(b)) {
      drop_crossing(d, std::abs(a) - 1);
      return true;
    }
  }
  return false;
}

bool reidemeister2(Diagram& d) {
  const std::size_t n = d.gauss.size();
  if (n < 4) return false;
  // Consecutive pairs of the same kind, keyed by the unordered crossing pair.
  std::map<std::pair<int, int>, std::vector<bool>> seen;  // value: list of "over" flags
  for (std::size_t i = 0; i < n; ++i) {
    const int a = d.gauss[i];
    const int b = d.gauss[(i + 1) % n];
    if ((a > 0) != (b > 0)) continue;
    const int ca = std::abs(a) - 1;
    const int cb = std::abs(b) - 1;
    if (ca == cb) continue;
    auto& kinds = seen[{std::min(ca, cb), std::max(ca, cb)}];
    kinds.push_back(a > 0);
    const bool has_over = std::find(kinds.begin(), kinds.end(), true) != kinds.end();
    const bool has_under = std::find(kinds.begin(), kinds.end(), false) != kinds.end();
    if (has_over && has_under && d.signs[ca] == -d.signs[cb]) {
      drop_crossing(d, std::max(ca, cb));
      drop_crossing(d, std::min(ca, cb));
      return true;
    }
  }
  return false;
}

}  // namespace

Vec3 default_direction() { return normalized(Vec3{0.1234567, 0.2718282, 0.9541327}); }

std::vector<Diagram::CrossingArcs> Diagram::crossings() const {
  const int n = crossing_count();
  std::vector<CrossingArcs> out(n);
  if (n == 0) return out;
  const int len = static_cast<int>(gauss.size());
  // Arc r starts right after the r-th under-passage.
  std::vector<int> arc_at(len, 0);
  int first_under = -1;
  for (int i = 0; i < len; ++i)
    if (gauss[i] < 0) {
      first_under = i;
      break;
    }
  int arc = n - 1;
  std::vector<int> under_index(len, -1);
  int seen_under = 0;
  for (int k = 0; k < len; ++k) {
    const int i = (first_under + k) % len;
    if (gauss[i] < 0) {
      under_index[i] = seen_under;
      arc = seen_under++;
      arc_at[i] = arc;  // outgoing arc
    } else {
      arc_at[i] = arc;
    }
  }
  for (int i = 0; i < len; ++i) {
    const int c = std::abs(gauss[i]) - 1;
    out[c].sign = signs[c];
    if (gauss[i] > 0) {
      out[c].over = arc_at[i];
    } else {
      out[c].under_out = under_index[i];
      out[c].under_in = (under_index[i] + n - 1) % n;
    }
  }
  return out;
}

void Diagram::validate() const {
  const int n = crossing_count();
  std::vector<int> over(n, 0), under(n, 0);
  for (int e : gauss) {
    const int c = std::abs(e) - 1;
    if (e == 0 || c >= n) throw RopeError(ErrorCode::DisconnectedDiagram, "gauss code references unknown crossing");
    (e > 0 ? over : under)[c]++;
  }
  for (int c = 0; c < n; ++c)
    if (over[c] != 1 || under[c] != 1)
      throw RopeError(ErrorCode::DisconnectedDiagram, "crossing " + std::to_string(c) + " is not visited once over and once under");
  for (int s : signs)
    if (s != 1 && s != -1) throw RopeError(ErrorCode::DisconnectedDiagram, "crossing sign must be +1 or -1");
}

Diagram diagram(const ClosedCurve& curve, Vec3 direction, std::uint64_t seed) {
  if (curve.points.size() < 3) throw RopeError(ErrorCode::ProjectionFailed, "closed curve needs at least 3 points");
  if (norm(direction) == 0.0 || !is_finite(direction))
    throw RopeError(ErrorCode::ProjectionFailed, "projection direction must be a non-zero vector");
  const Vec3 d0 = normalized(direction);
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 0x5DEECE66DULL);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  constexpr int kAttempts = 33;  // the plain direction plus 32 retries
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Vec3 d = d0;
    if (attempt > 0 || seed != 0) {
      Vec3 w{unit(rng), unit(rng), unit(rng)};
      w = w - d0 * dot(w, d0);
      if (norm(w) > 1e-6) {
        const double angle = 1e-3 * std::abs(unit(rng));
        d = normalized(d0 * std::cos(angle) + normalized(w) * std::sin(angle));
      }
    }
    if (auto out = project(curve, d)) return *out;
  }
  throw RopeError(ErrorCode::ProjectionFailed, "no generic projection found after 32 retries");
}

Diagram simplify(Diagram d) {
  d.validate();
  while (reidemeister1(d) || reidemeister2(d)) {
  }
  return d;
}

ClosedCurve close_long(const LongCurve& curve, double margin_factor) {
  const auto& core = curve.core;
  if (core.size() < 2) throw RopeError(ErrorCode::InvalidRope, "long curve core needs at least 2 points");
  const Box box = bounding_box(core);
  const double margin = margin_factor * std::max(box.diameter(), 1e-3);
  const Vec3 a = core.front();
  const Vec3 b = core.back();
  const double x_left = box.lo.x - margin;
  const double x_right = box.hi.x + margin;
  const double y_top = box.hi.y + margin;

  const Vec3 left_end{x_left, a.y, a.z};
  const Vec3 right_end{x_right, b.y, b.z};
  const double tol = 1e-9 * std::max(box.diameter(), 1.0);
  for (std::size_t i = 0; i + 1 < core.size(); ++i) {
    if (i > 0 && segment_distance(core[i], core[i + 1], a, left_end) <= tol)
      throw RopeError(ErrorCode::SingularExtension, "left ray meets the core at segment " + std::to_string(i));
    if (i + 2 < core.size() && segment_distance(core[i], core[i + 1], b, right_end) <= tol)
      throw RopeError(ErrorCode::SingularExtension, "right ray meets the core at segment " + std::to_string(i));
  }
  // The segments touching the ends may not run back along their own ray.
  auto along_ray = [&](const Vec3& end, const Vec3& nb, double dir) {
    const Vec3 e = nb - end;
    return e.x * dir > 0.0 && std::hypot(e.y, e.z) <= tol;
  };
  if (along_ray(a, core[1], -1.0) || along_ray(b, core[core.size() - 2], 1.0))
    throw RopeError(ErrorCode::SingularExtension, "core doubles back along a ray");

  ClosedCurve out;
  out.points = core;
  out.points.push_back(right_end);
  out.points.push_back({x_right, y_top, b.z});
  out.points.push_back({x_left, y_top, a.z});
  out.points.push_back(left_end);
  return out;
}

ClosedCurve connected_sum(const ClosedCurve& k1, const ClosedCurve& k2) {
  const auto& p1 = k1.points;
  const auto& p2 = k2.points;
  if (p1.size() < 3 || p2.size() < 3) throw RopeError(ErrorCode::InvalidRope, "connected sum needs closed polygons");
  const Box b1 = bounding_box(p1);
  const Box b2 = bounding_box(p2);
  const std::size_t v =
      static_cast<std::size_t>(std::max_element(p1.begin(), p1.end(), [](auto& a, auto& b) { return a.x < b.x; }) - p1.begin());
  const std::size_t w =
      static_cast<std::size_t>(std::min_element(p2.begin(), p2.end(), [](auto& a, auto& b) { return a.x < b.x; }) - p2.begin());
  const double gap = 0.25 * std::max(b1.diameter(), b2.diameter());
  const Vec3 shift = Vec3{b1.hi.x + gap - p2[w].x, p1[v].y - p2[w].y, p1[v].z - p2[w].z};

  const std::size_t n1 = p1.size(), n2 = p2.size();
  ClosedCurve out;
  out.points.reserve(n1 + n2 - 2);
  for (std::size_t k = 1; k < n1; ++k) out.points.push_back(p1[(v + k) % n1]);
  for (std::size_t k = 1; k < n2; ++k) out.points.push_back(p2[(w + k) % n2] + shift);
  return out;
}

}  // namespace ropelab
