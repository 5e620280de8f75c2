#include "ropelab/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "ropelab/error.hpp"
#include "ropelab/templates.hpp"

namespace ropelab::fixtures {

namespace {

constexpr double kPi = std::numbers::pi;

using Param = std::function<Vec3(double)>;

ClosedCurve sample_closed(const Param& f, int samples) {
  ClosedCurve c;
  for (int i = 0; i < samples; ++i) c.points.push_back(f(2.0 * kPi * i / samples));
  return c;
}

std::vector<Vec3> sample_open(const Param& f, int segments) {
  std::vector<Vec3> pts;
  for (int i = 0; i <= segments; ++i) pts.push_back(f(static_cast<double>(i) / segments));
  pts.front() = kPointA;
  pts.back() = kPointB;
  return pts;
}

// Centered template window with the requested length over chord.
Rope template_window(const KnotClass& k, double length, int samples) {
  const LongKnotTemplate tpl = long_knot_template(k);
  const double s1 = tpl.tangle_begin();
  const double s2 = tpl.tangle_end();
  double lo = 0.0, hi = 0.5 * (tpl.length() - s2);
  hi = std::min(hi, s1);
  if (tpl.window_ratio(s1 - lo, s2 + lo) < length)
    throw RopeError(ErrorCode::TemplateTooLong, "template is too short for length " + std::to_string(length));
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (tpl.window_ratio(s1 - mid, s2 + mid) > length ? lo : hi) = mid;
  }
  return tpl.window(s1 - hi, s2 + hi, samples);
}

KnotClass prime_class(const Label& label, int count = 1) { return KnotClass{MonoidElement::prime(label, count), {}}; }

struct ProjectedCrossing {
  std::size_t i = 0;  // segment index of the first strand
  double s = 0.0;
  std::size_t j = 0;  // segment index of the second strand
  double u = 0.0;
};

// Crossings of the xy-projection of a closed polygon, sorted by i.
std::vector<ProjectedCrossing> xy_crossings(const std::vector<Vec3>& p) {
  const std::size_t n = p.size();
  std::vector<ProjectedCrossing> out;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 a0 = p[i], a1 = p[(i + 1) % n];
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const Vec3 b0 = p[j], b1 = p[(j + 1) % n];
      const double dax = a1.x - a0.x, day = a1.y - a0.y;
      const double dbx = b1.x - b0.x, dby = b1.y - b0.y;
      const double den = dax * dby - day * dbx;
      if (std::abs(den) < 1e-15) continue;
      const double ex = b0.x - a0.x, ey = b0.y - a0.y;
      const double s = (ex * dby - ey * dbx) / den;
      const double u = (ex * day - ey * dax) / den;
      if (s >= 0.0 && s < 1.0 && u >= 0.0 && u < 1.0) out.push_back({i, s, j, u});
    }
  }
  return out;
}

// Lifts strand i onto strand j at the chosen projected crossings, so each
// becomes an exact double point. Vertices are inserted at the crossings.
SingularCurve make_singular(const ClosedCurve& curve, const std::vector<std::size_t>& which, int reach) {
  std::vector<Vec3> p = curve.points;
  const std::size_t n = p.size();
  const auto crossings = xy_crossings(p);
  struct Insert {
    std::size_t after;
    Vec3 point;
    std::size_t id;
  };
  std::vector<Insert> inserts;
  for (std::size_t idx = 0; idx < which.size(); ++idx) {
    if (which[idx] >= crossings.size()) throw RopeError(ErrorCode::NonTransversal, "fixture crossing missing");
    const ProjectedCrossing& c = crossings[which[idx]];
    const Vec3 on_j = lerp(p[c.j], p[(c.j + 1) % n], c.u);
    const Vec3 on_i = lerp(p[c.i], p[(c.i + 1) % n], c.s);
    const double dz = on_j.z - on_i.z;
    for (int k = -reach; k <= reach + 1; ++k) {
      const double d = (k <= 0 ? -k + c.s : k - c.s) / (reach + 1);
      const double w = d < 1.0 ? 0.5 * (1.0 + std::cos(kPi * d)) : 0.0;
      const std::size_t v = (c.i + n + static_cast<std::size_t>(k + static_cast<int>(n))) % n;
      p[v].z += dz * w;
    }
    inserts.push_back({c.i, on_j, idx});
    inserts.push_back({c.j, on_j, idx});
  }
  std::sort(inserts.begin(), inserts.end(), [](const Insert& a, const Insert& b) { return a.after < b.after; });
  SingularCurve s;
  s.double_points.assign(which.size(), {0, 0});
  std::vector<bool> first_seen(which.size(), false);
  std::size_t ins = 0;
  for (std::size_t v = 0; v < n; ++v) {
    s.curve.points.push_back(p[v]);
    while (ins < inserts.size() && inserts[ins].after == v) {
      s.curve.points.push_back(inserts[ins].point);
      auto& dp = s.double_points[inserts[ins].id];
      (first_seen[inserts[ins].id] ? dp.second : dp.first) = s.curve.points.size() - 1;
      first_seen[inserts[ins].id] = true;
      ++ins;
    }
  }
  return s;
}

}  // namespace

std::vector<Label> closed_knot_labels() { return {"3_1", "4_1", "5_1", "5_2", "6_1"}; }

ClosedCurve closed_knot(const Label& label, int samples) {
  if (label == "3_1")
    return sample_closed([](double t) { return Vec3{std::sin(t) + 2 * std::sin(2 * t), std::cos(t) - 2 * std::cos(2 * t), -std::sin(3 * t)}; }, samples);
  if (label == "4_1")
    return sample_closed([](double t) {
      const double r = 2 + std::cos(2 * t);
      return Vec3{r * std::cos(3 * t), r * std::sin(3 * t), std::sin(4 * t)};
    }, samples);
  if (label == "5_1")
    return sample_closed([](double t) {
      const double r = 2 + std::cos(5 * t);
      return Vec3{r * std::cos(2 * t), r * std::sin(2 * t), -std::sin(5 * t)};
    }, samples);
  if (label == "5_2")
    return sample_closed([](double t) { return Vec3{std::cos(3 * t), std::cos(2 * t + 0.7), std::cos(7 * t + 0.2)}; }, samples);
  if (label == "6_1")
    return sample_closed([](double t) { return Vec3{std::cos(3 * t), std::cos(2 * t + 1.5), std::cos(5 * t + 0.2)}; }, samples);
  throw RopeError(ErrorCode::NoTemplate, "no closed model for " + label);
}

std::vector<Vec3> catmull_rom(const std::vector<Vec3>& w, int per_span) {
  if (w.size() < 2 || per_span < 1) throw RopeError(ErrorCode::InvalidRope, "spline needs two waypoints");
  std::vector<Vec3> out;
  const std::size_t n = w.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Vec3 p0 = i == 0 ? w[0] * 2.0 - w[1] : w[i - 1];
    const Vec3 p1 = w[i], p2 = w[i + 1];
    const Vec3 p3 = i + 2 < n ? w[i + 2] : w[n - 1] * 2.0 - w[n - 2];
    for (int k = 0; k < per_span; ++k) {
      const double t = static_cast<double>(k) / per_span;
      const double t2 = t * t, t3 = t2 * t;
      out.push_back((p1 * 2.0 + (p2 - p0) * t + (p0 * 2.0 - p1 * 5.0 + p2 * 4.0 - p3) * t2 +
                     (p1 * 3.0 - p0 - p2 * 3.0 + p3) * t3) * 0.5);
    }
  }
  out.push_back(w.back());
  return out;
}

std::vector<Vec3> chaikin(const std::vector<Vec3>& pts, int iterations) {
  std::vector<Vec3> cur = pts;
  for (int it = 0; it < iterations && cur.size() > 2; ++it) {
    std::vector<Vec3> next{cur.front()};
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      next.push_back(cur[i] * 0.75 + cur[i + 1] * 0.25);
      next.push_back(cur[i] * 0.25 + cur[i + 1] * 0.75);
    }
    next.push_back(cur.back());
    cur = std::move(next);
  }
  return cur;
}

Rope tight(int samples) { return Rope::tight(samples - 1); }

Rope bump(double h, int samples) {
  return Rope(sample_open([h](double t) { return Vec3{t, h * std::sin(kPi * t), 0.0}; }, samples - 1));
}

Rope semicircle(Plane plane, int samples) {
  auto pts = sample_open([plane](double t) {
    const double th = kPi * (1.0 - t);
    const double up = 0.5 * std::sin(th);
    return plane == Plane::XY ? Vec3{0.5 + 0.5 * std::cos(th), up, 0.0} : Vec3{0.5 + 0.5 * std::cos(th), 0.0, up};
  }, samples - 1);
  const Vec3 normal = plane == Plane::XY ? Vec3{0, 1, 0} : Vec3{0, 0, 1};
  return Rope(std::move(pts), normal, -normal);
}

Rope semicircle_composite(int samples) {
  std::vector<Vec3> pts;
  constexpr int kHalf = 64;
  for (int i = 0; i <= kHalf; ++i) {
    const double th = kPi * (1.0 - static_cast<double>(i) / kHalf);
    pts.push_back({0.25 + 0.25 * std::cos(th), 0.25 * std::sin(th), 0.0});
  }
  for (int i = 1; i <= kHalf; ++i) {
    const double th = kPi * (1.0 - static_cast<double>(i) / kHalf);
    pts.push_back({0.75 + 0.25 * std::cos(th), 0.0, 0.25 * std::sin(th)});
  }
  pts.front() = kPointA;
  pts.back() = kPointB;
  // Round off the corner where the two planes meet.
  auto smooth = resample_polyline(chaikin(pts, 3), samples - 1);
  smooth.front() = kPointA;
  smooth.back() = kPointB;
  return Rope(std::move(smooth), Vec3{0, 1, 0}, Vec3{0, 0, -1});
}

Rope vertical_inflection(int samples) {
  int segments = samples - 1;
  if (segments % 2 == 0) ++segments;
  auto pts = sample_open([](double t) {
    return Vec3{t + std::sin(2 * kPi * t) / (2 * kPi), 0.0, 0.15 * std::sin(2 * kPi * t)};
  }, segments);
  const std::size_t mid = static_cast<std::size_t>(segments / 2);
  pts[mid].x = 0.5;
  pts[mid + 1].x = 0.5;
  return Rope(std::move(pts));
}

Rope trefoil(double length, int samples) { return template_window(prime_class("3_1"), length, samples); }

Rope granny(double length, int samples) { return template_window(prime_class("3_1", 2), length, samples); }

Rope figure_eight(double length, int samples) { return template_window(prime_class("4_1"), length, samples); }

namespace {

Rope helix(double radius, double turns, int samples) {
  return Rope(sample_open([=](double t) {
    const double a = 2 * kPi * turns * t;
    const double env = std::sin(kPi * t);
    return Vec3{t, radius * env * std::sin(a), radius * env * (1.0 - std::cos(a))};
  }, samples - 1));
}

Rope switchback(int samples) {
  const std::vector<Vec3> w{{0, 0, 0},      {0.35, 0.15, 0.0}, {0.7, 0.3, 0.05}, {0.4, 0.5, 0.1},
                            {0.2, 0.4, 0.15}, {0.3, 0.2, 0.25}, {0.7, -0.1, 0.2}, {1, 0, 0}};
  auto pts = resample_polyline(catmull_rom(w, 40), samples - 1);
  pts.front() = kPointA;
  pts.back() = kPointB;
  return Rope(std::move(pts));
}

}  // namespace

std::vector<Rope> tightening_set() {
  std::vector<Rope> out;
  out.push_back(trefoil(2.2));
  out.push_back(trefoil(2.5));
  out.push_back(trefoil(2.8));
  out.push_back(figure_eight(2.4));
  out.push_back(figure_eight(2.9));
  out.push_back(granny(2.95));
  out.push_back(bump(1.0, 257));
  out.push_back(helix(0.15, 3.0, 401));
  out.push_back(helix(0.1, 5.0, 401));
  out.push_back(switchback(401));
  return out;
}

std::vector<Rope> wl_set() {
  std::vector<Rope> out;
  out.push_back(bump(0.3));
  out.push_back(bump(0.8));
  out.push_back(semicircle(Plane::XY));
  out.push_back(semicircle(Plane::XZ));
  out.push_back(helix(0.15, 3.0, 401));
  out.push_back(vertical_inflection());
  return out;
}

Rope near_singular_loop(int samples) {
  // x(t) + x(1-t) = 1 puts the curl's crossing on x = 1/2; the z-ramp lifts
  // the two strands about 3e-4 apart there.
  constexpr double b = 1.0 / kPi;
  constexpr double t_star = 0.5 - 0.30164;
  const double k = 5e-4 / (1.0 - 2.0 * t_star);
  return Rope(sample_open([=](double t) {
    return Vec3{t + b * std::sin(2 * kPi * t), 0.3 * std::sin(kPi * t), k * (t - 0.5) * std::sin(kPi * t)};
  }, samples - 1));
}

Rope left_ray_crossing(int samples) {
  const std::vector<Vec3> w{{0, 0, 0}, {-0.2, 0.3, 0}, {-0.3, 0, 0}, {-0.2, -0.3, 0}, {0.5, -0.3, 0}, {1, 0, 0}};
  auto pts = catmull_rom(w, 32);
  // Keep the waypoint on the ray as an exact sample.
  std::vector<Vec3> head(pts.begin(), pts.begin() + 65);
  std::vector<Vec3> tail(pts.begin() + 64, pts.end());
  const int tail_segments = std::max(8, samples - 1 - 64);
  auto rest = resample_polyline(tail, tail_segments);
  head.insert(head.end(), rest.begin() + 1, rest.end());
  head.front() = kPointA;
  head.back() = kPointB;
  return Rope(std::move(head));
}

SingularCurve singular_trefoil() { return make_singular(closed_knot("3_1", 300), {0, 1}, 4); }

SingularCurve singular_figure_eight() { return make_singular(closed_knot("4_1", 400), {0, 2}, 4); }

SingularCurve figure9() {
  const Rope rope = trefoil(3.5, 300);
  return make_singular(close_long(extend(rope)), {0, 1}, 4);
}

namespace {

using Builder = Rope (*)();

const std::vector<std::pair<std::string, Builder>>& builders() {
  static const std::vector<std::pair<std::string, Builder>> table{
      {"tight", [] { return tight(); }},
      {"bump", [] { return bump(0.3); }},
      {"semicircle", [] { return semicircle(Plane::XY); }},
      {"semicircle_xz", [] { return semicircle(Plane::XZ); }},
      {"semicircle_composite", [] { return semicircle_composite(); }},
      {"vertical_inflection", [] { return vertical_inflection(); }},
      {"trefoil", [] { return trefoil(); }},
      {"granny", [] { return granny(); }},
      {"figure_eight", [] { return figure_eight(); }},
      {"near_singular", [] { return near_singular_loop(); }},
      {"left_ray_crossing", [] { return left_ray_crossing(); }}};
  return table;
}

}  // namespace

std::vector<std::string> rope_names() {
  std::vector<std::string> names;
  for (const auto& [name, build] : builders()) names.push_back(name);
  return names;
}

std::optional<Rope> rope_by_name(std::string_view name) {
  for (const auto& [n, build] : builders())
    if (n == name) return build();
  return std::nullopt;
}

std::vector<NamedRope> all_ropes() {
  std::vector<NamedRope> out;
  for (const auto& [name, build] : builders()) out.push_back({name, build()});
  return out;
}

}  // namespace ropelab::fixtures
