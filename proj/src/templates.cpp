#include "ropelab/templates.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ropelab/error.hpp"
#include "ropelab/fixtures.hpp"

namespace ropelab {

namespace {

bool on_axis(const Vec3& p) { return p.y == 0.0 && p.z == 0.0; }

// Appends the open segment (from, to] split into pieces of at most `step`.
void append_leg(std::vector<Vec3>& out, Vec3 from, Vec3 to, double step) {
  const int pieces = std::max(1, static_cast<int>(std::ceil(distance(from, to) / step)));
  for (int k = 1; k <= pieces; ++k) out.push_back(lerp(from, to, static_cast<double>(k) / pieces));
}

// Fixed generic orientation so the rightmost point of a model is isolated.
const Mat3& model_rotation() {
  static const Mat3 r = axis_angle(normalized(Vec3{0.31, 0.52, 0.79}), 0.9);
  return r;
}

}  // namespace

LongKnotTemplate::LongKnotTemplate(std::vector<Vec3> points) : points_(std::move(points)) {
  if (points_.size() < 2 || !on_axis(points_.front()) || !on_axis(points_.back()))
    throw RopeError(ErrorCode::InvalidRope, "a long knot template must start and end on the x-axis");
  cum_.assign(points_.size(), 0.0);
  for (std::size_t i = 1; i < points_.size(); ++i) cum_[i] = cum_[i - 1] + distance(points_[i - 1], points_[i]);
  std::size_t first = 0;
  while (first + 1 < points_.size() && on_axis(points_[first + 1])) ++first;
  std::size_t last = points_.size() - 1;
  while (last > first && on_axis(points_[last - 1])) --last;
  tangle_begin_ = cum_[first];
  tangle_end_ = cum_[last];
  const std::span<const Vec3> tangle(points_.data() + first, last - first + 1);
  min_distance_ = tangle.size() > 2 ? min_self_distance(tangle, false) : distance(points_.front(), points_.back());
}

Vec3 LongKnotTemplate::at(double s) const {
  if (s <= 0.0) return points_.front();
  if (s >= cum_.back()) return points_.back();
  const auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
  const std::size_t j = static_cast<std::size_t>(it - cum_.begin());
  const double seg = cum_[j] - cum_[j - 1];
  return lerp(points_[j - 1], points_[j], seg > 0.0 ? (s - cum_[j - 1]) / seg : 0.0);
}

double LongKnotTemplate::window_ratio(double p, double q) const { return (q - p) / distance(at(p), at(q)); }

Rope LongKnotTemplate::window(double p, double q, int samples) const {
  if (samples < 9) throw RopeError(ErrorCode::InvalidRope, "a rope needs at least 9 samples");
  const Vec3 start = at(p);
  const Vec3 chord = at(q) - start;
  const double scale = norm(chord);
  if (!(q > p) || scale == 0.0) throw RopeError(ErrorCode::InvalidRope, "degenerate template window");
  const Mat3 rot = rotation_between(chord, kPointB);
  std::vector<Vec3> out(samples);
  for (int i = 0; i < samples; ++i) {
    const double s = p + (q - p) * i / (samples - 1);
    out[i] = rot * (at(s) - start) / scale;
  }
  out.front() = kPointA;
  out.back() = kPointB;
  return Rope(std::move(out));
}

LongKnotTemplate LongKnotTemplate::with_padding(double pad) const {
  std::size_t first = 0;
  while (first + 1 < points_.size() && on_axis(points_[first + 1])) ++first;
  std::size_t last = points_.size() - 1;
  while (last > first && on_axis(points_[last - 1])) --last;
  std::vector<Vec3> pts;
  pts.push_back(points_[first] - Vec3{pad, 0.0, 0.0});
  pts.insert(pts.end(), points_.begin() + static_cast<std::ptrdiff_t>(first),
             points_.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  pts.push_back(points_[last] + Vec3{pad, 0.0, 0.0});
  return LongKnotTemplate(std::move(pts));
}

LongKnotTemplate open_closed_knot(const ClosedCurve& knot) {
  std::vector<Vec3> pts;
  for (const Vec3& p : knot.points) pts.push_back(model_rotation() * p);
  const std::size_t n = pts.size();
  if (n < 8) throw RopeError(ErrorCode::InvalidRope, "closed knot needs at least 8 points");

  Vec3 lo = pts[0], hi = pts[0];
  double spacing = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    lo = {std::min(lo.x, pts[i].x), std::min(lo.y, pts[i].y), std::min(lo.z, pts[i].z)};
    hi = {std::max(hi.x, pts[i].x), std::max(hi.y, pts[i].y), std::max(hi.z, pts[i].z)};
    spacing += distance(pts[i], pts[(i + 1) % n]);
  }
  spacing /= static_cast<double>(n);
  const double diam = norm(hi - lo);

  // Find a cap {x > x_max - eta} that meets the knot in a single run of vertices.
  std::size_t run_start = 0, run_end = 0;
  for (double eta = 0.05 * diam;; eta *= 0.5) {
    if (eta < 0.5 * spacing) throw RopeError(ErrorCode::NoTemplate, "no clean cap on the closed model");
    std::vector<bool> cap(n);
    for (std::size_t i = 0; i < n; ++i) cap[i] = pts[i].x > hi.x - eta;
    int runs = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (cap[i] && !cap[(i + n - 1) % n]) {
        ++runs;
        run_start = i;
      }
    }
    if (runs != 1) continue;
    run_end = run_start;
    std::size_t run_length = 1;
    while (cap[(run_end + 1) % n]) {
      run_end = (run_end + 1) % n;
      ++run_length;
    }
    if (run_length >= 3) break;
  }

  // Open arc from the vertex after the cap around to the one before it.
  std::vector<Vec3> arc;
  for (std::size_t i = (run_end + 1) % n; i != run_start; i = (i + 1) % n) arc.push_back(pts[i]);
  // The end joined to the left ray must be the higher one so the two
  // connectors pass each other.
  if (arc.front().z < arc.back().z) std::reverse(arc.begin(), arc.end());
  const Vec3 c1 = arc.front();
  const Vec3 c2 = arc.back();

  const double a = hi.x + 0.3 * diam;
  const double b = hi.x + 0.6 * diam;
  const double z_far = hi.z + 0.3 * diam;
  const Vec3 origin{0.0, c1.y, z_far};

  std::vector<Vec3> poly{Vec3{a - diam, c1.y, z_far}};
  append_leg(poly, poly.back(), {a, c1.y, z_far}, spacing);
  append_leg(poly, poly.back(), {a, c1.y, c1.z}, spacing);
  append_leg(poly, poly.back(), c1, spacing);
  poly.insert(poly.end(), arc.begin() + 1, arc.end());
  append_leg(poly, c2, {b, c2.y, c2.z}, spacing);
  append_leg(poly, poly.back(), {b, c2.y, z_far}, spacing);
  append_leg(poly, poly.back(), {b, c1.y, z_far}, spacing);
  append_leg(poly, poly.back(), {b + diam, c1.y, z_far}, spacing);
  // The common line becomes the x-axis; exact zeros survive corner cutting.
  for (Vec3& p : poly) p -= origin;
  return LongKnotTemplate(fixtures::chaikin(poly, 3)).with_padding(4.0 * diam);
}

LongKnotTemplate concatenate(const std::vector<LongKnotTemplate>& parts) {
  if (parts.empty()) throw RopeError(ErrorCode::NoTemplate, "nothing to concatenate");
  std::vector<Vec3> pts;
  double total = 0.0;
  for (const LongKnotTemplate& part : parts) {
    const auto& src = part.points();
    std::size_t first = 0;
    while (first + 1 < src.size() && on_axis(src[first + 1])) ++first;
    std::size_t last = src.size() - 1;
    while (last > first && on_axis(src[last - 1])) --last;
    double min_x = src[first].x;
    for (std::size_t i = first; i <= last; ++i) min_x = std::min(min_x, src[i].x);
    const double overhang = src[first].x - min_x;
    Vec3 shift = -src[first];
    if (!pts.empty()) shift += pts.back() + Vec3{overhang + 0.05 * part.tangle_length(), 0.0, 0.0};
    for (std::size_t i = first; i <= last; ++i) pts.push_back(src[i] + shift);
    total += part.tangle_length();
  }
  pts.insert(pts.begin(), pts.front() - Vec3{total, 0.0, 0.0});
  pts.push_back(pts.back() + Vec3{total, 0.0, 0.0});
  return LongKnotTemplate(std::move(pts)).with_padding(4.0 * total);
}

LongKnotTemplate long_knot_template(const KnotClass& k) {
  if (k.is_unknown()) throw RopeError(ErrorCode::NoTemplate, "no template for unidentified class " + k.to_string());
  if (k.is_unknot()) throw RopeError(ErrorCode::NoTemplate, "the unknot needs no template");
  static std::map<Label, LongKnotTemplate> cache;
  std::vector<LongKnotTemplate> parts;
  for (const auto& [label, count] : k.primes.terms()) {
    auto it = cache.find(label);
    if (it == cache.end()) it = cache.emplace(label, open_closed_knot(fixtures::closed_knot(label))).first;
    for (int i = 0; i < count; ++i) parts.push_back(it->second);
  }
  return parts.size() == 1 ? parts.front() : concatenate(parts);
}

}  // namespace ropelab
