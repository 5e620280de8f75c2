#include <algorithm>
#include <cmath>

#include "ropelab/error.hpp"
#include "ropelab/homotopies.hpp"
#include "ropelab/templates.hpp"

namespace ropelab {

namespace {

bool is_tight(const Rope& r, double tol) {
  double prev = -1.0;
  for (const Vec3& p : r.samples()) {
    if (std::abs(p.y) > tol || std::abs(p.z) > tol || p.x < prev - tol) return false;
    prev = p.x;
  }
  return true;
}

double cross2(double ay, double az, double by, double bz) { return ay * bz - az * by; }

struct RawEvent {
  double t = 0.0;
  bool left = true;
  std::size_t frame = 0;
  bool tangential = false;
};

// Roots in [0,1] of c0 + c1 s + c2 s^2; `doubled` marks a repeated root.
std::vector<double> unit_roots(double c0, double c1, double c2, double scale, bool* doubled) {
  std::vector<double> roots;
  const double tiny = 1e-14 * scale;
  if (std::abs(c2) <= tiny) {
    if (std::abs(c1) <= tiny) return roots;
    roots.push_back(-c0 / c1);
  } else {
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < -tiny * tiny) return roots;
    if (disc <= tiny * tiny) {
      *doubled = true;
      roots.push_back(-c1 / (2.0 * c2));
    } else {
      const double sq = std::sqrt(disc);
      // Stable pair of roots.
      const double q = -0.5 * (c1 + std::copysign(sq, c1));
      roots.push_back(q / c2);
      if (q != 0.0) roots.push_back(c0 / q);
    }
  }
  roots.erase(std::remove_if(roots.begin(), roots.end(), [](double s) { return !(s >= 0.0 && s <= 1.0); }),
              roots.end());
  return roots;
}

// Times at which some segment of the interpolated rope passes through the
// x-axis outside [0,1] between frames k and k+1.
void ray_crossings(const Rope& r0, const Rope& r1, double t0, double t1, std::size_t frame,
                   std::vector<RawEvent>& out) {
  const std::size_t n = r0.size();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const Vec3 a0 = r0[j], b0 = r0[j + 1];
    const Vec3 a1 = r1[j], b1 = r1[j + 1];
    const Vec3 da = a1 - a0, db = b1 - b0;
    const double c0 = cross2(a0.y, a0.z, b0.y, b0.z);
    const double c1 = cross2(a0.y, a0.z, db.y, db.z) + cross2(da.y, da.z, b0.y, b0.z);
    const double c2 = cross2(da.y, da.z, db.y, db.z);
    const double scale = std::max({dot(a0, a0), dot(b0, b0), dot(a1, a1), dot(b1, b1), 1e-300});
    bool doubled = false;
    for (double s : unit_roots(c0, c1, c2, scale, &doubled)) {
      const Vec3 a = a0 + da * s;
      const Vec3 b = b0 + db * s;
      const double ey = b.y - a.y, ez = b.z - a.z;
      const double len2 = ey * ey + ez * ez;
      if (len2 == 0.0) continue;
      const double u = -(a.y * ey + a.z * ez) / len2;
      if (u < 0.0 || u > 1.0) continue;
      // Ends pinned at A and B sit on the rays; they are not crossings.
      if ((j == 0 && u == 0.0) || (j + 2 == n && u == 1.0)) continue;
      const double x = a.x + (b.x - a.x) * u;
      if (x >= 0.0 && x <= 1.0) continue;
      out.push_back({t0 + (t1 - t0) * s, x < 0.0, frame, doubled});
    }
  }
}

Rope at_time(const RopeFamily& f, double t) {
  auto it = std::upper_bound(f.frames.begin(), f.frames.end(), t, [](double v, const Frame& fr) { return v < fr.t; });
  std::size_t k = it == f.frames.begin() ? 0 : static_cast<std::size_t>(it - f.frames.begin()) - 1;
  k = std::min(k, f.frames.size() - 2);
  const double t0 = f.frames[k].t, t1 = f.frames[k + 1].t;
  return interpolate(f.frames[k].rope, f.frames[k + 1].rope, t1 > t0 ? (t - t0) / (t1 - t0) : 0.0);
}

}  // namespace

bool RopeFamily::is_loop(double tol) const {
  return !frames.empty() && is_tight(frames.front().rope, tol) && is_tight(frames.back().rope, tol);
}

Rope interpolate(const Rope& a, const Rope& b, double s) {
  if (a.size() != b.size()) throw RopeError(ErrorCode::GridMismatch, "frames have different sample counts");
  if (s <= 0.0) return a;
  if (s >= 1.0) return b;
  std::vector<Vec3> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = lerp(a[i], b[i], s);
  out.front() = kPointA;
  out.back() = kPointB;
  return Rope(std::move(out));
}

RopeFamily concat(const RopeFamily& a, const RopeFamily& b) {
  if (a.frames.empty()) return b;
  if (b.frames.empty()) return a;
  RopeFamily out;
  out.eps = std::max(a.eps, b.eps);
  const std::size_t n = a.frames.front().rope.size();
  for (const Frame& f : a.frames) out.frames.push_back({0.5 * f.t, f.rope});
  for (std::size_t i = 1; i < b.frames.size(); ++i) {
    const Frame& f = b.frames[i];
    Rope r = f.rope.size() == n ? f.rope : Rope(resample_polyline(f.rope.samples(), static_cast<int>(n) - 1));
    out.frames.push_back({0.5 + 0.5 * f.t, std::move(r)});
  }
  return out;
}

RopeFamily reverse(const RopeFamily& f) {
  RopeFamily out;
  out.eps = f.eps;
  for (auto it = f.frames.rbegin(); it != f.frames.rend(); ++it) out.frames.push_back({1.0 - it->t, it->rope});
  return out;
}

RopeFamily tie_and_push(const KnotClass& k, double eps, int n_t, int samples, TieAndPushInfo* info) {
  if (!(eps > 0.0 && eps <= 2.0)) throw RopeError(ErrorCode::InvalidRope, "eps must lie in (0, 2]");
  if (n_t < 8) throw RopeError(ErrorCode::InvalidRope, "need at least 8 frame intervals");
  RopeFamily fam;
  fam.eps = eps;
  const int n1 = static_cast<int>(std::lround(0.45 * n_t));
  const int n2 = n_t - n1;
  if (k.is_unknot()) {
    for (int i = 0; i <= n_t; ++i) fam.frames.push_back({static_cast<double>(i) / n_t, Rope::tight(samples - 1)});
    if (info) *info = {n_t / 2, n1, n2, 0.0, 1.0};
    return fam;
  }
  const LongKnotTemplate base = long_knot_template(k);
  const double s_len = base.tangle_length();

  // Window positions for frame i given the pad a beyond the tangle.
  auto window_at = [&](const LongKnotTemplate& tpl, double a, int i) {
    const double s1 = tpl.tangle_begin(), s2 = tpl.tangle_end();
    if (i <= n1) return std::pair{s2 - (s2 - s1) * i / n1, s2 + a};
    if (i <= n2) {
      const double shift = a * (i - n1) / (n2 - n1);
      return std::pair{s1 - shift, s2 + a - shift};
    }
    return std::pair{s1 - a, s2 - (s2 - s1) * (i - n2) / (n_t - n2)};
  };

  // Smallest pad (by growth) keeping every frame below 1+eps with a margin;
  // the pad is capped so the tangle keeps at least one sample per strand gap.
  const double margin = std::min(0.05, 0.25 * eps);
  const double pad_cap = (samples - 1) * base.min_distance() - s_len;
  LongKnotTemplate tpl;
  double pad = 0.05 * s_len;
  double max_ratio = 0.0;
  for (;; pad *= 1.25) {
    if (pad > pad_cap)
      throw RopeError(ErrorCode::TemplateTooLong,
                      "template for " + k.to_string() + " cannot fit eps=" + std::to_string(eps) + " with " +
                          std::to_string(samples) + " samples");
    tpl = base.with_padding(2.0 * pad + s_len);
    max_ratio = 0.0;
    for (int i = 1; i < n_t; ++i) {
      const auto [p, q] = window_at(tpl, pad, i);
      max_ratio = std::max(max_ratio, tpl.window_ratio(p, q));
    }
    if (max_ratio < 1.0 + eps - margin) break;
  }

  for (int i = 0; i <= n_t; ++i) {
    const double t = static_cast<double>(i) / n_t;
    if (i == 0 || i == n_t) {
      fam.frames.push_back({t, Rope::tight(samples - 1)});
      continue;
    }
    const auto [p, q] = window_at(tpl, pad, i);
    fam.frames.push_back({t, tpl.window(p, q, samples)});
  }
  if (info) *info = {(n1 + n2) / 2, n1, n2, s_len + pad, max_ratio};
  return fam;
}

bool EventReport::left_before_right() const {
  double last_left = -1.0;
  for (const LoopEvent& e : left_events) last_left = std::max(last_left, e.t);
  for (const LoopEvent& e : right_events)
    if (e.t <= last_left) return false;
  return true;
}

EventReport loop_verify(const RopeFamily& family, double eps, std::uint64_t seed) {
  const auto& frames = family.frames;
  if (frames.size() < 2) throw RopeError(ErrorCode::NotALoop, "a family needs at least two frames");
  const std::size_t n = frames.front().rope.size();
  for (std::size_t k = 0; k < frames.size(); ++k) {
    if (frames[k].rope.size() != n)
      throw RopeError(ErrorCode::GridMismatch, "frame " + std::to_string(k) + " has a different sample count");
    if (!is_short(frames[k].rope, eps))
      throw RopeError(ErrorCode::NotInSpace, "frame " + std::to_string(k) + " is not shorter than 1+eps");
  }

  EventReport report;
  std::vector<RawEvent> raw;
  for (std::size_t k = 0; k + 1 < frames.size(); ++k) {
    ray_crossings(frames[k].rope, frames[k + 1].rope, frames[k].t, frames[k + 1].t, k, raw);
    report.max_frame_step = std::max(report.max_frame_step, c1_distance(frames[k].rope, frames[k + 1].rope));
  }
  std::sort(raw.begin(), raw.end(), [](const RawEvent& a, const RawEvent& b) { return a.t < b.t; });

  for (std::size_t e = 0; e < raw.size(); ++e) {
    if (raw[e].tangential) {
      report.generic = false;
      report.flags.push_back("NON_GENERIC: tangential contact at T=" + std::to_string(raw[e].t));
    }
    if (e > 0 && raw[e].t - raw[e - 1].t < 2e-6) {
      report.generic = false;
      report.flags.push_back("NON_GENERIC: events within 2e-6 at T=" + std::to_string(raw[e].t));
    }
  }

  // One class per interval between events, shared by its two neighbours.
  std::vector<KnotClass> classes;
  const double t_begin = frames.front().t, t_end = frames.back().t;
  for (std::size_t e = 0; e <= raw.size(); ++e) {
    const double lo = e == 0 ? t_begin : raw[e - 1].t;
    const double hi = e == raw.size() ? t_end : raw[e].t;
    classes.push_back(identify(extend(at_time(family, 0.5 * (lo + hi))), seed));
  }
  for (std::size_t e = 0; e < raw.size(); ++e) {
    LoopEvent ev{raw[e].t, raw[e].left, classes[e], classes[e + 1], raw[e].frame};
    (raw[e].left ? report.left_events : report.right_events).push_back(std::move(ev));
  }
  return report;
}

GrothendieckElement loop_class(const EventReport& report) {
  GrothendieckElement total;
  for (const LoopEvent& e : report.left_events) total += gdiff(e.after.as_monoid(), e.before.as_monoid());
  return total;
}

}  // namespace ropelab
