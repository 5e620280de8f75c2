#include "ropelab/mccord.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ropelab/error.hpp"
#include "ropelab/knotid.hpp"

namespace ropelab {

namespace {

constexpr double kTimeTol = 1e-12;
constexpr double kMinEventGap = 1e-9;

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

bool near(double a, double b) { return std::abs(a - b) <= kTimeTol; }

// How a track begins and ends, as declared by events.
struct TrackLinks {
  std::vector<const TimelineEvent*> begins;
  std::vector<const TimelineEvent*> ends;
};

int arity(EventKind k) { return k == EventKind::Merge || k == EventKind::Split ? 3 : 1; }

bool creates(const TimelineEvent& e, std::size_t slot) {
  switch (e.kind) {
    case EventKind::Create0:
    case EventKind::Create1: return slot == 0;
    case EventKind::Merge: return slot == 2;
    case EventKind::Split: return slot >= 1;
    default: return false;
  }
}

Timeline rescaled(const Timeline& tl, double offset, double scale, int index_offset) {
  Timeline out;
  for (const Track& tr : tl.tracks) {
    Track t{tr.label, {}};
    for (const auto& [time, x] : tr.breakpoints) t.breakpoints.push_back({offset + scale * time, x});
    out.tracks.push_back(std::move(t));
  }
  for (const TimelineEvent& e : tl.events) {
    TimelineEvent ev{offset + scale * e.t, e.kind, e.tracks};
    for (int& i : ev.tracks) i += index_offset;
    out.events.push_back(std::move(ev));
  }
  return out;
}

}  // namespace

bool Configuration::valid(std::string* why) const {
  double prev = 0.0;
  for (const Particle& p : particles) {
    std::string problem;
    if (p.label.is_unit()) problem = "unit label";
    else if (!(p.position > 0.0 && p.position < 1.0)) problem = "position " + fmt(p.position) + " is not interior";
    else if (p.position <= prev) problem = "positions are not strictly increasing";
    if (!problem.empty()) {
      if (why) *why = problem;
      return false;
    }
    prev = p.position;
  }
  return true;
}

double Track::position(double t) const {
  if (t <= breakpoints.front().first) return breakpoints.front().second;
  if (t >= breakpoints.back().first) return breakpoints.back().second;
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t,
                             [](double v, const std::pair<double, double>& b) { return v < b.first; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  return lo.second + (hi.second - lo.second) * (t - lo.first) / (hi.first - lo.first);
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Create0: return "CREATE_0";
    case EventKind::Create1: return "CREATE_1";
    case EventKind::Exit0: return "EXIT_0";
    case EventKind::Exit1: return "EXIT_1";
    case EventKind::Merge: return "MERGE";
    case EventKind::Split: return "SPLIT";
  }
  return "?";
}

EventKind parse_event_kind(std::string_view text) {
  for (EventKind k : {EventKind::Create0, EventKind::Create1, EventKind::Exit0, EventKind::Exit1, EventKind::Merge,
                      EventKind::Split})
    if (text == to_string(k)) return k;
  throw RopeError(ErrorCode::Parse, "unknown event kind '" + std::string(text) + "'");
}

ValidationReport validate(const Timeline& tl, bool require_loop) {
  ValidationReport rep;
  auto fail = [&](std::string msg) { rep.problems.push_back(std::move(msg)); };
  const std::size_t n = tl.tracks.size();

  for (std::size_t i = 0; i < n; ++i) {
    const Track& tr = tl.tracks[i];
    const std::string name = "track " + std::to_string(i);
    if (tr.label.is_unit()) fail(name + ": unit label");
    if (tr.breakpoints.size() < 2) {
      fail(name + ": needs at least two breakpoints");
      continue;
    }
    for (std::size_t k = 0; k < tr.breakpoints.size(); ++k) {
      const auto [t, x] = tr.breakpoints[k];
      if (t < 0.0 || t > 1.0 || x < 0.0 || x > 1.0) fail(name + ": breakpoint outside [0,1]^2");
      if (k > 0 && !(t > tr.breakpoints[k - 1].first)) fail(name + ": breakpoint times not increasing");
      if (k > 0 && k + 1 < tr.breakpoints.size() && !(x > 0.0 && x < 1.0))
        fail(name + ": touches the boundary at t=" + fmt(t));
    }
  }
  if (!rep.problems.empty()) {
    rep.valid = false;
    return rep;
  }

  std::vector<TrackLinks> links(n);
  for (std::size_t e = 0; e < tl.events.size(); ++e) {
    const TimelineEvent& ev = tl.events[e];
    const std::string name = "event " + std::to_string(e) + " (" + std::string(to_string(ev.kind)) + ")";
    if (e > 0 && !(ev.t - tl.events[e - 1].t >= kMinEventGap)) fail(name + ": events must be strictly ordered");
    if (static_cast<int>(ev.tracks.size()) != arity(ev.kind)) {
      fail(name + ": wrong number of tracks");
      continue;
    }
    bool indices_ok = true;
    for (int idx : ev.tracks)
      if (idx < 0 || static_cast<std::size_t>(idx) >= n) indices_ok = false;
    if (!indices_ok) {
      fail(name + ": track index out of range");
      continue;
    }
    for (std::size_t slot = 0; slot < ev.tracks.size(); ++slot)
      (creates(ev, slot) ? links[ev.tracks[slot]].begins : links[ev.tracks[slot]].ends).push_back(&ev);

    const auto& tr = tl.tracks;
    switch (ev.kind) {
      case EventKind::Create0:
      case EventKind::Create1: {
        const Track& t = tr[ev.tracks[0]];
        const double edge = ev.kind == EventKind::Create0 ? 0.0 : 1.0;
        if (!near(t.start(), ev.t) || t.breakpoints.front().second != edge)
          fail(name + ": track must start at the boundary at the event time");
        break;
      }
      case EventKind::Exit0:
      case EventKind::Exit1: {
        const Track& t = tr[ev.tracks[0]];
        const double edge = ev.kind == EventKind::Exit0 ? 0.0 : 1.0;
        if (!near(t.end(), ev.t) || t.breakpoints.back().second != edge)
          fail(name + ": track must end at the boundary at the event time");
        break;
      }
      case EventKind::Merge: {
        const Track& a = tr[ev.tracks[0]];
        const Track& b = tr[ev.tracks[1]];
        const Track& m = tr[ev.tracks[2]];
        if (!near(a.end(), ev.t) || !near(b.end(), ev.t) || !near(m.start(), ev.t))
          fail(name + ": inputs must end and the result start at the event time");
        else if (!near(a.breakpoints.back().second, b.breakpoints.back().second) ||
                 !near(a.breakpoints.back().second, m.breakpoints.front().second))
          fail(name + ": particles must meet where the merged particle starts");
        if (!(m.label == a.label + b.label)) fail(name + ": merged label must be the sum of the inputs");
        break;
      }
      case EventKind::Split: {
        const Track& s = tr[ev.tracks[0]];
        const Track& a = tr[ev.tracks[1]];
        const Track& b = tr[ev.tracks[2]];
        if (!near(s.end(), ev.t) || !near(a.start(), ev.t) || !near(b.start(), ev.t))
          fail(name + ": source must end and the parts start at the event time");
        else if (!near(s.breakpoints.back().second, a.breakpoints.front().second) ||
                 !near(s.breakpoints.back().second, b.breakpoints.front().second))
          fail(name + ": parts must start where the source ends");
        if (!(s.label == a.label + b.label)) fail(name + ": split labels must add up to the source");
        break;
      }
    }
  }

  bool empty_ends = true;
  for (std::size_t i = 0; i < n; ++i) {
    const Track& tr = tl.tracks[i];
    const std::string name = "track " + std::to_string(i);
    if (links[i].begins.size() > 1) fail(name + ": created more than once");
    if (links[i].ends.size() > 1) fail(name + ": removed more than once");
    if (links[i].begins.empty()) {
      if (tr.start() != 0.0) fail(name + ": appears without an event");
      else empty_ends = false;
      if (!(tr.breakpoints.front().second > 0.0 && tr.breakpoints.front().second < 1.0))
        fail(name + ": starts on the boundary without a CREATE event");
    }
    if (links[i].ends.empty()) {
      if (tr.end() != 1.0) fail(name + ": vanishes without an event");
      else empty_ends = false;
      if (!(tr.breakpoints.back().second > 0.0 && tr.breakpoints.back().second < 1.0))
        fail(name + ": ends on the boundary without an EXIT event");
    }
  }

  // Pairwise collisions: only the meeting of merge or split partners is allowed.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Track& a = tl.tracks[i];
      const Track& b = tl.tracks[j];
      const double lo = std::max(a.start(), b.start());
      const double hi = std::min(a.end(), b.end());
      if (lo > hi) continue;
      std::vector<double> ts{lo, hi};
      for (const auto& bp : a.breakpoints)
        if (bp.first > lo && bp.first < hi) ts.push_back(bp.first);
      for (const auto& bp : b.breakpoints)
        if (bp.first > lo && bp.first < hi) ts.push_back(bp.first);
      std::sort(ts.begin(), ts.end());
      ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
      bool collided = false;
      for (std::size_t k = 0; k < ts.size() && !collided; ++k) {
        const double d = a.position(ts[k]) - b.position(ts[k]);
        const bool end_point = k == 0 || k + 1 == ts.size();
        if (d == 0.0 && !end_point) collided = true;
        if (k > 0) {
          const double prev = a.position(ts[k - 1]) - b.position(ts[k - 1]);
          if (prev * d < 0.0) collided = true;
        }
      }
      if (collided) fail("tracks " + std::to_string(i) + " and " + std::to_string(j) + " collide");
    }
  }

  rep.valid = rep.problems.empty();
  rep.loop = rep.valid && empty_ends;
  if (require_loop && rep.valid && !empty_ends) {
    rep.problems.push_back("configuration at t=0 or t=1 is not empty");
    rep.valid = false;
  }
  return rep;
}

Timeline omega(const MonoidElement& m) {
  if (m.is_unit()) throw RopeError(ErrorCode::InvalidLabel, "omega needs a non-unit label");
  Timeline tl;
  tl.tracks.push_back({m, {{0.0, 0.0}, {1.0, 1.0}}});
  tl.events.push_back({0.0, EventKind::Create0, {0}});
  tl.events.push_back({1.0, EventKind::Exit1, {0}});
  return tl;
}

Timeline omega_bar(const MonoidElement& m) { return reverse(omega(m)); }

Timeline reverse(const Timeline& tl) {
  Timeline out;
  for (const Track& tr : tl.tracks) {
    Track t{tr.label, {}};
    for (auto it = tr.breakpoints.rbegin(); it != tr.breakpoints.rend(); ++it) t.breakpoints.push_back({1.0 - it->first, it->second});
    out.tracks.push_back(std::move(t));
  }
  for (auto it = tl.events.rbegin(); it != tl.events.rend(); ++it) {
    TimelineEvent e{1.0 - it->t, it->kind, it->tracks};
    switch (it->kind) {
      case EventKind::Create0: e.kind = EventKind::Exit0; break;
      case EventKind::Create1: e.kind = EventKind::Exit1; break;
      case EventKind::Exit0: e.kind = EventKind::Create0; break;
      case EventKind::Exit1: e.kind = EventKind::Create1; break;
      case EventKind::Merge:
        e.kind = EventKind::Split;
        e.tracks = {it->tracks[2], it->tracks[0], it->tracks[1]};
        break;
      case EventKind::Split:
        e.kind = EventKind::Merge;
        e.tracks = {it->tracks[1], it->tracks[2], it->tracks[0]};
        break;
    }
    out.events.push_back(std::move(e));
  }
  return out;
}

Timeline concat(const Timeline& a, const Timeline& b) {
  if (!validate(a).valid || !validate(b).valid) throw RopeError(ErrorCode::NotALoop, "concat needs two valid loops");
  // A short idle gap keeps the last event of a and the first of b apart.
  constexpr double kGap = 1e-6;
  Timeline out = rescaled(a, 0.0, 0.5 - kGap, 0);
  Timeline second = rescaled(b, 0.5 + kGap, 0.5 - kGap, static_cast<int>(a.tracks.size()));
  out.tracks.insert(out.tracks.end(), second.tracks.begin(), second.tracks.end());
  out.events.insert(out.events.end(), second.events.begin(), second.events.end());
  return out;
}

Configuration configuration_at(const Timeline& tl, double t) {
  Configuration c;
  for (const Track& tr : tl.tracks) {
    if (t < tr.start() || t > tr.end()) continue;
    const double x = tr.position(t);
    if (x > 0.0 && x < 1.0) c.particles.push_back({x, tr.label});
  }
  std::sort(c.particles.begin(), c.particles.end(), [](const Particle& p, const Particle& q) { return p.position < q.position; });
  // Merge partners coincide exactly at the event time; report them merged.
  std::vector<Particle> merged;
  for (Particle& p : c.particles) {
    if (!merged.empty() && merged.back().position == p.position) merged.back().label += p.label;
    else merged.push_back(std::move(p));
  }
  c.particles = std::move(merged);
  return c;
}

GrothendieckElement winding_class(const Timeline& tl, double x0) {
  if (!(x0 > 0.0 && x0 < 1.0)) throw RopeError(ErrorCode::NonGenericX0, "x0 must be interior");
  GrothendieckElement total;
  for (const Track& tr : tl.tracks) {
    for (std::size_t k = 0; k < tr.breakpoints.size(); ++k) {
      if (tr.breakpoints[k].second == x0)
        throw RopeError(ErrorCode::NonGenericX0, "a breakpoint lies on x0=" + fmt(x0));
      if (k == 0) continue;
      const double x_prev = tr.breakpoints[k - 1].second;
      const double x_next = tr.breakpoints[k].second;
      if ((x_prev - x0) * (x_next - x0) < 0.0) {
        const GrothendieckElement g = complete(tr.label);
        if (x_next > x_prev) total += g;
        else total -= g;
      }
    }
  }
  return total;
}

GrothendieckElement winding_class_auto(const Timeline& tl, double x0) {
  for (int k = 0; k < 64; ++k) {
    const double step = 1e-7 * ((k + 1) / 2) * (k % 2 == 0 ? 1.0 : -1.0);
    try {
      return winding_class(tl, x0 + step);
    } catch (const RopeError& e) {
      if (e.code() != ErrorCode::NonGenericX0) throw;
    }
  }
  throw RopeError(ErrorCode::NonGenericX0, "no generic x0 near " + fmt(x0));
}

Subordination is_subordinate(const Configuration& c, const Rope& rope, std::uint64_t seed) {
  std::string why;
  if (!c.valid(&why)) return {false, false, "invalid configuration: " + why};
  const AxisDecomposition decomp = axis_decomposition(rope);
  for (const Particle& p : c.particles) {
    if (!decomp.in_a(p.position)) return {false, false, "particle at " + fmt(p.position) + " lies outside A(r)"};
  }
  Subordination out{true, false, ""};
  for (const KnotBlock& block : knot_blocks(rope, decomp)) {
    if (!block.curve) continue;
    MonoidElement sum;
    for (const Particle& p : c.particles)
      if (block.component.contains(p.position)) sum += p.label;
    const KnotClass k = identify(*block.curve, seed);
    if (k.is_unknown()) {
      out.indeterminate = true;
      out.reason = "block over [" + fmt(block.component.lo) + ", " + fmt(block.component.hi) + "] is unidentified (" +
                   k.to_string() + ")";
      continue;
    }
    if (!(sum == k.primes))
      return {false, false, "labels over [" + fmt(block.component.lo) + ", " + fmt(block.component.hi) + "] add to " +
                                sum.to_string() + " but the block is " + k.to_string()};
  }
  if (out.indeterminate) out.subordinate = false;
  return out;
}

}  // namespace ropelab
