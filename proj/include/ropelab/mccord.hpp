#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ropelab/geometry.hpp"
#include "ropelab/monoid.hpp"

namespace ropelab {

struct Particle {
  double position = 0.0;
  MonoidElement label;
};

/// Labelled particles in (0,1); the empty configuration is the basepoint.
struct Configuration {
  std::vector<Particle> particles;

  /// Strictly increasing interior positions and non-unit labels.
  bool valid(std::string* why = nullptr) const;
};

/// A particle worldline: piecewise linear in t, alive on [front.t, back.t].
struct Track {
  MonoidElement label;
  std::vector<std::pair<double, double>> breakpoints;  // (t, x), t strictly increasing

  double start() const { return breakpoints.front().first; }
  double end() const { return breakpoints.back().first; }
  double position(double t) const;
};

enum class EventKind { Create0, Create1, Exit0, Exit1, Merge, Split };

std::string_view to_string(EventKind kind);
EventKind parse_event_kind(std::string_view text);

/// Track indices by kind: Create/Exit {track}; Merge {a, b, merged};
/// Split {source, a, b}. Split only arises from time reversal of a merge.
struct TimelineEvent {
  double t = 0.0;
  EventKind kind = EventKind::Create0;
  std::vector<int> tracks;
};

struct Timeline {
  std::vector<Track> tracks;
  std::vector<TimelineEvent> events;
};

struct ValidationReport {
  bool valid = true;
  bool loop = false;
  std::vector<std::string> problems;
};

/// Checks every model axiom; `require_loop` also demands empty ends.
ValidationReport validate(const Timeline& tl, bool require_loop = true);

/// One particle labelled m travelling from 0 to 1. Throws InvalidLabel for the unit.
Timeline omega(const MonoidElement& m);
Timeline omega_bar(const MonoidElement& m);

/// Time-rescaled composition of two loops (throws NotALoop otherwise).
Timeline concat(const Timeline& a, const Timeline& b);
Timeline reverse(const Timeline& tl);

Configuration configuration_at(const Timeline& tl, double t);

/// Signed label flux across x0. Throws NonGenericX0 when a breakpoint sits on x0.
GrothendieckElement winding_class(const Timeline& tl, double x0);

/// winding_class at x0, nudged deterministically off non-generic positions.
GrothendieckElement winding_class_auto(const Timeline& tl, double x0 = 0.5);

struct Subordination {
  bool subordinate = false;
  bool indeterminate = false;
  std::string reason;
};

Subordination is_subordinate(const Configuration& c, const Rope& rope, std::uint64_t seed = 0);

}  // namespace ropelab
