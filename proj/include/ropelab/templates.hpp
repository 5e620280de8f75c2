#pragma once

#include <vector>

#include "ropelab/geometry.hpp"
#include "ropelab/knotid.hpp"

namespace ropelab {

/// A polygonal long knot. It runs along the x-axis (y = z = 0 exactly) up to
/// arclength `tangle_begin` and again from `tangle_end` on; both straight
/// parts are long enough for any window used by the loop generator.
class LongKnotTemplate {
 public:
  LongKnotTemplate() = default;
  explicit LongKnotTemplate(std::vector<Vec3> points);

  const std::vector<Vec3>& points() const { return points_; }
  double length() const { return cum_.back(); }
  double tangle_begin() const { return tangle_begin_; }
  double tangle_end() const { return tangle_end_; }
  double tangle_length() const { return tangle_end_ - tangle_begin_; }
  /// Smallest distance between strands of the knotted part.
  double min_distance() const { return min_distance_; }

  /// Point at arclength s (clamped to the polyline).
  Vec3 at(double s) const;

  /// The arc [p, q] sampled at `samples` equally spaced arclengths, moved by a
  /// similarity so that its ends land on A and B.
  Rope window(double p, double q, int samples) const;

  /// Window length over chord for [p, q].
  double window_ratio(double p, double q) const;

  /// The same long knot with the axis padding replaced by `pad` on each side.
  LongKnotTemplate with_padding(double pad) const;

 private:
  std::vector<Vec3> points_;
  std::vector<double> cum_;
  double tangle_begin_ = 0.0;
  double tangle_end_ = 0.0;
  double min_distance_ = 0.0;
};

/// Opens a closed knot near its rightmost point and runs both ends out to a
/// common line, producing a long knot of the same type.
LongKnotTemplate open_closed_knot(const ClosedCurve& knot);

/// Long knots placed one after the other along the axis (connected sum).
LongKnotTemplate concatenate(const std::vector<LongKnotTemplate>& parts);

/// Template for a knot class built from the shipped closed knots.
/// Throws NoTemplate when some prime summand has no closed model.
LongKnotTemplate long_knot_template(const KnotClass& k);

}  // namespace ropelab
