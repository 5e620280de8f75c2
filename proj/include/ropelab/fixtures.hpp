#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ropelab/geometry.hpp"
#include "ropelab/knotid.hpp"
#include "ropelab/monoid.hpp"

namespace ropelab::fixtures {

/// Labels with a parametric closed model: 3_1, 4_1, 5_1, 5_2, 6_1.
std::vector<Label> closed_knot_labels();

/// Closed polygonal model of a prime knot. Throws NoTemplate for other labels.
ClosedCurve closed_knot(const Label& label, int samples = 600);

/// Uniform Catmull-Rom spline through `waypoints`, `per_span` points per span.
std::vector<Vec3> catmull_rom(const std::vector<Vec3>& waypoints, int per_span);

/// Corner cutting with fixed end points.
std::vector<Vec3> chaikin(const std::vector<Vec3>& pts, int iterations);

Rope tight(int samples = 65);

/// y = h sin(pi x) in the xy-plane.
Rope bump(double h, int samples = 129);

enum class Plane { XY, XZ };

/// Half circle over AB; its endpoint tangents are orthogonal to AB.
Rope semicircle(Plane plane = Plane::XY, int samples = 129);

/// Half circle of radius 1/4 over [0, 1/2] in the xy-plane followed by one
/// over [1/2, 1] in the xz-plane.
Rope semicircle_composite(int samples = 129);

/// x(t) = t + sin(2 pi t)/(2 pi) with a short exactly vertical segment over
/// x = 1/2, so A(r) has a point component there.
Rope vertical_inflection(int samples = 129);

/// A window on the trefoil long knot with length `length`.
Rope trefoil(double length = 2.8, int samples = 400);

/// A window on the granny long knot (3_1 # 3_1).
Rope granny(double length = 2.95, int samples = 600);

Rope figure_eight(double length = 2.9, int samples = 400);

/// Ten knotted and unknotted ropes with length in (2, 3).
std::vector<Rope> tightening_set();

/// Ropes whose extensions avoid the left ray; x stays non-negative.
std::vector<Rope> wl_set();

/// Unknotted curl whose strands pass within about 3e-4 of each other.
Rope near_singular_loop(int samples = 257);

/// Planar rope crossing the x-axis at x = -0.3.
Rope left_ray_crossing(int samples = 129);

/// Singular closed curves with two transversal double points.
SingularCurve singular_trefoil();
SingularCurve singular_figure_eight();
/// Closure of a trefoil rope longer than 3 with two crossings made singular.
SingularCurve figure9();

struct NamedRope {
  std::string name;
  Rope rope;
};

/// Every rope fixture under a stable name.
std::vector<NamedRope> all_ropes();

/// Fixture names in the order all_ropes() returns them.
std::vector<std::string> rope_names();

/// Builds only the named fixture.
std::optional<Rope> rope_by_name(std::string_view name);

}  // namespace ropelab::fixtures
