#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ropelab/vec3.hpp"

namespace ropelab {

inline constexpr Vec3 kPointA{0.0, 0.0, 0.0};
inline constexpr Vec3 kPointB{1.0, 0.0, 0.0};

namespace tol {
/// Turning-angle cap between successive segments; stands in for C^1.
inline constexpr double kTurnMax = M_PI / 6.0;
/// Segments within this angle of orthogonal to AB count as orthogonal tangents.
inline constexpr double kPerp = 1e-6;
/// A sample closer than this to a fiber plane makes the fiber non-generic.
inline constexpr double kFiber = 1e-9;
/// Axis components closer than this are merged.
inline constexpr double kMergeGap = 1e-7;
/// Distance at which a rope point is taken to lie on an extension ray.
inline constexpr double kSingular = 1e-9;
}  // namespace tol

/// A discrete rope: a polyline from A=(0,0,0) to B=(1,0,0).
///
/// Construction checks the cheap invariants (pinned endpoints, finite and
/// pairwise-distinct consecutive samples, at least 9 samples). Smoothness and
/// embeddedness are checked separately since intermediate frames of some
/// deformations legitimately break the turning-angle cap.
class Rope {
 public:
  explicit Rope(std::vector<Vec3> samples, std::optional<Vec3> tangent_a = std::nullopt,
                std::optional<Vec3> tangent_b = std::nullopt);

  /// The straight segment from A to B with `segments` equal pieces.
  static Rope tight(int segments = 16);

  std::span<const Vec3> samples() const { return samples_; }
  const Vec3& operator[](std::size_t i) const { return samples_[i]; }
  std::size_t size() const { return samples_.size(); }
  std::size_t segment_count() const { return samples_.size() - 1; }

  const std::optional<Vec3>& given_tangent_a() const { return tangent_a_; }
  const std::optional<Vec3>& given_tangent_b() const { return tangent_b_; }

  /// Unit tangent at A: the stored one, else the first segment direction.
  Vec3 tangent_a() const;
  Vec3 tangent_b() const;

 private:
  std::vector<Vec3> samples_;
  std::optional<Vec3> tangent_a_;
  std::optional<Vec3> tangent_b_;
};

struct Measures {
  double l = 0.0;    // polyline length
  double l_x = 0.0;  // length of the projection onto AB
  double l_yz = 0.0; // length of the projection onto the yz-plane
};

Measures measures(const Rope& rope);
double rope_length(std::span<const Vec3> pts);

/// Membership in B_eps: length strictly below 1 + eps.
bool is_short(const Rope& rope, double eps);

double max_turning_angle(const Rope& rope);

/// Throws InvalidRope if any turn exceeds the cap.
void check_smooth(const Rope& rope, double cap = tol::kTurnMax);

/// Throws Embedding if the rope comes back to itself.
void check_embedded(const Rope& rope);

Rope resample_arclength(const Rope& rope, int segments);
std::vector<Vec3> resample_polyline(std::span<const Vec3> pts, int segments);

/// Point at arclength fraction `u` in [0,1] along the polyline.
Vec3 point_at_fraction(std::span<const Vec3> pts, double u);

/// Arclength fraction of every vertex; front 0, back exactly 1.
std::vector<double> arclength_fractions(std::span<const Vec3> pts);

/// Number of transversal crossings of the plane {x = const}.
int multiplicity(const Rope& rope, double x);

struct AxisComponent {
  double lo = 0.0;
  double hi = 0.0;
  bool contains_a = false;
  bool contains_b = false;

  bool is_point() const { return hi - lo <= tol::kMergeGap; }
  bool contains(double x) const { return x >= lo - tol::kMergeGap && x <= hi + tol::kMergeGap; }
};

struct OpenInterval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

struct AxisDecomposition {
  std::vector<AxisComponent> a_components;  // sorted along the axis
  std::vector<OpenInterval> z_components;   // complement in [0,1]
  double l_a = 0.0;  // integral of the fiber count over A(r)
  double l_z = 0.0;  // measure of Z(r)

  bool in_a(double x) const;
  /// Distance from x to A(r); +inf when A(r) is empty.
  double distance_to_a(double x) const;
};

AxisDecomposition axis_decomposition(const Rope& rope);

/// A rope prolonged by rays: leftward from core.front() and rightward from
/// core.back(), both parallel to the x-axis.
struct LongCurve {
  std::vector<Vec3> core;
};

LongCurve extend(const Rope& rope);

enum class ComponentKind { Interval, Point, ContainsA, ContainsB };

struct KnotBlock {
  AxisComponent component;
  ComponentKind kind = ComponentKind::Point;
  /// Absent for components that touch A or B: those carry no block.
  std::optional<LongCurve> curve;
};

std::vector<KnotBlock> knot_blocks(const Rope& rope, const AxisDecomposition& decomp);

struct ExtensionSingularities {
  std::vector<Vec3> left;
  std::vector<Vec3> right;

  bool in_wl() const { return left.empty(); }
  bool in_wr() const { return right.empty(); }
};

/// Points where the rope meets its own extension rays.
ExtensionSingularities extension_singularities(const Rope& rope, double tol_sing = tol::kSingular);

/// C^1 distance on a shared parameter grid (central differences for the
/// derivative term). Both ropes must have the same sample count.
double c1_distance(const Rope& r1, const Rope& r2);

/// Symmetric Hausdorff distance between two polylines (vertex-to-polyline).
double hausdorff(std::span<const Vec3> a, std::span<const Vec3> b);

/// Minimum distance between segment pairs where the curve returns to itself
/// (distance below half the arclength separating the pair). +inf when none.
double min_self_distance(std::span<const Vec3> pts, bool closed);
double min_self_distance(const Rope& rope);
double min_self_distance(const LongCurve& curve);

/// Closest distance between segments [p0,p1] and [q0,q1]; optional params.
double segment_distance(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1,
                        double* s_out = nullptr, double* t_out = nullptr);

}  // namespace ropelab
