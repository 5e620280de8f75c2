#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ropelab/geometry.hpp"
#include "ropelab/monoid.hpp"
#include "ropelab/polynomial.hpp"

namespace ropelab {

/// Closed polygon; the last point connects back to the first.
struct ClosedCurve {
  std::vector<Vec3> points;
};

/// Closes a long curve with a far arc outside its bounding box. The arc runs
/// along both rays for `margin_factor` times the box size, then around.
/// Throws SingularExtension if a ray meets the core.
ClosedCurve close_long(const LongCurve& curve, double margin_factor = 2.0);

/// Knot diagram as a signed Gauss code.
///
/// Entry +(c+1) is the over-passage of crossing c, -(c+1) its under-passage.
/// Arcs run between consecutive under-passages.
struct Diagram {
  std::vector<int> gauss;
  std::vector<int> signs;  // writhe sign of each crossing

  struct CrossingArcs {
    int over = 0;
    int under_in = 0;
    int under_out = 0;
    int sign = 1;
  };

  int crossing_count() const { return static_cast<int>(signs.size()); }
  /// Number of arcs; a crossingless diagram has a single arc.
  int arc_count() const { return std::max(1, crossing_count()); }
  std::vector<CrossingArcs> crossings() const;
  /// Throws DisconnectedDiagram unless every crossing appears once over and
  /// once under.
  void validate() const;
};

/// Generic-looking default projection direction.
Vec3 default_direction();

/// Orthogonal projection along `direction` (viewer on the +direction side).
/// Near-degenerate projections are retried with a seeded jitter of at most
/// 1e-3 rad, up to 32 times, before ProjectionFailed.
Diagram diagram(const ClosedCurve& curve, Vec3 direction = default_direction(), std::uint64_t seed = 0);

/// Applies crossing-removing Reidemeister I and II moves until none applies.
Diagram simplify(Diagram d);

/// Normalized Alexander polynomial (lowest power t^0, positive constant term).
IntPoly alexander(const Diagram& d);
std::int64_t determinant(const Diagram& d);

/// Number of Fox p-colorings (p an odd prime).
std::int64_t fox_colorings(const Diagram& d, int p);

/// Knot type: a multiset of prime labels, or an unrecognised fingerprint.
struct KnotClass {
  MonoidElement primes;
  std::optional<std::string> fingerprint;

  bool is_unknown() const { return fingerprint.has_value(); }
  bool is_unknot() const { return !fingerprint && primes.is_unit(); }
  /// Unknown classes become an opaque generator named by their fingerprint.
  MonoidElement as_monoid() const;
  std::string to_string() const;
  bool operator==(const KnotClass&) const = default;
};

struct TableEntry {
  Label label;
  IntPoly alexander;
  std::int64_t determinant = 1;
};

/// The shipped fingerprint table.
const std::vector<TableEntry>& knot_table();

/// Matches a diagram's invariants against the table.
KnotClass classify(const Diagram& d);

KnotClass identify(const ClosedCurve& curve, std::uint64_t seed = 0);
KnotClass identify(const LongCurve& curve, std::uint64_t seed = 0);

ClosedCurve connected_sum(const ClosedCurve& k1, const ClosedCurve& k2);

/// Closed polygon with marked double points, each a pair of vertex indices
/// whose positions agree within `tol_sing`.
struct SingularCurve {
  ClosedCurve curve;
  std::vector<std::pair<std::size_t, std::size_t>> double_points;
  double tol_sing = 1e-6;
};

/// Throws NonTransversal unless the strands meet at more than 5 degrees.
void check_transversal(const SingularCurve& s, std::size_t dp);

/// Pushes the second strand off the first by 2*tol_sing along +-(t1 x t2).
ClosedCurve resolve(const SingularCurve& s, std::size_t dp, int sign);

/// Resolves every double point with the given signs.
ClosedCurve resolve_all(const SingularCurve& s, std::span<const int> signs);

/// v(k++) - v(k+-) + v(k--) - v(k-+) over the two double points of `s`.
template <class Value, class Invariant>
Value vassiliev1_defect(const SingularCurve& s, Invariant&& v, std::uint64_t seed = 0) {
  if (s.double_points.size() != 2)
    throw RopeError(ErrorCode::NonTransversal, "order-1 defect needs exactly two double points");
  auto value = [&](int a, int b) -> Value {
    const std::array<int, 2> signs{a, b};
    return v(identify(resolve_all(s, signs), seed));
  };
  Value out = value(+1, +1);
  out -= value(+1, -1);
  out += value(-1, -1);
  out -= value(-1, +1);
  return out;
}

}  // namespace ropelab
