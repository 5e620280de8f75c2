#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ropelab/error.hpp"
#include "ropelab/fixtures.hpp"
#include "ropelab/geometry.hpp"
#include "ropelab/knotid.hpp"
#include "ropelab/rope_type.hpp"

namespace ropelab {
namespace {

constexpr double kPi = std::numbers::pi;

/// Half circle of radius 1/2 over AB in the xz-plane, sampled uniformly in angle.
Rope xz_semicircle(int segments) {
  std::vector<Vec3> pts;
  for (int i = 0; i <= segments; ++i) {
    const double a = kPi * (1.0 - static_cast<double>(i) / segments);
    pts.push_back({0.5 + 0.5 * std::cos(a), 0.0, 0.5 * std::sin(a)});
  }
  pts.front() = kPointA;
  pts.back() = kPointB;
  return Rope(pts);
}

/// Crossings of the plane {x = c}, counted segment by segment.
int plane_crossings(const Rope& r, double c) {
  int n = 0;
  for (std::size_t i = 1; i < r.size(); ++i)
    if ((r[i - 1].x - c) * (r[i].x - c) < 0.0) ++n;
  return n;
}

TEST(rope, rejects_bad_samples) {
  std::vector<Vec3> few{kPointA, {0.5, 0.0, 0.0}, kPointB};
  EXPECT_THROW(Rope{few}, RopeError);

  const Rope tight = Rope::tight(10);
  std::vector<Vec3> pts(tight.samples().begin(), tight.samples().end());
  pts.front() = {0.0, 1e-3, 0.0};
  EXPECT_THROW(Rope{pts}, RopeError);
}

TEST(rope, tight_is_straight) {
  const Rope r = Rope::tight(16);
  ASSERT_EQ(r.size(), 17u);
  for (std::size_t i = 0; i < r.size(); ++i) EXPECT_NEAR(r[i].x, i / 16.0, 1e-15);
}

TEST(measures, tight_rope) {
  const Measures m = measures(Rope::tight());
  EXPECT_DOUBLE_EQ(m.l, 1.0);
  EXPECT_DOUBLE_EQ(m.l_x, 1.0);
  EXPECT_DOUBLE_EQ(m.l_yz, 0.0);
}

TEST(measures, semicircle_matches_analytic_lengths) {
  const Rope r = xz_semicircle(4000);
  const Measures m = measures(r);
  EXPECT_NEAR(m.l, kPi / 2.0, 1e-6);
  EXPECT_NEAR(m.l_x, 1.0, 1e-12);
  EXPECT_NEAR(m.l_yz, 1.0, 1e-12);
  EXPECT_LE(m.l, m.l_x + m.l_yz + 1e-12);
  EXPECT_GE(m.l, std::max(m.l_x, m.l_yz) - 1e-12);
}

TEST(measures, agree_with_plain_sums) {
  for (const auto& f : fixtures::all_ropes()) {
    const Measures m = measures(f.rope);
    EXPECT_NEAR(m.l, oracle::length(f.rope.samples()), 1e-12) << f.name;
    EXPECT_NEAR(m.l_x, oracle::length_x(f.rope.samples()), 1e-12) << f.name;
    EXPECT_NEAR(m.l_yz, oracle::length_yz(f.rope.samples()), 1e-12) << f.name;
  }
}

TEST(is_short, thresholds) {
  EXPECT_TRUE(is_short(Rope::tight(), 0.1));
  EXPECT_FALSE(is_short(fixtures::semicircle(), 0.5));
  EXPECT_TRUE(is_short(fixtures::trefoil(), 2.0));
  EXPECT_NEAR(measures(fixtures::trefoil()).l, 2.8, 0.01);
}

TEST(resample_arclength, tight_is_equispaced) {
  const Rope r = resample_arclength(Rope::tight(8), 16);
  ASSERT_EQ(r.size(), 17u);
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_NEAR(r[i].x, i / 16.0, 1e-14);
    EXPECT_EQ(r[i].y, 0.0);
  }
}

TEST(resample_arclength, semicircle_spacing) {
  const Rope fine = xz_semicircle(20000);
  const Rope r = resample_arclength(fine, 100);
  const double l = measures(fine).l;
  for (std::size_t i = 1; i < r.size(); ++i) EXPECT_NEAR(distance(r[i - 1], r[i]), l / 100.0, 1e-6);
  EXPECT_NEAR(l / 100.0, kPi / 200.0, 1e-6);
}

TEST(resample_arclength, idempotent_and_pinned) {
  const Rope r = fixtures::bump(0.3);
  const Rope once = resample_arclength(r, 64);
  const Rope twice = resample_arclength(once, 64);
  ASSERT_EQ(once.size(), twice.size());
  for (std::size_t i = 0; i < once.size(); ++i) EXPECT_NEAR(distance(once[i], twice[i]), 0.0, 1e-12);
  EXPECT_EQ(once[0], kPointA);
  EXPECT_EQ(once[once.size() - 1], kPointB);
  EXPECT_THROW(resample_arclength(r, 7), RopeError);
}

TEST(multiplicity, simple_ropes) {
  EXPECT_EQ(multiplicity(Rope::tight(), 0.5), 1);
  EXPECT_EQ(multiplicity(fixtures::semicircle(), 0.25), 1);
}

TEST(multiplicity, trefoil_tangle_matches_plane_scan) {
  const Rope r = fixtures::trefoil();
  const AxisDecomposition d = axis_decomposition(r);
  ASSERT_FALSE(d.a_components.empty());
  const AxisComponent& c = d.a_components.front();
  int seen_three = 0;
  for (int k = 1; k < 50; ++k) {
    const double x = c.lo + (c.hi - c.lo) * (k + 0.123) / 50.0;
    const int m = multiplicity(r, x);
    EXPECT_EQ(m, plane_crossings(r, x)) << x;
    EXPECT_EQ(m % 2, 1) << x;
    EXPECT_GE(m, 3) << x;
    seen_three += m == 3;
  }
  EXPECT_GT(seen_three, 0);
}

TEST(axis_decomposition, tight_rope_is_all_z) {
  const AxisDecomposition d = axis_decomposition(Rope::tight());
  EXPECT_TRUE(d.a_components.empty());
  EXPECT_EQ(d.l_a, 0.0);
  EXPECT_DOUBLE_EQ(d.l_z, 1.0);
}

TEST(axis_decomposition, semicircle_tangent_is_orthogonal_at_the_ends) {
  const AxisDecomposition d = axis_decomposition(fixtures::semicircle());
  ASSERT_EQ(d.a_components.size(), 2u);
  EXPECT_TRUE(d.a_components.front().contains_a);
  EXPECT_TRUE(d.a_components.back().contains_b);
  EXPECT_NEAR(d.l_z, 1.0, 1e-9);
}

TEST(axis_decomposition, vertical_segment_gives_point_component) {
  const AxisDecomposition d = axis_decomposition(fixtures::vertical_inflection());
  ASSERT_EQ(d.a_components.size(), 1u);
  EXPECT_TRUE(d.a_components[0].is_point());
  EXPECT_NEAR(d.a_components[0].lo, 0.5, 1e-12);
}

TEST(axis_decomposition, trefoil_has_one_interior_interval) {
  const AxisDecomposition d = axis_decomposition(fixtures::trefoil());
  int intervals = 0;
  for (const AxisComponent& c : d.a_components) {
    if (c.is_point()) continue;
    ++intervals;
    EXPECT_GT(c.lo, 0.0);
    EXPECT_LT(c.hi, 1.0);
  }
  EXPECT_EQ(intervals, 1);
  EXPECT_GT(d.l_a, 0.0);
  double z = 0.0;
  for (const OpenInterval& i : d.z_components) z += i.length();
  EXPECT_NEAR(z, d.l_z, 1e-12);
}

TEST(knot_blocks, trefoil_block_is_a_trefoil) {
  const Rope r = fixtures::trefoil();
  const auto blocks = knot_blocks(r, axis_decomposition(r));
  int knotted = 0;
  for (const KnotBlock& b : blocks) {
    if (b.kind != ComponentKind::Interval) continue;
    ASSERT_TRUE(b.curve);
    EXPECT_EQ(identify(*b.curve).to_string(), "3_1");
    ++knotted;
  }
  EXPECT_EQ(knotted, 1);
  EXPECT_TRUE(knot_blocks(Rope::tight(), axis_decomposition(Rope::tight())).empty());
}

TEST(rope_type, point_component_carries_unknot) {
  const RopeType t = rope_type(fixtures::vertical_inflection());
  ASSERT_EQ(t.entries.size(), 1u);
  EXPECT_EQ(t.entries[0].kind, ComponentKind::Point);
  ASSERT_TRUE(t.entries[0].knot);
  EXPECT_TRUE(t.entries[0].knot->is_unknot());
}

TEST(extension_singularities, detects_left_ray_crossing) {
  EXPECT_TRUE(extension_singularities(Rope::tight()).in_wl());
  EXPECT_TRUE(extension_singularities(Rope::tight()).in_wr());
  const ExtensionSingularities s = extension_singularities(fixtures::left_ray_crossing());
  ASSERT_EQ(s.left.size(), 1u);
  EXPECT_NEAR(s.left[0].x, -0.3, 1e-9);
  EXPECT_TRUE(s.in_wr());
  EXPECT_TRUE(extension_singularities(fixtures::trefoil()).in_wl());
}

TEST(c1_distance, identity_symmetry_and_bump_bound) {
  const Rope tight = Rope::tight(128);
  const Rope bump = fixtures::bump(0.2, 129);
  EXPECT_EQ(c1_distance(bump, bump), 0.0);
  EXPECT_DOUBLE_EQ(c1_distance(tight, bump), c1_distance(bump, tight));
  EXPECT_GE(c1_distance(tight, bump), 0.2 - 1e-12);
  EXPECT_THROW(c1_distance(tight, fixtures::bump(0.2, 65)), RopeError);
}

TEST(hausdorff, matches_reference) {
  const Rope a = fixtures::bump(0.3);
  const Rope b = fixtures::semicircle();
  EXPECT_NEAR(hausdorff(a.samples(), b.samples()), oracle::hausdorff(a.samples(), b.samples()), 1e-9);
}

TEST(min_self_distance, fixtures_are_embedded) {
  for (const auto& f : fixtures::all_ropes()) EXPECT_GT(min_self_distance(f.rope), 0.0) << f.name;
  const double gap = min_self_distance(fixtures::near_singular_loop());
  EXPECT_GT(gap, 0.0);
  EXPECT_LT(gap, 1e-3);
}

TEST(min_self_distance, detects_self_contact) {
  // A planar loop whose strands cross at x = 0.5.
  std::vector<Vec3> pts{kPointA,          {0.3, 0.0, 0.0}, {0.7, 0.2, 0.0}, {0.7, 0.4, 0.0}, {0.5, 0.4, 0.0},
                        {0.5, -0.2, 0.0}, {0.6, -0.2, 0.0}, {0.8, -0.1, 0.0}, {0.9, 0.0, 0.0}, kPointB};
  EXPECT_LT(min_self_distance(Rope(pts)), 1e-12);
  EXPECT_THROW(check_embedded(Rope(pts)), RopeError);
}

TEST(extend, tight_rope_is_the_axis) {
  const LongCurve c = extend(Rope::tight());
  EXPECT_EQ(c.core.front(), kPointA);
  EXPECT_EQ(c.core.back(), kPointB);
  EXPECT_TRUE(identify(extend(fixtures::trefoil())).to_string() == "3_1");
}

}  // namespace
}  // namespace ropelab
