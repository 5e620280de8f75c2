#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ropelab/error.hpp"
#include "ropelab/fixtures.hpp"
#include "ropelab/homotopies.hpp"
#include "ropelab/knotid.hpp"

namespace ropelab {
namespace {

constexpr double kPi = std::numbers::pi;

double polar_angle(const Vec3& p) { return std::atan2(std::hypot(p.y, p.z), p.x); }

void expect_same_samples(const Rope& a, const Rope& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LE(distance(a[i], b[i]), tol) << i;
}

void expect_pinned(const Rope& r) {
  EXPECT_EQ(r[0], kPointA);
  EXPECT_EQ(r[r.size() - 1], kPointB);
}

KnotClass knot(const std::string& text) { return KnotClass{MonoidElement::parse(text), {}}; }

TEST(delta_contract, identity_at_one) {
  for (const auto& f : fixtures::all_ropes()) {
    if (f.name == "left_ray_crossing") continue;
    expect_same_samples(delta_contract(f.rope, 1.0), f.rope, 0.0);
  }
}

TEST(delta_contract, tight_rope_is_fixed) {
  const Rope tight = Rope::tight(32);
  for (double t : {0.0, 0.01, 0.3, 0.7, 1.0}) {
    const Rope r = delta_contract(tight, t);
    for (std::size_t i = 0; i < r.size(); ++i) {
      EXPECT_NEAR(r[i].y, 0.0, 1e-12);
      EXPECT_NEAR(r[i].z, 0.0, 1e-12);
    }
  }
}

TEST(delta_contract, pinned_embedded_and_tight_near_zero) {
  const Rope r = fixtures::trefoil();
  for (double t : {0.05, 0.25, 0.5, 0.75}) {
    const Rope d = delta_contract(r, t);
    expect_pinned(d);
    EXPECT_GT(min_self_distance(d), 0.0) << t;
  }
  EXPECT_LT(oracle::distance_to_tight(delta_contract(r, 0.5 * kDeltaTMin).samples()), 1e-12);
}

TEST(delta_contract, correction_rotation_is_small) {
  const Rope r = fixtures::semicircle();
  double worst = 0.0;
  for (int k = 2; k <= 32; ++k) worst = std::max(worst, delta_contract_detail(r, k / 32.0).correction_angle);
  EXPECT_LT(worst, 1e-3);
}

TEST(wl_stage1, scales_polar_angle) {
  const Rope r = fixtures::bump(0.8);
  EXPECT_EQ(wl_stage1(r, 0.0).samples().data()[3], r[3]);
  const Rope s = wl_stage1(r, 1.0);
  ASSERT_EQ(s.size(), r.size());
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    EXPECT_NEAR(polar_angle(s[i]), polar_angle(r[i]) / 6.0, 1e-12) << i;
    EXPECT_NEAR(norm(s[i]), norm(r[i]), 1e-12) << i;
  }
  // A sample straight above A at polar angle pi/2 ends at pi/12.
  std::vector<Vec3> pts{kPointA, {0.0, 0.2, 0.0}, {0.2, 0.3, 0.0}, {0.4, 0.3, 0.0}, {0.5, 0.3, 0.0},
                        {0.6, 0.3, 0.0}, {0.8, 0.2, 0.0}, {0.9, 0.1, 0.0}, kPointB};
  const Rope up = wl_stage1(Rope(pts), 1.0);
  EXPECT_NEAR(polar_angle(up[1]), kPi / 12.0, 1e-12);
  expect_pinned(up);
}

TEST(wl_stage1, rejects_left_ray_crossing) {
  try {
    wl_stage1(fixtures::left_ray_crossing(), 0.5);
    FAIL() << "expected NOT_IN_WL";
  } catch (const RopeError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInWL);
  }
}

TEST(wl_stage2, tangent_at_a_becomes_axial) {
  const Rope r1 = wl_stage1(fixtures::bump(0.3), 1.0);
  const Stage2Params p = wl_stage2_params(r1, 2.0);
  EXPECT_GT(p.delta, 0.0);
  EXPECT_LE(p.delta, p.delta2 / 5.0 + 1e-15);
  const Rope r2 = wl_stage2(r1, 2.0, 1.0);
  expect_pinned(r2);
  EXPECT_LT(angle_between(r2[1] - r2[0], kPointB), 1e-3);
  // Past the squeeze zone the profile is 1 and samples are unchanged.
  EXPECT_EQ(r2[r2.size() - 2], r1[r1.size() - 2]);
  EXPECT_DOUBLE_EQ(squeeze_profile(0.0), 0.0);
  EXPECT_DOUBLE_EQ(squeeze_profile(1.0), 1.0);
  EXPECT_DOUBLE_EQ(squeeze_profile(2.0), 1.0);
}

TEST(wl_stage2, rejects_long_ropes) {
  try {
    wl_stage2_params(fixtures::trefoil(), 1.0);
    FAIL() << "expected an error";
  } catch (const RopeError& e) {
    EXPECT_TRUE(e.code() == ErrorCode::NotInSpace || e.code() == ErrorCode::NotInE);
  }
}

TEST(wl_stage3, endpoints) {
  const Rope r2 = wl_stage2(wl_stage1(fixtures::bump(0.3), 1.0), 2.0, 1.0);
  expect_same_samples(wl_stage3(r2, 1.0), r2, 0.0);
  EXPECT_LT(oracle::distance_to_tight(wl_stage3(r2, 0.0).samples()), 1e-12);
  const Rope mid = wl_stage3(r2, 0.5);
  expect_pinned(mid);
  EXPECT_LE(oracle::length(mid.samples()), oracle::length(r2.samples()) + 1e-9);
}

TEST(wl_retraction, frames_are_short_and_end_tight) {
  const double eps = 2.0;
  const RopeFamily fam = wl_retraction(fixtures::bump(0.3), eps, 24);
  ASSERT_EQ(fam.n_t(), 24);
  expect_same_samples(fam.frames.front().rope, fixtures::bump(0.3), 0.0);
  for (const Frame& f : fam.frames) {
    expect_pinned(f.rope);
    EXPECT_LT(oracle::length(f.rope.samples()), 1.0 + eps) << f.t;
    EXPECT_GT(min_self_distance(f.rope), 0.0) << f.t;
  }
  EXPECT_LT(oracle::distance_to_tight(fam.frames.back().rope.samples()), 1e-12);
  EXPECT_THROW(wl_retraction(fixtures::bump(0.3), eps, 2), RopeError);
}

TEST(squeeze, factors_and_lengths) {
  const SqueezeFactors tight = squeeze_factors(Rope::tight(), 1.0);
  EXPECT_EQ(tight.f, 1.0);
  const Rope r = fixtures::trefoil();
  const Measures m = measures(r);
  const SqueezeFactors f = squeeze_factors(r, 1.0);
  EXPECT_NEAR(f.f1, 1.0 - 1.0 / (2.0 * m.l_yz), 1e-12);
  EXPECT_NEAR(f.f2, 1.0 - (m.l - m.l_x) / m.l_yz, 1e-12);
  EXPECT_EQ(f.f, std::max(f.f1, f.f2));
  expect_same_samples(squeeze_h(r, 1.0, 0.0), r, 0.0);
  const Rope h = squeeze_h(r, 1.0, 1.0);
  EXPECT_NEAR(oracle::length_x(h.samples()), m.l_x, 1e-12);
  EXPECT_LE(oracle::length_yz(h.samples()), 0.5 + 1e-9);
  EXPECT_LE(oracle::length_x(h.samples()) + oracle::length_yz(h.samples()), m.l + 1e-9);
}

TEST(tighten, shortens_and_keeps_the_knot) {
  const Rope r = fixtures::trefoil();
  expect_same_samples(tighten(r, 1.0, 2.0, 0.0), r, 0.0);
  const Rope done = tighten(r, 1.0, 2.0, 1.0);
  expect_pinned(done);
  EXPECT_LT(oracle::length(done.samples()), 2.0);
  EXPECT_EQ(identify(extend(done)).to_string(), "3_1");
  EXPECT_TRUE(phi_conditions(r, 1.0).ok());
  EXPECT_THROW(tighten(r, 2.0, 1.0, 0.5), RopeError);
  EXPECT_THROW(tighten(fixtures::granny(), 1.0, 1.5, 0.5), RopeError);
}

TEST(axis_reparam, phi_fixes_endpoints_and_is_monotone) {
  const Rope h = squeeze_h(fixtures::trefoil(), 1.0, 1.0);
  const AxisReparam phi(h, 1.0);
  EXPECT_GE(phi.beta(), 0.0);
  EXPECT_NEAR(phi.phi(0.0, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(phi.phi(1.0, 1.0), 1.0, 1e-12);
  double prev = -1.0;
  for (int k = 0; k <= 200; ++k) {
    const double v = phi.phi(k / 200.0, 1.0);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(tie_and_push, unknot_and_trefoil_loops) {
  const RopeFamily unknot = tie_and_push(KnotClass{}, 2.0, 16, 120);
  for (const Frame& f : unknot.frames) EXPECT_LT(oracle::distance_to_tight(f.rope.samples()), 1e-12);

  TieAndPushInfo info;
  const RopeFamily b = tie_and_push(knot("3_1"), 2.0, 128, 400, &info);
  EXPECT_TRUE(b.is_loop());
  EXPECT_LT(oracle::distance_to_tight(b.frames.front().rope.samples()), 1e-12);
  EXPECT_LT(oracle::distance_to_tight(b.frames.back().rope.samples()), 1e-12);
  EXPECT_LT(info.max_length, 3.0);
  EXPECT_EQ(identify(extend(b.frames[static_cast<std::size_t>(info.x_frame)].rope)).to_string(), "3_1");

  const EventReport report = loop_verify(b, 2.0);
  EXPECT_TRUE(report.generic);
  EXPECT_TRUE(report.left_before_right());
  EXPECT_EQ(loop_class(report), complete(MonoidElement::prime("3_1")));
  EXPECT_EQ(loop_class(loop_verify(reverse(b), 2.0)), -complete(MonoidElement::prime("3_1")));
}

TEST(tie_and_push, errors) {
  try {
    tie_and_push(knot("9_46"), 2.0, 16);
    FAIL() << "expected NO_TEMPLATE";
  } catch (const RopeError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoTemplate);
  }
  try {
    tie_and_push(knot("3_1"), 0.05, 16);
    FAIL() << "expected TEMPLATE_TOO_LONG";
  } catch (const RopeError& e) {
    EXPECT_EQ(e.code(), ErrorCode::TemplateTooLong);
  }
}

TEST(family, concat_and_reverse) {
  const RopeFamily a = tie_and_push(KnotClass{}, 2.0, 8, 64);
  const RopeFamily ab = concat(a, a);
  EXPECT_EQ(ab.n_t(), 16);
  EXPECT_DOUBLE_EQ(ab.frames.front().t, 0.0);
  EXPECT_DOUBLE_EQ(ab.frames.back().t, 1.0);
  const RopeFamily r = reverse(a);
  expect_same_samples(r.frames.front().rope, a.frames.back().rope, 0.0);
  expect_same_samples(interpolate(a.frames[0].rope, a.frames[1].rope, 0.0), a.frames[0].rope, 0.0);
}

}  // namespace
}  // namespace ropelab
