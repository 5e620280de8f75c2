#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ropelab/geometry.hpp"
#include "ropelab/knotid.hpp"
#include "ropelab/monoid.hpp"

namespace ropelab {

struct Frame {
  double t = 0.0;
  Rope rope;
};

/// A path of ropes indexed by T in [0,1]; a loop when both ends are tight.
struct RopeFamily {
  double eps = 2.0;
  std::vector<Frame> frames;

  int n_t() const { return static_cast<int>(frames.size()) - 1; }
  bool is_loop(double tol = 1e-9) const;
};

RopeFamily concat(const RopeFamily& a, const RopeFamily& b);
RopeFamily reverse(const RopeFamily& f);

// ---- Contraction of the whole rope space -------------------------------

/// Below this T the contraction returns the tight rope.
inline constexpr double kDeltaTMin = 0.02;

struct DeltaResult {
  Rope rope;
  /// Angle of the final corrective rotation that pins the free end to B.
  double correction_angle = 0.0;
};

DeltaResult delta_contract_detail(const Rope& rope, double t);
Rope delta_contract(const Rope& rope, double t);

// ---- Retraction of W_L in three stages ---------------------------------

/// Polar angle around A scaled by (1 - 5T/6).
Rope wl_stage1(const Rope& rope, double t);

struct Stage2Params {
  double x_good = 0.0;      // end of the single-valued, shallow-angle zone near A
  double delta1_hat = 0.0;  // conservative minorant of the distance to the complement of E
  double delta2 = 0.0;      // 1 + eps - l
  double delta = 0.0;       // min(delta1_hat, delta2) / 5
};

/// Throws NotInE when the rope has no admissible zone near A.
Stage2Params wl_stage2_params(const Rope& rope, double eps);

/// The profile f: f(0)=0, f(x>=1)=1, 0 < f' < 2 on [0,1).
double squeeze_profile(double x);

/// Squeezes the rope onto the axis near A; at T=1 the tangent at A is axial.
Rope wl_stage2(const Rope& rope, double eps, double t);

/// Cut at arclength fraction T, normalize onto [AB], shear and squeeze back
/// to the original length. T=1 is the identity, T=0 the tight rope.
Rope wl_stage3(const Rope& rope, double t);

/// All three stages as one family: stage 1 on [0,1/3], stage 2 on [1/3,2/3],
/// stage 3 (run from T=1 down to 0) on [2/3,1].
RopeFamily wl_retraction(const Rope& rope, double eps, int n_t);

// ---- Tightening ----------------------------------------------------------

struct SqueezeFactors {
  double f1 = 0.0;
  double f2 = 0.0;
  double f = 0.0;
};

/// Closed-form squeeze factors; the tight rope gets f = 1.
SqueezeFactors squeeze_factors(const Rope& rope, double eps);

/// (x, (1 - T f) y, (1 - T f) z).
Rope squeeze_h(const Rope& rope, double eps, double t);

/// Reparametrization of the axis used by the second tightening stage.
class AxisReparam {
 public:
  AxisReparam(const Rope& rope, double eps, int grid = 2048);

  double beta() const { return beta_; }
  double g_integral() const { return g_integral_; }
  double l_a() const { return l_a_; }
  const AxisDecomposition& decomposition() const { return decomp_; }

  /// phi_{r,T}(x), linear with slope phi'(0) outside [0,1].
  double phi(double x, double t) const;
  /// Discrete derivative on the grid cell containing x.
  double dphi(double x, double t) const;
  /// The surrogate weight g on [0,1] (zero on A(r)).
  double g(double x) const;

  const std::vector<double>& grid() const { return xs_; }

 private:
  AxisDecomposition decomp_;
  std::vector<double> xs_;
  std::vector<double> gs_;
  std::vector<double> cum_;  // cumulative integral of g on the grid
  double g_integral_ = 0.0;
  double beta_ = 0.0;
  double l_a_ = 0.0;
};

Rope apply_phi(const Rope& rope, const AxisReparam& reparam, double t);

/// H on [0,1/2] then Phi on [1/2,1]. Throws NotInSpace if l >= 1 + eps_prime.
Rope tighten(const Rope& rope, double eps, double eps_prime, double t);

struct PhiReport {
  double a_violation = 0.0;  // |phi(0)| + |phi(1) - 1| at T = 1
  double b_margin = 0.0;     // min over A and T of 1 - phi'
  double c_margin = 0.0;     // min over A of eps/(4 l_A) - phi'_1; +inf if l_A = 0
  double beta = 0.0;
  bool ok(double tol = 1e-9) const { return a_violation <= tol && b_margin >= -tol && c_margin >= -tol; }
};

PhiReport phi_conditions(const Rope& rope, double eps);

// ---- Loops -----------------------------------------------------------------

struct TieAndPushInfo {
  int x_frame = 0;         // a frame whose extension carries the knot
  int phase1_end = 0;      // frame index where tying ends
  int phase2_end = 0;      // frame index where pushing ends
  double window = 0.0;     // chord length of the sliding window in template units
  double max_length = 1.0;
};

/// The loop b_eps(k): tie k at A, push it to B, shed it at B.
/// Throws NoTemplate for classes without a template and TemplateTooLong when
/// eps is too small for the available template.
RopeFamily tie_and_push(const KnotClass& k, double eps, int n_t = 256, int samples = 400,
                        TieAndPushInfo* info = nullptr);

struct LoopEvent {
  double t = 0.0;
  bool left = true;
  KnotClass before;
  KnotClass after;
  std::size_t frame = 0;  // index of the frame interval [frame, frame+1]
};

struct EventReport {
  std::vector<LoopEvent> left_events;
  std::vector<LoopEvent> right_events;
  bool generic = true;
  std::vector<std::string> flags;
  double max_frame_step = 0.0;  // largest consecutive-frame c1_distance

  /// All left events precede all right events.
  bool left_before_right() const;
};

EventReport loop_verify(const RopeFamily& family, double eps, std::uint64_t seed = 0);

/// Sum over left events of (after - before); anchored so b(k) gives +k.
GrothendieckElement loop_class(const EventReport& report);

/// Linear interpolation between two frames with equal sample counts.
Rope interpolate(const Rope& a, const Rope& b, double s);

}  // namespace ropelab
