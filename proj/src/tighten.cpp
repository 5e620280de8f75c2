#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ropelab/error.hpp"
#include "ropelab/homotopies.hpp"

namespace ropelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Largest angle between AB and a segment whose x-range contains x.
double axis_angle_at(std::span<const Vec3> pts, double x) {
  double alpha = 0.0;
  bool found = false;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = std::min(pts[i].x, pts[i + 1].x);
    const double hi = std::max(pts[i].x, pts[i + 1].x);
    if (x < lo || x > hi) continue;
    const Vec3 d = pts[i + 1] - pts[i];
    alpha = std::max(alpha, std::acos(std::min(1.0, std::abs(d.x) / norm(d))));
    found = true;
  }
  return found ? alpha : 0.5 * std::numbers::pi;
}

void check_params(double eps, double eps_prime) {
  if (!(eps > 0.0 && eps < eps_prime && eps_prime <= 2.0))
    throw RopeError(ErrorCode::InvalidRope, "need 0 < eps < eps_prime <= 2");
}

}  // namespace

SqueezeFactors squeeze_factors(const Rope& rope, double eps) {
  const Measures m = measures(rope);
  if (m.l_yz == 0.0) return {1.0, 1.0, 1.0};
  SqueezeFactors f;
  f.f1 = std::max(0.0, 1.0 - eps / (2.0 * m.l_yz));
  f.f2 = std::max(0.0, 1.0 - (m.l - m.l_x) / m.l_yz);
  f.f = std::max(f.f1, f.f2);
  return f;
}

Rope squeeze_h(const Rope& rope, double eps, double t) {
  const double h = 1.0 - t * squeeze_factors(rope, eps).f;
  if (h == 1.0) return rope;
  std::vector<Vec3> out(rope.samples().begin(), rope.samples().end());
  for (Vec3& p : out) {
    p.y *= h;
    p.z *= h;
  }
  return Rope(std::move(out));
}

AxisReparam::AxisReparam(const Rope& rope, double eps, int grid)
    : decomp_(axis_decomposition(rope)), l_a_(decomp_.l_a) {
  if (grid < 2) throw RopeError(ErrorCode::InvalidRope, "grid needs at least 2 points");
  const auto pts = rope.samples();
  for (int i = 0; i < grid; ++i) xs_.push_back(static_cast<double>(i) / (grid - 1));
  for (const AxisComponent& c : decomp_.a_components) {
    xs_.push_back(std::clamp(c.lo, 0.0, 1.0));
    xs_.push_back(std::clamp(c.hi, 0.0, 1.0));
  }
  std::sort(xs_.begin(), xs_.end());
  xs_.erase(std::unique(xs_.begin(), xs_.end()), xs_.end());

  gs_.resize(xs_.size());
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    const double x = xs_[i];
    if (decomp_.in_a(x)) {
      gs_[i] = 0.0;
      continue;
    }
    const double slack = (0.5 * std::numbers::pi - axis_angle_at(pts, x)) / (0.25 * std::numbers::pi);
    gs_[i] = std::min(decomp_.distance_to_a(x), 1.0) * std::clamp(slack, 0.0, 1.0);
  }
  cum_.assign(xs_.size(), 0.0);
  for (std::size_t i = 1; i < xs_.size(); ++i)
    cum_[i] = cum_[i - 1] + 0.5 * (gs_[i] + gs_[i - 1]) * (xs_[i] - xs_[i - 1]);
  g_integral_ = cum_.back();
  if (g_integral_ > 0.0) beta_ = std::max(0.0, (4.0 * l_a_ / eps - 1.0) / g_integral_);
}

double AxisReparam::g(double x) const {
  if (x <= 0.0) return gs_.front();
  if (x >= 1.0) return gs_.back();
  const std::size_t j = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
  const double w = (x - xs_[j - 1]) / (xs_[j] - xs_[j - 1]);
  return gs_[j - 1] + w * (gs_[j] - gs_[j - 1]);
}

double AxisReparam::phi(double x, double t) const {
  const double tau = t * beta_;
  const double norm_c = 1.0 + tau * g_integral_;
  if (x <= 0.0) return x / norm_c;
  if (x >= 1.0) return 1.0 + (x - 1.0) / norm_c;
  const std::size_t j = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
  const double dx = x - xs_[j - 1];
  // Exact integral of the linear interpolant of g over the partial cell.
  const double partial = dx * (gs_[j - 1] + 0.5 * (g(x) - gs_[j - 1]));
  return (x + tau * (cum_[j - 1] + partial)) / norm_c;
}

double AxisReparam::dphi(double x, double t) const {
  const double tau = t * beta_;
  const double norm_c = 1.0 + tau * g_integral_;
  if (x < 0.0 || x > 1.0) return 1.0 / norm_c;
  return (1.0 + tau * g(x)) / norm_c;
}

Rope apply_phi(const Rope& rope, const AxisReparam& reparam, double t) {
  if (t == 0.0 || reparam.beta() == 0.0) return rope;
  std::vector<Vec3> out(rope.samples().begin(), rope.samples().end());
  for (Vec3& p : out) p.x = reparam.phi(p.x, t);
  out.front() = kPointA;
  out.back() = kPointB;
  return Rope(std::move(out));
}

Rope tighten(const Rope& rope, double eps, double eps_prime, double t) {
  check_params(eps, eps_prime);
  if (!(t >= 0.0 && t <= 1.0)) throw RopeError(ErrorCode::InvalidRope, "T must lie in [0,1]");
  if (measures(rope).l >= 1.0 + eps_prime)
    throw RopeError(ErrorCode::NotInSpace, "rope length is not below 1+eps_prime");
  const Rope squeezed = squeeze_h(rope, eps, std::min(2.0 * t, 1.0));
  const double t2 = std::max(2.0 * t - 1.0, 0.0);
  if (t2 == 0.0) return squeezed;
  return apply_phi(squeezed, AxisReparam(squeezed, eps), t2);
}

PhiReport phi_conditions(const Rope& rope, double eps) {
  const Rope squeezed = squeeze_h(rope, eps, 1.0);
  const AxisReparam reparam(squeezed, eps);
  PhiReport report;
  report.beta = reparam.beta();
  report.a_violation = std::abs(reparam.phi(0.0, 1.0)) + std::abs(reparam.phi(1.0, 1.0) - 1.0);

  std::vector<double> on_a;
  for (double x : reparam.grid())
    if (reparam.decomposition().in_a(x)) on_a.push_back(x);
  report.b_margin = kInf;
  report.c_margin = kInf;
  if (on_a.empty()) return report;
  constexpr int kSteps = 64;
  for (int k = 1; k <= kSteps; ++k) {
    const double t = static_cast<double>(k) / kSteps;
    for (double x : on_a) report.b_margin = std::min(report.b_margin, 1.0 - reparam.dphi(x, t));
  }
  if (reparam.l_a() > 0.0) {
    const double bound = eps / (4.0 * reparam.l_a());
    for (double x : on_a) report.c_margin = std::min(report.c_margin, bound - reparam.dphi(x, 1.0));
  }
  return report;
}

}  // namespace ropelab
