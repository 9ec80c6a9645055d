#include "helewave/curve.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "helewave/error.hpp"

namespace helewave {

ClosedFormCurve ClosedFormCurve::circle(double r0) {
  if (!(r0 > 0.0)) throw DomainError("circle: radius must be > 0");
  return ClosedFormCurve(Kind::circle, r0, 0.0, 0);
}

ClosedFormCurve ClosedFormCurve::cosine_perturbed(double r0, double eps, int mode) {
  if (!(r0 > 0.0)) throw DomainError("cosine_perturbed: radius must be > 0");
  if (!(std::abs(eps) < r0)) throw DomainError("cosine_perturbed: |eps| must be < R0");
  if (mode < 0) throw DomainError("cosine_perturbed: mode must be >= 0");
  return ClosedFormCurve(Kind::cosine_perturbed, r0, eps, mode);
}

CurveJet ClosedFormCurve::eval(double theta) const {
  if (kind_ == Kind::circle) return {r0_, 0.0, 0.0, 0.0};
  const double n = mode_;
  const double c = std::cos(n * theta);
  const double s = std::sin(n * theta);
  return {r0_ + eps_ * c, -eps_ * n * s, -eps_ * n * n * c, eps_ * n * n * n * s};
}

void require_nondegenerate(double r, double rp, double guard) {
  if (!(r > kMinRadius) || !(r * r + rp * rp > guard * guard) || !std::isfinite(rp)) {
    throw DegenerateCurveError("degenerate curve: R = " + std::to_string(r) +
                               ", R' = " + std::to_string(rp));
  }
}

double curvature(double r, double rp, double rpp, double guard) {
  require_nondegenerate(r, rp, guard);
  const double e = r * r + rp * rp;
  return (r * r + 2.0 * rp * rp - r * rpp) / (e * std::sqrt(e));
}

CurvaturePartials curvature_partials(double r, double rp, double rpp, double guard) {
  require_nondegenerate(r, rp, guard);
  const double e = r * r + rp * rp;
  const double e32 = e * std::sqrt(e);
  const double e52 = e32 * e;
  return {
      (-r * r * r - 4.0 * r * rp * rp + 2.0 * r * r * rpp - rpp * rp * rp) / e52,
      rp * (r * r - 2.0 * rp * rp + 3.0 * r * rpp) / e52,
      -r / e32,
  };
}

double reduce_angle(double dtheta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double x = std::remainder(dtheta, two_pi);  // [-pi, pi]
  if (x <= -std::numbers::pi) x += two_pi;
  return x;
}

double d_tau(double r_hat, double r, double dtheta, double tau) {
  // (Rh - R)^2 + 4 Rh R sin^2(dtheta/2): nonnegative and free of cancellation.
  const double s = std::sin(0.5 * reduce_angle(dtheta));
  const double diff = r_hat - r;
  return std::sqrt(diff * diff + 4.0 * r_hat * r * s * s + tau * tau);
}

double geometric_factor(double r_hat, double r, double rp, double dtheta) {
  const double x = reduce_angle(dtheta);
  return r * r + r_hat * rp * std::sin(x) - r_hat * r * std::cos(x);
}

double arclength_element(double r, double rp) { return std::sqrt(rp * rp + r * r); }

}  // namespace helewave
