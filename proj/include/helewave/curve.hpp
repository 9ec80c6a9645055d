#pragma once

// Geometry of a polar boundary r = R(theta).

#include <memory>

namespace helewave {

/// R and its first three theta-derivatives at one angle.
struct CurveJet {
  double r = 0.0;
  double rp = 0.0;
  double rpp = 0.0;
  double rppp = 0.0;
};

/// Anything that yields R(theta), R'(theta), R''(theta) with period 2 pi.
class CurveEvaluator {
 public:
  virtual ~CurveEvaluator() = default;
  virtual CurveJet eval(double theta) const = 0;
};

/// Closed-form test curves: a circle, or R0 + eps cos(n theta).
class ClosedFormCurve final : public CurveEvaluator {
 public:
  enum class Kind { circle, cosine_perturbed };

  static ClosedFormCurve circle(double r0);
  static ClosedFormCurve cosine_perturbed(double r0, double eps, int mode);

  CurveJet eval(double theta) const override;

  Kind kind() const noexcept { return kind_; }
  double r0() const noexcept { return r0_; }
  double eps() const noexcept { return eps_; }
  int mode() const noexcept { return mode_; }

 private:
  ClosedFormCurve(Kind kind, double r0, double eps, int mode)
      : kind_(kind), r0_(r0), eps_(eps), mode_(mode) {}

  Kind kind_;
  double r0_;
  double eps_;
  int mode_;
};

/// Radii at or below this are treated as a degenerate (non-polar) curve.
inline constexpr double kMinRadius = 0.05;
/// Default lower bound on sqrt(R^2 + R'^2).
inline constexpr double kDefaultGuard = 1e-4;

/// Throws DegenerateCurveError unless R > kMinRadius and R^2 + R'^2 > guard^2.
void require_nondegenerate(double r, double rp, double guard = kDefaultGuard);

/// Signed curvature (R^2 + 2R'^2 - R R'') / (R^2 + R'^2)^{3/2}.
double curvature(double r, double rp, double rpp, double guard = kDefaultGuard);

struct CurvaturePartials {
  double d_r;
  double d_rp;
  double d_rpp;
};

/// d kappa / d(R, R', R'') for the formula above.
CurvaturePartials curvature_partials(double r, double rp, double rpp, double guard = kDefaultGuard);

/// Regularized chord length sqrt(Rh^2 + R^2 - 2 Rh R cos(dtheta) + tau^2).
double d_tau(double r_hat, double r, double dtheta, double tau);

/// (y - x) . n_y |dS_y/dtheta| in polar form:
/// R^2 + Rh R' sin(dtheta) - Rh R cos(dtheta), with dtheta = theta_hat - theta.
double geometric_factor(double r_hat, double r, double rp, double dtheta);

/// sqrt(R'^2 + R^2).
double arclength_element(double r, double rp);

/// Reduces an angle to (-pi, pi].
double reduce_angle(double dtheta);

}  // namespace helewave
