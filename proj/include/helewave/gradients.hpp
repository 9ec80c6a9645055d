#pragma once

// Analytic parameter gradients of the discretized residual and loss.
//
// The residual is differentiated after discretization: grad_l_tau uses the
// same trapezoid nodes as l_tau, so it is the exact derivative of what the
// loss actually evaluates.

#include <span>
#include <vector>

#include "helewave/curve.hpp"
#include "helewave/integral_op.hpp"
#include "helewave/network.hpp"

namespace helewave {

/// Partials of the integrand M with respect to rho, rho', rho'' at the
/// integration angle theta and at the collocation angle theta_hat.
struct MPartials {
  double d_rho_theta = 0.0;
  double d_rho_hat = 0.0;
  double d_rhop_theta = 0.0;
  double d_rhop_hat = 0.0;
  double d_rhopp_theta = 0.0;
  double d_rhopp_hat = 0.0;
};

/// Aligned with NetworkParams::flatten().
using GradientVector = std::vector<double>;

MPartials m_partials(const CurveJet& at_theta, const CurveJet& at_hat, double theta,
                     double theta_hat, const ProblemParams& pp, const KernelConfig& kc);

GradientVector grad_l_tau(const NetworkParams& params, const Activation& act, double theta_hat,
                          const ProblemParams& pp, const KernelConfig& kc);

struct LossGradient {
  double loss = 0.0;          ///< residual term + periodicity penalty
  double residual_term = 0.0; ///< (1/m) sum L_i^2
  double penalty = 0.0;       ///< sum over orders 0..2 of squared periodic defects
  std::vector<double> residuals;
  GradientVector grad;
};

/// F = (1/m) sum_i L_tau(theta_hat_i)^2 + sum_alpha (D^alpha rho(0) - D^alpha rho(2 pi))^2
/// and its exact gradient. Samples are processed in parallel with a fixed
/// reduction order.
LossGradient grad_loss(const NetworkParams& params, const Activation& act,
                       std::span<const double> theta_hats, const ProblemParams& pp,
                       const KernelConfig& kc);

/// Loss value only (no gradient).
double loss_value(const NetworkParams& params, const Activation& act,
                  std::span<const double> theta_hats, const ProblemParams& pp,
                  const KernelConfig& kc);

double l2_norm(std::span<const double> v);

}  // namespace helewave
