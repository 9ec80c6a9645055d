#pragma once

// Regularized boundary-integral residual of the steady free boundary
// problem, evaluated by trapezoid quadrature in the polar angle.

#include <span>
#include <vector>

#include "helewave/curve.hpp"

namespace helewave {

/// Boundary value sigma = mu + kappa and flux d sigma / dn = beta.
struct ProblemParams {
  double mu = 14.6;
  double beta = 0.0;

  void validate() const;
};

struct KernelConfig {
  double tau = 1e-3;   ///< chord regularization, 0 < tau <= 0.1
  int n_quad = 4096;   ///< uniform trapezoid nodes, even and >= 64
  double guard = kDefaultGuard;

  void validate() const;
  double weight() const;  ///< 2 pi / n_quad

  friend bool operator==(const KernelConfig&, const KernelConfig&) = default;
};

struct ResidualSample {
  double theta_hat;
  double value;
};

/// The three pieces of the residual, L = h - g + w.
struct ResidualParts {
  double h = 0.0;
  double g = 0.0;
  double w = 0.0;
};

/// Integrand M(theta, theta_hat) of the residual at one node pair.
double integrand_m(const CurveEvaluator& curve, double theta, double theta_hat,
                   const ProblemParams& pp, const KernelConfig& kc);

/// Trapezoid approximation of int_0^{2pi} M(theta, theta_hat) dtheta.
double l_tau(const CurveEvaluator& curve, double theta_hat, const ProblemParams& pp,
             const KernelConfig& kc);

ResidualParts l_tau_split(const CurveEvaluator& curve, double theta_hat, const ProblemParams& pp,
                          const KernelConfig& kc);

/// Residual at many collocation angles. Samples are evaluated in parallel;
/// each value is bit-identical to l_tau at the same angle.
std::vector<ResidualSample> residual_batch(const CurveEvaluator& curve,
                                           std::span<const double> theta_hats,
                                           const ProblemParams& pp, const KernelConfig& kc);

}  // namespace helewave
