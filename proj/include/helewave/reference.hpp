#pragma once

// Straightforward serial evaluation of the residual and loss gradient,
// built only from the pointwise operations (integrand_m, m_partials,
// param_gradient_jet). Kept as a cross-check for the parallel kernels and
// as the baseline in the benchmark. O(m * n_quad * (3N + 1)) work with no
// precomputation; use small n_quad.

#include <span>
#include <vector>

#include "helewave/gradients.hpp"
#include "helewave/integral_op.hpp"

namespace helewave::reference {

std::vector<ResidualSample> residual_batch(const CurveEvaluator& curve,
                                           std::span<const double> theta_hats,
                                           const ProblemParams& pp, const KernelConfig& kc);

LossGradient grad_loss(const NetworkParams& params, const Activation& act,
                       std::span<const double> theta_hats, const ProblemParams& pp,
                       const KernelConfig& kc);

}  // namespace helewave::reference
