#include "helewave/reference.hpp"

#include "helewave/error.hpp"
#include "helewave/quadrature.hpp"

namespace helewave::reference {

std::vector<ResidualSample> residual_batch(const CurveEvaluator& curve,
                                           std::span<const double> theta_hats,
                                           const ProblemParams& pp, const KernelConfig& kc) {
  const std::vector<double> nodes = quadrature::node_angles(kc.n_quad);
  std::vector<ResidualSample> out;
  out.reserve(theta_hats.size());
  for (double hat : theta_hats) {
    double sum = 0.0;
    for (double theta : nodes) sum += integrand_m(curve, theta, hat, pp, kc);
    out.push_back({hat, kc.weight() * sum});
  }
  return out;
}

LossGradient grad_loss(const NetworkParams& params, const Activation& act,
                       std::span<const double> theta_hats, const ProblemParams& pp,
                       const KernelConfig& kc) {
  if (theta_hats.empty()) throw DomainError("grad_loss: empty collocation batch");
  const std::vector<double> nodes = quadrature::node_angles(kc.n_quad);
  const std::size_t dim = params.size();
  const double m = static_cast<double>(theta_hats.size());

  const NetworkCurve curve(params, act);
  LossGradient out;
  out.grad.assign(dim, 0.0);
  for (double hat : theta_hats) {
    const JetAtTheta x = eval_jet(params, act, hat);
    const ParamGradientJet gx = param_gradient_jet(params, act, hat);
    double value = 0.0;
    std::vector<double> grad(dim, 0.0);
    for (double theta : nodes) {
      const JetAtTheta y = eval_jet(params, act, theta);
      const ParamGradientJet gy = param_gradient_jet(params, act, theta);
      const MPartials p = m_partials(y, x, theta, hat, pp, kc);
      value += integrand_m(curve, theta, hat, pp, kc);
      for (std::size_t k = 0; k < dim; ++k) {
        grad[k] += p.d_rho_theta * gy.rho[k] + p.d_rhop_theta * gy.rho_p[k] +
                   p.d_rhopp_theta * gy.rho_pp[k] + p.d_rho_hat * gx.rho[k] +
                   p.d_rhop_hat * gx.rho_p[k] + p.d_rhopp_hat * gx.rho_pp[k];
      }
    }
    value *= kc.weight();
    out.residuals.push_back(value);
    out.residual_term += value * value / m;
    for (std::size_t k = 0; k < dim; ++k) out.grad[k] += (2.0 / m) * value * kc.weight() * grad[k];
  }

  const auto defect = periodic_defect(params, act);
  const auto defect_grad = periodic_defect_gradient(params, act);
  for (int a = 0; a < 3; ++a) {
    out.penalty += defect[a] * defect[a];
    for (std::size_t k = 0; k < dim; ++k) out.grad[k] += 2.0 * defect[a] * defect_grad[a][k];
  }
  out.loss = out.residual_term + out.penalty;
  return out;
}

}  // namespace helewave::reference
