#include "helewave/gradients.hpp"

#include <cmath>
#include <numbers>

#include "helewave/error.hpp"
#include "helewave/quadrature.hpp"

namespace helewave {
namespace {

double wrap_angle(double t) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(t, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

struct BatchResult {
  std::vector<double> residuals;
  // sum_i c_i grad L_i, where c_i = L_i (loss weighting) or 1.
  GradientVector weighted_grad;
};

// Residuals at every collocation point and a weighted sum of their
// gradients. Pair partials are stored per (sample, node) so the parameter
// chain rule is applied once per node instead of once per pair.
BatchResult batch_kernel(const NetworkParams& params, const Activation& act,
                         std::span<const double> theta_hats, const ProblemParams& pp,
                         const KernelConfig& kc, bool loss_weights) {
  kc.validate();
  params.validate();
  const NetworkCurve curve(params, act);
  const quadrature::NodeTable table = quadrature::build_nodes(curve, kc);
  const long n_nodes = static_cast<long>(table.nodes.size());
  const long n_samples = static_cast<long>(theta_hats.size());

  std::vector<quadrature::PointGeometry> hats;
  hats.reserve(theta_hats.size());
  for (double t : theta_hats) {
    const double w = wrap_angle(t);
    hats.push_back(quadrature::make_point(w, eval_jet(params, act, w), kc.guard));
  }

  std::vector<double> p_r(n_samples * n_nodes), p_rp(n_samples * n_nodes),
      p_rpp(n_samples * n_nodes);
  std::vector<double> residual(n_samples), hat_r(n_samples), hat_rp(n_samples),
      hat_rpp(n_samples);

#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n_samples; ++i) {
    const quadrature::PointGeometry& x = hats[i];
    double* row_r = &p_r[i * n_nodes];
    double* row_rp = &p_rp[i * n_nodes];
    double* row_rpp = &p_rpp[i * n_nodes];
    double sum = 0.0, s_r = 0.0, s_rp = 0.0, s_rpp = 0.0;
    for (long j = 0; j < n_nodes; ++j) {
      const quadrature::PairPartials pp_ij = quadrature::pair_partials(table.nodes[j], x, pp, kc.tau);
      sum += pp_ij.m;
      row_r[j] = pp_ij.d_r;
      row_rp[j] = pp_ij.d_rp;
      row_rpp[j] = pp_ij.d_rpp;
      s_r += pp_ij.d_rh;
      s_rp += pp_ij.d_rhp;
      s_rpp += pp_ij.d_rhpp;
    }
    residual[i] = table.weight * sum;
    hat_r[i] = s_r;
    hat_rp[i] = s_rp;
    hat_rpp[i] = s_rpp;
  }

  std::vector<double> weight(n_samples);
  for (long i = 0; i < n_samples; ++i) weight[i] = loss_weights ? residual[i] : 1.0;

  // Per-node chain-rule coefficients, summed over samples in index order.
  std::vector<double> coef_r(n_nodes), coef_rp(n_nodes), coef_rpp(n_nodes);
#pragma omp parallel for schedule(static)
  for (long j = 0; j < n_nodes; ++j) {
    double a = 0.0, b = 0.0, c = 0.0;
    for (long i = 0; i < n_samples; ++i) {
      a += weight[i] * p_r[i * n_nodes + j];
      b += weight[i] * p_rp[i * n_nodes + j];
      c += weight[i] * p_rpp[i * n_nodes + j];
    }
    coef_r[j] = a;
    coef_rp[j] = b;
    coef_rpp[j] = c;
  }

  const long width = static_cast<long>(params.width());
  GradientVector grad(params.size(), 0.0);
#pragma omp parallel for schedule(static)
  for (long u = 0; u < width; ++u) {
    const double a = params.a[u], b = params.b[u], c = params.c[u];
    std::array<double, 3> acc{0.0, 0.0, 0.0};
    auto accumulate = [&](double theta, double w0, double w1, double w2) {
      const UnitGradient g = unit_gradient(a, b, theta, act.derivatives(b * theta + c));
      for (int k = 0; k < 3; ++k) acc[k] += w0 * g.rho[k] + w1 * g.rho_p[k] + w2 * g.rho_pp[k];
    };
    for (long j = 0; j < n_nodes; ++j) {
      accumulate(table.nodes[j].theta, coef_r[j], coef_rp[j], coef_rpp[j]);
    }
    for (long i = 0; i < n_samples; ++i) {
      accumulate(hats[i].theta, weight[i] * hat_r[i], weight[i] * hat_rp[i], weight[i] * hat_rpp[i]);
    }
    grad[u] = table.weight * acc[0];
    grad[width + u] = table.weight * acc[1];
    grad[2 * width + u] = table.weight * acc[2];
  }
  double d_acc = 0.0;
  for (long j = 0; j < n_nodes; ++j) d_acc += coef_r[j];
  for (long i = 0; i < n_samples; ++i) d_acc += weight[i] * hat_r[i];
  grad[3 * width] = table.weight * d_acc;

  return {std::move(residual), std::move(grad)};
}

}  // namespace

MPartials m_partials(const CurveJet& at_theta, const CurveJet& at_hat, double theta,
                     double theta_hat, const ProblemParams& pp, const KernelConfig& kc) {
  kc.validate();
  const auto y = quadrature::make_point(wrap_angle(theta), at_theta, kc.guard);
  const auto x = quadrature::make_point(wrap_angle(theta_hat), at_hat, kc.guard);
  const quadrature::PairPartials p = quadrature::pair_partials(y, x, pp, kc.tau);
  return {p.d_r, p.d_rh, p.d_rp, p.d_rhp, p.d_rpp, p.d_rhpp};
}

GradientVector grad_l_tau(const NetworkParams& params, const Activation& act, double theta_hat,
                          const ProblemParams& pp, const KernelConfig& kc) {
  const double hat[1] = {theta_hat};
  return batch_kernel(params, act, hat, pp, kc, false).weighted_grad;
}

LossGradient grad_loss(const NetworkParams& params, const Activation& act,
                       std::span<const double> theta_hats, const ProblemParams& pp,
                       const KernelConfig& kc) {
  if (theta_hats.empty()) throw DomainError("grad_loss: empty collocation batch");
  BatchResult batch = batch_kernel(params, act, theta_hats, pp, kc, true);
  const double m = static_cast<double>(theta_hats.size());

  LossGradient out;
  double sq = 0.0;
  for (double r : batch.residuals) sq += r * r;
  out.residual_term = sq / m;
  out.grad = std::move(batch.weighted_grad);
  for (double& g : out.grad) g *= 2.0 / m;

  const auto defect = periodic_defect(params, act);
  const auto defect_grad = periodic_defect_gradient(params, act);
  for (int k = 0; k < 3; ++k) {
    out.penalty += defect[k] * defect[k];
    for (std::size_t q = 0; q < out.grad.size(); ++q) out.grad[q] += 2.0 * defect[k] * defect_grad[k][q];
  }
  out.loss = out.residual_term + out.penalty;
  out.residuals = std::move(batch.residuals);
  return out;
}

double loss_value(const NetworkParams& params, const Activation& act,
                  std::span<const double> theta_hats, const ProblemParams& pp,
                  const KernelConfig& kc) {
  if (theta_hats.empty()) throw DomainError("loss_value: empty collocation batch");
  params.validate();
  const NetworkCurve curve(params, act);
  const auto samples = residual_batch(curve, theta_hats, pp, kc);
  double sq = 0.0;
  for (const auto& s : samples) sq += s.value * s.value;
  double penalty = 0.0;
  for (double d : periodic_defect(params, act)) penalty += d * d;
  return sq / static_cast<double>(samples.size()) + penalty;
}

double l2_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace helewave
