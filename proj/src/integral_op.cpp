#include "helewave/integral_op.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "helewave/error.hpp"
#include "helewave/quadrature.hpp"

namespace helewave {

void ProblemParams::validate() const {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("mu must be finite and > 0");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be finite and > 0");
}

void KernelConfig::validate() const {
  if (!(tau > 0.0) || tau > 0.1) throw DomainError("tau must lie in (0, 0.1]");
  if (n_quad < 64 || n_quad % 2 != 0) throw DomainError("n_quad must be even and >= 64");
  if (!(guard > 0.0)) throw DomainError("guard must be > 0");
}

double KernelConfig::weight() const { return 2.0 * std::numbers::pi / n_quad; }

namespace quadrature {

PointGeometry make_point(double theta, const CurveJet& jet, double guard) {
  PointGeometry p;
  p.theta = theta;
  p.r = jet.r;
  p.rp = jet.rp;
  p.rpp = jet.rpp;
  p.kappa = curvature(jet.r, jet.rp, jet.rpp, guard);
  const CurvaturePartials dk = curvature_partials(jet.r, jet.rp, jet.rpp, guard);
  p.dk_r = dk.d_r;
  p.dk_rp = dk.d_rp;
  p.dk_rpp = dk.d_rpp;
  p.arclen = arclength_element(jet.r, jet.rp);
  p.half_sin = std::sin(0.5 * theta);
  p.half_cos = std::cos(0.5 * theta);
  return p;
}

std::vector<double> node_angles(int n_quad) {
  std::vector<double> out(n_quad);
  const double h = 2.0 * std::numbers::pi / n_quad;
  for (int j = 0; j < n_quad; ++j) out[j] = h * j;
  return out;
}

NodeTable build_nodes(const CurveEvaluator& curve, const KernelConfig& kc) {
  NodeTable table;
  table.weight = kc.weight();
  const std::vector<double> angles = node_angles(kc.n_quad);
  table.nodes.reserve(angles.size());
  for (double t : angles) table.nodes.push_back(make_point(t, curve.eval(t), kc.guard));
  return table;
}

double residual_at(const NodeTable& table, const PointGeometry& x, const ProblemParams& pp,
                   const KernelConfig& kc, ResidualParts* parts) {
  double sum = 0.0;
  if (parts == nullptr) {
    for (const PointGeometry& y : table.nodes) sum += pair_value(y, x, pp, kc.tau).m;
    return table.weight * sum;
  }
  ResidualParts acc;
  for (const PointGeometry& y : table.nodes) {
    const PairValue v = pair_value(y, x, pp, kc.tau);
    sum += v.m;
    acc.h += v.h;
    acc.g += v.g;
    acc.w += v.w;
  }
  parts->h = table.weight * acc.h;
  parts->g = table.weight * acc.g;
  parts->w = table.weight * acc.w;
  return table.weight * sum;
}

}  // namespace quadrature

namespace {

double wrap_angle(double t) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(t, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

quadrature::PointGeometry hat_point(const CurveEvaluator& curve, double theta_hat, double guard) {
  const double t = wrap_angle(theta_hat);
  return quadrature::make_point(t, curve.eval(t), guard);
}

}  // namespace

double integrand_m(const CurveEvaluator& curve, double theta, double theta_hat,
                   const ProblemParams& pp, const KernelConfig& kc) {
  kc.validate();
  const double t = wrap_angle(theta);
  const auto y = quadrature::make_point(t, curve.eval(t), kc.guard);
  const auto x = hat_point(curve, theta_hat, kc.guard);
  return quadrature::pair_value(y, x, pp, kc.tau).m;
}

double l_tau(const CurveEvaluator& curve, double theta_hat, const ProblemParams& pp,
             const KernelConfig& kc) {
  kc.validate();
  const quadrature::NodeTable table = quadrature::build_nodes(curve, kc);
  return quadrature::residual_at(table, hat_point(curve, theta_hat, kc.guard), pp, kc);
}

ResidualParts l_tau_split(const CurveEvaluator& curve, double theta_hat, const ProblemParams& pp,
                          const KernelConfig& kc) {
  kc.validate();
  const quadrature::NodeTable table = quadrature::build_nodes(curve, kc);
  ResidualParts parts;
  quadrature::residual_at(table, hat_point(curve, theta_hat, kc.guard), pp, kc, &parts);
  return parts;
}

std::vector<ResidualSample> residual_batch(const CurveEvaluator& curve,
                                           std::span<const double> theta_hats,
                                           const ProblemParams& pp, const KernelConfig& kc) {
  kc.validate();
  const quadrature::NodeTable table = quadrature::build_nodes(curve, kc);
  const long count = static_cast<long>(theta_hats.size());
  std::vector<quadrature::PointGeometry> hats;
  hats.reserve(theta_hats.size());
  for (double t : theta_hats) hats.push_back(hat_point(curve, t, kc.guard));

  std::vector<ResidualSample> out(theta_hats.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    out[i] = {theta_hats[i], quadrature::residual_at(table, hats[i], pp, kc)};
  }
  return out;
}

}  // namespace helewave
