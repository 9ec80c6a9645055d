#pragma once

// Shared machinery for the residual and gradient kernels: curve samples at
// the trapezoid nodes and the per-pair evaluation of M and its partials.
// Both kernels call pair_terms() so residual values agree bit-for-bit.

#include <cmath>
#include <numbers>
#include <vector>

#include "helewave/curve.hpp"
#include "helewave/integral_op.hpp"
#include "helewave/specfun.hpp"

namespace helewave::quadrature {

/// Curve data at one angle, with curvature and its partials.
struct PointGeometry {
  double theta = 0.0;
  double r = 0.0, rp = 0.0, rpp = 0.0;
  double kappa = 0.0;
  double arclen = 0.0;
  double dk_r = 0.0, dk_rp = 0.0, dk_rpp = 0.0;
  double half_sin = 0.0, half_cos = 1.0;  // sin, cos of theta / 2
};

/// Throws DegenerateCurveError for inadmissible jets.
PointGeometry make_point(double theta, const CurveJet& jet, double guard);

/// Trapezoid nodes theta_j = 2 pi j / n and the curve sampled there.
struct NodeTable {
  std::vector<PointGeometry> nodes;
  double weight = 0.0;
};

NodeTable build_nodes(const CurveEvaluator& curve, const KernelConfig& kc);

/// Uniform node angles 2 pi j / n.
std::vector<double> node_angles(int n_quad);

struct PairValue {
  double m;
  double h, g, w;  // m == h - g + w up to rounding
};

struct PairPartials {
  double m;
  double d_r, d_rp, d_rpp;        // w.r.t. rho, rho', rho'' at theta
  double d_rh, d_rhp, d_rhpp;     // w.r.t. rho, rho', rho'' at theta_hat
};

namespace detail {

struct PairCore {
  double cos_d, sin_d;  // of theta_hat - theta
  double dist;          // D_tau
  double inv_d2;
  specfun::KernelValues k;
  double geom;          // R^2 + Rh R' sin - Rh R cos
  double bracket;       // (mu + kappa) Q - (kappa - kappa_hat) / (2 pi D^2)
};

inline PairCore core(const PointGeometry& y, const PointGeometry& x, const ProblemParams& pp,
                     double tau) {
  constexpr double inv_2pi = 0.5 / std::numbers::pi;
  // Half-angle of theta_hat - theta from the stored half-angles.
  const double sh = x.half_sin * y.half_cos - x.half_cos * y.half_sin;
  const double ch = x.half_cos * y.half_cos + x.half_sin * y.half_sin;
  PairCore c{};
  c.cos_d = 1.0 - 2.0 * sh * sh;
  c.sin_d = 2.0 * sh * ch;
  const double diff = x.r - y.r;
  const double d2 = diff * diff + 4.0 * x.r * y.r * sh * sh + tau * tau;
  c.dist = std::sqrt(d2);
  c.inv_d2 = 1.0 / d2;
  c.k = specfun::kernels(c.dist);
  c.geom = y.r * y.r + x.r * y.rp * c.sin_d - x.r * y.r * c.cos_d;
  c.bracket = (pp.mu + y.kappa) * c.k.q - (y.kappa - x.kappa) * inv_2pi * c.inv_d2;
  return c;
}

}  // namespace detail

/// M at node y (angle theta) for collocation point x (angle theta_hat).
inline PairValue pair_value(const PointGeometry& y, const PointGeometry& x,
                            const ProblemParams& pp, double tau) {
  constexpr double inv_2pi = 0.5 / std::numbers::pi;
  const detail::PairCore c = detail::core(y, x, pp, tau);
  PairValue v{};
  v.h = pp.beta * c.k.g1 * y.arclen;
  v.g = (pp.mu + y.kappa) * c.k.q * c.geom;
  v.w = (y.kappa - x.kappa) * inv_2pi * c.inv_d2 * c.geom;
  v.m = v.h - c.bracket * c.geom;
  return v;
}

/// M and its six partials with respect to the jets at both angles.
inline PairPartials pair_partials(const PointGeometry& y, const PointGeometry& x,
                                  const ProblemParams& pp, double tau) {
  constexpr double inv_2pi = 0.5 / std::numbers::pi;
  constexpr double inv_pi = 1.0 / std::numbers::pi;
  const detail::PairCore c = detail::core(y, x, pp, tau);
  const double beta = pp.beta;
  const double s = y.arclen;
  const double inv_dist = 1.0 / c.dist;
  const double dd_r = (y.r - x.r * c.cos_d) * inv_dist;
  const double dd_rh = (x.r - y.r * c.cos_d) * inv_dist;
  // d bracket / dD, d bracket / d kappa, d bracket / d kappa_hat
  const double b_dist = (pp.mu + y.kappa) * c.k.q_prime + (y.kappa - x.kappa) * inv_pi * c.inv_d2 * inv_dist;
  const double b_kappa = c.k.q - inv_2pi * c.inv_d2;
  const double b_kappa_hat = inv_2pi * c.inv_d2;

  PairPartials p{};
  p.m = beta * c.k.g1 * s - c.bracket * c.geom;
  p.d_r = beta * c.k.g1_prime * dd_r * s + beta * c.k.g1 * y.r / s - b_dist * dd_r * c.geom -
          b_kappa * y.dk_r * c.geom - c.bracket * (2.0 * y.r - x.r * c.cos_d);
  p.d_rh = beta * c.k.g1_prime * dd_rh * s - b_dist * dd_rh * c.geom -
           b_kappa_hat * x.dk_r * c.geom - c.bracket * (y.rp * c.sin_d - y.r * c.cos_d);
  p.d_rp = beta * c.k.g1 * y.rp / s - y.dk_rp * b_kappa * c.geom - c.bracket * x.r * c.sin_d;
  p.d_rhp = -b_kappa_hat * x.dk_rp * c.geom;
  p.d_rpp = -y.dk_rpp * b_kappa * c.geom;
  p.d_rhpp = -b_kappa_hat * x.dk_rpp * c.geom;
  return p;
}

/// Trapezoid sum over all nodes for one collocation point, left to right.
double residual_at(const NodeTable& table, const PointGeometry& x, const ProblemParams& pp,
                   const KernelConfig& kc, ResidualParts* parts = nullptr);

}  // namespace helewave::quadrature
