#include "helewave/specfun.hpp"

#include <cmath>
#include <string>

#include "helewave/error.hpp"

namespace helewave::specfun {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Positive-term power series sum_k (r/2)^{2k+n} / (k! (k+n)!). No cancellation
// occurs, so relative accuracy is a few ulps times the number of terms.
double i_series(int n, double r) {
  if (r == 0.0) return n == 0 ? 1.0 : 0.0;
  const double half = 0.5 * r;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= half / k;
  const double t = half * half;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= t / (static_cast<double>(k) * (k + n));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

struct KPair {
  double k0;
  double k1;
  // 1/r - K1(r), formed without cancellation for small r.
  double inv_minus_k1;
};

// Small-argument expansions (r <= 2):
//   K0 = -(ln(r/2) + gamma) I0 + sum_k H_k t^k / (k!)^2
//   K1 - 1/r = ln(r/2) I1 - (r/4) sum_k (H_k + H_{k+1} - 2 gamma) t^k / (k!(k+1)!)
// with t = r^2/4 and H_k the harmonic numbers.
KPair k_small(double r) {
  const double t = 0.25 * r * r;
  double term0 = 1.0;  // t^k / (k!)^2
  double term1 = 1.0;  // t^k / (k!(k+1)!)
  double i0 = 1.0, i1s = 1.0;
  double s0 = 0.0;
  double harmonic = 0.0;         // H_k
  double s1 = 1.0;               // H_0 + H_1 for k = 0
  for (int k = 1; k < 100; ++k) {
    const double kd = k;
    term0 *= t / (kd * kd);
    term1 *= t / (kd * (kd + 1.0));
    harmonic += 1.0 / kd;
    const double next = harmonic + 1.0 / (kd + 1.0);
    i0 += term0;
    i1s += term1;
    s0 += term0 * harmonic;
    s1 += term1 * (harmonic + next);
    if (term0 < 1e-18 * i0) break;
  }
  const double log_half = std::log(0.5 * r);
  const double i1 = 0.5 * r * i1s;
  KPair out{};
  out.k0 = -(log_half + kEulerGamma) * i0 + s0;
  const double k1_minus_inv = log_half * i1 - 0.25 * r * (s1 - 2.0 * kEulerGamma * i1s);
  out.inv_minus_k1 = -k1_minus_inv;
  out.k1 = 1.0 / r + k1_minus_inv;
  return out;
}

// e^r K_nu(r) = int_0^inf exp(-r (cosh s - 1)) cosh(nu s) ds by the trapezoid
// rule. The integrand is analytic in |Im s| < pi/2 and decays doubly
// exponentially, so the error is below 1e-16 once the step resolves the
// Gaussian core of width 1/sqrt(r).
KPair k_large(double r) {
  const double h = std::min(0.25, 0.6 / std::sqrt(r));
  double e0 = 0.5, e1 = 0.5;
  for (int k = 1; k < 2000; ++k) {
    const double s = k * h;
    const double arg = r * (std::cosh(s) - 1.0);
    if (arg > 45.0) break;
    const double f = std::exp(-arg);
    e0 += f;
    e1 += f * std::cosh(s);
  }
  const double scale = h * std::exp(-r);
  KPair out{};
  out.k0 = e0 * scale;
  out.k1 = e1 * scale;
  out.inv_minus_k1 = 1.0 / r - out.k1;
  return out;
}

KPair k_pair(double r) { return r <= 2.0 ? k_small(r) : k_large(r); }

void require_positive(double r, const char* fn) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw DomainError(std::string(fn) + ": argument must be finite and > 0, got " + std::to_string(r));
  }
}

}  // namespace

double bessel_i(int order, double r) {
  if (order < 0 || order > kMaxOrder) {
    throw DomainError("bessel_i: order " + std::to_string(order) + " outside [0, 64]");
  }
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw DomainError("bessel_i: argument must be finite and >= 0");
  }
  return i_series(order, r);
}

double bessel_i_prime(int order, double r) {
  if (order < 0 || order > kMaxOrder) {
    throw DomainError("bessel_i_prime: order " + std::to_string(order) + " outside [0, 64]");
  }
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw DomainError("bessel_i_prime: argument must be finite and >= 0");
  }
  if (order == 0) return i_series(1, r);
  if (r == 0.0) return order == 1 ? 0.5 : 0.0;
  return i_series(order + 1, r) + (order / r) * i_series(order, r);
}

double bessel_k(int order, double r) {
  if (order != 0 && order != 1) {
    throw DomainError("bessel_k: only orders 0 and 1 are supported");
  }
  require_positive(r, "bessel_k");
  const KPair k = k_pair(r);
  return order == 0 ? k.k0 : k.k1;
}

double green_g1(double r) {
  require_positive(r, "green_g1");
  return k_pair(r).k0 / kTwoPi;
}

double green_g1_prime(double r) {
  require_positive(r, "green_g1_prime");
  return -k_pair(r).k1 / kTwoPi;
}

double q_kernel(double r) {
  require_positive(r, "q_kernel");
  return k_pair(r).inv_minus_k1 / (kTwoPi * r);
}

double q_kernel_prime(double r) {
  require_positive(r, "q_kernel_prime");
  const KPair k = k_pair(r);
  return (r * k.k0 - 2.0 * k.inv_minus_k1) / (kTwoPi * r * r);
}

KernelValues kernels(double r) {
  const KPair k = k_pair(r);
  const double inv_2pi = 1.0 / kTwoPi;
  KernelValues out{};
  out.g1 = k.k0 * inv_2pi;
  out.g1_prime = -k.k1 * inv_2pi;
  out.q = k.inv_minus_k1 * inv_2pi / r;
  out.q_prime = (r * k.k0 - 2.0 * k.inv_minus_k1) * inv_2pi / (r * r);
  return out;
}

}  // namespace helewave::specfun
