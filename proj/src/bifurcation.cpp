#include "helewave/bifurcation.hpp"

#include <cmath>
#include <string>

#include "helewave/error.hpp"
#include "helewave/specfun.hpp"

namespace helewave::bifurcation {
namespace {

void require_radius(double r_s) {
  if (!(r_s > 0.0) || !std::isfinite(r_s)) throw DomainError("R_S must be finite and > 0");
}

void require_in_disk(double r, double r_s) {
  if (!(r >= 0.0) || !(r <= r_s)) {
    throw DomainError("r = " + std::to_string(r) + " outside [0, R_S]");
  }
}

// I_n'(r) / I_n(r)
double log_derivative(int n, double r) {
  return specfun::bessel_i_prime(n, r) / specfun::bessel_i(n, r);
}

}  // namespace

double beta_of(double mu, double r_s) {
  require_radius(r_s);
  return (mu + 1.0 / r_s) * specfun::bessel_i(1, r_s) / specfun::bessel_i(0, r_s);
}

RadialSolution radial_solution(double mu, double r_s) { return {mu, r_s, beta_of(mu, r_s)}; }

double sigma_s(double r, double mu, double r_s) {
  require_radius(r_s);
  require_in_disk(r, r_s);
  return (mu + 1.0 / r_s) * specfun::bessel_i(0, r) / specfun::bessel_i(0, r_s);
}

double sigma_1n(double r, int n, double mu, double r_s) {
  require_radius(r_s);
  require_in_disk(r, r_s);
  if (n < 0) throw DomainError("sigma_1n: n must be >= 0");
  const double boundary = (n * n - 1.0) / (r_s * r_s) - beta_of(mu, r_s);
  return boundary * specfun::bessel_i(n, r) / specfun::bessel_i(n, r_s);
}

double frechet_slope(int n, double r_s) {
  require_radius(r_s);
  if (n < 0) throw DomainError("frechet_slope: n must be >= 0");
  const double ratio = specfun::bessel_i(1, r_s) / specfun::bessel_i(0, r_s);
  return -ratio * (log_derivative(n, r_s) - log_derivative(1, r_s));
}

double frechet_eigen(int n, double mu, double r_s) {
  require_radius(r_s);
  if (n < 0) throw DomainError("frechet_eigen: n must be >= 0");
  const double ratio = specfun::bessel_i(1, r_s) / specfun::bessel_i(0, r_s);
  const double ln = log_derivative(n, r_s);
  const double gap = ln - log_derivative(1, r_s);
  return -mu * ratio * gap + (n * n - 1.0) / (r_s * r_s) * ln - ratio / r_s * gap;
}

double mu_n(int n, double r_s) {
  require_radius(r_s);
  if (n == 1) throw DomainError("mu_n: undefined for n = 1");
  if (n < 0) throw DomainError("mu_n: n must be >= 0");
  const double i0 = specfun::bessel_i(0, r_s);
  const double i1 = specfun::bessel_i(1, r_s);
  if (n == 0) {
    const double i2 = specfun::bessel_i(2, r_s);
    return (-1.0 + 1.0 / (r_s * i2 / i1 - r_s * i1 / i0 + 1.0)) / r_s;
  }
  const double ln = log_derivative(n, r_s);
  const double gap = ln - log_derivative(1, r_s);
  return -1.0 / r_s + i0 / (r_s * r_s * i1) * ln / (gap / (n * n - 1.0));
}

}  // namespace helewave::bifurcation
