#pragma once

// Modified Bessel functions of integer order and the Green-function kernels
// of the operator -Laplace + 1 in the plane.
//
// All functions are pure and thread-safe. Accuracy contract: I_n relative
// error <= 1e-12 on [0, 50] for n <= 64; K_0, K_1 relative error <= 1e-12 on
// [1e-6, 50].

#include <numbers>

namespace helewave::specfun {

inline constexpr int kMaxOrder = 64;
inline constexpr double kEulerGamma = std::numbers::egamma;

double bessel_i(int order, double r);
double bessel_i_prime(int order, double r);
double bessel_k(int order, double r);

/// G1(r) = (i/4) H0^(1)(i r) = K0(r) / (2 pi).
double green_g1(double r);
/// G1'(r) = -K1(r) / (2 pi).
double green_g1_prime(double r);
/// Q(r) = (G1'(r) + 1/(2 pi r)) / r; only logarithmically singular at 0.
double q_kernel(double r);
double q_kernel_prime(double r);

/// All four kernels at one argument, sharing a single Bessel evaluation.
/// This is what the quadrature loops call.
struct KernelValues {
  double g1;
  double g1_prime;
  double q;
  double q_prime;
};
KernelValues kernels(double r);

}  // namespace helewave::specfun
