#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helewave/error.hpp"
#include "helewave/specfun.hpp"
#include "support.hpp"

using namespace helewave;
using namespace helewave::specfun;
using testing::rel_err;

namespace {

constexpr double kPi = std::numbers::pi;

// I_n(r) = (1/pi) int_0^pi exp(r cos t) cos(n t) dt; trapezoid is spectrally
// accurate for this periodic integrand.
double i_integral(int n, double r) {
  const int m = 4000;
  double s = 0.0;
  for (int j = 0; j <= m; ++j) {
    const double t = kPi * j / m;
    const double w = (j == 0 || j == m) ? 0.5 : 1.0;
    s += w * std::exp(r * std::cos(t)) * std::cos(n * t);
  }
  return s / m;
}

// sum (r/2)^{2k} / (k!)^2 until terms stop contributing
double i0_series(double r) {
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= (r / 2) * (r / 2) / (k * k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

struct KRef {
  double r, k0, k1;
};
const KRef kRef[] = {
    {1e-6, 13.931442073626419413, 999999.99999278427896},
    {0.01, 4.7212447301610949651, 99.973894118296247643},
    {0.5, 0.92441907122766586178, 1.6564411200033008937},
    {1, 0.42102443824070833334, 0.60190723019723457474},
    {2, 0.11389387274953343565, 0.13986588181652242728},
    {2.5, 0.062347553200366186029, 0.073890816347747063649},
    {5, 0.0036910983340425942747, 0.0040446134454521642084},
    {10, 0.000017780062316167651811, 0.000018648773453825584597},
    {20, 5.7412378153365242927e-10, 5.8830579695570381777e-10},
    {50, 3.4101677497894955139e-23, 3.4441022267175556126e-23},
};

struct IRef {
  int n;
  double r, value;
};
const IRef iRef[] = {
    {0, 1, 1.2660658777520083356},   {1, 1, 0.56515910399248502721},
    {2, 0.5, 0.031906149177738253813}, {3, 2.5, 0.47437040877803558955},
    {5, 10, 777.18828640325995991},   {8, 30, 265912658948.3550905},
    {20, 5, 5.0242393579718059921e-11}, {64, 50, 19178.749159103360068},
    {0, 50, 2.9325537838493363267e+20}, {1, 50, 2.9030785901035567968e+20},
    {10, 0.01, 2.6911505717111420082e-30},
};

}  // namespace

TEST_CASE("bessel_i special values") {
  CHECK(bessel_i(0, 0.0) == 1.0);
  CHECK(bessel_i(1, 0.0) == 0.0);
  CHECK(bessel_i(7, 0.0) == 0.0);
  CHECK(rel_err(bessel_i(0, 1.0), 1.26606587775200833) < 1e-14);
  CHECK(rel_err(bessel_i(0, 1.0), i0_series(1.0)) < 1e-14);
}

TEST_CASE("bessel_i matches high-precision reference values") {
  for (const auto& ref : iRef) {
    CAPTURE(ref.n);
    CAPTURE(ref.r);
    CHECK(rel_err(bessel_i(ref.n, ref.r), ref.value) < 1e-12);
  }
}

TEST_CASE("bessel_i matches the integral representation") {
  for (int n = 0; n <= 10; ++n) {
    for (double r : {0.05, 0.5, 1.0, 3.0, 8.0, 15.0, 30.0}) {
      CAPTURE(n);
      CAPTURE(r);
      const double want = i_integral(n, r);
      // the quadrature loses digits once I_n is small against exp(r)
      if (want < 1e-3 * std::exp(r)) continue;
      CHECK(rel_err(bessel_i(n, r), want) < 1e-11);
    }
  }
}

TEST_CASE("bessel_i domain errors") {
  CHECK_THROWS_AS(bessel_i(0, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_i(-1, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_i(kMaxOrder + 1, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_i(0, std::nan("")), DomainError);
  CHECK_NOTHROW(bessel_i(kMaxOrder, 1.0));
}

TEST_CASE("bessel_i_prime") {
  for (double r : {0.5, 1.0, 2.0}) CHECK(bessel_i_prime(0, r) == bessel_i(1, r));
  CHECK(rel_err(bessel_i_prime(1, 1.0), bessel_i(2, 1.0) + bessel_i(1, 1.0)) < 1e-15);
  const double fd = testing::central_diff([](double x) { return bessel_i(3, x); }, 2.5, 1e-3);
  CHECK(rel_err(bessel_i_prime(3, 2.5), fd) < 1e-8);
  CHECK(bessel_i_prime(0, 0.0) == 0.0);
  CHECK(bessel_i_prime(1, 0.0) == 0.5);
  CHECK(bessel_i_prime(2, 0.0) == 0.0);
  CHECK_THROWS_AS(bessel_i_prime(1, -0.1), DomainError);
  // I0' = I1 across the range
  for (double r = 0.01; r < 30.0; r *= 1.3) {
    const double fd0 = testing::central_diff([](double x) { return bessel_i(0, x); }, r, 1e-3);
    CHECK(rel_err(bessel_i(1, r), fd0) < 1e-9);
  }
}

TEST_CASE("bessel_k matches high-precision reference values") {
  for (const auto& ref : kRef) {
    CAPTURE(ref.r);
    CHECK(rel_err(bessel_k(0, ref.r), ref.k0) < 1e-12);
    CHECK(rel_err(bessel_k(1, ref.r), ref.k1) < 1e-12);
  }
}

TEST_CASE("bessel_k integral representation at r = 1") {
  // K1(1) = int_0^inf exp(-cosh t) cosh t dt, truncated where the integrand is negligible
  const int m = 20000;
  const double upper = 6.0;
  double s = 0.0;
  for (int j = 0; j <= m; ++j) {
    const double t = upper * j / m;
    const double w = (j == 0 || j == m) ? 0.5 : 1.0;
    s += w * std::exp(-std::cosh(t)) * std::cosh(t);
  }
  s *= upper / m;
  CHECK(rel_err(bessel_k(1, 1.0), s) < 1e-10);
}

TEST_CASE("bessel_k small-argument behaviour and errors") {
  for (double r : {1e-6, 1e-8, 1e-10}) {
    CHECK(std::abs(bessel_k(0, r) + std::log(r / 2) + kEulerGamma) < 1e-9);
  }
  CHECK_THROWS_AS(bessel_k(0, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_k(1, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_k(2, 1.0), DomainError);
}

TEST_CASE("Wronskian I0 K1 + I1 K0 = 1/r") {
  for (double r : {0.1, 1.0, 10.0}) {
    CHECK(std::abs(bessel_i(0, r) * bessel_k(1, r) + bessel_i(1, r) * bessel_k(0, r) - 1.0 / r) < 1e-10);
  }
  const int n = 200;
  for (int j = 0; j < n; ++j) {
    const double r = 0.05 * std::pow(30.0 / 0.05, j / (n - 1.0));
    const double w = bessel_i(0, r) * bessel_k(1, r) + bessel_i(1, r) * bessel_k(0, r);
    CHECK(std::abs(w - 1.0 / r) < 1e-10);
    CHECK(std::abs(w * r - 1.0) < 1e-12);
  }
}

TEST_CASE("ratio inequalities of I_n'/I_n") {
  auto ratio = [](int n, double r) { return bessel_i_prime(n, r) / bessel_i(n, r); };
  for (double r : {0.25, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    for (int n = 0; n <= 8; ++n) {
      CAPTURE(n);
      CAPTURE(r);
      CHECK(ratio(n + 1, r) > ratio(n, r));
    }
    for (int n = 2; n <= 8; ++n) {
      const double lhs = (ratio(n, r) - ratio(1, r)) / (n * n - 1.0);
      const double rhs = (ratio(n + 1, r) - ratio(1, r)) / ((n + 1.0) * (n + 1.0) - 1.0);
      CHECK(lhs > rhs);
    }
  }
}

TEST_CASE("green_g1") {
  CHECK(green_g1(1.0) == doctest::Approx(bessel_k(0, 1.0) / (2 * kPi)).epsilon(1e-15));
  for (double r : {1e-5, 1e-7}) {
    CHECK(std::abs(green_g1(r) + std::log(r) / (2 * kPi) - (std::log(2.0) - kEulerGamma) / (2 * kPi)) < 1e-8);
  }
  double prev = green_g1(0.1);
  for (double r = 0.15; r <= 5.0; r += 0.05) {
    const double g = green_g1(r);
    CHECK(g < prev);
    prev = g;
  }
  CHECK_THROWS_AS(green_g1(0.0), DomainError);
}

TEST_CASE("green_g1 agrees with its logarithmic series form") {
  // K0(r) = -(ln(r/2) + gamma) I0(r) + sum_k (r^2/4)^k / (k!)^2 H_k
  for (double r : {0.05, 0.3, 1.0, 1.8}) {
    double term = 1.0, harmonic = 0.0, tail = 0.0;
    for (int k = 1; k < 60; ++k) {
      term *= r * r / 4 / (k * k);
      harmonic += 1.0 / k;
      tail += term * harmonic;
    }
    const double k0 = -(std::log(r / 2) + kEulerGamma) * i0_series(r) + tail;
    CHECK(rel_err(green_g1(r), k0 / (2 * kPi)) < 1e-13);
  }
}

TEST_CASE("green_g1_prime") {
  const double fd = testing::central_diff(green_g1, 0.7, 1e-3);
  CHECK(std::abs(green_g1_prime(0.7) - fd) < 1e-8);
  CHECK(std::abs(1e-7 * green_g1_prime(1e-7) + 1 / (2 * kPi)) < 1e-10);
  CHECK(green_g1_prime(2.0) < 0.0);
  CHECK_THROWS_AS(green_g1_prime(-1.0), DomainError);
}

TEST_CASE("q_kernel") {
  for (double r : {0.01, 1.0, 3.0}) {
    CHECK(std::abs(q_kernel(r) * r - green_g1_prime(r) - 1 / (2 * kPi * r)) < 1e-14 * (1 + 1 / (2 * kPi * r)));
  }
  const double ratio = (q_kernel(1e-4) / std::log(1e-4)) / (q_kernel(1e-6) / std::log(1e-6));
  CHECK(ratio > 0.5);
  CHECK(ratio < 2.0);
  CHECK(std::isfinite(q_kernel(1.0)));
  CHECK(std::abs(q_kernel(1.0)) < 1.0);
  // no cancellation loss at tiny r: compare with the leading asymptotic form
  const double r = 1e-8;
  const double lead = -(std::log(r / 2) + kEulerGamma - 0.5) / (4 * kPi);
  CHECK(rel_err(q_kernel(r), lead) < 1e-6);
  CHECK_THROWS_AS(q_kernel(0.0), DomainError);
}

TEST_CASE("q_kernel_prime") {
  for (double r : {0.5, 1.0, 2.0}) {
    const double fd = testing::central_diff(q_kernel, r, 1e-3);
    CHECK(rel_err(q_kernel_prime(r), fd) < 1e-7);
  }
  double lo = 1e300, hi = 0.0;
  for (double r = 1e-5; r <= 1e-2; r *= 2) {
    const double v = std::abs(r * q_kernel_prime(r));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(hi / lo < 10.0);
  CHECK(q_kernel_prime(1e-3) < 0.0);
  CHECK_THROWS_AS(q_kernel_prime(0.0), DomainError);
}

TEST_CASE("kernel derivatives agree with finite differences at random points") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int k = 0; k < 50; ++k) {
    const double r = u(rng);
    const double h = 1e-6;
    const double fd_g = (green_g1(r + h) - green_g1(r - h)) / (2 * h);
    const double fd_q = (q_kernel(r + h) - q_kernel(r - h)) / (2 * h);
    CHECK(rel_err(green_g1_prime(r), fd_g) < 1e-6);
    CHECK(rel_err(q_kernel_prime(r), fd_q) < 1e-6);
  }
}

TEST_CASE("kernels() bundles the individual kernels") {
  for (double r : {1e-3, 0.5, 2.0, 2.0000001, 7.0, 40.0}) {
    const auto k = kernels(r);
    CHECK(k.g1 == doctest::Approx(green_g1(r)).epsilon(1e-15));
    CHECK(k.g1_prime == doctest::Approx(green_g1_prime(r)).epsilon(1e-15));
    CHECK(k.q == doctest::Approx(q_kernel(r)).epsilon(1e-15));
    CHECK(k.q_prime == doctest::Approx(q_kernel_prime(r)).epsilon(1e-15));
  }
}
