#include <doctest.h>

#include <cmath>
#include <vector>

#include "helewave/bifurcation.hpp"
#include "helewave/error.hpp"
#include "helewave/specfun.hpp"
#include "support.hpp"

using namespace helewave;
using namespace helewave::bifurcation;

namespace {

// Fourth-order one-sided derivative from the left.
template <class F>
double backward_diff(F&& f, double x, double h) {
  return (25 * f(x) - 48 * f(x - h) + 36 * f(x - 2 * h) - 16 * f(x - 3 * h) + 3 * f(x - 4 * h)) / (12 * h);
}

template <class F>
double second_diff(F&& f, double x, double h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

struct RootCase {
  double r_s;
  int n;
  double mu;
};

// Roots of the eigenvalue expression computed at 30 digits.
const RootCase kRoots[] = {
    {0.5, 2, 101.12496375866522}, {0.5, 3, 201.11230443573538}, {0.5, 4, 334.09013856448152},
    {0.5, 5, 500.05814419462348}, {0.5, 8, 1195.9019042326746}, {1.0, 2, 14.749625355512852},
    {1.0, 3, 28.723430348202553}, {1.0, 4, 47.179448906164717}, {1.0, 5, 70.11689419209276},
    {1.0, 8, 165.81465876407353}, {2.0, 2, 3.2447137604670587}, {2.0, 3, 5.6873708383589382},
    {2.0, 4, 8.8524789908133717}, {2.0, 5, 12.737493419834204}, {2.0, 8, 28.701856854562321},
    {5.0, 2, 1.6779527613683736}, {5.0, 3, 2.0387166978618195}, {5.0, 4, 2.5086008487991561},
    {5.0, 5, 3.0806572821943013}, {5.0, 8, 5.3757543010901817},
};

}  // namespace

TEST_CASE("flux of the radial solution") {
  CHECK(beta_of(0.0, 1.0) == doctest::Approx(0.44638996589653451).epsilon(1e-13));
  CHECK(beta_of(14.6, 1.0) == doctest::Approx(15.6 * 0.44638996589653451).epsilon(1e-13));
  CHECK(beta_of(14.6, 1.0) ==
        doctest::Approx(15.6 * specfun::bessel_i(1, 1.0) / specfun::bessel_i(0, 1.0)).epsilon(1e-15));
  CHECK(beta_of(-2.0, 0.5) == 0.0);
  const RadialSolution s = radial_solution(20.0, 1.0);
  CHECK(s.beta == beta_of(20.0, 1.0));
  CHECK(s.mu == 20.0);
  CHECK_THROWS_AS(beta_of(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(beta_of(1.0, -1.0), DomainError);
}

TEST_CASE("radial profile boundary values and Neumann condition") {
  for (double r_s : {0.5, 1.0, 2.0, 5.0}) {
    for (double mu : {1.0, 14.6}) {
      CHECK(sigma_s(r_s, mu, r_s) == doctest::Approx(mu + 1.0 / r_s).epsilon(1e-14));
      const double slope = backward_diff([&](double r) { return sigma_s(r, mu, r_s); }, r_s, 1e-3);
      CHECK(slope == doctest::Approx(beta_of(mu, r_s)).epsilon(1e-9));
    }
  }
  CHECK(sigma_s(0.0, 1.0, 1.0) == doctest::Approx(2.0 / specfun::bessel_i(0, 1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(sigma_s(1.5, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(sigma_s(-0.1, 1.0, 1.0), DomainError);
}

TEST_CASE("radial profile solves the interior equation") {
  for (double r_s : {0.5, 1.0, 2.0, 5.0}) {
    const double h = 1e-3 * r_s;
    for (int k = 0; k <= 20; ++k) {
      const double r = 0.1 * r_s + (0.9 * r_s - 2 * h) * k / 20;
      auto f = [&](double x) { return sigma_s(x, 14.6, r_s); };
      const double d1 = testing::central_diff(f, r, h);
      const double d2 = second_diff(f, r, h);
      CHECK(std::abs(-d2 - d1 / r + f(r)) < 1e-6 * std::max(1.0, std::abs(f(r))));
    }
  }
}

TEST_CASE("first-order correction profile") {
  const double beta = beta_of(14.6, 1.0);
  for (int n : {0, 2, 3, 5}) {
    CHECK(sigma_1n(1.0, n, 14.6, 1.0) == doctest::Approx((n * n - 1.0) - beta).epsilon(1e-13));
  }
  CHECK(sigma_1n(1.0, 1, 14.6, 1.0) == doctest::Approx(-beta).epsilon(1e-14));
  CHECK(sigma_1n(0.0, 3, 14.6, 1.0) == 0.0);
  CHECK(sigma_1n(0.0, 1, 14.6, 1.0) == 0.0);
  CHECK_THROWS_AS(sigma_1n(2.0, 2, 14.6, 1.0), DomainError);
  CHECK_THROWS_AS(sigma_1n(0.5, -1, 14.6, 1.0), DomainError);

  for (double r_s : {0.5, 1.0, 2.0, 5.0}) {
    for (int n : {0, 1, 2, 3, 4, 6}) {
      const double h = 1e-3 * r_s;
      for (int k = 0; k <= 20; ++k) {
        const double r = 0.1 * r_s + (0.9 * r_s - 2 * h) * k / 20;
        auto f = [&](double x) { return sigma_1n(x, n, 20.0, r_s); };
        const double d1 = testing::central_diff(f, r, h);
        const double d2 = second_diff(f, r, h);
        const double residual = -d2 - d1 / r + n * n / (r * r) * f(r) + f(r);
        CHECK(std::abs(residual) < 1e-6 * std::max(1.0, std::abs(f(r))));
      }
    }
  }
}

TEST_CASE("eigenvalue is affine and decreasing in mu") {
  for (double r_s : {0.5, 1.0, 2.0, 5.0}) {
    for (int n = 2; n <= 8; ++n) {
      const double slope = frechet_slope(n, r_s);
      CHECK(slope < 0.0);
      const double e0 = frechet_eigen(n, 0.0, r_s);
      for (double mu : {1.0, 10.0, 100.0}) {
        CHECK(frechet_eigen(n, mu, r_s) == doctest::Approx(e0 + slope * mu).epsilon(1e-11).scale(std::abs(e0)));
        CHECK(frechet_eigen(n, mu + 1.0, r_s) < frechet_eigen(n, mu, r_s));
      }
    }
  }
  const double m2 = mu_n(2, 1.0);
  CHECK(frechet_eigen(2, m2 - 1.0, 1.0) > 0.0);
  CHECK(frechet_eigen(2, m2 + 1.0, 1.0) < 0.0);
  CHECK_THROWS_AS(frechet_eigen(2, 1.0, 0.0), DomainError);
}

TEST_CASE("bifurcation points are roots of the eigenvalue") {
  for (double r_s : {0.5, 1.0, 2.0, 5.0}) {
    for (int n = 2; n <= 8; ++n) {
      const double mu = mu_n(n, r_s);
      const double scale = std::abs(frechet_slope(n, r_s)) * mu;
      CHECK(std::abs(frechet_eigen(n, mu, r_s)) <= 1e-9 * std::max(1.0, scale));
    }
  }
  for (const RootCase& c : kRoots) {
    INFO("R_S=" << c.r_s << " n=" << c.n);
    CHECK(mu_n(c.n, c.r_s) == doctest::Approx(c.mu).epsilon(1e-11));
  }
}

TEST_CASE("published bifurcation values at unit radius") {
  CHECK(std::abs(mu_n(2, 1.0) - 14.7496) <= 5e-4);
  CHECK(std::abs(mu_n(3, 1.0) - 28.7234) <= 5e-4);
  CHECK(std::abs(mu_n(4, 1.0) - 47.1794) <= 5e-4);
  CHECK(std::abs(mu_n(5, 1.0) - 70.1169) <= 5e-4);
}

TEST_CASE("bifurcation points are ordered") {
  for (double r_s : {0.5, 1.0, 2.0, 5.0}) {
    INFO("R_S=" << r_s);
    const double m0 = mu_n(0, r_s);
    CHECK(m0 > 0.0);
    CHECK(mu_n(2, r_s) > m0);
    for (int n = 2; n < 8; ++n) CHECK(mu_n(n + 1, r_s) > mu_n(n, r_s));
  }
  CHECK_THROWS_AS(mu_n(1, 1.0), DomainError);
  CHECK_THROWS_AS(mu_n(-1, 1.0), DomainError);
  CHECK_THROWS_AS(mu_n(2, 0.0), DomainError);
}
