#pragma once

// Radially symmetric steady state and the bifurcation points from which
// symmetry-breaking branches r = R_S + eps cos(n theta) + o(eps) emanate.

namespace helewave::bifurcation {

/// beta(mu, R_S) = (mu + 1/R_S) I1(R_S) / I0(R_S), the flux for which the
/// disk of radius R_S is a steady state.
double beta_of(double mu, double r_s);

/// sigma_S(r) = (mu + 1/R_S) I0(r) / I0(R_S) on 0 <= r <= R_S.
double sigma_s(double r, double mu, double r_s);

/// Radial profile of the first-order correction along cos(n theta).
double sigma_1n(double r, int n, double mu, double r_s);

/// Coefficient of cos(n theta) in the linearized flux map at the disk.
/// Affine in mu with negative slope for n >= 2.
double frechet_eigen(int n, double mu, double r_s);

/// d frechet_eigen / d mu.
double frechet_slope(int n, double r_s);

/// Root in mu of frechet_eigen. n = 0 uses the simplified closed form;
/// n = 1 is rejected (the eigenvalue vanishes identically).
double mu_n(int n, double r_s);

struct RadialSolution {
  double mu;
  double r_s;
  double beta;
};

RadialSolution radial_solution(double mu, double r_s);

struct BifurcationPoint {
  int n;
  double r_s;
  double mu_n;
};

}  // namespace helewave::bifurcation
