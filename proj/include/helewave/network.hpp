#pragma once

// Single-hidden-layer boundary ansatz
//   rho(theta) = sum_i a_i Psi(b_i theta + c_i) + d
// with its theta-derivatives and parameter gradients.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "helewave/curve.hpp"

namespace helewave {

class Activation {
 public:
  enum class Kind { cosine, sigmoid, finger };

  static constexpr double kDefaultFingerP = 0.3;

  static Activation cosine() { return Activation(Kind::cosine, 0.0); }
  static Activation sigmoid() { return Activation(Kind::sigmoid, 0.0); }
  /// Psi(x) = p / (cos^2 x + p^2 sin^2 x); period pi, values in [p, 1/p].
  static Activation finger(double p = kDefaultFingerP);

  /// Accepts "cosine", "sigmoid", "finger" or "finger:<p>".
  static Activation parse(const std::string& text);
  std::string name() const;

  Kind kind() const noexcept { return kind_; }
  double p() const noexcept { return p_; }

  /// Psi and its first four derivatives at x.
  std::array<double, 5> derivatives(double x) const;

  friend bool operator==(const Activation&, const Activation&) = default;

 private:
  Activation(Kind kind, double p) : kind_(kind), p_(p) {}
  Kind kind_;
  double p_;
};

/// Flattened as (a_1..a_N, b_1..b_N, c_1..c_N, d), length 3N + 1.
struct NetworkParams {
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;
  double d = 0.0;

  NetworkParams() = default;
  explicit NetworkParams(std::size_t width) : a(width), b(width), c(width) {}

  std::size_t width() const noexcept { return a.size(); }
  std::size_t size() const noexcept { return 3 * a.size() + 1; }

  std::size_t index_a(std::size_t i) const noexcept { return i; }
  std::size_t index_b(std::size_t i) const noexcept { return width() + i; }
  std::size_t index_c(std::size_t i) const noexcept { return 2 * width() + i; }
  std::size_t index_d() const noexcept { return 3 * width(); }

  std::vector<double> flatten() const;
  static NetworkParams from_flat(std::span<const double> flat);

  bool all_finite() const;
  /// Throws DomainError on width mismatch or non-finite entries.
  void validate() const;

  friend bool operator==(const NetworkParams&, const NetworkParams&) = default;
};

using JetAtTheta = CurveJet;

JetAtTheta eval_jet(const NetworkParams& params, const Activation& act, double theta);

/// Gradients with respect to the flattened parameters of rho, rho', rho''.
struct ParamGradientJet {
  std::vector<double> rho;
  std::vector<double> rho_p;
  std::vector<double> rho_pp;
};

/// Entries of the gradient rows belonging to one hidden unit, in the order
/// (a_i, b_i, c_i). psi holds Psi..Psi'''' at b_i theta + c_i.
struct UnitGradient {
  std::array<double, 3> rho;
  std::array<double, 3> rho_p;
  std::array<double, 3> rho_pp;
};

inline UnitGradient unit_gradient(double a, double b, double theta,
                                  const std::array<double, 5>& psi) {
  return {
      {psi[0], a * theta * psi[1], a * psi[1]},
      {b * psi[1], a * psi[1] + a * b * theta * psi[2], a * b * psi[2]},
      {b * b * psi[2], 2.0 * a * b * psi[2] + a * b * b * theta * psi[3], a * b * b * psi[3]},
  };
}

ParamGradientJet param_gradient_jet(const NetworkParams& params, const Activation& act, double theta);

/// Writes the three gradient rows into caller storage of length params.size().
void param_gradient_jet_into(const NetworkParams& params, const Activation& act, double theta,
                             std::span<double> rho, std::span<double> rho_p,
                             std::span<double> rho_pp);

/// (rho(0) - rho(2pi), rho'(0) - rho'(2pi), rho''(0) - rho''(2pi)).
std::array<double, 3> periodic_defect(const NetworkParams& params, const Activation& act);

/// Gradient of each periodic defect component.
std::array<std::vector<double>, 3> periodic_defect_gradient(const NetworkParams& params,
                                                            const Activation& act);

/// Curve view over a parameter set (copies the parameters).
class NetworkCurve final : public CurveEvaluator {
 public:
  NetworkCurve(NetworkParams params, Activation act) : params_(std::move(params)), act_(act) {}
  CurveJet eval(double theta) const override { return eval_jet(params_, act_, theta); }

  const NetworkParams& params() const noexcept { return params_; }
  const Activation& activation() const noexcept { return act_; }

 private:
  NetworkParams params_;
  Activation act_;
};

/// Checkpoint record {N, activation, a[], b[], c[], d} as JSON text.
/// Doubles are written in shortest round-trip form, so reading back is
/// bit-exact.
std::string checkpoint_to_json(const NetworkParams& params, const Activation& act);
void checkpoint_from_json(const std::string& text, NetworkParams& params, Activation& act);

void save_checkpoint(const std::string& path, const NetworkParams& params, const Activation& act);
void load_checkpoint(const std::string& path, NetworkParams& params, Activation& act);

}  // namespace helewave
