#pragma once

// Minibatch stochastic gradient descent on the collocation loss.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "helewave/gradients.hpp"
#include "helewave/integral_op.hpp"
#include "helewave/network.hpp"

namespace helewave {

class StepSchedule {
 public:
  enum class Kind { constant, harmonic, geometric };

  static StepSchedule constant(double alpha0);
  /// alpha_k = alpha0 / k: sum alpha_k diverges, sum alpha_k^2 converges.
  static StepSchedule harmonic(double alpha0);
  /// alpha = max(alpha0 * factor^epoch, floor).
  static StepSchedule geometric(double alpha0, double factor, double floor);
  /// Geometric decay reaching `floor` exactly at the last epoch.
  static StepSchedule geometric_to_floor(double alpha0, double floor, int epochs);

  /// Step size for the 1-based global step k taken during the 0-based epoch.
  double alpha(long step, int epoch) const;

  Kind kind() const noexcept { return kind_; }
  double alpha0() const noexcept { return alpha0_; }
  double factor() const noexcept { return factor_; }
  double floor() const noexcept { return floor_; }

  friend bool operator==(const StepSchedule&, const StepSchedule&) = default;

 private:
  StepSchedule(Kind kind, double alpha0, double factor, double floor)
      : kind_(kind), alpha0_(alpha0), factor_(factor), floor_(floor) {}
  Kind kind_;
  double alpha0_;
  double factor_;
  double floor_;
};

/// One scalar initial distribution.
struct InitDist {
  enum class Kind { constant, normal, uniform };
  Kind kind = Kind::constant;
  double p1 = 0.0;  ///< constant value, normal mean, or uniform lower bound
  double p2 = 0.0;  ///< normal standard deviation or uniform upper bound

  static InitDist constant(double v) { return {Kind::constant, v, 0.0}; }
  static InitDist normal(double mean, double stddev) { return {Kind::normal, mean, stddev}; }
  static InitDist uniform(double lo, double hi) { return {Kind::uniform, lo, hi}; }

  friend bool operator==(const InitDist&, const InitDist&) = default;
};

struct InitSpec {
  int width = 20;
  InitDist a = InitDist::normal(0.0, 1.0);
  InitDist b = InitDist::constant(2.0);
  InitDist c = InitDist::constant(0.0);
  InitDist d = InitDist::constant(1.0);

  friend bool operator==(const InitSpec&, const InitSpec&) = default;
};

/// Draws initial parameters; fully determined by (spec, seed).
NetworkParams init_params(const InitSpec& spec, std::uint64_t seed);

struct TrainConfig {
  int m = 4000;        ///< collocation points per epoch
  int batches = 20;    ///< minibatches per epoch; must divide m
  int epochs = 50;
  StepSchedule schedule = StepSchedule::constant(1e-4);
  std::uint64_t seed = 1;
  InitSpec init;
  int guard_retries = 8;
  int full_grid = 64;         ///< uniform collocation points for the per-epoch loss
  int checkpoint_every = 0;   ///< epochs between stored checkpoints; 0 = final only

  void validate() const;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

/// m i.i.d. uniform angles in [0, 2 pi). Counter-based: value i depends only
/// on (seed, epoch, i).
std::vector<double> sample_collocation(int m, std::uint64_t seed, int epoch = 0);

struct StepRecord {
  long step = 0;
  int epoch = 0;
  double batch_loss = 0.0;
  double grad_norm = 0.0;
  double alpha = 0.0;   ///< step size actually applied
  int rejected = 0;     ///< halvings needed to keep the curve admissible
};

struct SgdStepResult {
  NetworkParams params;
  StepRecord record;
};

/// params - alpha * grad F(params; batch). If the candidate curve is
/// degenerate, alpha is halved up to `guard_retries` times.
SgdStepResult sgd_step(const NetworkParams& params, const Activation& act,
                       std::span<const double> batch, const ProblemParams& pp,
                       const KernelConfig& kc, double alpha, int guard_retries = 8);

/// True if the curve is finite and admissible at every quadrature node.
bool admissible(const NetworkParams& params, const Activation& act, const KernelConfig& kc);

struct Checkpoint {
  int epoch;
  NetworkParams params;
};

struct TrainingTrace {
  std::vector<StepRecord> steps;
  /// Loss on the uniform full grid: entry 0 is the initial loss, entry e + 1
  /// follows epoch e.
  std::vector<double> epoch_losses;
  std::vector<Checkpoint> checkpoints;
  NetworkParams initial;
  NetworkParams final_params;
};

/// Midpoint grid 2 pi (j + 1/2) / count.
std::vector<double> full_grid(int count);

using StepObserver = std::function<void(const StepRecord&)>;

TrainingTrace train(const TrainConfig& config, const Activation& act, const ProblemParams& pp,
                    const KernelConfig& kc, const StepObserver& observer = {});

/// Same as above but starting from the given parameters instead of init.
TrainingTrace train_from(const NetworkParams& start, const TrainConfig& config,
                         const Activation& act, const ProblemParams& pp, const KernelConfig& kc,
                         const StepObserver& observer = {});

}  // namespace helewave
