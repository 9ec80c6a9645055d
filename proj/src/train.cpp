#include "helewave/train.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "helewave/error.hpp"
#include "helewave/quadrature.hpp"

namespace helewave {

StepSchedule StepSchedule::constant(double alpha0) {
  if (!(alpha0 >= 0.0)) throw DomainError("step size must be >= 0");
  return StepSchedule(Kind::constant, alpha0, 1.0, 0.0);
}

StepSchedule StepSchedule::harmonic(double alpha0) {
  if (!(alpha0 >= 0.0)) throw DomainError("step size must be >= 0");
  return StepSchedule(Kind::harmonic, alpha0, 1.0, 0.0);
}

StepSchedule StepSchedule::geometric(double alpha0, double factor, double floor) {
  if (!(alpha0 >= 0.0) || !(factor > 0.0) || !(floor >= 0.0)) {
    throw DomainError("geometric schedule needs alpha0 >= 0, factor > 0, floor >= 0");
  }
  return StepSchedule(Kind::geometric, alpha0, factor, floor);
}

StepSchedule StepSchedule::geometric_to_floor(double alpha0, double floor, int epochs) {
  if (epochs < 2) return geometric(alpha0, 1.0, floor);
  return geometric(alpha0, std::pow(floor / alpha0, 1.0 / (epochs - 1)), floor);
}

double StepSchedule::alpha(long step, int epoch) const {
  switch (kind_) {
    case Kind::constant:
      return alpha0_;
    case Kind::harmonic:
      return alpha0_ / static_cast<double>(step < 1 ? 1 : step);
    case Kind::geometric:
      return std::max(alpha0_ * std::pow(factor_, epoch), floor_);
  }
  return alpha0_;
}

void TrainConfig::validate() const {
  if (m < 1) throw DomainError("m must be >= 1");
  if (batches < 1 || m % batches != 0) throw DomainError("batches must divide m");
  if (epochs < 1) throw DomainError("epochs must be >= 1");
  if (init.width < 1) throw DomainError("network width must be >= 1");
  if (guard_retries < 0) throw DomainError("guard_retries must be >= 0");
  if (full_grid < 1) throw DomainError("full_grid must be >= 1");
  if (checkpoint_every < 0) throw DomainError("checkpoint_every must be >= 0");
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double draw(const InitDist& dist, std::mt19937_64& rng) {
  switch (dist.kind) {
    case InitDist::Kind::constant:
      return dist.p1;
    case InitDist::Kind::normal:
      return std::normal_distribution<double>(dist.p1, dist.p2)(rng);
    case InitDist::Kind::uniform:
      return std::uniform_real_distribution<double>(dist.p1, dist.p2)(rng);
  }
  return dist.p1;
}

}  // namespace

NetworkParams init_params(const InitSpec& spec, std::uint64_t seed) {
  if (spec.width < 1) throw DomainError("network width must be >= 1");
  std::mt19937_64 rng(mix64(seed));
  NetworkParams p(static_cast<std::size_t>(spec.width));
  for (auto& v : p.a) v = draw(spec.a, rng);
  for (auto& v : p.b) v = draw(spec.b, rng);
  for (auto& v : p.c) v = draw(spec.c, rng);
  p.d = draw(spec.d, rng);
  return p;
}

std::vector<double> sample_collocation(int m, std::uint64_t seed, int epoch) {
  if (m < 1) throw DomainError("sample_collocation: m must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(m));
  const std::uint64_t key = mix64(mix64(seed) ^ (0xd1b54a32d192ed03ULL * static_cast<std::uint64_t>(epoch + 1)));
  for (int i = 0; i < m; ++i) {
    const std::uint64_t bits = mix64(key ^ mix64(static_cast<std::uint64_t>(i)));
    const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
    double t = kTwoPi * u;
    if (t >= kTwoPi) t = 0.0;
    out[i] = t;
  }
  return out;
}

std::vector<double> full_grid(int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) out[j] = kTwoPi * (j + 0.5) / count;
  return out;
}

bool admissible(const NetworkParams& params, const Activation& act, const KernelConfig& kc) {
  if (!params.all_finite()) return false;
  try {
    quadrature::build_nodes(NetworkCurve(params, act), kc);
  } catch (const DegenerateCurveError&) {
    return false;
  }
  return true;
}

SgdStepResult sgd_step(const NetworkParams& params, const Activation& act,
                       std::span<const double> batch, const ProblemParams& pp,
                       const KernelConfig& kc, double alpha, int guard_retries) {
  if (!(alpha >= 0.0)) throw DomainError("sgd_step: alpha must be >= 0");
  const LossGradient lg = grad_loss(params, act, batch, pp, kc);

  SgdStepResult out;
  out.record.batch_loss = lg.loss;
  out.record.grad_norm = l2_norm(lg.grad);

  const std::vector<double> flat = params.flatten();
  double step = alpha;
  for (int attempt = 0; attempt <= guard_retries; ++attempt) {
    std::vector<double> cand(flat.size());
    for (std::size_t k = 0; k < flat.size(); ++k) cand[k] = flat[k] - step * lg.grad[k];
    NetworkParams next = NetworkParams::from_flat(cand);
    if (admissible(next, act, kc)) {
      out.params = std::move(next);
      out.record.alpha = step;
      out.record.rejected = attempt;
      return out;
    }
    step *= 0.5;
  }
  throw UnrecoverableDegeneracy("sgd_step: no admissible step after " +
                                std::to_string(guard_retries) + " halvings");
}

TrainingTrace train(const TrainConfig& config, const Activation& act, const ProblemParams& pp,
                    const KernelConfig& kc, const StepObserver& observer) {
  config.validate();
  return train_from(init_params(config.init, config.seed), config, act, pp, kc, observer);
}

TrainingTrace train_from(const NetworkParams& start, const TrainConfig& config,
                         const Activation& act, const ProblemParams& pp, const KernelConfig& kc,
                         const StepObserver& observer) {
  config.validate();
  pp.validate();
  kc.validate();
  start.validate();
  if (!admissible(start, act, kc)) {
    throw UnrecoverableDegeneracy("initial curve is degenerate");
  }

  const std::vector<double> grid = full_grid(config.full_grid);
  TrainingTrace trace;
  trace.initial = start;
  trace.steps.reserve(static_cast<std::size_t>(config.epochs) * config.batches);
  trace.epoch_losses.push_back(loss_value(start, act, grid, pp, kc));

  NetworkParams params = start;
  const int batch_size = config.m / config.batches;
  long step = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const std::vector<double> points = sample_collocation(config.m, config.seed, epoch);
    for (int b = 0; b < config.batches; ++b) {
      ++step;
      const std::span<const double> batch(points.data() + static_cast<std::size_t>(b) * batch_size,
                                          static_cast<std::size_t>(batch_size));
      SgdStepResult res;
      try {
        res = sgd_step(params, act, batch, pp, kc, config.schedule.alpha(step, epoch),
                       config.guard_retries);
      } catch (const DegenerateCurveError& e) {
        throw UnrecoverableDegeneracy(std::string("accepted iterate became degenerate: ") + e.what());
      }
      res.record.step = step;
      res.record.epoch = epoch;
      params = std::move(res.params);
      trace.steps.push_back(res.record);
      if (observer) observer(res.record);
    }
    trace.epoch_losses.push_back(loss_value(params, act, grid, pp, kc));
    if (config.checkpoint_every > 0 && (epoch + 1) % config.checkpoint_every == 0) {
      trace.checkpoints.push_back({epoch + 1, params});
    }
  }
  if (trace.checkpoints.empty() || trace.checkpoints.back().epoch != config.epochs) {
    trace.checkpoints.push_back({config.epochs, params});
  }
  trace.final_params = std::move(params);
  return trace;
}

}  // namespace helewave
