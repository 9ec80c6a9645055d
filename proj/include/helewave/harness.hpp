#pragma once

// Experiment configuration, Fourier diagnostics and the run pipeline that
// writes CSV/JSON artifacts.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "helewave/curve.hpp"
#include "helewave/integral_op.hpp"
#include "helewave/network.hpp"
#include "helewave/train.hpp"

namespace helewave::harness {

enum class ExperimentKind { bifurcation_table, radial_residual, gradcheck, train_bifurcation, train_finger };

std::string kind_name(ExperimentKind kind);
ExperimentKind parse_kind(const std::string& text);

struct BifurcationSpec {
  int n_min = 2;
  int n_max = 5;

  friend bool operator==(const BifurcationSpec&, const BifurcationSpec&) = default;
};

struct SweepSpec {
  std::vector<double> taus{1e-2, 3e-3, 1e-3, 3e-4};
  /// Nodes per 2 pi / tau; 0 keeps kernel.n_quad fixed.
  double nodes_per_tau = 2.0;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct GradcheckSpec {
  int width = 4;
  int m = 8;
  int draws = 10;
  double tau = 1e-2;
  int n_quad = 512;
  double tolerance = 1e-4;

  friend bool operator==(const GradcheckSpec&, const GradcheckSpec&) = default;
};

struct ScheduleSpec {
  StepSchedule::Kind kind = StepSchedule::Kind::constant;
  double alpha = 1e-4;
  double floor = 1e-6;           ///< geometric only
  std::optional<double> factor;  ///< geometric only; empty reaches floor at the last epoch

  StepSchedule build(int epochs) const;
  friend bool operator==(const ScheduleSpec&, const ScheduleSpec&) = default;
};

struct OutputSpec {
  int boundary_samples = 512;
  int spectrum_modes = 16;
  int spectrum_samples = 256;

  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::train_bifurcation;
  std::filesystem::path output_dir = "helewave-out";
  int mode = 2;    ///< expected dominant Fourier mode of a bifurcation run
  int lobes = 2;   ///< expected local maxima of a finger run

  double mu = 14.6;
  std::optional<double> beta;  ///< empty: beta_of(mu, r_s)
  double r_s = 1.0;

  KernelConfig kernel;
  Activation activation = Activation::cosine();
  TrainConfig train;  ///< schedule is taken from `schedule`
  ScheduleSpec schedule;
  BifurcationSpec bifurcation;
  SweepSpec sweep;
  GradcheckSpec gradcheck;
  OutputSpec output;

  ExperimentConfig();

  ProblemParams problem() const;
  TrainConfig train_config() const;
  /// Throws ConfigError naming the offending key.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Named starting points: mode<n> (n >= 2), harmonic, finger2, finger4,
/// gradcheck, sweep, table.
ExperimentConfig preset(const std::string& name);

/// Sets one "section.key" value. Throws ConfigError on unknown keys or bad
/// values.
void apply_setting(ExperimentConfig& config, const std::string& section, const std::string& key,
                   const std::string& value);

/// INI-style text: [section] headers, key = value lines, '#' or ';'
/// comments. An optional `preset` key in [experiment] must come first and
/// selects the starting config; every other key overrides it.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical form listing every key; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

std::string format_init(const InitDist& dist);
InitDist parse_init(const std::string& text);

struct ModeSpectrum {
  std::vector<double> amplitudes;  ///< [0] mean radius, [k] = 2 |c_k|
};

/// Direct DFT of rho on `samples` uniform angles; samples >= 4K.
ModeSpectrum fourier_modes(const CurveEvaluator& curve, int modes, int samples);

struct DominantMode {
  int mode = 0;
  double ratio = 0.0;  ///< amplitude[mode] / largest other nonzero-mode amplitude
};

DominantMode dominant_mode(const ModeSpectrum& spectrum);
bool mode_dominates(const ModeSpectrum& spectrum, int mode, double factor = 5.0);

/// Strict local maxima of rho on a periodic uniform grid.
int count_local_maxima(const CurveEvaluator& curve, int samples = 4096);

/// Moving average with the given window (length n - window + 1).
std::vector<double> moving_average(const std::vector<double>& values, int window);

/// True if the moving average never increases over its final half.
bool smoothed_tail_decreasing(const std::vector<double>& values, int window = 10);

/// (sum alpha_k |g_k|^2) / (sum alpha_k) over [begin, end) of the trace.
double weighted_grad_average(const std::vector<StepRecord>& steps, std::size_t begin,
                             std::size_t end);

/// Residual table at `count` uniform collocation angles; columns
/// theta_hat,l_tau,h,g,w.
void write_residual_table(std::ostream& out, const CurveEvaluator& curve, int count,
                          const ProblemParams& pp, const KernelConfig& kc);

/// Kernel values on a uniform grid of (r_min, r_max].
void write_specfun_table(std::ostream& out, double r_min, double r_max, int count);

struct GradcheckBlock {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double max() const;
};

/// Largest relative error between grad_loss and a five-point central
/// difference, per parameter block.
GradcheckBlock gradcheck_draw(const GradcheckSpec& spec, const Activation& act, double mu,
                              double r_s, std::uint64_t seed);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RunOptions {
  bool check = false;
  bool gnuplot = false;
  std::ostream* log = nullptr;  ///< progress and tables; null for silence
};

struct RunResult {
  int exit_code = 0;
  std::string error;
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int usage = 2;
inline constexpr int degenerate = 3;
}  // namespace exit_code

/// Runs the experiment and writes its artifacts into config.output_dir.
/// Checks are always evaluated; they only affect the exit code when
/// options.check is set.
RunResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace helewave::harness
