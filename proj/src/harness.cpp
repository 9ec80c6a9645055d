#include "helewave/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "helewave/bifurcation.hpp"
#include "helewave/error.hpp"
#include "helewave/gradients.hpp"
#include "helewave/specfun.hpp"

namespace helewave::harness {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

void write_json(const fs::path& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

void add_check(RunResult& result, std::string name, bool passed, std::string detail) {
  result.checks.push_back({std::move(name), passed, std::move(detail)});
}

json checks_json(const RunResult& result) {
  json arr = json::array();
  for (const auto& c : result.checks) {
    arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return arr;
}

// Local maxima of a periodic sequence: strictly above the left neighbour,
// not below the right one, so flat tops count once.
int periodic_maxima(const std::vector<double>& r) {
  const std::size_t n = r.size();
  int count = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double prev = r[(j + n - 1) % n];
    const double next = r[(j + 1) % n];
    if (r[j] > prev && r[j] >= next) ++count;
  }
  return count;
}

void write_boundary(const fs::path& dir, const CurveEvaluator& curve, int samples) {
  auto out = open_out(dir / "boundary.csv");
  out << "theta,rho\n";
  for (int j = 0; j < samples; ++j) {
    const double theta = kTwoPi * j / samples;
    out << num(theta) << "," << num(curve.eval(theta).r) << "\n";
  }
}

void write_spectrum(const fs::path& dir, const ModeSpectrum& spectrum) {
  auto out = open_out(dir / "spectrum.csv");
  out << "k,amplitude\n";
  for (std::size_t k = 0; k < spectrum.amplitudes.size(); ++k) {
    out << k << "," << num(spectrum.amplitudes[k]) << "\n";
  }
}

const std::pair<int, double> kReferenceMu[] = {
    {2, 14.7496}, {3, 28.7234}, {4, 47.1794}, {5, 70.1169}};

void run_table(const ExperimentConfig& cfg, const RunOptions& opt, RunResult& result) {
  const fs::path& dir = cfg.output_dir;
  struct Row {
    int n;
    double mu;
    double slope;
  };
  std::vector<Row> rows;
  for (int n = cfg.bifurcation.n_min; n <= cfg.bifurcation.n_max; ++n) {
    if (n == 1) continue;
    rows.push_back({n, bifurcation::mu_n(n, cfg.r_s), bifurcation::frechet_slope(n, cfg.r_s)});
  }

  {
    auto out = open_out(dir / "bifurcation.csv");
    out << "n,mu_n,frechet_slope\n";
    for (const auto& r : rows) out << r.n << "," << num(r.mu) << "," << num(r.slope) << "\n";
  }
  if (opt.log) {
    auto& log = *opt.log;
    log << "R_S = " << cfg.r_s << "\n";
    log << std::setw(4) << "n" << std::setw(16) << "mu_n" << std::setw(18) << "frechet slope"
        << "\n";
    for (const auto& r : rows) {
      log << std::setw(4) << r.n << std::fixed << std::setprecision(6) << std::setw(16) << r.mu
          << std::setw(18) << r.slope << std::defaultfloat << "\n";
    }
  }

  if (cfg.r_s == 1.0) {
    double worst = 0.0;
    int compared = 0;
    for (const auto& [n, ref] : kReferenceMu) {
      for (const auto& r : rows) {
        if (r.n != n) continue;
        worst = std::max(worst, std::abs(r.mu - ref));
        ++compared;
      }
    }
    if (compared > 0) {
      add_check(result, "mu_n matches reference values within 5e-4", worst <= 5e-4,
                "max deviation " + num(worst) + " over " + std::to_string(compared) + " modes");
    }
  }
  {
    std::vector<double> chain{bifurcation::mu_n(0, cfg.r_s)};
    for (const auto& r : rows) {
      if (r.n >= 2) chain.push_back(r.mu);
    }
    double margin = chain[0];
    for (std::size_t k = 1; k < chain.size(); ++k) margin = std::min(margin, chain[k] - chain[k - 1]);
    add_check(result, "0 < mu_0 < mu_2 < ... strictly", margin > 1e-6,
              "smallest gap " + num(margin));
  }
  {
    double worst = 0.0;
    for (const auto& r : rows) {
      if (r.n >= 2) worst = std::max(worst, std::abs(bifurcation::frechet_eigen(r.n, r.mu, cfg.r_s)));
    }
    add_check(result, "Frechet eigenvalue vanishes at mu_n", worst < 1e-9,
              "max |eigenvalue| " + num(worst));
  }

  json rows_json = json::array();
  for (const auto& r : rows) rows_json.push_back({{"n", r.n}, {"mu_n", r.mu}, {"frechet_slope", r.slope}});
  write_json(dir / "summary.json", {{"kind", kind_name(cfg.kind)},
                                    {"r_s", cfg.r_s},
                                    {"rows", rows_json},
                                    {"checks", checks_json(result)}});
}

int sweep_nodes(const ExperimentConfig& cfg, double tau) {
  if (cfg.sweep.nodes_per_tau <= 0.0) return cfg.kernel.n_quad;
  const double want = std::ceil(cfg.sweep.nodes_per_tau * kTwoPi / tau);
  int n = static_cast<int>(std::min(want, 1e8));
  n += n % 2;
  return std::max(n, cfg.kernel.n_quad);
}

void run_sweep(const ExperimentConfig& cfg, const RunOptions& opt, RunResult& result) {
  const fs::path& dir = cfg.output_dir;
  const auto circle = ClosedFormCurve::circle(cfg.r_s);
  const ProblemParams pp = cfg.problem();

  json rows = json::array();
  std::vector<double> ratios;
  auto out = open_out(dir / "radial_residual.csv");
  out << "tau,n_quad,l_tau,h,g,w,ratio\n";
  for (double tau : cfg.sweep.taus) {
    KernelConfig kc = cfg.kernel;
    kc.tau = tau;
    kc.n_quad = sweep_nodes(cfg, tau);
    const auto parts = l_tau_split(circle, 0.0, pp, kc);
    const double l = l_tau(circle, 0.0, pp, kc);
    const double ratio = std::abs(l) / (tau * std::abs(std::log(tau)) + tau);
    ratios.push_back(ratio);
    out << num(tau) << "," << kc.n_quad << "," << num(l) << "," << num(parts.h) << ","
        << num(parts.g) << "," << num(parts.w) << "," << num(ratio) << "\n";
    rows.push_back({{"tau", tau}, {"n_quad", kc.n_quad}, {"l_tau", l}, {"ratio", ratio}});
    if (opt.log) {
      *opt.log << "tau " << tau << "  n_quad " << kc.n_quad << "  l_tau " << l << "  ratio "
               << ratio << "\n";
    }
  }
  out.close();

  double lo = 1.0, hi = 1.0;
  for (double r : ratios) {
    lo = std::min(lo, r / ratios[0]);
    hi = std::max(hi, r / ratios[0]);
  }
  add_check(result, "residual ratio stays within a factor 10 of the first tau",
            lo >= 0.1 && hi <= 10.0 && ratios[0] > 0.0,
            "ratio / first in [" + num(lo) + ", " + num(hi) + "]");

  write_boundary(dir, circle, cfg.output.boundary_samples);
  write_spectrum(dir, fourier_modes(circle, cfg.output.spectrum_modes, cfg.output.spectrum_samples));
  write_json(dir / "summary.json", {{"kind", kind_name(cfg.kind)},
                                    {"mu", pp.mu},
                                    {"beta", pp.beta},
                                    {"r_s", cfg.r_s},
                                    {"rows", rows},
                                    {"checks", checks_json(result)}});
}

void run_gradcheck(const ExperimentConfig& cfg, const RunOptions& opt, RunResult& result) {
  const fs::path& dir = cfg.output_dir;
  GradcheckBlock worst;
  auto out = open_out(dir / "gradcheck.csv");
  out << "draw,seed,max_rel_a,max_rel_b,max_rel_c,max_rel_d\n";
  for (int k = 0; k < cfg.gradcheck.draws; ++k) {
    const std::uint64_t seed = cfg.train.seed + static_cast<std::uint64_t>(k);
    const auto e = gradcheck_draw(cfg.gradcheck, cfg.activation, cfg.mu, cfg.r_s, seed);
    out << k << "," << seed << "," << num(e.a) << "," << num(e.b) << "," << num(e.c) << ","
        << num(e.d) << "\n";
    worst.a = std::max(worst.a, e.a);
    worst.b = std::max(worst.b, e.b);
    worst.c = std::max(worst.c, e.c);
    worst.d = std::max(worst.d, e.d);
  }
  out.close();
  if (opt.log) {
    auto& log = *opt.log;
    log << std::scientific << std::setprecision(3);
    log << "max relative error  a " << worst.a << "  b " << worst.b << "  c " << worst.c << "  d "
        << worst.d << "\n";
    log << std::defaultfloat;
  }
  add_check(result, "analytic gradient matches finite differences",
            worst.max() < cfg.gradcheck.tolerance,
            "max relative error " + num(worst.max()) + " (tolerance " +
                num(cfg.gradcheck.tolerance) + ")");
  write_json(dir / "summary.json", {{"kind", kind_name(cfg.kind)},
                                    {"draws", cfg.gradcheck.draws},
                                    {"max_rel_a", worst.a},
                                    {"max_rel_b", worst.b},
                                    {"max_rel_c", worst.c},
                                    {"max_rel_d", worst.d},
                                    {"checks", checks_json(result)}});
}

void write_gnuplot(const ExperimentConfig& cfg) {
  auto out = open_out(cfg.output_dir / "plot.gp");
  out << "set datafile separator ','\n";
  switch (cfg.kind) {
    case ExperimentKind::bifurcation_table:
      out << "set xlabel 'n'\nset ylabel 'mu_n'\n"
          << "plot 'bifurcation.csv' every ::1 using 1:2 with linespoints title 'mu_n'\n";
      break;
    case ExperimentKind::radial_residual:
      out << "set logscale x\nset xlabel 'tau'\n"
          << "plot 'radial_residual.csv' every ::1 using 1:7 with linespoints title 'ratio'\n";
      break;
    case ExperimentKind::gradcheck:
      out << "set logscale y\n"
          << "plot for [c=3:6] 'gradcheck.csv' every ::1 using 1:c with points title columnhead(c)\n";
      break;
    case ExperimentKind::train_bifurcation:
    case ExperimentKind::train_finger:
      out << "set multiplot layout 1,2\n"
          << "set logscale y\nset xlabel 'epoch'\n"
          << "plot 'epochs.csv' every ::1 using 1:2 with lines title 'loss'\n"
          << "unset logscale y\nset polar\nset size ratio -1\nunset xlabel\n"
          << "plot 'boundary.csv' every ::1 using 1:2 with lines title 'boundary'\n"
          << "unset multiplot\n";
      break;
  }
}

void run_training(const ExperimentConfig& cfg, const RunOptions& opt, RunResult& result) {
  const fs::path& dir = cfg.output_dir;
  const TrainConfig tc = cfg.train_config();
  const ProblemParams pp = cfg.problem();
  const Activation act = cfg.activation;

  StepObserver observer;
  if (opt.log) {
    observer = [&](const StepRecord& r) {
      if (r.step % tc.batches == 0) {
        *opt.log << "epoch " << r.epoch + 1 << "/" << tc.epochs << "  batch loss " << r.batch_loss
                 << "  |grad| " << r.grad_norm << "  alpha " << r.alpha << "\n";
      }
    };
  }
  const TrainingTrace trace = train(tc, act, pp, cfg.kernel, observer);

  {
    auto out = open_out(dir / "trace.csv");
    out << "step,epoch,batch_loss,grad_norm,alpha\n";
    for (const auto& r : trace.steps) {
      out << r.step << "," << r.epoch << "," << num(r.batch_loss) << "," << num(r.grad_norm) << ","
          << num(r.alpha) << "\n";
    }
  }
  {
    auto out = open_out(dir / "epochs.csv");
    out << "epoch,full_loss\n";
    for (std::size_t e = 0; e < trace.epoch_losses.size(); ++e) {
      out << e << "," << num(trace.epoch_losses[e]) << "\n";
    }
  }
  fs::create_directories(dir / "checkpoints");
  for (const auto& c : trace.checkpoints) {
    std::ostringstream name;
    name << "epoch_" << std::setw(4) << std::setfill('0') << c.epoch << ".json";
    save_checkpoint((dir / "checkpoints" / name.str()).string(), c.params, act);
  }
  save_checkpoint((dir / "initial.json").string(), trace.initial, act);
  save_checkpoint((dir / "checkpoint.json").string(), trace.final_params, act);

  const NetworkCurve curve(trace.final_params, act);
  write_boundary(dir, curve, cfg.output.boundary_samples);
  const ModeSpectrum spectrum =
      fourier_modes(curve, cfg.output.spectrum_modes, cfg.output.spectrum_samples);
  write_spectrum(dir, spectrum);

  const DominantMode dom = dominant_mode(spectrum);
  const int maxima = count_local_maxima(curve);
  const double initial_loss = trace.epoch_losses.front();
  const double final_loss = trace.epoch_losses.back();
  const double mean_radius = spectrum.amplitudes[0];
  int rejected = 0;
  for (const auto& r : trace.steps) rejected += r.rejected;
  const std::size_t third = trace.steps.size() / 3;
  const double early = weighted_grad_average(trace.steps, 0, third);
  const double late = weighted_grad_average(trace.steps, trace.steps.size() - third, trace.steps.size());

  if (cfg.kind == ExperimentKind::train_bifurcation) {
    add_check(result, "dominant Fourier mode is " + std::to_string(cfg.mode),
              mode_dominates(spectrum, cfg.mode),
              "dominant " + std::to_string(dom.mode) + ", ratio " + num(dom.ratio));
    add_check(result, "mean radius in [0.8, 1.2]", mean_radius >= 0.8 && mean_radius <= 1.2,
              "mean radius " + num(mean_radius));
    add_check(result, "final loss at most 10% of initial", final_loss <= 0.1 * initial_loss,
              "loss " + num(initial_loss) + " -> " + num(final_loss));
    if (cfg.schedule.kind == StepSchedule::Kind::harmonic) {
      add_check(result, "weighted gradient average decreases (last third < first third)",
                third > 0 && late < early,
                "first " + num(early) + ", last " + num(late));
    }
  } else {
    add_check(result, "boundary has " + std::to_string(cfg.lobes) + " local maxima",
              maxima == cfg.lobes, "found " + std::to_string(maxima));
    const std::vector<double> after(trace.epoch_losses.begin() + 1, trace.epoch_losses.end());
    add_check(result, "smoothed loss decreasing over the final half",
              smoothed_tail_decreasing(after, 10),
              "loss " + num(initial_loss) + " -> " + num(final_loss));
  }

  json amps = json::array();
  for (double a : spectrum.amplitudes) amps.push_back(a);
  write_json(dir / "summary.json", {{"kind", kind_name(cfg.kind)},
                                    {"mu", pp.mu},
                                    {"beta", pp.beta},
                                    {"activation", act.name()},
                                    {"steps", trace.steps.size()},
                                    {"rejected_halvings", rejected},
                                    {"initial_loss", initial_loss},
                                    {"final_loss", final_loss},
                                    {"dominant_mode", dom.mode},
                                    {"dominance_ratio", dom.ratio},
                                    {"mean_radius", mean_radius},
                                    {"local_maxima", maxima},
                                    {"weighted_grad_first_third", early},
                                    {"weighted_grad_last_third", late},
                                    {"mode_amplitudes", amps},
                                    {"checks", checks_json(result)}});
}

}  // namespace

ModeSpectrum fourier_modes(const CurveEvaluator& curve, int modes, int samples) {
  if (modes < 0 || samples < 4 * modes || samples < 1) {
    throw DomainError("fourier_modes: need samples >= 4K");
  }
  std::vector<double> rho(samples);
  for (int j = 0; j < samples; ++j) rho[j] = curve.eval(kTwoPi * j / samples).r;
  ModeSpectrum out;
  out.amplitudes.resize(modes + 1);
  for (int k = 0; k <= modes; ++k) {
    double re = 0.0, im = 0.0;
    for (int j = 0; j < samples; ++j) {
      // Reduce k j mod samples so the phase stays exact for large products.
      const double phase = kTwoPi * static_cast<double>((static_cast<long long>(k) * j) % samples) /
                           samples;
      re += rho[j] * std::cos(phase);
      im -= rho[j] * std::sin(phase);
    }
    const double amp = std::hypot(re, im) / samples;
    out.amplitudes[k] = k == 0 ? amp : 2.0 * amp;
  }
  return out;
}

DominantMode dominant_mode(const ModeSpectrum& spectrum) {
  const auto& a = spectrum.amplitudes;
  DominantMode out;
  if (a.size() < 2) return out;
  out.mode = 1;
  for (std::size_t k = 2; k < a.size(); ++k) {
    if (a[k] > a[out.mode]) out.mode = static_cast<int>(k);
  }
  double other = 0.0;
  for (std::size_t k = 1; k < a.size(); ++k) {
    if (static_cast<int>(k) != out.mode) other = std::max(other, a[k]);
  }
  out.ratio = other > 0.0 ? a[out.mode] / other : std::numeric_limits<double>::infinity();
  return out;
}

bool mode_dominates(const ModeSpectrum& spectrum, int mode, double factor) {
  const auto& a = spectrum.amplitudes;
  if (mode < 1 || mode >= static_cast<int>(a.size())) return false;
  for (std::size_t k = 1; k < a.size(); ++k) {
    if (static_cast<int>(k) != mode && !(a[mode] > factor * a[k])) return false;
  }
  return true;
}

int count_local_maxima(const CurveEvaluator& curve, int samples) {
  if (samples < 3) throw DomainError("count_local_maxima: need at least 3 samples");
  std::vector<double> r(samples);
  for (int j = 0; j < samples; ++j) r[j] = curve.eval(kTwoPi * j / samples).r;
  return periodic_maxima(r);
}

std::vector<double> moving_average(const std::vector<double>& values, int window) {
  if (window < 1) throw DomainError("moving_average: window must be >= 1");
  std::vector<double> out;
  if (values.size() < static_cast<std::size_t>(window)) return out;
  for (std::size_t i = 0; i + window <= values.size(); ++i) {
    double s = 0.0;
    for (int k = 0; k < window; ++k) s += values[i + k];
    out.push_back(s / window);
  }
  return out;
}

bool smoothed_tail_decreasing(const std::vector<double>& values, int window) {
  const auto ma = moving_average(values, window);
  if (ma.size() < 2) return false;
  for (std::size_t i = ma.size() / 2 + 1; i < ma.size(); ++i) {
    if (ma[i] > ma[i - 1]) return false;
  }
  return true;
}

double weighted_grad_average(const std::vector<StepRecord>& steps, std::size_t begin,
                             std::size_t end) {
  end = std::min(end, steps.size());
  double num_sum = 0.0, den = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    num_sum += steps[i].alpha * steps[i].grad_norm * steps[i].grad_norm;
    den += steps[i].alpha;
  }
  return den > 0.0 ? num_sum / den : 0.0;
}

void write_residual_table(std::ostream& out, const CurveEvaluator& curve, int count,
                          const ProblemParams& pp, const KernelConfig& kc) {
  if (count < 1) throw DomainError("residual table: count must be >= 1");
  out << "theta_hat,l_tau,h,g,w\n";
  for (int j = 0; j < count; ++j) {
    const double th = kTwoPi * j / count;
    const auto parts = l_tau_split(curve, th, pp, kc);
    out << num(th) << "," << num(l_tau(curve, th, pp, kc)) << "," << num(parts.h) << ","
        << num(parts.g) << "," << num(parts.w) << "\n";
  }
}

void write_specfun_table(std::ostream& out, double r_min, double r_max, int count) {
  if (!(r_min >= 0.0) || !(r_max > r_min) || count < 1) {
    throw DomainError("specfun table: need 0 <= r_min < r_max and count >= 1");
  }
  out << "r,I0,I1,K0,K1,G1,G1_prime,Q,Q_prime\n";
  for (int j = 1; j <= count; ++j) {
    const double r = r_min + (r_max - r_min) * j / count;
    const auto k = specfun::kernels(r);
    out << num(r) << "," << num(specfun::bessel_i(0, r)) << "," << num(specfun::bessel_i(1, r))
        << "," << num(specfun::bessel_k(0, r)) << "," << num(specfun::bessel_k(1, r)) << ","
        << num(k.g1) << "," << num(k.g1_prime) << "," << num(k.q) << "," << num(k.q_prime) << "\n";
  }
}

double GradcheckBlock::max() const { return std::max({a, b, c, d}); }

GradcheckBlock gradcheck_draw(const GradcheckSpec& spec, const Activation& act, double mu,
                              double r_s, std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 17);
  std::uniform_real_distribution<double> ua(-0.1, 0.1), ub(1.0, 3.0), uc(-std::numbers::pi, std::numbers::pi),
      ud(0.9, 1.1);
  NetworkParams p(spec.width);
  for (int i = 0; i < spec.width; ++i) {
    p.a[i] = ua(rng);
    p.b[i] = ub(rng);
    p.c[i] = uc(rng);
  }
  p.d = r_s * ud(rng);
  const auto thetas = sample_collocation(spec.m, seed, 0);
  const ProblemParams pp{mu, bifurcation::beta_of(mu, r_s)};
  const KernelConfig kc{spec.tau, spec.n_quad};

  const auto analytic = grad_loss(p, act, thetas, pp, kc).grad;
  std::vector<double> flat = p.flatten();
  std::vector<double> fd(flat.size());
  auto loss_at = [&](std::size_t j, double x) {
    std::vector<double> q = flat;
    q[j] = x;
    return loss_value(NetworkParams::from_flat(q), act, thetas, pp, kc);
  };
  for (std::size_t j = 0; j < flat.size(); ++j) {
    const double h = 1e-4 * std::max(1.0, std::abs(flat[j]));
    fd[j] = (-loss_at(j, flat[j] + 2 * h) + 8 * loss_at(j, flat[j] + h) - 8 * loss_at(j, flat[j] - h) +
             loss_at(j, flat[j] - 2 * h)) /
            (12 * h);
  }
  double scale = 0.0;
  for (double v : fd) scale = std::max(scale, std::abs(v));
  GradcheckBlock out;
  for (std::size_t j = 0; j < flat.size(); ++j) {
    const double denom = std::max({std::abs(analytic[j]), std::abs(fd[j]), 1e-6 * scale, 1e-300});
    const double err = std::abs(analytic[j] - fd[j]) / denom;
    const std::size_t n = p.width();
    double& slot = j < n ? out.a : j < 2 * n ? out.b : j < 3 * n ? out.c : out.d;
    slot = std::max(slot, err);
  }
  return out;
}

bool RunResult::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

RunResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  RunResult result;
  try {
    config.validate();
    fs::create_directories(config.output_dir);
    {
      auto out = open_out(config.output_dir / "config.ini");
      out << serialize_config(config);
    }
    switch (config.kind) {
      case ExperimentKind::bifurcation_table:
        run_table(config, options, result);
        break;
      case ExperimentKind::radial_residual:
        run_sweep(config, options, result);
        break;
      case ExperimentKind::gradcheck:
        run_gradcheck(config, options, result);
        break;
      case ExperimentKind::train_bifurcation:
      case ExperimentKind::train_finger:
        run_training(config, options, result);
        break;
    }
    if (options.gnuplot) write_gnuplot(config);
  } catch (const ConfigError& e) {
    result.exit_code = exit_code::usage;
    result.error = e.what();
    return result;
  } catch (const UnrecoverableDegeneracy& e) {
    result.exit_code = exit_code::degenerate;
    result.error = e.what();
    return result;
  } catch (const DegenerateCurveError& e) {
    result.exit_code = exit_code::degenerate;
    result.error = e.what();
    return result;
  } catch (const fs::filesystem_error& e) {
    result.exit_code = exit_code::usage;
    result.error = e.what();
    return result;
  }
  if (options.log) {
    for (const auto& c : result.checks) {
      *options.log << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  (" << c.detail << ")\n";
    }
  }
  if (options.check && !result.all_passed()) result.exit_code = exit_code::check_failed;
  return result;
}

}  // namespace helewave::harness
