#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "helewave/bifurcation.hpp"
#include "helewave/error.hpp"
#include "helewave/harness.hpp"
#include "helewave/parallel.hpp"

using namespace helewave;
namespace hw = helewave::harness;

namespace {

// Flag name -> (section, key). Values are handed to apply_setting unchanged.
struct Setting {
  std::string flag;
  std::string section;
  std::string key;
  std::string help;
};

const std::vector<Setting> kTrainSettings = {
    {"--kind", "experiment", "kind", "train_bifurcation or train_finger"},
    {"--mode", "experiment", "mode", "expected dominant Fourier mode"},
    {"--lobes", "experiment", "lobes", "expected local maxima (finger runs)"},
    {"--mu", "problem", "mu", "surface tension parameter"},
    {"--beta", "problem", "beta", "influx constant or 'auto'"},
    {"--r-s", "problem", "r_s", "radius used for beta auto"},
    {"--tau", "kernel", "tau", "chord regularization"},
    {"--n-quad", "kernel", "n_quad", "quadrature nodes"},
    {"--guard", "kernel", "guard", "arclength guard"},
    {"--width", "network", "width", "hidden units N"},
    {"--activation", "network", "activation", "cosine, sigmoid, finger or finger:<p>"},
    {"--a-init", "network", "a_init", "e.g. normal(0, 0.05)"},
    {"--b-init", "network", "b_init", "e.g. constant(2)"},
    {"--c-init", "network", "c_init", "e.g. uniform(-0.2, 0.2)"},
    {"--d-init", "network", "d_init", "e.g. constant(1)"},
    {"--m", "train", "m", "collocation points per epoch"},
    {"--batches", "train", "batches", "minibatches per epoch"},
    {"--epochs", "train", "epochs", "epochs"},
    {"--schedule", "train", "schedule", "constant, harmonic or geometric"},
    {"--alpha", "train", "alpha", "initial step size"},
    {"--alpha-floor", "train", "alpha_floor", "geometric floor"},
    {"--alpha-factor", "train", "alpha_factor", "geometric factor or 'auto'"},
    {"--seed", "train", "seed", "random seed"},
    {"--guard-retries", "train", "guard_retries", "step halvings before giving up"},
    {"--full-grid", "train", "full_grid", "points of the per-epoch loss grid"},
    {"--checkpoint-every", "train", "checkpoint_every", "epochs between checkpoints"},
};

struct Overrides {
  std::map<std::string, std::string> values;  // flag -> value
  std::vector<std::string> sets;              // section.key=value

  void add_flags(CLI::App* app, const std::vector<Setting>& settings) {
    for (const auto& s : settings) app->add_option(s.flag, values[s.flag], s.help);
    add_set(app);
  }
  void add_set(CLI::App* app) {
    app->add_option("--set", sets, "override any config key: section.key=value");
  }

  void apply(hw::ExperimentConfig& cfg, const std::vector<Setting>& settings, CLI::App* app) const {
    for (const auto& s : settings) {
      if (app->count(s.flag) > 0) hw::apply_setting(cfg, s.section, s.key, values.at(s.flag));
    }
    for (const auto& item : sets) {
      const auto eq = item.find('=');
      const auto dot = item.find('.');
      if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
        throw ConfigError("--set expects section.key=value, got '" + item + "'");
      }
      hw::apply_setting(cfg, item.substr(0, dot), item.substr(dot + 1, eq - dot - 1),
                        item.substr(eq + 1));
    }
    cfg.validate();
  }
};

int finish(const hw::RunResult& r) {
  if (!r.error.empty()) std::cerr << "helewave: " << r.error << "\n";
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady Hele-Shaw boundaries from a shallow network ansatz"};
  app.require_subcommand(1);
  app.fallthrough();

  int threads = 0;
  bool check = false;
  bool gnuplot = false;
  bool quiet = false;
  app.add_option("--threads", threads, "worker threads (default: HELEWAVE_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--check", check, "exit 1 if any acceptance check fails");
  app.add_flag("--gnuplot", gnuplot, "also write plot.gp into the output directory");
  app.add_flag("-q,--quiet", quiet, "no progress output");

  // bifurcation
  auto* bif = app.add_subcommand("bifurcation", "table of bifurcation points mu_n");
  double bif_rs = 1.0;
  int bif_min = 2, bif_max = 5;
  std::string bif_out = "bifurcation-out";
  bif->add_option("--r-s", bif_rs, "radius of the disk");
  bif->add_option("--n-min", bif_min, "first mode");
  bif->add_option("--n-max", bif_max, "last mode");
  bif->add_option("-o,--out", bif_out, "output directory");

  // residual
  auto* res = app.add_subcommand("residual", "residual L_tau on a uniform collocation grid");
  std::string res_ckpt, res_out;
  double res_rs = 1.0, res_eps = 0.0, res_mu = 14.6, res_tau = 1e-3;
  std::string res_beta = "auto";
  int res_mode = 2, res_nq = 4096, res_count = 64;
  res->add_option("--checkpoint", res_ckpt, "network checkpoint (default: closed-form curve)");
  res->add_option("--r-s", res_rs, "radius of the closed-form curve");
  res->add_option("--eps", res_eps, "amplitude of the cos(mode theta) perturbation");
  res->add_option("--mode", res_mode, "perturbation mode");
  res->add_option("--mu", res_mu, "surface tension parameter");
  auto* res_beta_opt = res->add_option("--beta", res_beta, "influx constant or 'auto' (default)");
  res->add_flag_callback("--beta-auto", [&res_beta] { res_beta = "auto"; },
                         "compute beta from mu and the radius (default)")
      ->excludes(res_beta_opt);
  res->add_option("--tau", res_tau, "chord regularization");
  res->add_option("--n-quad", res_nq, "quadrature nodes");
  res->add_option("--count", res_count, "collocation angles");
  res->add_option("-o,--out", res_out, "CSV file (default: stdout)");

  // gradcheck
  auto* gc = app.add_subcommand("gradcheck", "compare analytic gradients with finite differences");
  hw::ExperimentConfig gc_cfg = hw::preset("gradcheck");
  std::string gc_act = "cosine";
  gc->add_option("--width", gc_cfg.gradcheck.width, "hidden units");
  gc->add_option("--m", gc_cfg.gradcheck.m, "collocation points");
  gc->add_option("--draws", gc_cfg.gradcheck.draws, "random parameter draws");
  gc->add_option("--tau", gc_cfg.gradcheck.tau, "chord regularization");
  gc->add_option("--n-quad", gc_cfg.gradcheck.n_quad, "quadrature nodes");
  gc->add_option("--tolerance", gc_cfg.gradcheck.tolerance, "max relative error");
  gc->add_option("--seed", gc_cfg.train.seed, "first seed");
  gc->add_option("--mu", gc_cfg.mu, "surface tension parameter");
  gc->add_option("--activation", gc_act, "activation");
  gc->add_option("-o,--out", gc_cfg.output_dir, "output directory");

  // train
  auto* tr = app.add_subcommand("train", "train the boundary network");
  std::string tr_preset, tr_out;
  Overrides tr_over;
  tr->add_option("--preset", tr_preset, "mode<n>, harmonic, finger2 or finger4");
  tr->add_option("-o,--out", tr_out, "output directory");
  tr_over.add_flags(tr, kTrainSettings);

  // run
  auto* run = app.add_subcommand("run", "run an experiment described by a config file");
  std::string run_file, run_out;
  Overrides run_over;
  run->add_option("config", run_file, "config file")->required();
  run->add_option("-o,--out", run_out, "output directory (overrides the file)");
  run_over.add_set(run);

  // specfun-table
  auto* sf = app.add_subcommand("specfun-table", "Bessel functions and kernels on a grid");
  double sf_min = 0.0, sf_max = 10.0;
  int sf_count = 100;
  std::string sf_out;
  sf->add_option("--r-min", sf_min, "grid start (excluded)");
  sf->add_option("--r-max", sf_max, "grid end");
  sf->add_option("--count", sf_count, "grid points");
  sf->add_option("-o,--out", sf_out, "CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : hw::exit_code::usage;
  }

  parallel::configure_from_env();
  if (threads > 0) parallel::set_threads(threads);

  hw::RunOptions opts;
  opts.check = check;
  opts.gnuplot = gnuplot;
  opts.log = quiet ? nullptr : &std::cout;

  try {
    if (*bif) {
      hw::ExperimentConfig cfg = hw::preset("table");
      cfg.r_s = bif_rs;
      cfg.bifurcation.n_min = bif_min;
      cfg.bifurcation.n_max = bif_max;
      cfg.output_dir = bif_out;
      hw::RunOptions o = opts;
      o.log = &std::cout;
      return finish(hw::run_experiment(cfg, o));
    }
    if (*res) {
      ProblemParams pp{res_mu, 0.0};
      if (res_beta == "auto") {
        pp.beta = bifurcation::beta_of(res_mu, res_rs);
      } else {
        hw::ExperimentConfig tmp;
        hw::apply_setting(tmp, "problem", "beta", res_beta);
        pp.beta = *tmp.beta;
      }
      pp.validate();
      KernelConfig kc{res_tau, res_nq};
      kc.validate();
      std::unique_ptr<CurveEvaluator> curve;
      if (!res_ckpt.empty()) {
        NetworkParams p;
        Activation act = Activation::cosine();
        load_checkpoint(res_ckpt, p, act);
        curve = std::make_unique<NetworkCurve>(p, act);
      } else if (res_eps != 0.0) {
        curve = std::make_unique<ClosedFormCurve>(ClosedFormCurve::cosine_perturbed(res_rs, res_eps, res_mode));
      } else {
        curve = std::make_unique<ClosedFormCurve>(ClosedFormCurve::circle(res_rs));
      }
      if (res_out.empty()) {
        hw::write_residual_table(std::cout, *curve, res_count, pp, kc);
      } else {
        std::ofstream out(res_out);
        if (!out) throw ConfigError("cannot write " + res_out);
        hw::write_residual_table(out, *curve, res_count, pp, kc);
      }
      return 0;
    }
    if (*gc) {
      gc_cfg.activation = Activation::parse(gc_act);
      hw::RunOptions o = opts;
      o.check = true;
      o.log = &std::cout;
      return finish(hw::run_experiment(gc_cfg, o));
    }
    if (*tr) {
      hw::ExperimentConfig cfg = tr_preset.empty() ? hw::ExperimentConfig{} : hw::preset(tr_preset);
      if (tr_preset.empty()) cfg.output_dir = "train-out";
      tr_over.apply(cfg, kTrainSettings, tr);
      if (!tr_out.empty()) cfg.output_dir = tr_out;
      return finish(hw::run_experiment(cfg, opts));
    }
    if (*run) {
      hw::ExperimentConfig cfg = hw::load_config(run_file);
      run_over.apply(cfg, {}, run);
      if (!run_out.empty()) cfg.output_dir = run_out;
      return finish(hw::run_experiment(cfg, opts));
    }
    if (*sf) {
      if (sf_out.empty()) {
        hw::write_specfun_table(std::cout, sf_min, sf_max, sf_count);
      } else {
        std::ofstream out(sf_out);
        if (!out) throw ConfigError("cannot write " + sf_out);
        hw::write_specfun_table(out, sf_min, sf_max, sf_count);
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "helewave: " << e.what() << "\n";
    return hw::exit_code::usage;
  } catch (const DomainError& e) {
    std::cerr << "helewave: " << e.what() << "\n";
    return hw::exit_code::usage;
  } catch (const DegenerateCurveError& e) {
    std::cerr << "helewave: " << e.what() << "\n";
    return hw::exit_code::degenerate;
  } catch (const UnrecoverableDegeneracy& e) {
    std::cerr << "helewave: " << e.what() << "\n";
    return hw::exit_code::degenerate;
  } catch (const std::exception& e) {
    std::cerr << "helewave: " << e.what() << "\n";
    return hw::exit_code::usage;
  }
  return 0;
}
