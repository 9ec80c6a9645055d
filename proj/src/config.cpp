#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "helewave/bifurcation.hpp"
#include "helewave/error.hpp"
#include "helewave/harness.hpp"
#include "helewave/specfun.hpp"

namespace helewave::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string dotted(const std::string& section, const std::string& key) {
  return section + "." + key;
}

[[noreturn]] void bad_value(const std::string& section, const std::string& key,
                            const std::string& value, const std::string& expected) {
  throw ConfigError("invalid value '" + value + "' for " + dotted(section, key) + " (expected " +
                        expected + ")",
                    0, dotted(section, key));
}

double to_double(const std::string& section, const std::string& key, const std::string& value) {
  double v = 0.0;
  const char* first = value.data();
  const char* last = first + value.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    bad_value(section, key, value, "a finite number");
  }
  return v;
}

long long to_integer(const std::string& section, const std::string& key, const std::string& value) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    bad_value(section, key, value, "an integer");
  }
  return v;
}

int to_int(const std::string& section, const std::string& key, const std::string& value) {
  const long long v = to_integer(section, key, value);
  if (v < -2147483647LL || v > 2147483647LL) bad_value(section, key, value, "a 32-bit integer");
  return static_cast<int>(v);
}

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::string schedule_name(StepSchedule::Kind kind) {
  switch (kind) {
    case StepSchedule::Kind::constant:
      return "constant";
    case StepSchedule::Kind::harmonic:
      return "harmonic";
    case StepSchedule::Kind::geometric:
      return "geometric";
  }
  return "?";
}

// Bifurcation run parameters used for the first four modes.
double preset_mu(int n) {
  switch (n) {
    case 2:
      return 14.6;
    case 3:
      return 28.6;
    case 4:
      return 47.0;
    case 5:
      return 70.0;
    default:
      return std::floor(10.0 * bifurcation::mu_n(n, 1.0)) / 10.0 - 0.1;
  }
}

}  // namespace

std::string kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::bifurcation_table:
      return "bifurcation_table";
    case ExperimentKind::radial_residual:
      return "radial_residual";
    case ExperimentKind::gradcheck:
      return "gradcheck";
    case ExperimentKind::train_bifurcation:
      return "train_bifurcation";
    case ExperimentKind::train_finger:
      return "train_finger";
  }
  return "?";
}

ExperimentKind parse_kind(const std::string& text) {
  for (auto k : {ExperimentKind::bifurcation_table, ExperimentKind::radial_residual,
                 ExperimentKind::gradcheck, ExperimentKind::train_bifurcation,
                 ExperimentKind::train_finger}) {
    if (kind_name(k) == text) return k;
  }
  throw ConfigError("unknown experiment kind '" + text + "'", 0, "experiment.kind");
}

StepSchedule ScheduleSpec::build(int epochs) const {
  switch (kind) {
    case StepSchedule::Kind::constant:
      return StepSchedule::constant(alpha);
    case StepSchedule::Kind::harmonic:
      return StepSchedule::harmonic(alpha);
    case StepSchedule::Kind::geometric:
      if (factor) return StepSchedule::geometric(alpha, *factor, floor);
      return StepSchedule::geometric_to_floor(alpha, floor, epochs);
  }
  return StepSchedule::constant(alpha);
}

ExperimentConfig::ExperimentConfig() {
  train.init.a = InitDist::normal(0.0, 0.05);
}

ProblemParams ExperimentConfig::problem() const {
  return {mu, beta ? *beta : bifurcation::beta_of(mu, r_s)};
}

TrainConfig ExperimentConfig::train_config() const {
  TrainConfig tc = train;
  tc.schedule = schedule.build(train.epochs);
  return tc;
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& key, const std::string& what) {
    throw ConfigError(key + ": " + what, 0, key);
  };
  if (output_dir.empty()) fail("experiment.output_dir", "must not be empty");
  if (mode < 2) fail("experiment.mode", "must be >= 2");
  if (lobes < 1) fail("experiment.lobes", "must be >= 1");
  if (!(mu > 0.0)) fail("problem.mu", "must be > 0");
  if (beta && !(*beta > 0.0)) fail("problem.beta", "must be > 0");
  if (!(r_s > 0.0)) fail("problem.r_s", "must be > 0");
  try {
    kernel.validate();
  } catch (const DomainError& e) {
    fail("kernel", e.what());
  }
  try {
    train_config().validate();
  } catch (const DomainError& e) {
    fail("train", e.what());
  }
  if (!(schedule.alpha >= 0.0)) fail("train.alpha", "must be >= 0");
  if (!(schedule.floor >= 0.0)) fail("train.alpha_floor", "must be >= 0");
  if (schedule.factor && !(*schedule.factor > 0.0)) fail("train.alpha_factor", "must be > 0");
  if (schedule.kind == StepSchedule::Kind::geometric && !schedule.factor &&
      schedule.floor > 0.0 && !(schedule.alpha > 0.0)) {
    fail("train.alpha", "must be > 0 for a geometric schedule");
  }
  for (const InitDist* d : {&train.init.a, &train.init.b, &train.init.c, &train.init.d}) {
    if (d->kind == InitDist::Kind::normal && !(d->p2 >= 0.0)) {
      fail("network", "normal standard deviation must be >= 0");
    }
    if (d->kind == InitDist::Kind::uniform && !(d->p2 > d->p1)) {
      fail("network", "uniform bounds need lo < hi");
    }
  }
  if (bifurcation.n_min < 0) fail("bifurcation.n_min", "must be >= 0");
  if (bifurcation.n_max < bifurcation.n_min) fail("bifurcation.n_max", "must be >= n_min");
  if (bifurcation.n_max >= specfun::kMaxOrder) fail("bifurcation.n_max", "order too large");
  if (sweep.taus.empty()) fail("sweep.taus", "needs at least one value");
  for (double t : sweep.taus) {
    if (!(t > 0.0 && t <= 0.1)) fail("sweep.taus", "values must lie in (0, 0.1]");
  }
  if (!(sweep.nodes_per_tau >= 0.0)) fail("sweep.nodes_per_tau", "must be >= 0");
  if (gradcheck.width < 1) fail("gradcheck.width", "must be >= 1");
  if (gradcheck.m < 1) fail("gradcheck.m", "must be >= 1");
  if (gradcheck.draws < 1) fail("gradcheck.draws", "must be >= 1");
  try {
    KernelConfig{gradcheck.tau, gradcheck.n_quad, kernel.guard}.validate();
  } catch (const DomainError& e) {
    fail("gradcheck", e.what());
  }
  if (!(gradcheck.tolerance > 0.0)) fail("gradcheck.tolerance", "must be > 0");
  if (output.boundary_samples < 3) fail("output.boundary_samples", "must be >= 3");
  if (output.spectrum_modes < 1) fail("output.spectrum_modes", "must be >= 1");
  if (output.spectrum_samples < 4 * output.spectrum_modes) {
    fail("output.spectrum_samples", "must be >= 4 * spectrum_modes");
  }
}

ExperimentConfig preset(const std::string& name) {
  ExperimentConfig c;
  if (name.rfind("mode", 0) == 0 && name.size() > 4) {
    const int n = to_int("experiment", "preset", name.substr(4));
    if (n < 2 || n >= specfun::kMaxOrder - 1) {
      throw ConfigError("preset " + name + ": mode must be >= 2", 0, "experiment.preset");
    }
    c.kind = ExperimentKind::train_bifurcation;
    c.output_dir = name;
    c.mode = n;
    c.mu = preset_mu(n);
    c.kernel.n_quad = 1024;
    c.train.init.b = InitDist::constant(n);
    c.train.checkpoint_every = 10;
    return c;
  }
  if (name == "harmonic") {
    c = preset("mode2");
    c.output_dir = name;
    c.schedule.kind = StepSchedule::Kind::harmonic;
    c.schedule.alpha = 1e-2;
    return c;
  }
  if (name == "finger2" || name == "finger4") {
    c.kind = ExperimentKind::train_finger;
    c.output_dir = name;
    c.mu = 20.0;
    c.kernel.n_quad = 1024;
    c.activation = Activation::finger();
    c.train.m = 10000;
    c.train.batches = 100;
    c.train.epochs = 200;
    c.train.checkpoint_every = 50;
    c.train.init.a = InitDist::uniform(0.0, 0.01);
    c.train.init.d = InitDist::uniform(0.8, 1.0);
    if (name == "finger2") {
      c.lobes = 2;
      c.train.init.b = InitDist::constant(1.0);
      c.train.init.c = InitDist::uniform(-0.2, 0.2);
      c.schedule.kind = StepSchedule::Kind::geometric;
      c.schedule.alpha = 1e-3;
      c.schedule.floor = 1e-6;
      // reaches the floor after 60 epochs and holds it
      c.schedule.factor = std::pow(1e-3, 1.0 / 60.0);
    } else {
      c.lobes = 4;
      c.train.init.b = InitDist::constant(2.0);
      c.train.init.c = InitDist::constant(0.0);
      c.schedule.alpha = 1e-5;
    }
    return c;
  }
  if (name == "gradcheck") {
    c.kind = ExperimentKind::gradcheck;
    c.output_dir = name;
    return c;
  }
  if (name == "sweep") {
    c.kind = ExperimentKind::radial_residual;
    c.output_dir = name;
    return c;
  }
  if (name == "table") {
    c.kind = ExperimentKind::bifurcation_table;
    c.output_dir = name;
    return c;
  }
  throw ConfigError("unknown preset '" + name + "'", 0, "experiment.preset");
}

std::string format_init(const InitDist& dist) {
  switch (dist.kind) {
    case InitDist::Kind::constant:
      return "constant(" + num(dist.p1) + ")";
    case InitDist::Kind::normal:
      return "normal(" + num(dist.p1) + ", " + num(dist.p2) + ")";
    case InitDist::Kind::uniform:
      return "uniform(" + num(dist.p1) + ", " + num(dist.p2) + ")";
  }
  return "?";
}

InitDist parse_init(const std::string& text) {
  const std::string t = trim(text);
  const auto open = t.find('(');
  if (open == std::string::npos || t.back() != ')') {
    // A bare number is a constant.
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (!t.empty() && ec == std::errc() && ptr == t.data() + t.size() && std::isfinite(v)) {
      return InitDist::constant(v);
    }
    throw ConfigError("bad distribution '" + text +
                      "' (expected constant(v), normal(mean, sd) or uniform(lo, hi))");
  }
  const std::string name = trim(t.substr(0, open));
  const auto args = split_list(t.substr(open + 1, t.size() - open - 2));
  std::vector<double> v;
  for (const auto& a : args) v.push_back(to_double("init", name, a));
  if (name == "constant" && v.size() == 1) return InitDist::constant(v[0]);
  if (name == "normal" && v.size() == 2) return InitDist::normal(v[0], v[1]);
  if (name == "uniform" && v.size() == 2) return InitDist::uniform(v[0], v[1]);
  throw ConfigError("bad distribution '" + text +
                    "' (expected constant(v), normal(mean, sd) or uniform(lo, hi))");
}

void apply_setting(ExperimentConfig& c, const std::string& section, const std::string& key,
                   const std::string& raw) {
  const std::string value = trim(raw);
  const std::string id = dotted(section, key);
  auto d = [&] { return to_double(section, key, value); };
  auto i = [&] { return to_int(section, key, value); };
  auto init = [&](InitDist& dst) {
    try {
      dst = parse_init(value);
    } catch (const ConfigError& e) {
      throw ConfigError(id + ": " + e.what(), 0, id);
    }
  };

  if (section == "experiment") {
    if (key == "kind") {
      c.kind = parse_kind(value);
      return;
    }
    if (key == "output_dir") {
      c.output_dir = value;
      return;
    }
    if (key == "mode") {
      c.mode = i();
      return;
    }
    if (key == "lobes") {
      c.lobes = i();
      return;
    }
    if (key == "preset") {
      throw ConfigError("experiment.preset must be the first setting", 0, id);
    }
  } else if (section == "problem") {
    if (key == "mu") {
      c.mu = d();
      return;
    }
    if (key == "beta") {
      if (value == "auto") {
        c.beta.reset();
      } else {
        c.beta = d();
      }
      return;
    }
    if (key == "r_s") {
      c.r_s = d();
      return;
    }
  } else if (section == "kernel") {
    if (key == "tau") {
      c.kernel.tau = d();
      return;
    }
    if (key == "n_quad") {
      c.kernel.n_quad = i();
      return;
    }
    if (key == "guard") {
      c.kernel.guard = d();
      return;
    }
  } else if (section == "network") {
    if (key == "width") {
      c.train.init.width = i();
      return;
    }
    if (key == "activation") {
      try {
        c.activation = Activation::parse(value);
      } catch (const DomainError& e) {
        throw ConfigError(id + ": " + e.what(), 0, id);
      }
      return;
    }
    if (key == "a_init") return init(c.train.init.a);
    if (key == "b_init") return init(c.train.init.b);
    if (key == "c_init") return init(c.train.init.c);
    if (key == "d_init") return init(c.train.init.d);
  } else if (section == "train") {
    if (key == "m") {
      c.train.m = i();
      return;
    }
    if (key == "batches") {
      c.train.batches = i();
      return;
    }
    if (key == "epochs") {
      c.train.epochs = i();
      return;
    }
    if (key == "schedule") {
      if (value == "constant") {
        c.schedule.kind = StepSchedule::Kind::constant;
      } else if (value == "harmonic") {
        c.schedule.kind = StepSchedule::Kind::harmonic;
      } else if (value == "geometric") {
        c.schedule.kind = StepSchedule::Kind::geometric;
      } else {
        bad_value(section, key, value, "constant, harmonic or geometric");
      }
      return;
    }
    if (key == "alpha") {
      c.schedule.alpha = d();
      return;
    }
    if (key == "alpha_floor") {
      c.schedule.floor = d();
      return;
    }
    if (key == "alpha_factor") {
      if (value == "auto") {
        c.schedule.factor.reset();
      } else {
        c.schedule.factor = d();
      }
      return;
    }
    if (key == "seed") {
      const long long s = to_integer(section, key, value);
      if (s < 0) bad_value(section, key, value, "a non-negative integer");
      c.train.seed = static_cast<std::uint64_t>(s);
      return;
    }
    if (key == "guard_retries") {
      c.train.guard_retries = i();
      return;
    }
    if (key == "full_grid") {
      c.train.full_grid = i();
      return;
    }
    if (key == "checkpoint_every") {
      c.train.checkpoint_every = i();
      return;
    }
  } else if (section == "bifurcation") {
    if (key == "n_min") {
      c.bifurcation.n_min = i();
      return;
    }
    if (key == "n_max") {
      c.bifurcation.n_max = i();
      return;
    }
  } else if (section == "sweep") {
    if (key == "taus") {
      std::vector<double> taus;
      for (const auto& item : split_list(value)) taus.push_back(to_double(section, key, item));
      c.sweep.taus = taus;
      return;
    }
    if (key == "nodes_per_tau") {
      c.sweep.nodes_per_tau = d();
      return;
    }
  } else if (section == "gradcheck") {
    if (key == "width") {
      c.gradcheck.width = i();
      return;
    }
    if (key == "m") {
      c.gradcheck.m = i();
      return;
    }
    if (key == "draws") {
      c.gradcheck.draws = i();
      return;
    }
    if (key == "tau") {
      c.gradcheck.tau = d();
      return;
    }
    if (key == "n_quad") {
      c.gradcheck.n_quad = i();
      return;
    }
    if (key == "tolerance") {
      c.gradcheck.tolerance = d();
      return;
    }
  } else if (section == "output") {
    if (key == "boundary_samples") {
      c.output.boundary_samples = i();
      return;
    }
    if (key == "spectrum_modes") {
      c.output.spectrum_modes = i();
      return;
    }
    if (key == "spectrum_samples") {
      c.output.spectrum_samples = i();
      return;
    }
  } else {
    throw ConfigError("unknown section [" + section + "]", 0, section);
  }
  throw ConfigError("unknown key '" + key + "' in [" + section + "]", 0, id);
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::set<std::string> seen;
  int lineno = 0;
  bool any_setting = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError("malformed section header", lineno);
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty()) throw ConfigError("empty section name", lineno);
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value", lineno);
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key", lineno);
    if (section.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": '" + key +
                            "' appears before any [section]",
                        lineno, key);
    }
    const std::string id = dotted(section, key);
    if (!seen.insert(id).second) {
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key " + id, lineno, id);
    }
    try {
      if (id == "experiment.preset") {
        if (any_setting) {
          throw ConfigError("experiment.preset must be the first setting", 0, id);
        }
        config = preset(value);
      } else {
        apply_setting(config, section, key, value);
      }
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what(), lineno,
                        e.key().empty() ? id : e.key());
    }
    any_setting = true;
  }
  try {
    config.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what(), 0, e.key());
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[experiment]\n"
      << "kind = " << kind_name(c.kind) << "\n"
      << "output_dir = " << c.output_dir.string() << "\n"
      << "mode = " << c.mode << "\n"
      << "lobes = " << c.lobes << "\n\n";
  out << "[problem]\n"
      << "mu = " << num(c.mu) << "\n"
      << "beta = " << (c.beta ? num(*c.beta) : std::string("auto")) << "\n"
      << "r_s = " << num(c.r_s) << "\n\n";
  out << "[kernel]\n"
      << "tau = " << num(c.kernel.tau) << "\n"
      << "n_quad = " << c.kernel.n_quad << "\n"
      << "guard = " << num(c.kernel.guard) << "\n\n";
  out << "[network]\n"
      << "width = " << c.train.init.width << "\n"
      << "activation = " << c.activation.name() << "\n"
      << "a_init = " << format_init(c.train.init.a) << "\n"
      << "b_init = " << format_init(c.train.init.b) << "\n"
      << "c_init = " << format_init(c.train.init.c) << "\n"
      << "d_init = " << format_init(c.train.init.d) << "\n\n";
  out << "[train]\n"
      << "m = " << c.train.m << "\n"
      << "batches = " << c.train.batches << "\n"
      << "epochs = " << c.train.epochs << "\n"
      << "schedule = " << schedule_name(c.schedule.kind) << "\n"
      << "alpha = " << num(c.schedule.alpha) << "\n"
      << "alpha_floor = " << num(c.schedule.floor) << "\n"
      << "alpha_factor = " << (c.schedule.factor ? num(*c.schedule.factor) : std::string("auto"))
      << "\n"
      << "seed = " << c.train.seed << "\n"
      << "guard_retries = " << c.train.guard_retries << "\n"
      << "full_grid = " << c.train.full_grid << "\n"
      << "checkpoint_every = " << c.train.checkpoint_every << "\n\n";
  out << "[bifurcation]\n"
      << "n_min = " << c.bifurcation.n_min << "\n"
      << "n_max = " << c.bifurcation.n_max << "\n\n";
  out << "[sweep]\n" << "taus = ";
  for (std::size_t k = 0; k < c.sweep.taus.size(); ++k) {
    out << (k ? ", " : "") << num(c.sweep.taus[k]);
  }
  out << "\n"
      << "nodes_per_tau = " << num(c.sweep.nodes_per_tau) << "\n\n";
  out << "[gradcheck]\n"
      << "width = " << c.gradcheck.width << "\n"
      << "m = " << c.gradcheck.m << "\n"
      << "draws = " << c.gradcheck.draws << "\n"
      << "tau = " << num(c.gradcheck.tau) << "\n"
      << "n_quad = " << c.gradcheck.n_quad << "\n"
      << "tolerance = " << num(c.gradcheck.tolerance) << "\n\n";
  out << "[output]\n"
      << "boundary_samples = " << c.output.boundary_samples << "\n"
      << "spectrum_modes = " << c.output.spectrum_modes << "\n"
      << "spectrum_samples = " << c.output.spectrum_samples << "\n";
  return out.str();
}

}  // namespace helewave::harness
