#include "helewave/network.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "helewave/error.hpp"

namespace helewave {

Activation Activation::finger(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("finger activation: p must be > 0");
  return Activation(Kind::finger, p);
}

Activation Activation::parse(const std::string& text) {
  if (text == "cosine") return cosine();
  if (text == "sigmoid") return sigmoid();
  if (text == "finger") return finger();
  const std::string prefix = "finger:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string tail = text.substr(prefix.size());
    double p = 0.0;
    auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), p);
    if (ec != std::errc() || ptr != tail.data() + tail.size()) {
      throw DomainError("bad finger parameter in activation '" + text + "'");
    }
    return finger(p);
  }
  throw DomainError("unknown activation '" + text + "' (expected cosine, sigmoid, finger[:p])");
}

std::string Activation::name() const {
  switch (kind_) {
    case Kind::cosine:
      return "cosine";
    case Kind::sigmoid:
      return "sigmoid";
    case Kind::finger: {
      if (p_ == kDefaultFingerP) return "finger";
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof(buf), p_);
      return "finger:" + std::string(buf, res.ptr);
    }
  }
  return "?";
}

std::array<double, 5> Activation::derivatives(double x) const {
  switch (kind_) {
    case Kind::cosine: {
      const double c = std::cos(x), s = std::sin(x);
      return {c, -s, -c, s, c};
    }
    case Kind::sigmoid: {
      const double s = 1.0 / (1.0 + std::exp(-x));
      const double s1 = s * (1.0 - s);
      const double s2 = s1 * (1.0 - 2.0 * s);
      const double s3 = s1 * (1.0 - 6.0 * s + 6.0 * s * s);
      const double s4 = s2 * (1.0 - 12.0 * s + 12.0 * s * s);
      return {s, s1, s2, s3, s4};
    }
    case Kind::finger: {
      // g = cos^2 x + p^2 sin^2 x = A + B cos 2x, Psi = p / g.
      const double p = p_;
      const double big_a = 0.5 * (1.0 + p * p);
      const double big_b = 0.5 * (1.0 - p * p);
      const double c2 = std::cos(2.0 * x), s2 = std::sin(2.0 * x);
      const double g = big_a + big_b * c2;
      const double g1 = -2.0 * big_b * s2;
      const double g2 = -4.0 * big_b * c2;
      const double g3 = 8.0 * big_b * s2;
      const double g4 = 16.0 * big_b * c2;
      const double f = 1.0 / g;
      const double f2 = f * f, f3 = f2 * f, f4 = f3 * f, f5 = f4 * f;
      return {
          p * f,
          -p * g1 * f2,
          p * (2.0 * g1 * g1 * f3 - g2 * f2),
          p * (-6.0 * g1 * g1 * g1 * f4 + 6.0 * g1 * g2 * f3 - g3 * f2),
          p * (24.0 * g1 * g1 * g1 * g1 * f5 - 36.0 * g1 * g1 * g2 * f4 + 6.0 * g2 * g2 * f3 +
               8.0 * g1 * g3 * f3 - g4 * f2),
      };
    }
  }
  return {};
}

std::vector<double> NetworkParams::flatten() const {
  std::vector<double> out;
  out.reserve(size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  out.push_back(d);
  return out;
}

NetworkParams NetworkParams::from_flat(std::span<const double> flat) {
  if (flat.empty() || (flat.size() - 1) % 3 != 0) {
    throw DomainError("flattened parameter vector must have length 3N + 1");
  }
  const std::size_t n = (flat.size() - 1) / 3;
  NetworkParams p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.a[i] = flat[i];
    p.b[i] = flat[n + i];
    p.c[i] = flat[2 * n + i];
  }
  p.d = flat[3 * n];
  return p;
}

bool NetworkParams::all_finite() const {
  auto finite = [](const std::vector<double>& v) {
    for (double x : v)
      if (!std::isfinite(x)) return false;
    return true;
  };
  return finite(a) && finite(b) && finite(c) && std::isfinite(d);
}

void NetworkParams::validate() const {
  if (a.empty() || b.size() != a.size() || c.size() != a.size()) {
    throw DomainError("network parameters: a, b, c must have the same positive length");
  }
  if (!all_finite()) throw DomainError("network parameters must be finite");
}

JetAtTheta eval_jet(const NetworkParams& params, const Activation& act, double theta) {
  JetAtTheta jet{params.d, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < params.width(); ++i) {
    const double ai = params.a[i], bi = params.b[i];
    const auto psi = act.derivatives(bi * theta + params.c[i]);
    jet.r += ai * psi[0];
    jet.rp += ai * bi * psi[1];
    jet.rpp += ai * bi * bi * psi[2];
    jet.rppp += ai * bi * bi * bi * psi[3];
  }
  return jet;
}

void param_gradient_jet_into(const NetworkParams& params, const Activation& act, double theta,
                             std::span<double> rho, std::span<double> rho_p,
                             std::span<double> rho_pp) {
  const std::size_t n = params.width();
  for (std::size_t i = 0; i < n; ++i) {
    const auto psi = act.derivatives(params.b[i] * theta + params.c[i]);
    const UnitGradient u = unit_gradient(params.a[i], params.b[i], theta, psi);
    for (std::size_t k = 0; k < 3; ++k) {
      rho[k * n + i] = u.rho[k];
      rho_p[k * n + i] = u.rho_p[k];
      rho_pp[k * n + i] = u.rho_pp[k];
    }
  }
  rho[3 * n] = 1.0;
  rho_p[3 * n] = 0.0;
  rho_pp[3 * n] = 0.0;
}

ParamGradientJet param_gradient_jet(const NetworkParams& params, const Activation& act, double theta) {
  ParamGradientJet g{std::vector<double>(params.size()), std::vector<double>(params.size()),
                     std::vector<double>(params.size())};
  param_gradient_jet_into(params, act, theta, g.rho, g.rho_p, g.rho_pp);
  return g;
}

std::array<double, 3> periodic_defect(const NetworkParams& params, const Activation& act) {
  const JetAtTheta start = eval_jet(params, act, 0.0);
  const JetAtTheta end = eval_jet(params, act, 2.0 * std::numbers::pi);
  return {start.r - end.r, start.rp - end.rp, start.rpp - end.rpp};
}

std::array<std::vector<double>, 3> periodic_defect_gradient(const NetworkParams& params,
                                                            const Activation& act) {
  ParamGradientJet start = param_gradient_jet(params, act, 0.0);
  const ParamGradientJet end = param_gradient_jet(params, act, 2.0 * std::numbers::pi);
  for (std::size_t k = 0; k < params.size(); ++k) {
    start.rho[k] -= end.rho[k];
    start.rho_p[k] -= end.rho_p[k];
    start.rho_pp[k] -= end.rho_pp[k];
  }
  return {std::move(start.rho), std::move(start.rho_p), std::move(start.rho_pp)};
}

std::string checkpoint_to_json(const NetworkParams& params, const Activation& act) {
  nlohmann::ordered_json j;
  j["N"] = params.width();
  j["activation"] = act.name();
  j["a"] = params.a;
  j["b"] = params.b;
  j["c"] = params.c;
  j["d"] = params.d;
  return j.dump(2) + "\n";
}

void checkpoint_from_json(const std::string& text, NetworkParams& params, Activation& act) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    const auto n = j.at("N").get<std::size_t>();
    NetworkParams p;
    p.a = j.at("a").get<std::vector<double>>();
    p.b = j.at("b").get<std::vector<double>>();
    p.c = j.at("c").get<std::vector<double>>();
    p.d = j.at("d").get<double>();
    if (p.width() != n) throw DomainError("checkpoint: N does not match array lengths");
    p.validate();
    act = Activation::parse(j.at("activation").get<std::string>());
    params = std::move(p);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("checkpoint: ") + e.what());
  }
}

void save_checkpoint(const std::string& path, const NetworkParams& params, const Activation& act) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path);
  out << checkpoint_to_json(params, act);
}

void load_checkpoint(const std::string& path, NetworkParams& params, Activation& act) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read checkpoint " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  checkpoint_from_json(ss.str(), params, act);
}

}  // namespace helewave
