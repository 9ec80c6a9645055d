#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "helewave/network.hpp"

namespace testing {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// Five-point central difference.
template <class F>
double central_diff(F&& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

// Small random network well inside the admissible region.
inline helewave::NetworkParams random_params(int width, std::uint64_t seed, double amp = 0.1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ua(-amp, amp), ub(1.0, 3.0), uc(-3.0, 3.0), ud(0.9, 1.1);
  helewave::NetworkParams p(width);
  for (int i = 0; i < width; ++i) {
    p.a[i] = ua(rng);
    p.b[i] = ub(rng);
    p.c[i] = uc(rng);
  }
  p.d = ud(rng);
  return p;
}

inline helewave::NetworkParams circle_params(int width, double radius = 1.0) {
  helewave::NetworkParams p(width);
  for (int i = 0; i < width; ++i) p.b[i] = 2.0;
  p.d = radius;
  return p;
}

}  // namespace testing
