#include <benchmark/benchmark.h>

#include "helewave/bifurcation.hpp"
#include "helewave/gradients.hpp"
#include "helewave/parallel.hpp"
#include "helewave/reference.hpp"
#include "helewave/train.hpp"

using namespace helewave;

namespace {

struct Problem {
  NetworkParams params;
  Activation act = Activation::cosine();
  std::vector<double> thetas;
  ProblemParams pp;
  KernelConfig kc;
};

Problem make_problem(int m, int n_quad) {
  InitSpec init;
  init.a = InitDist::normal(0.0, 0.05);
  Problem p{init_params(init, 7), Activation::cosine(), sample_collocation(m, 7),
            {14.6, bifurcation::beta_of(14.6, 1.0)}, {1e-3, n_quad}};
  return p;
}

void BM_GradLossParallel(benchmark::State& state) {
  const auto p = make_problem(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    auto g = grad_loss(p.params, p.act, p.thetas, p.pp, p.kc);
    benchmark::DoNotOptimize(g.loss);
  }
  state.counters["threads"] = parallel::threads();
}

void BM_GradLossReference(benchmark::State& state) {
  const auto p = make_problem(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    auto g = reference::grad_loss(p.params, p.act, p.thetas, p.pp, p.kc);
    benchmark::DoNotOptimize(g.loss);
  }
}

void BM_ResidualParallel(benchmark::State& state) {
  const auto p = make_problem(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const NetworkCurve curve(p.params, p.act);
  for (auto _ : state) {
    auto r = residual_batch(curve, p.thetas, p.pp, p.kc);
    benchmark::DoNotOptimize(r.data());
  }
}

void BM_ResidualReference(benchmark::State& state) {
  const auto p = make_problem(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const NetworkCurve curve(p.params, p.act);
  for (auto _ : state) {
    auto r = reference::residual_batch(curve, p.thetas, p.pp, p.kc);
    benchmark::DoNotOptimize(r.data());
  }
}

}  // namespace

BENCHMARK(BM_GradLossParallel)->Args({20, 256})->Args({200, 1024})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GradLossReference)->Args({20, 256})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ResidualParallel)->Args({20, 256})->Args({200, 1024})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ResidualReference)->Args({20, 256})->Args({200, 1024})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
