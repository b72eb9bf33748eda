// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <vector>

#include "swarmkd/config_space.hpp"
#include "swarmkd/cost_model.hpp"
#include "swarmkd/data.hpp"
#include "swarmkd/distill.hpp"
#include "swarmkd/ga.hpp"
#include "swarmkd/mlp.hpp"
#include "swarmkd/pso.hpp"
#include "swarmkd/rng.hpp"
#include "swarmkd/search.hpp"

namespace {

using namespace swarmkd;

void BM_Estimate(benchmark::State& state) {
  const auto cfg = teacher_config();
  for (auto _ : state) benchmark::DoNotOptimize(estimate(cfg));
}
BENCHMARK(BM_Estimate);

void BM_FitnessEvaluation(benchmark::State& state) {
  const FitnessEvaluator eval(default_space(), FitnessSpec::for_budget(3.0));
  Rng rng(1);
  std::vector<double> pos(default_space().searchable_count());
  for (auto _ : state) {
    for (auto& x : pos) x = rng.uniform();
    benchmark::DoNotOptimize(eval(pos));
  }
}
BENCHMARK(BM_FitnessEvaluation);

void BM_PsoSearch(benchmark::State& state) {
  const auto space = default_space();
  const auto spec = FitnessSpec::for_budget(25.0);
  PsoParams p;
  p.swarm_size = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    p.seed = seed++;
    benchmark::DoNotOptimize(pso_search(space, p, spec).best_fitness);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<std::int64_t>(p.max_iter + 1));
}
BENCHMARK(BM_PsoSearch)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_GaSearch(benchmark::State& state) {
  const auto space = default_space();
  const auto spec = FitnessSpec::for_budget(25.0);
  GaParams p;
  p.population = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    p.seed = seed++;
    benchmark::DoNotOptimize(ga_search(space, p, spec).best_fitness);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<std::int64_t>(p.generations + 1));
}
BENCHMARK(BM_GaSearch)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_KdLoss(benchmark::State& state) {
  Rng rng(2);
  std::vector<double> zt(4);
  std::vector<double> zs(4);
  for (auto& v : zt) v = rng.normal();
  for (auto& v : zs) v = rng.normal();
  const DistillParams params;
  for (auto _ : state) benchmark::DoNotOptimize(kd_loss(zt, zs, std::nullopt, params));
}
BENCHMARK(BM_KdLoss);

void BM_MlpForwardBackward(benchmark::State& state) {
  const auto net = mlp_classifier({16, 64, 64, 4}, Activation::gelu, 3);
  Rng rng(4);
  std::vector<double> x(16);
  for (auto& v : x) v = rng.normal();
  const std::vector<double> g{0.1, -0.2, 0.05, 0.05};
  std::vector<double> grad(net.param_count());
  for (auto _ : state) {
    benchmark::DoNotOptimize(net.forward(x));
    net.backward(x, g, grad);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_MlpForwardBackward);

void BM_DistillEpoch(benchmark::State& state) {
  SyntheticSpec spec;
  spec.n = 2000;
  const auto data = gen_synthetic(spec);
  const auto teacher = mlp_classifier({16, 64, 64, 4}, Activation::gelu, 5);
  DistillParams dp;
  dp.epochs = 1;
  for (auto _ : state) {
    auto student = mlp_classifier({16, 16, 4}, Activation::gelu, 6);
    distill_train(teacher, student, data, dp);
    benchmark::DoNotOptimize(student.parameters().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(data.size()));
}
BENCHMARK(BM_DistillEpoch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
