// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "support/oracles.hpp"
#include "swarmkd/config_space.hpp"
#include "swarmkd/cost_model.hpp"
#include "swarmkd/ga.hpp"
#include "swarmkd/pso.hpp"
#include "swarmkd/search.hpp"

using namespace swarmkd;

namespace {

// Two searchable dims: 12 layers x 32 hidden sizes = 384 points.
ConfigSpace two_dim_space() {
  const auto base = default_space();
  auto space = base;
  for (const auto& d : base.dims()) {
    if (d.searchable()) space = space.with_dim(HyperparamDef::fixed(d.name, d.grid.front(), d.affects_size));
  }
  return space.with_dim(HyperparamDef::integer_grid("num_hidden_layers", 1, 12, 1, true))
      .with_dim(HyperparamDef::integer_grid("hidden_size", 16, 512, 16, true));
}

// Four searchable dims, 480 points.
ConfigSpace four_dim_space() {
  return default_space()
      .with_dim(HyperparamDef::integer_grid("vocab_size", 1000, 5000, 1000, true))
      .with_dim(HyperparamDef::integer_grid("num_hidden_layers", 1, 12, 1, true))
      .with_dim(HyperparamDef::integer_grid("hidden_size", 32, 128, 32, true))
      .with_dim(HyperparamDef::integer_grid("intermediate_size", 16, 16, 1, true))
      .with_dim(HyperparamDef::integer_grid("num_attention_heads", 1, 2, 1, true))
      .with_dim(HyperparamDef::fixed("learning_rate", 5e-4, false));
}

bool monotone(const std::vector<double>& trace) {
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i] < trace[i - 1]) return false;
  }
  return true;
}

PsoParams small_pso(std::uint64_t seed) {
  PsoParams p;
  p.swarm_size = 30;
  p.max_iter = 40;
  p.seed = seed;
  return p;
}

GaParams small_ga(std::uint64_t seed) {
  GaParams p;
  p.population = 30;
  p.generations = 40;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("fitness") {
  const auto spec = FitnessSpec::for_budget(50.0);
  CHECK(spec.teacher_size_gb == doctest::Approx(475.491226196289 / 1024.0));

  auto cfg = teacher_config();
  cfg.vocab_size = 1000;
  cfg.num_hidden_layers = 2;
  cfg.hidden_size = 128;
  cfg.intermediate_size = 256;
  cfg.num_attention_heads = 4;
  const auto cost = estimate(cfg);
  CHECK(fitness(cfg, spec) == doctest::Approx(cost.gflops - std::abs(spec.teacher_size_gb - cost.size_gb)));

  // a student exactly the teacher's size scores its GFLOPs
  FitnessSpec same{model_size(cfg).size_gb, 50.0, kDefaultSeqLen};
  CHECK(fitness(cfg, same) == doctest::Approx(cost.gflops).epsilon(1e-15));

  // budget violation and structural violation
  cfg.num_hidden_layers = 12;
  cfg.hidden_size = 384;
  cfg.intermediate_size = 1536;
  REQUIRE(model_size(cfg).size_mb > 50.0);
  CHECK(fitness(cfg, spec) == kInfeasible);
  cfg = teacher_config();
  cfg.hidden_size = 80;
  CHECK(fitness(cfg, spec) == kInfeasible);

  CHECK_THROWS_AS(FitnessSpec::for_budget(0.0).validate(), std::invalid_argument);
}

TEST_CASE("evaluator rejects a space without searchable dims") {
  const auto base = default_space();
  auto space = base;
  for (const auto& d : base.dims()) {
    if (d.searchable()) space = space.with_dim(HyperparamDef::fixed(d.name, d.grid.front(), d.affects_size));
  }
  CHECK_THROWS_AS(FitnessEvaluator(space, FitnessSpec::for_budget(3.0)), std::invalid_argument);
}

TEST_CASE("pso reaches the exhaustive optimum on small spaces") {
  for (const auto& space : {two_dim_space(), four_dim_space()}) {
    for (const double budget : {3.0, 25.0}) {
      const auto spec = FitnessSpec::for_budget(budget);
      const auto best = oracle::exhaustive_optimum(space, spec);
      REQUIRE(best.points <= 500);
      REQUIRE(best.fitness > kInfeasible);
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto trace = pso_search(space, small_pso(seed), spec);
        CHECK(trace.best_fitness == doctest::Approx(best.fitness).epsilon(1e-12));
        CHECK(fitness(trace.best_config, spec) == trace.best_fitness);
      }
    }
  }
}

TEST_CASE("ga reaches the exhaustive optimum on small spaces") {
  for (const auto& space : {two_dim_space(), four_dim_space()}) {
    for (const double budget : {3.0, 25.0}) {
      const auto spec = FitnessSpec::for_budget(budget);
      const auto best = oracle::exhaustive_optimum(space, spec);
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto trace = ga_search(space, small_ga(seed), spec);
        CHECK(trace.best_fitness == doctest::Approx(best.fitness).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("single particle, single iteration") {
  const auto space = default_space();
  const auto spec = FitnessSpec::for_budget(500.0);
  PsoParams p;
  p.swarm_size = 1;
  p.max_iter = 1;
  p.seed = 5;
  ParticleSwarm swarm(FitnessEvaluator(space, spec), p);
  const double initial = swarm.particles()[0].fitness;
  const auto initial_pos = std::vector<double>(swarm.particles()[0].position.begin(),
                                               swarm.particles()[0].position.end());
  CHECK(swarm.global_best_fitness() == initial);
  CHECK(initial == fitness(decode(initial_pos, space), spec));

  const auto trace = pso_search(space, p, spec);
  REQUIRE(trace.g_best_fitness.size() == 2);
  CHECK(trace.g_best_fitness[0] == initial);
  CHECK(trace.evaluations == 2);
}

TEST_CASE("pso invariants hold every step") {
  const auto space = default_space();
  auto p = small_pso(11);
  ParticleSwarm swarm(FitnessEvaluator(space, FitnessSpec::for_budget(25.0)), p);
  double last = swarm.global_best_fitness();
  for (int it = 0; it < 30; ++it) {
    swarm.step();
    CHECK(swarm.global_best_fitness() >= last);
    last = swarm.global_best_fitness();
    for (const auto& particle : swarm.particles()) {
      CHECK(particle.best_fitness >= particle.fitness);
      CHECK(particle.best_fitness <= swarm.global_best_fitness());
      for (std::size_t d = 0; d < particle.position.size(); ++d) {
        CHECK(particle.position[d] >= 0.0);
        CHECK(particle.position[d] <= 1.0);
        CHECK(std::abs(particle.velocity[d]) <= p.v_max);
      }
    }
  }
  CHECK(swarm.evaluations() == p.swarm_size * 31);
}

TEST_CASE("search traces are monotone and deterministic") {
  const auto space = default_space();
  const auto spec = FitnessSpec::for_budget(3.0);
  const auto a = pso_search(space, small_pso(7), spec);
  const auto b = pso_search(space, small_pso(7), spec);
  CHECK(monotone(a.g_best_fitness));
  CHECK(a.g_best_fitness == b.g_best_fitness);
  CHECK(a.best_config == b.best_config);
  CHECK(a.g_best_fitness.size() == 41);

  const auto c = pso_search(space, small_pso(8), spec);
  CHECK(c.g_best_fitness != a.g_best_fitness);

  const auto g1 = ga_search(space, small_ga(7), spec);
  const auto g2 = ga_search(space, small_ga(7), spec);
  CHECK(monotone(g1.g_best_fitness));
  CHECK(g1.g_best_fitness == g2.g_best_fitness);
}

TEST_CASE("ga with two individuals keeps the better one") {
  const auto space = default_space();
  const auto spec = FitnessSpec::for_budget(25.0);
  GaParams p;
  p.population = 2;
  p.generations = 1;
  p.elitism = 1;
  p.seed = 3;
  GeneticSearch ga(FitnessEvaluator(space, spec), p);
  const auto initial = std::vector<Individual>(ga.population().begin(), ga.population().end());
  const double best0 = std::max(initial[0].fitness, initial[1].fitness);
  const auto& best_genes = initial[0].fitness >= initial[1].fitness ? initial[0].genes : initial[1].genes;
  ga.step();
  CHECK(ga.population()[0].genes == best_genes);
  CHECK(ga.best_fitness() >= best0);
  CHECK(ga.evaluations() == 3);
}

TEST_CASE("parameter validation") {
  PsoParams p;
  p.swarm_size = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = PsoParams{};
  p.v_max = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  GaParams g;
  g.elitism = g.population;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g = GaParams{};
  g.population = 1;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("infeasible budget raises") {
  const auto space = default_space();
  CHECK_THROWS_AS(pso_search(space, small_pso(0), FitnessSpec::for_budget(0.01)), NoFeasibleArchitecture);
  CHECK_THROWS_AS(ga_search(space, small_ga(0), FitnessSpec::for_budget(0.01)), NoFeasibleArchitecture);
}

TEST_CASE("trace csv") {
  SearchTrace t;
  t.g_best_fitness = {1.0, 1.5, 1.5};
  std::ostringstream os;
  write_trace_csv(os, t);
  CHECK(os.str() == "iter,g_best_fitness\n0,1\n1,1.5\n2,1.5\n");
}

TEST_CASE("repeat timing") {
  const auto space = default_space();
  const auto spec = FitnessSpec::for_budget(25.0);
  const auto one = repeat_timing([&](std::uint64_t s) { return pso_search(space, small_pso(s), spec); }, 1, 0);
  REQUIRE(one.run_seconds.size() == 1);
  CHECK(one.mean_s == one.run_seconds[0]);
  CHECK(one.stddev_s == 0.0);

  auto run_iters = [&](std::size_t iters) {
    return repeat_timing([&](std::uint64_t s) {
      auto p = small_pso(s);
      p.max_iter = iters;
      return pso_search(space, p, spec);
    }, 3, 0);
  };
  CHECK(run_iters(200).mean_s > run_iters(100).mean_s);
  CHECK_THROWS_AS(repeat_timing([&](std::uint64_t s) { return pso_search(space, small_pso(s), spec); }, 0, 0),
                  std::invalid_argument);
}
