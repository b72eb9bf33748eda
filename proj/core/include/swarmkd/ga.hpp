// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Genetic-algorithm baseline over the same encoding and fitness as the swarm.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "swarmkd/rng.hpp"
#include "swarmkd/search.hpp"

namespace swarmkd {

struct GaParams {
  std::size_t population = 200;
  std::size_t generations = 150;
  double crossover_p = 0.9;
  /// Per-gene reset probability; 1/D when unset.
  std::optional<double> mutation_p;
  std::size_t tournament_k = 2;
  std::size_t elitism = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Individual {
  std::vector<double> genes;
  double fitness = kInfeasible;
};

/// Generational GA: tournament selection, uniform crossover, per-gene
/// uniform-reset mutation, and `elitism` survivors copied unchanged.
class GeneticSearch {
 public:
  GeneticSearch(FitnessEvaluator evaluator, GaParams params);

  void step();

  std::span<const Individual> population() const noexcept { return population_; }
  double best_fitness() const noexcept { return best_.fitness; }
  std::span<const double> best_position() const noexcept { return best_.genes; }
  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  const Individual& tournament();
  void track_best();

  FitnessEvaluator evaluator_;
  GaParams params_;
  double mutation_p_ = 0.0;
  Rng rng_;
  std::vector<Individual> population_;
  Individual best_;
  std::size_t evaluations_ = 0;
};

SearchTrace ga_search(const ConfigSpace& space, const GaParams& params, const FitnessSpec& spec);

}  // namespace swarmkd
