// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0

#include "swarmkd/ga.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace swarmkd {

void GaParams::validate() const {
  if (population < 2) throw std::invalid_argument("population must be >= 2");
  if (generations < 1) throw std::invalid_argument("generations must be >= 1");
  if (!(crossover_p >= 0.0 && crossover_p <= 1.0)) {
    throw std::invalid_argument("crossover_p must be in [0, 1]");
  }
  if (mutation_p && !(*mutation_p >= 0.0 && *mutation_p <= 1.0)) {
    throw std::invalid_argument("mutation_p must be in [0, 1]");
  }
  if (tournament_k < 1) throw std::invalid_argument("tournament_k must be >= 1");
  if (elitism >= population) throw std::invalid_argument("elitism must be < population");
}

GeneticSearch::GeneticSearch(FitnessEvaluator evaluator, GaParams params)
    : evaluator_(std::move(evaluator)), params_(params), rng_(params.seed) {
  params_.validate();
  const std::size_t dims = evaluator_.space().searchable_count();
  mutation_p_ = params_.mutation_p.value_or(1.0 / static_cast<double>(dims));
  population_.resize(params_.population);
  for (auto& ind : population_) {
    ind.genes.resize(dims);
    for (auto& g : ind.genes) g = rng_.uniform();
  }
  for (auto& ind : population_) {
    ind.fitness = evaluator_(ind.genes);
    ++evaluations_;
  }
  best_ = population_.front();
  track_best();
}

void GeneticSearch::track_best() {
  for (const auto& ind : population_) {
    if (ind.fitness > best_.fitness) best_ = ind;
  }
}

const Individual& GeneticSearch::tournament() {
  const Individual* winner = &population_[rng_.index(population_.size())];
  for (std::size_t k = 1; k < params_.tournament_k; ++k) {
    const auto& challenger = population_[rng_.index(population_.size())];
    if (challenger.fitness > winner->fitness) winner = &challenger;
  }
  return *winner;
}

void GeneticSearch::step() {
  std::vector<std::size_t> order(population_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
    return population_[a].fitness > population_[b].fitness;
  });

  std::vector<Individual> next;
  next.reserve(population_.size());
  for (std::size_t e = 0; e < params_.elitism; ++e) next.push_back(population_[order[e]]);
  const std::size_t first_child = next.size();

  while (next.size() < population_.size()) {
    const auto& a = tournament();
    const auto& b = tournament();
    Individual c1{a.genes, kInfeasible};
    Individual c2{b.genes, kInfeasible};
    if (rng_.bernoulli(params_.crossover_p)) {
      for (std::size_t d = 0; d < c1.genes.size(); ++d) {
        if (rng_.bernoulli(0.5)) std::swap(c1.genes[d], c2.genes[d]);
      }
    }
    for (auto* child : {&c1, &c2}) {
      for (auto& g : child->genes) {
        if (rng_.bernoulli(mutation_p_)) g = rng_.uniform();
      }
    }
    next.push_back(std::move(c1));
    if (next.size() < population_.size()) next.push_back(std::move(c2));
  }

  for (std::size_t i = first_child; i < next.size(); ++i) {
    next[i].fitness = evaluator_(next[i].genes);
    ++evaluations_;
  }
  population_ = std::move(next);
  track_best();
}

SearchTrace ga_search(const ConfigSpace& space, const GaParams& params, const FitnessSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  GeneticSearch ga(FitnessEvaluator(space, spec), params);
  SearchTrace trace;
  trace.g_best_fitness.reserve(params.generations + 1);
  trace.g_best_fitness.push_back(ga.best_fitness());
  for (std::size_t g = 0; g < params.generations; ++g) {
    ga.step();
    trace.g_best_fitness.push_back(ga.best_fitness());
  }
  trace.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (ga.best_fitness() == kInfeasible) throw NoFeasibleArchitecture();
  trace.best_fitness = ga.best_fitness();
  trace.best_position.assign(ga.best_position().begin(), ga.best_position().end());
  trace.best_config = decode(trace.best_position, space);
  trace.evaluations = ga.evaluations();
  return trace;
}

}  // namespace swarmkd
