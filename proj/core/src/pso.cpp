// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0

#include "swarmkd/pso.hpp"

#include <algorithm>
#include <chrono>

namespace swarmkd {

void PsoParams::validate() const {
  // A single particle is a degenerate but well-defined swarm.
  if (swarm_size < 1) throw std::invalid_argument("swarm_size must be >= 1");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (!(inertia_w > 0.0 && inertia_w < 2.0)) throw std::invalid_argument("inertia_w must be in (0, 2)");
  if (!(c1 > 0.0) || !(c2 > 0.0)) throw std::invalid_argument("c1 and c2 must be > 0");
  if (!(v_max > 0.0)) throw std::invalid_argument("v_max must be > 0");
}

ParticleSwarm::ParticleSwarm(FitnessEvaluator evaluator, PsoParams params)
    : evaluator_(std::move(evaluator)), params_(params), rng_(params.seed) {
  params_.validate();
  const std::size_t dims = evaluator_.space().searchable_count();
  particles_.resize(params_.swarm_size);
  for (auto& p : particles_) {
    p.position.resize(dims);
    p.velocity.resize(dims);
    for (std::size_t d = 0; d < dims; ++d) {
      p.position[d] = rng_.uniform();
      p.velocity[d] = rng_.uniform(-params_.v_max, params_.v_max);
    }
  }
  for (auto& p : particles_) {
    p.fitness = evaluator_(p.position);
    p.best_position = p.position;
    p.best_fitness = p.fitness;
    ++evaluations_;
  }
  g_best_position_ = particles_.front().best_position;
  g_best_fitness_ = particles_.front().best_fitness;
  update_global_best();
}

void ParticleSwarm::update_global_best() {
  for (const auto& p : particles_) {
    if (p.best_fitness > g_best_fitness_) {
      g_best_fitness_ = p.best_fitness;
      g_best_position_ = p.best_position;
    }
  }
}

void ParticleSwarm::step() {
  const double w = params_.inertia_w;
  const double v_max = params_.v_max;
  for (auto& p : particles_) {
    for (std::size_t d = 0; d < p.position.size(); ++d) {
      const double r1 = rng_.uniform();
      const double r2 = rng_.uniform();
      double v = w * p.velocity[d] + params_.c1 * r1 * (p.best_position[d] - p.position[d]) +
                 params_.c2 * r2 * (g_best_position_[d] - p.position[d]);
      v = std::clamp(v, -v_max, v_max);
      p.velocity[d] = v;
      p.position[d] = std::clamp(p.position[d] + v, 0.0, 1.0);
    }
  }
  // Pure evaluations; safe to parallelize without touching the RNG stream.
  for (auto& p : particles_) p.fitness = evaluator_(p.position);
  evaluations_ += particles_.size();

  for (auto& p : particles_) {
    if (p.fitness > p.best_fitness) {
      p.best_fitness = p.fitness;
      p.best_position = p.position;
    }
  }
  update_global_best();
}

SearchTrace pso_search(const ConfigSpace& space, const PsoParams& params, const FitnessSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  ParticleSwarm swarm(FitnessEvaluator(space, spec), params);
  SearchTrace trace;
  trace.g_best_fitness.reserve(params.max_iter + 1);
  trace.g_best_fitness.push_back(swarm.global_best_fitness());
  for (std::size_t it = 0; it < params.max_iter; ++it) {
    swarm.step();
    trace.g_best_fitness.push_back(swarm.global_best_fitness());
  }
  trace.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (swarm.global_best_fitness() == kInfeasible) throw NoFeasibleArchitecture();
  trace.best_fitness = swarm.global_best_fitness();
  trace.best_position.assign(swarm.global_best_position().begin(),
                             swarm.global_best_position().end());
  trace.best_config = decode(trace.best_position, space);
  trace.evaluations = swarm.evaluations();
  return trace;
}

}  // namespace swarmkd
