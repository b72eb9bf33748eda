// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Particle swarm optimization over the encoded configuration space.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "swarmkd/rng.hpp"
#include "swarmkd/search.hpp"

namespace swarmkd {

struct PsoParams {
  std::size_t swarm_size = 200;
  std::size_t max_iter = 150;
  double inertia_w = 0.9;
  double c1 = 2.0;
  double c2 = 2.0;
  double v_max = 0.2;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Particle {
  std::vector<double> position;
  std::vector<double> velocity;
  std::vector<double> best_position;
  double fitness = kInfeasible;
  double best_fitness = kInfeasible;
};

/// Swarm state with an explicit step() so callers can inspect particles
/// between iterations.
///
/// Each step moves every particle using the global best from the end of the
/// previous step, then evaluates all new positions, then updates personal
/// and global bests in particle order. Improvements must be strict.
class ParticleSwarm {
 public:
  ParticleSwarm(FitnessEvaluator evaluator, PsoParams params);

  void step();

  std::span<const Particle> particles() const noexcept { return particles_; }
  double global_best_fitness() const noexcept { return g_best_fitness_; }
  std::span<const double> global_best_position() const noexcept { return g_best_position_; }
  std::size_t evaluations() const noexcept { return evaluations_; }
  const FitnessEvaluator& evaluator() const noexcept { return evaluator_; }

 private:
  void update_global_best();

  FitnessEvaluator evaluator_;
  PsoParams params_;
  Rng rng_;
  std::vector<Particle> particles_;
  std::vector<double> g_best_position_;
  double g_best_fitness_ = kInfeasible;
  std::size_t evaluations_ = 0;
};

/// Runs max_iter steps. Throws NoFeasibleArchitecture if every evaluated
/// point was infeasible.
SearchTrace pso_search(const ConfigSpace& space, const PsoParams& params, const FitnessSpec& spec);

}  // namespace swarmkd
