// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Fitness and result types shared by the swarm and genetic searches.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "swarmkd/config_space.hpp"
#include "swarmkd/cost_model.hpp"

namespace swarmkd {

inline constexpr double kInfeasible = -std::numeric_limits<double>::infinity();

struct FitnessSpec {
  double teacher_size_gb = 0.0;  // S
  double budget_mb = 0.0;        // hard upper bound on student size_mb
  std::int64_t seq_len = kDefaultSeqLen;

  /// Teacher size taken from teacher_config().
  static FitnessSpec for_budget(double budget_mb);
  void validate() const;
};

/// GFLOPs - |S - s_i| for structurally valid configs within budget,
/// kInfeasible otherwise.
double fitness(const ArchitectureConfig& cfg, const FitnessSpec& spec);

/// Fitness of a [0,1]^D position through decode().
class FitnessEvaluator {
 public:
  FitnessEvaluator(ConfigSpace space, FitnessSpec spec);

  double operator()(std::span<const double> position) const;

  const ConfigSpace& space() const noexcept { return space_; }
  const FitnessSpec& spec() const noexcept { return spec_; }

 private:
  ConfigSpace space_;
  FitnessSpec spec_;
};

class NoFeasibleArchitecture : public std::runtime_error {
 public:
  NoFeasibleArchitecture() : std::runtime_error("no feasible architecture under budget") {}
};

struct SearchTrace {
  /// Entry 0 is the initial population, entry k the state after step k.
  std::vector<double> g_best_fitness;
  std::vector<double> best_position;
  ArchitectureConfig best_config;
  double best_fitness = kInfeasible;
  double wall_time_s = 0.0;
  std::size_t evaluations = 0;
};

/// Writes "iter,g_best_fitness" rows with round-trip precision.
void write_trace_csv(std::ostream& os, const SearchTrace& trace);

struct TimingSummary {
  std::vector<double> run_seconds;
  double mean_s = 0.0;
  double stddev_s = 0.0;  // population standard deviation
};

/// Mean and population standard deviation of per-run wall times.
TimingSummary summarize_timing(std::vector<double> run_seconds);

/// Runs `search(seed)` for seeds base_seed, base_seed + 1, ... and averages
/// the reported wall times. runs must be >= 1.
TimingSummary repeat_timing(const std::function<SearchTrace(std::uint64_t)>& search,
                            std::size_t runs, std::uint64_t base_seed);

}  // namespace swarmkd
