// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0

#include "swarmkd/search.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace swarmkd {

FitnessSpec FitnessSpec::for_budget(double budget_mb) {
  FitnessSpec spec;
  spec.teacher_size_gb = model_size(teacher_config()).size_gb;
  spec.budget_mb = budget_mb;
  return spec;
}

void FitnessSpec::validate() const {
  if (!(teacher_size_gb > 0.0)) throw std::invalid_argument("teacher_size_gb must be > 0");
  if (!(budget_mb > 0.0)) throw std::invalid_argument("budget_mb must be > 0");
  if (seq_len < 1) throw std::invalid_argument("seq_len must be >= 1");
}

double fitness(const ArchitectureConfig& cfg, const FitnessSpec& spec) {
  if (!structural_violations(cfg).empty()) return kInfeasible;
  const auto size = model_size(cfg);
  if (size.size_mb > spec.budget_mb) return kInfeasible;
  return forward_gflops(cfg, spec.seq_len) - std::abs(spec.teacher_size_gb - size.size_gb);
}

FitnessEvaluator::FitnessEvaluator(ConfigSpace space, FitnessSpec spec)
    : space_(std::move(space)), spec_(spec) {
  spec_.validate();
  if (space_.searchable_count() == 0) {
    throw std::invalid_argument("search space has no searchable dimension");
  }
}

double FitnessEvaluator::operator()(std::span<const double> position) const {
  return fitness(decode(position, space_), spec_);
}

void write_trace_csv(std::ostream& os, const SearchTrace& trace) {
  os << "iter,g_best_fitness\n";
  const auto old = os.precision(17);
  for (std::size_t i = 0; i < trace.g_best_fitness.size(); ++i) {
    os << i << ',' << trace.g_best_fitness[i] << '\n';
  }
  os.precision(old);
}

TimingSummary summarize_timing(std::vector<double> run_seconds) {
  if (run_seconds.empty()) throw std::invalid_argument("runs must be >= 1");
  TimingSummary t;
  t.run_seconds = std::move(run_seconds);
  const auto n = static_cast<double>(t.run_seconds.size());
  double sum = 0.0;
  for (const double s : t.run_seconds) sum += s;
  t.mean_s = sum / n;
  double var = 0.0;
  for (const double s : t.run_seconds) var += (s - t.mean_s) * (s - t.mean_s);
  t.stddev_s = std::sqrt(var / n);
  return t;
}

TimingSummary repeat_timing(const std::function<SearchTrace(std::uint64_t)>& search,
                            std::size_t runs, std::uint64_t base_seed) {
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  std::vector<double> seconds;
  for (std::size_t r = 0; r < runs; ++r) seconds.push_back(search(base_seed + r).wall_time_s);
  return summarize_timing(std::move(seconds));
}

}  // namespace swarmkd
