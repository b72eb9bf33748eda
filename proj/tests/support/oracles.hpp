// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference implementations. None of these call the code paths
// they are used to check.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "swarmkd/config_space.hpp"
#include "swarmkd/cost_model.hpp"
#include "swarmkd/search.hpp"

namespace swarmkd::oracle {

/// Parameter count from an explicit per-tensor shape list.
inline std::uint64_t shape_param_count(const ArchitectureConfig& c) {
  using Shape = std::vector<std::uint64_t>;
  const auto v = static_cast<std::uint64_t>(c.vocab_size);
  const auto h = static_cast<std::uint64_t>(c.hidden_size);
  const auto i = static_cast<std::uint64_t>(c.intermediate_size);
  const auto seq = static_cast<std::uint64_t>(c.max_sequence_length);
  std::vector<Shape> shapes = {{v, h}, {seq, h}, {1, h}, {h}, {h}};
  for (std::int64_t l = 0; l < c.num_hidden_layers; ++l) {
    for (int p = 0; p < 4; ++p) {
      shapes.push_back({h, h});
      shapes.push_back({h});
    }
    shapes.push_back({h});
    shapes.push_back({h});
    shapes.push_back({h, i});
    shapes.push_back({i});
    shapes.push_back({i, h});
    shapes.push_back({h});
    shapes.push_back({h});
    shapes.push_back({h});
  }
  shapes.push_back({h, h});
  shapes.push_back({h});
  shapes.push_back({h, 4});
  shapes.push_back({4});
  std::uint64_t total = 0;
  for (const auto& s : shapes) {
    std::uint64_t n = 1;
    for (const auto d : s) n *= d;
    total += n;
  }
  return total;
}

/// Forward GFLOPs summed term by term (two FLOPs per multiply-add).
inline double gflops_by_terms(const ArchitectureConfig& c, std::int64_t n) {
  const double L = static_cast<double>(c.num_hidden_layers);
  const double h = static_cast<double>(c.hidden_size);
  const double i = static_cast<double>(c.intermediate_size);
  const double s = static_cast<double>(n);
  const double qkvo = 4.0 * (2.0 * s * h * h);
  const double scores = 2.0 * s * s * h;
  const double mix = 2.0 * s * s * h;
  const double up = 2.0 * s * h * i;
  const double down = 2.0 * s * i * h;
  return L * (qkvo + scores + mix + up + down) / 1e9;
}

/// Visits every grid point of the searchable dims (odometer over grid
/// indices), building configs directly from grid values.
inline std::uint64_t for_each_grid_point(const ConfigSpace& space,
                                         const std::function<void(const ArchitectureConfig&)>& fn) {
  const auto searchable = space.searchable();
  std::vector<std::size_t> idx(searchable.size(), 0);
  std::uint64_t visited = 0;
  while (true) {
    ArchitectureConfig cfg;
    for (const auto& d : space.dims()) cfg.set(d.name, d.grid.front());
    for (std::size_t k = 0; k < searchable.size(); ++k) {
      const auto& d = space.dims()[searchable[k]];
      cfg.set(d.name, d.grid[idx[k]]);
    }
    fn(cfg);
    ++visited;
    std::size_t k = 0;
    for (; k < idx.size(); ++k) {
      if (++idx[k] < space.dims()[searchable[k]].grid.size()) break;
      idx[k] = 0;
    }
    if (k == idx.size()) break;
  }
  return visited;
}

struct Optimum {
  double fitness = kInfeasible;
  ArchitectureConfig config;
  std::uint64_t points = 0;
};

/// Exhaustive maximum of GFLOPs - |S - s| under the budget, with its own
/// size/compute arithmetic.
inline Optimum exhaustive_optimum(const ConfigSpace& space, const FitnessSpec& spec) {
  Optimum best;
  best.points = for_each_grid_point(space, [&](const ArchitectureConfig& cfg) {
    if (cfg.hidden_size % cfg.num_attention_heads != 0) return;
    const double size_mb = static_cast<double>(shape_param_count(cfg)) * 4.0 / (1024.0 * 1024.0);
    if (size_mb > spec.budget_mb) return;
    const double f = gflops_by_terms(cfg, spec.seq_len) - std::abs(spec.teacher_size_gb - size_mb / 1024.0);
    if (f > best.fitness) {
      best.fitness = f;
      best.config = cfg;
    }
  });
  return best;
}

/// Pearson correlation between one-hot prediction and truth matrices
/// (the covariance form of multiclass MCC).
inline double mcc_by_correlation(std::span<const int> pred, std::span<const int> truth,
                                 std::size_t classes) {
  const double n = static_cast<double>(pred.size());
  std::vector<double> mean_x(classes, 0.0);
  std::vector<double> mean_y(classes, 0.0);
  for (std::size_t s = 0; s < pred.size(); ++s) {
    mean_x[static_cast<std::size_t>(pred[s])] += 1.0 / n;
    mean_y[static_cast<std::size_t>(truth[s])] += 1.0 / n;
  }
  double cxy = 0.0;
  double cxx = 0.0;
  double cyy = 0.0;
  for (std::size_t s = 0; s < pred.size(); ++s) {
    for (std::size_t k = 0; k < classes; ++k) {
      const double x = (static_cast<std::size_t>(pred[s]) == k ? 1.0 : 0.0) - mean_x[k];
      const double y = (static_cast<std::size_t>(truth[s]) == k ? 1.0 : 0.0) - mean_y[k];
      cxy += x * y;
      cxx += x * x;
      cyy += y * y;
    }
  }
  if (cxx == 0.0 || cyy == 0.0) return 0.0;
  return cxy / std::sqrt(cxx * cyy);
}

/// Central differences of a scalar function of a vector.
inline std::vector<double> central_difference(const std::function<double(std::span<const double>)>& f,
                                              std::vector<double> x, double eps) {
  std::vector<double> g(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double orig = x[k];
    x[k] = orig + eps;
    const double up = f(x);
    x[k] = orig - eps;
    const double down = f(x);
    x[k] = orig;
    g[k] = (up - down) / (2.0 * eps);
  }
  return g;
}

/// alpha * CE + (1 - alpha) * T^2 * soft cross-entropy, evaluated directly
/// in extended precision.
inline long double kd_loss_extended(std::span<const double> z_t, std::span<const long double> z_s,
                                    std::size_t label, double alpha, double temperature) {
  const auto log_softmax = [](std::vector<long double> z, long double T) {
    long double m = z[0];
    for (const auto v : z) m = std::max(m, v);
    long double sum = 0.0L;
    for (auto& v : z) {
      v = (v - m) / T;
      sum += std::exp(v);
    }
    for (auto& v : z) v -= std::log(sum);
    return z;
  };
  const long double T = temperature;
  const auto lp = log_softmax(std::vector<long double>(z_t.begin(), z_t.end()), T);
  const auto lq = log_softmax(std::vector<long double>(z_s.begin(), z_s.end()), T);
  const auto l1 = log_softmax(std::vector<long double>(z_s.begin(), z_s.end()), 1.0L);
  long double sce = 0.0L;
  for (std::size_t i = 0; i < lp.size(); ++i) sce -= std::exp(lp[i]) * lq[i];
  return static_cast<long double>(alpha) * -l1[label] +
         (1.0L - static_cast<long double>(alpha)) * T * T * sce;
}

/// Central differences of kd_loss_extended with respect to z_s.
inline std::vector<double> kd_gradient_extended(std::span<const double> z_t, std::span<const double> z_s,
                                                std::size_t label, double alpha, double temperature,
                                                double eps) {
  std::vector<long double> z(z_s.begin(), z_s.end());
  std::vector<double> g(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    const long double orig = z[k];
    z[k] = orig + eps;
    const long double up = kd_loss_extended(z_t, z, label, alpha, temperature);
    z[k] = orig - eps;
    const long double down = kd_loss_extended(z_t, z, label, alpha, temperature);
    z[k] = orig;
    g[k] = static_cast<double>((up - down) / (2.0L * eps));
  }
  return g;
}

/// |a - b| <= tol * max(|a|, |b|, floor).
inline bool close_rel(double a, double b, double tol, double floor = 1e-8) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace swarmkd::oracle
