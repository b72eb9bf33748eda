// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Synthetic four-class severity data and stratified splitting.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace swarmkd {

enum class Severity : int { critical = 0, high = 1, medium = 2, low = 3 };

inline constexpr std::size_t kNumSeverities = 4;

std::string_view severity_name(int label);
/// Case-insensitive; throws std::invalid_argument on unknown names.
int parse_severity(std::string_view name);

struct LabeledDataset {
  std::size_t feature_dim = 0;
  std::vector<double> features;  // row-major, size() * feature_dim
  std::vector<int> labels;

  std::size_t size() const noexcept { return labels.size(); }
  std::span<const double> row(std::size_t i) const {
    return {features.data() + i * feature_dim, feature_dim};
  }
  std::array<std::size_t, kNumSeverities> class_counts() const;

  /// Throws std::invalid_argument if any invariant is broken.
  void check() const;

  LabeledDataset subset(std::span<const std::size_t> indices) const;
};

/// Train-column class shares of the reference dataset:
/// (1169, 4454, 3795, 238) / 9656.
std::array<double, kNumSeverities> default_class_probs();

/// Class totals (train + validation + test) of the reference dataset. The
/// published High row lists 577 for validation and test, which contradicts
/// the published split sizes; 557 is the value consistent with them.
std::array<std::size_t, kNumSeverities> reference_class_totals();

/// Largest-remainder apportionment of `total` by `weights` (normalized
/// internally). Ties in the remainder go to the larger weight, then the
/// lower index.
std::vector<std::size_t> apportion(std::size_t total, std::span<const double> weights);

inline constexpr double kDefaultSeparation = 1.25;

struct SyntheticSpec {
  std::size_t n = 12071;
  std::array<double, kNumSeverities> class_probs = default_class_probs();
  std::size_t feature_dim = 16;
  double separation = kDefaultSeparation;
  std::uint64_t seed = 0;
};

/// Class-conditional unit-variance Gaussians. Class k has mean
/// (separation / 2) * c_k where c_k[j] = (-1)^popcount(k & (j mod 4)), so the
/// four means are mutually distinct hypercube corners. Label counts follow
/// apportion(n, class_probs); example order is a seeded shuffle.
/// Requires feature_dim >= 4, n >= 4, separation > 0.
LabeledDataset gen_synthetic(const SyntheticSpec& spec);

/// Same generator with exact per-class counts.
LabeledDataset gen_synthetic_counts(std::span<const std::size_t> counts, std::size_t feature_dim,
                                    double separation, std::uint64_t seed);

struct Split {
  LabeledDataset train;
  LabeledDataset validation;
  LabeledDataset test;
};

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

/// Per-class largest-remainder apportionment of the three fractions, then a
/// seeded shuffle within each class. Remainder ties go to the later part
/// (test before validation before train). Each part keeps the input order.
/// Throws std::invalid_argument if fractions do not sum to 1 or if a class
/// is too small to appear in every part with a positive fraction.
SplitIndices stratified_split_indices(const LabeledDataset& data,
                                      const std::array<double, 3>& fractions, std::uint64_t seed);

Split stratified_split(const LabeledDataset& data, const std::array<double, 3>& fractions,
                       std::uint64_t seed);

/// Header f0..f{F-1},label; labels as severity names.
void write_csv(std::ostream& os, const LabeledDataset& data);
/// Throws std::runtime_error naming the offending line/column.
LabeledDataset read_csv(std::istream& is);

LabeledDataset load_csv(const std::string& path);
void save_csv(const std::string& path, const LabeledDataset& data);

}  // namespace swarmkd
