// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Accuracy, multiclass Matthews correlation, and relative drops.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace swarmkd {

/// counts[truth][pred]. Throws on length mismatch or out-of-range labels.
std::vector<std::vector<std::size_t>> confusion_matrix(std::span<const int> pred,
                                                       std::span<const int> truth,
                                                       std::size_t n_classes);

/// Fraction of matching entries. Throws std::invalid_argument on length
/// mismatch or empty input.
double accuracy(std::span<const int> pred, std::span<const int> truth);

/// Accuracy restricted to examples whose true class is `cls`; nullopt if
/// the class does not occur.
std::optional<double> class_accuracy(std::span<const int> pred, std::span<const int> truth, int cls);

/// (c*s - sum p_k t_k) / sqrt((s^2 - sum p_k^2)(s^2 - sum t_k^2)) over the
/// confusion matrix. Returns 0 when the denominator is 0.
double mcc(std::span<const int> pred, std::span<const int> truth, std::size_t n_classes);

/// (base - other) / base * 100. Throws std::invalid_argument for base == 0.
double drop_pct(double base, double other);

struct EvalReport {
  std::string model;
  double accuracy = 0.0;
  double mcc = 0.0;
  double model_size_mb = 0.0;
  std::optional<double> time_cost_s;
  std::optional<double> acc_drop_pct;
  std::optional<double> mcc_drop_pct;
  std::optional<double> size_drop_pct;
};

void to_json(nlohmann::json& j, const EvalReport& r);

/// "model,size_mb,accuracy,mcc,time_s,acc_drop_pct,mcc_drop_pct"
std::string results_csv_header();
std::string results_csv_row(const EvalReport& r);

}  // namespace swarmkd
