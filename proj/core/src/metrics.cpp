// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0

#include "swarmkd/metrics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace swarmkd {

namespace {

void check_pair(std::span<const int> pred, std::span<const int> truth) {
  if (pred.size() != truth.size()) throw std::invalid_argument("prediction/truth length mismatch");
  if (pred.empty()) throw std::invalid_argument("empty prediction list");
}

}  // namespace

std::vector<std::vector<std::size_t>> confusion_matrix(std::span<const int> pred,
                                                       std::span<const int> truth,
                                                       std::size_t n_classes) {
  check_pair(pred, truth);
  std::vector<std::vector<std::size_t>> c(n_classes, std::vector<std::size_t>(n_classes, 0));
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] < 0 || truth[i] < 0 || static_cast<std::size_t>(pred[i]) >= n_classes ||
        static_cast<std::size_t>(truth[i]) >= n_classes) {
      throw std::invalid_argument("label out of range at index " + std::to_string(i));
    }
    ++c[static_cast<std::size_t>(truth[i])][static_cast<std::size_t>(pred[i])];
  }
  return c;
}

double accuracy(std::span<const int> pred, std::span<const int> truth) {
  check_pair(pred, truth);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hits += pred[i] == truth[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

std::optional<double> class_accuracy(std::span<const int> pred, std::span<const int> truth, int cls) {
  check_pair(pred, truth);
  std::size_t total = 0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (truth[i] != cls) continue;
    ++total;
    hits += pred[i] == cls ? 1 : 0;
  }
  if (total == 0) return std::nullopt;
  return static_cast<double>(hits) / static_cast<double>(total);
}

double mcc(std::span<const int> pred, std::span<const int> truth, std::size_t n_classes) {
  const auto c = confusion_matrix(pred, truth, n_classes);
  double correct = 0.0;
  double s = 0.0;
  std::vector<double> p(n_classes, 0.0);
  std::vector<double> t(n_classes, 0.0);
  for (std::size_t k = 0; k < n_classes; ++k) {
    correct += static_cast<double>(c[k][k]);
    for (std::size_t l = 0; l < n_classes; ++l) {
      t[k] += static_cast<double>(c[k][l]);
      p[l] += static_cast<double>(c[k][l]);
      s += static_cast<double>(c[k][l]);
    }
  }
  double pt = 0.0;
  double pp = 0.0;
  double tt = 0.0;
  for (std::size_t k = 0; k < n_classes; ++k) {
    pt += p[k] * t[k];
    pp += p[k] * p[k];
    tt += t[k] * t[k];
  }
  const double denom = (s * s - pp) * (s * s - tt);
  if (denom == 0.0) return 0.0;
  return (correct * s - pt) / std::sqrt(denom);
}

double drop_pct(double base, double other) {
  if (base == 0.0) throw std::invalid_argument("drop_pct: base is zero");
  return (base - other) / base * 100.0;
}

void to_json(nlohmann::json& j, const EvalReport& r) {
  j = nlohmann::json{{"model", r.model},
                     {"accuracy", r.accuracy},
                     {"mcc", r.mcc},
                     {"model_size_mb", r.model_size_mb}};
  if (r.time_cost_s) j["time_cost_s"] = *r.time_cost_s;
  if (r.acc_drop_pct || r.mcc_drop_pct || r.size_drop_pct) {
    auto drops = nlohmann::json::object();
    if (r.acc_drop_pct) drops["accuracy"] = *r.acc_drop_pct;
    if (r.mcc_drop_pct) drops["mcc"] = *r.mcc_drop_pct;
    if (r.size_drop_pct) drops["model_size"] = *r.size_drop_pct;
    j["drop_vs_teacher_pct"] = std::move(drops);
  }
}

std::string results_csv_header() {
  return "model,size_mb,accuracy,mcc,time_s,acc_drop_pct,mcc_drop_pct";
}

std::string results_csv_row(const EvalReport& r) {
  std::ostringstream os;
  os.precision(10);
  const auto opt = [&os](const std::optional<double>& v) {
    if (v) os << *v;
  };
  os << r.model << ',' << r.model_size_mb << ',' << r.accuracy << ',' << r.mcc << ',';
  opt(r.time_cost_s);
  os << ',';
  opt(r.acc_drop_pct);
  os << ',';
  opt(r.mcc_drop_pct);
  return os.str();
}

}  // namespace swarmkd
