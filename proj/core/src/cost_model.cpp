// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0

#include "swarmkd/cost_model.hpp"

#include <stdexcept>
#include <string>

namespace swarmkd {

namespace {

void require_structure(const ArchitectureConfig& cfg) {
  const auto violations = structural_violations(cfg);
  if (!violations.empty()) {
    throw std::invalid_argument("invalid architecture: " + violations.front().message);
  }
}

}  // namespace

std::uint64_t param_count(const ArchitectureConfig& cfg) {
  require_structure(cfg);
  const auto v = static_cast<std::uint64_t>(cfg.vocab_size);
  const auto L = static_cast<std::uint64_t>(cfg.num_hidden_layers);
  const auto h = static_cast<std::uint64_t>(cfg.hidden_size);
  const auto i = static_cast<std::uint64_t>(cfg.intermediate_size);
  const auto seq = static_cast<std::uint64_t>(cfg.max_sequence_length);
  const auto classes = static_cast<std::uint64_t>(kSeverityClasses);

  const std::uint64_t embeddings = v * h + seq * h + h + 2 * h;
  const std::uint64_t attention = 4 * (h * h + h) + 2 * h;
  const std::uint64_t ffn = (h * i + i) + (i * h + h) + 2 * h;
  const std::uint64_t head = (h * h + h) + (h * classes + classes);
  return embeddings + L * (attention + ffn) + head;
}

double size_mb_for(std::uint64_t params) {
  return static_cast<double>(params) * 4.0 / 1048576.0;
}

CostEstimate model_size(const ArchitectureConfig& cfg) {
  CostEstimate c;
  c.param_count = param_count(cfg);
  c.size_mb = size_mb_for(c.param_count);
  c.size_gb = c.size_mb / 1024.0;
  return c;
}

double forward_gflops(const ArchitectureConfig& cfg, std::int64_t seq_len) {
  require_structure(cfg);
  if (seq_len < 1) throw std::invalid_argument("seq_len must be >= 1");
  const auto n = static_cast<std::uint64_t>(seq_len);
  const auto L = static_cast<std::uint64_t>(cfg.num_hidden_layers);
  const auto h = static_cast<std::uint64_t>(cfg.hidden_size);
  const auto i = static_cast<std::uint64_t>(cfg.intermediate_size);
  const std::uint64_t per_layer = 8 * n * h * h + 4 * n * n * h + 4 * n * h * i;
  return static_cast<double>(L * per_layer) / 1e9;
}

CostEstimate estimate(const ArchitectureConfig& cfg, std::int64_t seq_len) {
  auto c = model_size(cfg);
  c.gflops = forward_gflops(cfg, seq_len);
  return c;
}

double compression_ratio(const CostEstimate& student, const CostEstimate& teacher) {
  if (teacher.param_count == 0) throw std::invalid_argument("teacher has zero parameters");
  return static_cast<double>(student.param_count) / static_cast<double>(teacher.param_count);
}

void to_json(nlohmann::json& j, const CostEstimate& c) {
  j = nlohmann::json{{"param_count", c.param_count},
                     {"size_mb", c.size_mb},
                     {"size_gb", c.size_gb},
                     {"gflops", c.gflops}};
}

}  // namespace swarmkd
