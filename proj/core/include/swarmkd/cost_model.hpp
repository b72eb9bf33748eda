// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Analytic size and compute estimates for a BERT-style encoder classifier.
//
// Parameter accounting (h = hidden, i = intermediate, L = layers):
//   embeddings  vocab*h + max_seq*h + h (one token-type row) + 2h (norm)
//   per layer   4(h^2 + h) attention projections, 2h attention norm,
//               (h*i + i) + (i*h + h) feed-forward, 2h output norm
//   head        (h^2 + h) pooler + (4h + 4) four-class classifier
//
// Forward FLOPs at sequence length n, batch 1, counting multiply-adds as two:
//   L * (8 n h^2 + 4 n^2 h + 4 n h i)
// Embedding lookups, softmax, norms and bias adds are not counted.

#pragma once

#include <cstdint>

#include <nlohmann/json.hpp>

#include "swarmkd/config_space.hpp"

namespace swarmkd {

inline constexpr std::int64_t kDefaultSeqLen = 512;
inline constexpr std::int64_t kSeverityClasses = 4;

struct CostEstimate {
  std::uint64_t param_count = 0;
  double size_mb = 0.0;  // MiB of fp32 weights
  double size_gb = 0.0;  // GiB, size_mb / 1024
  double gflops = 0.0;   // one forward pass, batch 1
};

/// Throws std::invalid_argument if the config is not structurally valid.
std::uint64_t param_count(const ArchitectureConfig& cfg);

/// fp32 storage in MiB: params * 4 / 2^20.
double size_mb_for(std::uint64_t params);

/// Size fields only (gflops left at 0).
CostEstimate model_size(const ArchitectureConfig& cfg);

/// seq_len must be >= 1.
double forward_gflops(const ArchitectureConfig& cfg, std::int64_t seq_len = kDefaultSeqLen);

CostEstimate estimate(const ArchitectureConfig& cfg, std::int64_t seq_len = kDefaultSeqLen);

/// student.param_count / teacher.param_count.
double compression_ratio(const CostEstimate& student, const CostEstimate& teacher);

void to_json(nlohmann::json& j, const CostEstimate& c);

}  // namespace swarmkd
