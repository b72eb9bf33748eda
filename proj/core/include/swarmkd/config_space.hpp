// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Searchable transformer hyperparameter grid, architecture points in it, and
// the mapping between continuous [0,1]^D coordinates and grid points.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace swarmkd {

/// Raised when a JSON document does not match the expected schema. The
/// message always names the offending field.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ParamKind { integer_grid, categorical, fixed };

using ParamValue = std::variant<std::int64_t, double, std::string>;

std::string to_string(const ParamValue& value);

struct HyperparamDef {
  std::string name;
  ParamKind kind = ParamKind::fixed;
  /// Admissible search values in ascending (integer) or listed order.
  std::vector<ParamValue> grid;
  /// Declared range for integer grids. `range_max` may lie off the step
  /// lattice (e.g. vocab 50265); it is admitted by validation but is not a
  /// search point.
  std::int64_t range_min = 0;
  std::int64_t range_max = 0;
  std::int64_t interval = 0;
  bool affects_size = false;

  static HyperparamDef integer_grid(std::string name, std::int64_t min, std::int64_t max,
                                    std::int64_t interval, bool affects_size);
  static HyperparamDef categorical(std::string name, std::vector<ParamValue> values,
                                   bool affects_size);
  static HyperparamDef fixed(std::string name, ParamValue value, bool affects_size);

  bool searchable() const noexcept { return kind != ParamKind::fixed; }

  /// True if `value` is a grid member or, for integer grids, a declared
  /// range endpoint.
  bool admits(const ParamValue& value) const;

  /// Position of `value` in the grid, or npos.
  std::size_t index_of(const ParamValue& value) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// One point of the space. Field names follow the hyperparameter names.
struct ArchitectureConfig {
  std::string tokenizer = "Byte-Pair Encoding";
  std::int64_t vocab_size = 50265;
  std::int64_t num_hidden_layers = 12;
  std::int64_t hidden_size = 768;
  std::string hidden_act = "GELU";
  double hidden_dropout_prob = 0.1;
  std::int64_t intermediate_size = 3072;
  std::int64_t num_attention_heads = 12;
  double attention_probs_dropout_prob = 0.1;
  std::int64_t max_sequence_length = 512;
  std::string position_embedding_type = "absolute";
  double learning_rate = 5e-5;
  std::int64_t batch_size = 32;

  ParamValue get(std::string_view name) const;
  void set(std::string_view name, const ParamValue& value);

  bool operator==(const ArchitectureConfig&) const = default;
};

/// Hyperparameter names in their fixed order.
std::span<const std::string_view> hyperparam_names();

/// The 13-entry space. Individual dims may be narrowed or fixed (reduced
/// spaces) but the names and their order never change.
class ConfigSpace {
 public:
  explicit ConfigSpace(std::vector<HyperparamDef> dims);

  std::span<const HyperparamDef> dims() const noexcept { return dims_; }
  const HyperparamDef& dim(std::string_view name) const;

  /// Indices into dims() of the non-fixed entries, in order.
  std::span<const std::size_t> searchable() const noexcept { return searchable_; }
  std::size_t searchable_count() const noexcept { return searchable_.size(); }

  /// Copy of this space with the dim of the same name replaced.
  ConfigSpace with_dim(HyperparamDef replacement) const;

 private:
  std::vector<HyperparamDef> dims_;
  std::vector<std::size_t> searchable_;
};

/// The published search space. Fixed entries hold the teacher's values.
ConfigSpace default_space();

/// The teacher architecture (CodeBERT/RoBERTa-base shape).
ArchitectureConfig teacher_config();

struct Violation {
  std::string field;
  std::string message;
  bool operator==(const Violation&) const = default;
};

/// Positivity and hidden_size/num_attention_heads divisibility, independent
/// of any grid.
std::vector<Violation> structural_violations(const ArchitectureConfig& cfg);

/// Every grid-membership and structural violation; empty iff valid.
std::vector<Violation> validate(const ArchitectureConfig& cfg, const ConfigSpace& space);

/// Number of grid points. With `enforce_divisibility`, only
/// (hidden_size, num_attention_heads) pairs with zero remainder count.
std::uint64_t space_cardinality(const ConfigSpace& space, bool enforce_divisibility);

/// Maps coordinates (one per searchable dim, clamped to [0,1]) to grid
/// points via index = floor(coord * (len - 1) + 0.5). Throws
/// std::invalid_argument on a length mismatch.
ArchitectureConfig decode(std::span<const double> position, const ConfigSpace& space);

/// Inverse of decode for configs whose searchable values are grid points.
/// Throws std::invalid_argument otherwise.
std::vector<double> encode(const ArchitectureConfig& cfg, const ConfigSpace& space);

void to_json(nlohmann::json& j, const ArchitectureConfig& cfg);
void from_json(const nlohmann::json& j, ArchitectureConfig& cfg);
void to_json(nlohmann::json& j, const HyperparamDef& def);
void from_json(const nlohmann::json& j, HyperparamDef& def);
nlohmann::json space_to_json(const ConfigSpace& space);
ConfigSpace space_from_json(const nlohmann::json& j);

}  // namespace swarmkd
