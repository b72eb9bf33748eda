// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Fully-connected reference classifier with exact backpropagation.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "swarmkd/distill.hpp"

namespace swarmkd {

enum class Activation { gelu, relu, tanh, identity };

std::string_view activation_name(Activation a);
Activation parse_activation(std::string_view name);

/// Parameters are stored flat, layer by layer: the row-major weight matrix
/// [out][in] followed by the bias vector. The activation is applied on hidden
/// layers only; the last layer emits raw logits.
class Mlp final : public Classifier {
 public:
  /// All weights and biases zero. Throws std::invalid_argument for fewer
  /// than two layers or a zero-width layer.
  Mlp(std::vector<std::size_t> layer_sizes, Activation activation);

  std::size_t input_dim() const override { return sizes_.front(); }
  std::size_t output_dim() const override { return sizes_.back(); }
  std::size_t param_count() const override { return params_.size(); }

  Logits forward(std::span<const double> features) const override;
  void backward(std::span<const double> features, std::span<const double> logit_grad,
                std::span<double> grad) const override;
  void apply(std::span<const double> grad, double learning_rate) override;
  std::unique_ptr<Classifier> clone() const override;

  std::span<const std::size_t> layer_sizes() const noexcept { return sizes_; }
  Activation activation() const noexcept { return activation_; }
  std::span<double> parameters() noexcept { return params_; }
  std::span<const double> parameters() const noexcept { return params_; }

  /// Weight block of layer l (0-based, l < layer_sizes().size() - 1).
  std::span<const double> weights(std::size_t layer) const;
  std::span<const double> biases(std::size_t layer) const;

  friend bool operator==(const Mlp& a, const Mlp& b) {
    return a.sizes_ == b.sizes_ && a.activation_ == b.activation_ && a.params_ == b.params_;
  }

 private:
  std::size_t weight_offset(std::size_t layer) const { return offsets_[layer]; }
  std::size_t bias_offset(std::size_t layer) const {
    return offsets_[layer] + sizes_[layer] * sizes_[layer + 1];
  }

  std::vector<std::size_t> sizes_;
  Activation activation_;
  std::vector<std::size_t> offsets_;
  std::vector<double> params_;
};

/// param count of an MLP with these layer sizes.
std::size_t mlp_param_count(std::span<const std::size_t> layer_sizes);

/// Glorot-uniform weights from `seed`, zero biases.
Mlp mlp_classifier(std::vector<std::size_t> layer_sizes, Activation activation, std::uint64_t seed);

/// Parses "16,64,4".
std::vector<std::size_t> parse_layer_sizes(std::string_view text);

/// {"layer_sizes": [...], "activation": "gelu", "weights": [[...]...],
///  "biases": [[...]...]} with row-major weights per layer.
nlohmann::json mlp_to_json(const Mlp& model);
/// Throws SchemaError naming the offending field.
Mlp mlp_from_json(const nlohmann::json& j);

void save_mlp(const std::string& path, const Mlp& model);
Mlp load_mlp(const std::string& path);

}  // namespace swarmkd
