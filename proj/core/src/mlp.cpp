// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0

#include "swarmkd/mlp.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <stdexcept>

#include "swarmkd/config_space.hpp"
#include "swarmkd/rng.hpp"

namespace swarmkd {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

double activate(Activation a, double x) {
  switch (a) {
    case Activation::gelu:
      return 0.5 * x * (1.0 + std::erf(x * kInvSqrt2));
    case Activation::relu:
      return x > 0.0 ? x : 0.0;
    case Activation::tanh:
      return std::tanh(x);
    case Activation::identity:
      return x;
  }
  return x;
}

double activate_grad(Activation a, double x) {
  switch (a) {
    case Activation::gelu: {
      const double cdf = 0.5 * (1.0 + std::erf(x * kInvSqrt2));
      const double pdf = std::exp(-0.5 * x * x) * std::numbers::inv_sqrtpi * kInvSqrt2;
      return cdf + x * pdf;
    }
    case Activation::relu:
      return x > 0.0 ? 1.0 : 0.0;
    case Activation::tanh: {
      const double t = std::tanh(x);
      return 1.0 - t * t;
    }
    case Activation::identity:
      return 1.0;
  }
  return 1.0;
}

}  // namespace

std::string_view activation_name(Activation a) {
  switch (a) {
    case Activation::gelu:
      return "gelu";
    case Activation::relu:
      return "relu";
    case Activation::tanh:
      return "tanh";
    case Activation::identity:
      return "identity";
  }
  return "gelu";
}

Activation parse_activation(std::string_view name) {
  for (const auto a : {Activation::gelu, Activation::relu, Activation::tanh, Activation::identity}) {
    const auto want = activation_name(a);
    if (name.size() == want.size() &&
        std::equal(name.begin(), name.end(), want.begin(), [](char x, char y) {
          return std::tolower(static_cast<unsigned char>(x)) == y;
        })) {
      return a;
    }
  }
  throw std::invalid_argument("unknown activation '" + std::string(name) + "'");
}

std::size_t mlp_param_count(std::span<const std::size_t> sizes) {
  std::size_t n = 0;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) n += sizes[l] * sizes[l + 1] + sizes[l + 1];
  return n;
}

Mlp::Mlp(std::vector<std::size_t> layer_sizes, Activation activation)
    : sizes_(std::move(layer_sizes)), activation_(activation) {
  if (sizes_.size() < 2) throw std::invalid_argument("an MLP needs at least two layer sizes");
  for (const auto s : sizes_) {
    if (s == 0) throw std::invalid_argument("layer sizes must be >= 1");
  }
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    offsets_.push_back(offset);
    offset += sizes_[l] * sizes_[l + 1] + sizes_[l + 1];
  }
  params_.assign(offset, 0.0);
}

std::span<const double> Mlp::weights(std::size_t layer) const {
  return {params_.data() + weight_offset(layer), sizes_[layer] * sizes_[layer + 1]};
}

std::span<const double> Mlp::biases(std::size_t layer) const {
  return {params_.data() + bias_offset(layer), sizes_[layer + 1]};
}

Logits Mlp::forward(std::span<const double> features) const {
  if (features.size() != input_dim()) {
    throw std::invalid_argument("expected " + std::to_string(input_dim()) + " features, got " +
                                std::to_string(features.size()));
  }
  std::vector<double> a(features.begin(), features.end());
  const std::size_t layers = sizes_.size() - 1;
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t in = sizes_[l];
    const std::size_t out = sizes_[l + 1];
    const double* w = params_.data() + weight_offset(l);
    const double* b = params_.data() + bias_offset(l);
    std::vector<double> z(out);
    for (std::size_t o = 0; o < out; ++o) {
      double s = b[o];
      for (std::size_t i = 0; i < in; ++i) s += w[o * in + i] * a[i];
      z[o] = l + 1 < layers ? activate(activation_, s) : s;
    }
    a = std::move(z);
  }
  return a;
}

void Mlp::backward(std::span<const double> features, std::span<const double> logit_grad,
                   std::span<double> grad) const {
  if (features.size() != input_dim() || logit_grad.size() != output_dim() ||
      grad.size() != params_.size()) {
    throw std::invalid_argument("backward: dimension mismatch");
  }
  const std::size_t layers = sizes_.size() - 1;
  // acts[l] is the input to layer l; pre[l] the pre-activation of layer l.
  std::vector<std::vector<double>> acts(layers);
  std::vector<std::vector<double>> pre(layers);
  acts[0].assign(features.begin(), features.end());
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t in = sizes_[l];
    const std::size_t out = sizes_[l + 1];
    const double* w = params_.data() + weight_offset(l);
    const double* b = params_.data() + bias_offset(l);
    pre[l].resize(out);
    for (std::size_t o = 0; o < out; ++o) {
      double s = b[o];
      for (std::size_t i = 0; i < in; ++i) s += w[o * in + i] * acts[l][i];
      pre[l][o] = s;
    }
    if (l + 1 < layers) {
      acts[l + 1].resize(out);
      for (std::size_t o = 0; o < out; ++o) acts[l + 1][o] = activate(activation_, pre[l][o]);
    }
  }

  std::vector<double> delta(logit_grad.begin(), logit_grad.end());
  for (std::size_t l = layers; l-- > 0;) {
    const std::size_t in = sizes_[l];
    const std::size_t out = sizes_[l + 1];
    const double* w = params_.data() + weight_offset(l);
    double* gw = grad.data() + weight_offset(l);
    double* gb = grad.data() + bias_offset(l);
    for (std::size_t o = 0; o < out; ++o) {
      gb[o] += delta[o];
      for (std::size_t i = 0; i < in; ++i) gw[o * in + i] += delta[o] * acts[l][i];
    }
    if (l == 0) break;
    std::vector<double> prev(in, 0.0);
    for (std::size_t o = 0; o < out; ++o) {
      for (std::size_t i = 0; i < in; ++i) prev[i] += w[o * in + i] * delta[o];
    }
    for (std::size_t i = 0; i < in; ++i) prev[i] *= activate_grad(activation_, pre[l - 1][i]);
    delta = std::move(prev);
  }
}

void Mlp::apply(std::span<const double> grad, double learning_rate) {
  if (grad.size() != params_.size()) throw std::invalid_argument("apply: gradient size mismatch");
  for (std::size_t k = 0; k < params_.size(); ++k) params_[k] -= learning_rate * grad[k];
}

std::unique_ptr<Classifier> Mlp::clone() const { return std::make_unique<Mlp>(*this); }

Mlp mlp_classifier(std::vector<std::size_t> layer_sizes, Activation activation, std::uint64_t seed) {
  Mlp model(std::move(layer_sizes), activation);
  Rng rng(seed);
  auto params = model.parameters();
  const auto sizes = model.layer_sizes();
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const double fan = static_cast<double>(sizes[l] + sizes[l + 1]);
    const double limit = std::sqrt(6.0 / fan);
    const std::size_t n_w = sizes[l] * sizes[l + 1];
    for (std::size_t k = 0; k < n_w; ++k) params[offset + k] = rng.uniform(-limit, limit);
    offset += n_w + sizes[l + 1];
  }
  return model;
}

std::vector<std::size_t> parse_layer_sizes(std::string_view text) {
  std::vector<std::size_t> sizes;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find(',', start);
    const std::string cell(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    std::size_t used = 0;
    long long v = -1;
    try {
      v = std::stoll(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != cell.size() || v < 1) {
      throw std::invalid_argument("layer sizes: '" + cell + "' is not a positive integer");
    }
    sizes.push_back(static_cast<std::size_t>(v));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (sizes.size() < 2) throw std::invalid_argument("layer sizes: need at least two entries");
  return sizes;
}

nlohmann::json mlp_to_json(const Mlp& model) {
  nlohmann::json j;
  const auto sizes = model.layer_sizes();
  j["layer_sizes"] = std::vector<std::size_t>(sizes.begin(), sizes.end());
  j["activation"] = std::string(activation_name(model.activation()));
  auto weights = nlohmann::json::array();
  auto biases = nlohmann::json::array();
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const auto w = model.weights(l);
    const auto b = model.biases(l);
    weights.push_back(std::vector<double>(w.begin(), w.end()));
    biases.push_back(std::vector<double>(b.begin(), b.end()));
  }
  j["weights"] = std::move(weights);
  j["biases"] = std::move(biases);
  return j;
}

Mlp mlp_from_json(const nlohmann::json& j) {
  const auto field = [&j](const char* key) -> const nlohmann::json& {
    if (!j.is_object() || !j.contains(key)) {
      throw SchemaError(std::string("model field '") + key + "': missing");
    }
    return j.at(key);
  };
  std::vector<std::size_t> sizes;
  Activation act = Activation::gelu;
  try {
    sizes = field("layer_sizes").get<std::vector<std::size_t>>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError("model field 'layer_sizes': expected array of positive integers");
  }
  try {
    act = parse_activation(field("activation").get<std::string>());
  } catch (const std::exception& e) {
    throw SchemaError(std::string("model field 'activation': ") + e.what());
  }
  std::unique_ptr<Mlp> model;
  try {
    model = std::make_unique<Mlp>(sizes, act);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("model field 'layer_sizes': ") + e.what());
  }
  const auto& weights = field("weights");
  const auto& biases = field("biases");
  const std::size_t layers = sizes.size() - 1;
  if (!weights.is_array() || weights.size() != layers) {
    throw SchemaError("model field 'weights': expected " + std::to_string(layers) + " layers");
  }
  if (!biases.is_array() || biases.size() != layers) {
    throw SchemaError("model field 'biases': expected " + std::to_string(layers) + " layers");
  }
  auto params = model->parameters();
  std::size_t offset = 0;
  for (std::size_t l = 0; l < layers; ++l) {
    std::vector<double> w;
    std::vector<double> b;
    try {
      w = weights[l].get<std::vector<double>>();
      b = biases[l].get<std::vector<double>>();
    } catch (const nlohmann::json::exception&) {
      throw SchemaError("model field 'weights'/'biases' layer " + std::to_string(l) +
                        ": expected numeric arrays");
    }
    if (w.size() != sizes[l] * sizes[l + 1]) {
      throw SchemaError("model field 'weights' layer " + std::to_string(l) + ": expected " +
                        std::to_string(sizes[l] * sizes[l + 1]) + " values");
    }
    if (b.size() != sizes[l + 1]) {
      throw SchemaError("model field 'biases' layer " + std::to_string(l) + ": expected " +
                        std::to_string(sizes[l + 1]) + " values");
    }
    std::copy(w.begin(), w.end(), params.begin() + static_cast<std::ptrdiff_t>(offset));
    offset += w.size();
    std::copy(b.begin(), b.end(), params.begin() + static_cast<std::ptrdiff_t>(offset));
    offset += b.size();
  }
  return *model;
}

void save_mlp(const std::string& path, const Mlp& model) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << mlp_to_json(model).dump(1) << '\n';
}

Mlp load_mlp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return mlp_from_json(j);
}

}  // namespace swarmkd
