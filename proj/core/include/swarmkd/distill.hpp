// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Temperature-softened soft targets, the combined distillation loss, and the
// teacher-to-student training loop over any Classifier.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace swarmkd {

struct LabeledDataset;

using Logits = std::vector<double>;

/// Softmax of z / T with max subtraction. Throws std::invalid_argument if
/// T <= 0 or z is empty.
std::vector<double> soften(std::span<const double> z, double temperature);

/// KL(p || q) = sum p_i log(p_i / q_i), 0 log 0 = 0. Throws
/// std::invalid_argument on length or normalization mismatch and
/// std::domain_error when q_i = 0 < p_i.
double kl_div(std::span<const double> p, std::span<const double> q);

struct LossAndGradient {
  double loss = 0.0;
  std::vector<double> grad;  // d loss / d logits
};

/// -log softmax(z)[label] and its gradient softmax(z) - onehot(label).
LossAndGradient cross_entropy(std::span<const double> z, std::size_t label);

struct DistillParams {
  double temperature = 10.0;
  /// Weight on the hard-label cross-entropy; 0 means soft labels only.
  double alpha = 0.0;
  double learning_rate = 5e-4;
  std::size_t epochs = 30;
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;

  void validate() const;
};

/// alpha * CE(y, softmax(z_s)) + (1 - alpha) * T^2 * SCE(soften(z_t, T), z_s, T)
/// where SCE(p, z, T) = -sum p_i log softmax(z / T)_i. SCE differs from
/// KL(p || softmax(z / T)) by the entropy of p, which does not depend on z_s.
/// Terms with zero weight are skipped entirely. Throws std::invalid_argument
/// when alpha > 0 and no label is given.
LossAndGradient kd_loss(std::span<const double> z_teacher, std::span<const double> z_student,
                        std::optional<std::size_t> hard_label, const DistillParams& params);

/// Trainable logits model over dense feature vectors.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual std::size_t input_dim() const = 0;
  virtual std::size_t output_dim() const = 0;
  virtual std::size_t param_count() const = 0;

  virtual Logits forward(std::span<const double> features) const = 0;

  /// Adds d loss / d params for one example to `grad` (size param_count()).
  virtual void backward(std::span<const double> features, std::span<const double> logit_grad,
                        std::span<double> grad) const = 0;

  /// params -= learning_rate * grad.
  virtual void apply(std::span<const double> grad, double learning_rate) = 0;

  virtual std::unique_ptr<Classifier> clone() const = 0;
};

struct TrainParams {
  double learning_rate = 0.05;
  std::size_t epochs = 50;
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;

  void validate() const;
};

struct LossCurve {
  std::vector<double> epoch_loss;  // mean example loss per epoch
  std::vector<double> step_loss;   // mean batch loss per update
};

/// Minibatch gradient descent on hard-label cross-entropy. Throws
/// std::runtime_error if the loss becomes non-finite.
LossCurve train_supervised(Classifier& model, const LabeledDataset& data, const TrainParams& params);

/// Fits `student` to the frozen `teacher`'s softened logits. Hard labels
/// are read only when alpha > 0. With alpha = 1 the trajectory matches
/// train_supervised with the same learning rate, batch size and seed.
LossCurve distill_train(const Classifier& teacher, Classifier& student, const LabeledDataset& data,
                        const DistillParams& params);

/// Argmax class per example (lowest index wins ties).
std::vector<int> predict(const Classifier& model, const LabeledDataset& data);

}  // namespace swarmkd
