// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0

#include "swarmkd/distill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "swarmkd/data.hpp"
#include "swarmkd/rng.hpp"

namespace swarmkd {

namespace {

void check_probability(std::span<const double> p, const char* name) {
  double sum = 0.0;
  for (const double v : p) {
    if (!(v >= 0.0)) throw std::invalid_argument(std::string(name) + " has a negative entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument(std::string(name) + " does not sum to 1");
}

// log softmax(z / T)
std::vector<double> log_softmax(std::span<const double> z, double temperature) {
  const double zmax = *std::max_element(z.begin(), z.end());
  std::vector<double> out(z.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    out[i] = (z[i] - zmax) / temperature;
    sum += std::exp(out[i]);
  }
  const double log_sum = std::log(sum);
  for (auto& v : out) v -= log_sum;
  return out;
}

void check_logits(std::span<const double> z) {
  if (z.empty()) throw std::invalid_argument("logits are empty");
  for (const double v : z) {
    if (!std::isfinite(v)) throw std::invalid_argument("logits must be finite");
  }
}

template <typename LossFn>
LossCurve run_epochs(Classifier& model, const LabeledDataset& data, double learning_rate,
                     std::size_t epochs, std::size_t batch_size, std::uint64_t seed, LossFn loss_of) {
  data.check();
  if (model.input_dim() != data.feature_dim) {
    throw std::invalid_argument("model expects " + std::to_string(model.input_dim()) +
                                " features, data has " + std::to_string(data.feature_dim));
  }
  LossCurve curve;
  if (epochs == 0 || data.size() == 0) return curve;

  Rng rng(seed);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> grad(model.param_count());

  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    double epoch_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
      const std::size_t stop = std::min(order.size(), start + batch_size);
      const auto m = static_cast<double>(stop - start);
      std::fill(grad.begin(), grad.end(), 0.0);
      double batch_sum = 0.0;
      for (std::size_t b = start; b < stop; ++b) {
        const std::size_t i = order[b];
        const auto x = data.row(i);
        const auto z = model.forward(x);
        if (!std::all_of(z.begin(), z.end(), [](double v) { return std::isfinite(v); })) {
          batch_sum = std::numeric_limits<double>::quiet_NaN();
          break;
        }
        auto result = loss_of(i, z);
        batch_sum += result.loss;
        for (auto& g : result.grad) g /= m;
        model.backward(x, result.grad, grad);
      }
      if (!std::isfinite(batch_sum)) {
        throw std::runtime_error("training diverged: non-finite loss at epoch " +
                                 std::to_string(epoch) + ", step " +
                                 std::to_string(curve.step_loss.size()));
      }
      curve.step_loss.push_back(batch_sum / m);
      epoch_sum += batch_sum;
      model.apply(grad, learning_rate);
    }
    curve.epoch_loss.push_back(epoch_sum / static_cast<double>(data.size()));
  }
  return curve;
}

}  // namespace

std::vector<double> soften(std::span<const double> z, double temperature) {
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be > 0");
  check_logits(z);
  auto p = log_softmax(z, temperature);
  for (auto& v : p) v = std::exp(v);
  return p;
}

double kl_div(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size() || p.empty()) throw std::invalid_argument("kl_div: length mismatch");
  check_probability(p, "p");
  check_probability(q, "q");
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) throw std::domain_error("kl_div: q has zero mass where p does not");
    kl += p[i] * std::log(p[i] / q[i]);
  }
  return kl;
}

LossAndGradient cross_entropy(std::span<const double> z, std::size_t label) {
  check_logits(z);
  if (label >= z.size()) throw std::invalid_argument("label out of range");
  const auto logp = log_softmax(z, 1.0);
  LossAndGradient out;
  out.loss = -logp[label];
  out.grad.resize(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out.grad[i] = std::exp(logp[i]);
  out.grad[label] -= 1.0;
  return out;
}

void DistillParams::validate() const {
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be > 0");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must be in [0, 1]");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be > 0");
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
}

void TrainParams::validate() const {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be > 0");
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
}

LossAndGradient kd_loss(std::span<const double> z_teacher, std::span<const double> z_student,
                        std::optional<std::size_t> hard_label, const DistillParams& params) {
  params.validate();
  check_logits(z_student);
  if (z_teacher.size() != z_student.size()) throw std::invalid_argument("kd_loss: length mismatch");
  if (params.alpha > 0.0 && !hard_label) {
    throw std::invalid_argument("kd_loss: alpha > 0 requires a hard label");
  }

  LossAndGradient out;
  out.grad.assign(z_student.size(), 0.0);
  if (params.alpha > 0.0) {
    const auto ce = cross_entropy(z_student, *hard_label);
    out.loss = params.alpha * ce.loss;
    for (std::size_t i = 0; i < ce.grad.size(); ++i) out.grad[i] = params.alpha * ce.grad[i];
  }
  const double soft_weight = 1.0 - params.alpha;
  if (soft_weight > 0.0) {
    const double T = params.temperature;
    const auto target = soften(z_teacher, T);
    const auto logq = log_softmax(z_student, T);
    double sce = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) sce -= target[i] * logq[i];
    out.loss += soft_weight * T * T * sce;
    // d/dz_s of T^2 * SCE is T * (softmax(z_s / T) - p).
    for (std::size_t i = 0; i < target.size(); ++i) {
      out.grad[i] += soft_weight * T * (std::exp(logq[i]) - target[i]);
    }
  }
  return out;
}

LossCurve train_supervised(Classifier& model, const LabeledDataset& data, const TrainParams& params) {
  params.validate();
  return run_epochs(model, data, params.learning_rate, params.epochs, params.batch_size, params.seed,
                    [&data](std::size_t i, const Logits& z) {
                      return cross_entropy(z, static_cast<std::size_t>(data.labels[i]));
                    });
}

LossCurve distill_train(const Classifier& teacher, Classifier& student, const LabeledDataset& data,
                        const DistillParams& params) {
  params.validate();
  if (teacher.input_dim() != student.input_dim()) {
    throw std::invalid_argument("teacher and student input dimensions differ");
  }
  if (teacher.output_dim() != student.output_dim()) {
    throw std::invalid_argument("teacher and student class counts differ");
  }
  if (teacher.input_dim() != data.feature_dim) {
    throw std::invalid_argument("teacher expects " + std::to_string(teacher.input_dim()) +
                                " features, data has " + std::to_string(data.feature_dim));
  }
  if (params.epochs == 0) return {};

  // The teacher is frozen, so its logits are fixed for the whole run.
  std::vector<Logits> teacher_logits;
  if (params.alpha < 1.0) {
    teacher_logits.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) teacher_logits.push_back(teacher.forward(data.row(i)));
  }
  const bool use_labels = params.alpha > 0.0;
  return run_epochs(
      student, data, params.learning_rate, params.epochs, params.batch_size, params.seed,
      [&](std::size_t i, const Logits& z) {
        std::optional<std::size_t> label;
        if (use_labels) label = static_cast<std::size_t>(data.labels[i]);
        const std::span<const double> zt =
            teacher_logits.empty() ? std::span<const double>(z) : std::span<const double>(teacher_logits[i]);
        return kd_loss(zt, z, label, params);
      });
}

std::vector<int> predict(const Classifier& model, const LabeledDataset& data) {
  std::vector<int> out;
  out.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto z = model.forward(data.row(i));
    out.push_back(static_cast<int>(std::max_element(z.begin(), z.end()) - z.begin()));
  }
  return out;
}

}  // namespace swarmkd
