// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0

#include "swarmkd/data.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "swarmkd/rng.hpp"

namespace swarmkd {

namespace {

constexpr std::array<std::string_view, kNumSeverities> kSeverityNames = {"Critical", "High",
                                                                         "Medium", "Low"};

constexpr double kTieEps = 1e-9;

// Largest remainder with a caller-supplied order for equal remainders.
// `before(a, b)` is true when a receives a leftover unit ahead of b.
template <typename TieOrder>
std::vector<std::size_t> largest_remainder(std::size_t total, std::span<const double> weights,
                                           TieOrder before) {
  if (weights.empty()) throw std::invalid_argument("weights must be non-empty");
  double sum = 0.0;
  for (const double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("weights must be >= 0");
    sum += w;
  }
  if (!(sum > 0.0)) throw std::invalid_argument("weights must sum to > 0");

  std::vector<std::size_t> counts(weights.size());
  std::vector<double> remainder(weights.size());
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double quota = static_cast<double>(total) * weights[k] / sum;
    const double whole = std::floor(quota + kTieEps);
    counts[k] = static_cast<std::size_t>(whole);
    remainder[k] = std::max(0.0, quota - whole);
    assigned += counts[k];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (std::abs(remainder[a] - remainder[b]) > kTieEps) return remainder[a] > remainder[b];
    return before(a, b);
  });
  for (std::size_t r = 0; assigned < total; ++r, ++assigned) ++counts[order[r % order.size()]];
  return counts;
}

void check_probs(std::span<const double> probs) {
  double sum = 0.0;
  for (const double p : probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("class probabilities must be >= 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("class probabilities must sum to 1");
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    cells.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

}  // namespace

std::string_view severity_name(int label) {
  if (label < 0 || label >= static_cast<int>(kNumSeverities)) {
    throw std::invalid_argument("severity label out of range: " + std::to_string(label));
  }
  return kSeverityNames[static_cast<std::size_t>(label)];
}

int parse_severity(std::string_view name) {
  const auto key = lower(trim(name));
  for (std::size_t k = 0; k < kNumSeverities; ++k) {
    if (key == lower(kSeverityNames[k])) return static_cast<int>(k);
  }
  throw std::invalid_argument("unknown severity '" + std::string(name) + "'");
}

std::array<std::size_t, kNumSeverities> LabeledDataset::class_counts() const {
  std::array<std::size_t, kNumSeverities> counts{};
  for (const int y : labels) ++counts.at(static_cast<std::size_t>(y));
  return counts;
}

void LabeledDataset::check() const {
  if (features.size() != labels.size() * feature_dim) {
    throw std::invalid_argument("feature rows do not match label count");
  }
  for (const int y : labels) {
    if (y < 0 || y >= static_cast<int>(kNumSeverities)) {
      throw std::invalid_argument("label out of range: " + std::to_string(y));
    }
  }
  for (const double x : features) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite feature value");
  }
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
  LabeledDataset out;
  out.feature_dim = feature_dim;
  out.labels.reserve(indices.size());
  out.features.reserve(indices.size() * feature_dim);
  for (const auto i : indices) {
    const auto r = row(i);
    out.features.insert(out.features.end(), r.begin(), r.end());
    out.labels.push_back(labels.at(i));
  }
  return out;
}

std::array<double, kNumSeverities> default_class_probs() {
  constexpr double total = 9656.0;
  return {1169.0 / total, 4454.0 / total, 3795.0 / total, 238.0 / total};
}

std::array<std::size_t, kNumSeverities> reference_class_totals() {
  return {1169 + 146 + 147, 4454 + 557 + 557, 3795 + 474 + 475, 238 + 30 + 29};
}

std::vector<std::size_t> apportion(std::size_t total, std::span<const double> weights) {
  return largest_remainder(total, weights, [&](std::size_t a, std::size_t b) {
    if (weights[a] != weights[b]) return weights[a] > weights[b];
    return a < b;
  });
}

LabeledDataset gen_synthetic_counts(std::span<const std::size_t> counts, std::size_t feature_dim,
                                    double separation, std::uint64_t seed) {
  if (counts.size() != kNumSeverities) throw std::invalid_argument("need one count per class");
  if (feature_dim < 4) throw std::invalid_argument("feature_dim must be >= 4");
  if (!(separation > 0.0)) throw std::invalid_argument("separation must be > 0");

  LabeledDataset data;
  data.feature_dim = feature_dim;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    data.labels.insert(data.labels.end(), counts[k], static_cast<int>(k));
  }
  if (data.labels.size() < 4) throw std::invalid_argument("n must be >= 4");

  Rng rng(seed);
  rng.shuffle(std::span<int>(data.labels));
  data.features.resize(data.labels.size() * feature_dim);
  const double scale = separation / 2.0;
  for (std::size_t i = 0; i < data.labels.size(); ++i) {
    const auto k = static_cast<unsigned>(data.labels[i]);
    for (std::size_t j = 0; j < feature_dim; ++j) {
      const int parity = std::popcount(k & static_cast<unsigned>(j % 4)) & 1;
      const double mean = parity ? -scale : scale;
      data.features[i * feature_dim + j] = mean + rng.normal();
    }
  }
  return data;
}

LabeledDataset gen_synthetic(const SyntheticSpec& spec) {
  check_probs(spec.class_probs);
  if (spec.n < 4) throw std::invalid_argument("n must be >= 4");
  const auto counts = apportion(spec.n, spec.class_probs);
  return gen_synthetic_counts(counts, spec.feature_dim, spec.separation, spec.seed);
}

SplitIndices stratified_split_indices(const LabeledDataset& data,
                                      const std::array<double, 3>& fractions, std::uint64_t seed) {
  double sum = 0.0;
  for (const double f : fractions) {
    if (!(f >= 0.0)) throw std::invalid_argument("split fractions must be >= 0");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("split fractions must sum to 1");

  std::array<std::vector<std::size_t>, kNumSeverities> by_class;
  for (std::size_t i = 0; i < data.size(); ++i) {
    by_class.at(static_cast<std::size_t>(data.labels[i])).push_back(i);
  }

  Rng rng(seed);
  SplitIndices out;
  std::array<std::vector<std::size_t>*, 3> parts = {&out.train, &out.validation, &out.test};
  for (std::size_t k = 0; k < kNumSeverities; ++k) {
    auto& members = by_class[k];
    if (members.empty()) continue;
    if (members.size() < 3) {
      throw std::invalid_argument("class " + std::string(severity_name(static_cast<int>(k))) +
                                  " is too small to appear in all splits");
    }
    const auto counts = largest_remainder(members.size(), fractions,
                                          [](std::size_t a, std::size_t b) { return a > b; });
    for (std::size_t p = 0; p < 3; ++p) {
      if (fractions[p] > 0.0 && counts[p] == 0) {
        throw std::invalid_argument("class " + std::string(severity_name(static_cast<int>(k))) +
                                    " is too small to appear in all splits");
      }
    }
    rng.shuffle(std::span<std::size_t>(members));
    std::size_t next = 0;
    for (std::size_t p = 0; p < 3; ++p) {
      parts[p]->insert(parts[p]->end(), members.begin() + static_cast<std::ptrdiff_t>(next),
                       members.begin() + static_cast<std::ptrdiff_t>(next + counts[p]));
      next += counts[p];
    }
  }
  for (auto* part : parts) std::sort(part->begin(), part->end());
  return out;
}

Split stratified_split(const LabeledDataset& data, const std::array<double, 3>& fractions,
                       std::uint64_t seed) {
  const auto idx = stratified_split_indices(data, fractions, seed);
  return {data.subset(idx.train), data.subset(idx.validation), data.subset(idx.test)};
}

void write_csv(std::ostream& os, const LabeledDataset& data) {
  for (std::size_t j = 0; j < data.feature_dim; ++j) os << 'f' << j << ',';
  os << "label\n";
  const auto old = os.precision(17);
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (const double x : data.row(i)) os << x << ',';
    os << severity_name(data.labels[i]) << '\n';
  }
  os.precision(old);
}

LabeledDataset read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("csv: missing header");
  const auto header = split_commas(line);
  if (header.size() < 2 || header.back() != "label") {
    throw std::runtime_error("csv: header must end with column 'label'");
  }
  LabeledDataset data;
  data.feature_dim = header.size() - 1;
  for (std::size_t j = 0; j < data.feature_dim; ++j) {
    if (header[j] != "f" + std::to_string(j)) {
      throw std::runtime_error("csv: header column " + std::to_string(j) + " must be f" +
                               std::to_string(j));
    }
  }
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != header.size()) {
      throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected " +
                               std::to_string(header.size()) + " columns");
    }
    for (std::size_t j = 0; j < data.feature_dim; ++j) {
      const std::string cell(cells[j]);
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cell.size() || cell.empty() || !std::isfinite(x)) {
        throw std::runtime_error("csv line " + std::to_string(line_no) + ", column f" +
                                 std::to_string(j) + ": not a finite number");
      }
      data.features.push_back(x);
    }
    try {
      data.labels.push_back(parse_severity(cells.back()));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("csv line " + std::to_string(line_no) + ", column label: " +
                               e.what());
    }
  }
  return data;
}

LabeledDataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_csv(in);
}

void save_csv(const std::string& path, const LabeledDataset& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_csv(out, data);
}

}  // namespace swarmkd
