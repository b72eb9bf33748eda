// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0

#include "swarmkd/config_space.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace swarmkd {

namespace {

constexpr std::array<std::string_view, 13> kNames = {
    "tokenizer",
    "vocab_size",
    "num_hidden_layers",
    "hidden_size",
    "hidden_act",
    "hidden_dropout_prob",
    "intermediate_size",
    "num_attention_heads",
    "attention_probs_dropout_prob",
    "max_sequence_length",
    "position_embedding_type",
    "learning_rate",
    "batch_size",
};

std::string_view kind_name(ParamKind kind) {
  switch (kind) {
    case ParamKind::integer_grid:
      return "integer-grid";
    case ParamKind::categorical:
      return "categorical";
    case ParamKind::fixed:
      return "fixed";
  }
  return "fixed";
}

ParamKind kind_from_name(std::string_view name) {
  if (name == "integer-grid") return ParamKind::integer_grid;
  if (name == "categorical") return ParamKind::categorical;
  if (name == "fixed") return ParamKind::fixed;
  throw SchemaError("field 'kind': unknown kind '" + std::string(name) + "'");
}

template <typename T>
const T& expect(const ParamValue& value, std::string_view name) {
  if (const T* v = std::get_if<T>(&value)) return *v;
  throw std::invalid_argument("value for " + std::string(name) + " has the wrong type");
}

nlohmann::json value_to_json(const ParamValue& value) {
  return std::visit([](const auto& v) { return nlohmann::json(v); }, value);
}

ParamValue value_from_json(const nlohmann::json& j, std::string_view field) {
  if (j.is_number_integer()) return ParamValue{j.get<std::int64_t>()};
  if (j.is_number_float()) return ParamValue{j.get<double>()};
  if (j.is_string()) return ParamValue{j.get<std::string>()};
  throw SchemaError("field '" + std::string(field) + "': expected number or string");
}

}  // namespace

std::string to_string(const ParamValue& value) {
  std::ostringstream os;
  std::visit([&os](const auto& v) { os << v; }, value);
  return os.str();
}

HyperparamDef HyperparamDef::integer_grid(std::string name, std::int64_t min, std::int64_t max,
                                          std::int64_t interval, bool affects_size) {
  if (interval <= 0) throw std::invalid_argument(name + ": interval must be > 0");
  if (min > max) throw std::invalid_argument(name + ": min must be <= max");
  HyperparamDef def;
  def.name = std::move(name);
  def.kind = ParamKind::integer_grid;
  def.range_min = min;
  def.range_max = max;
  def.interval = interval;
  def.affects_size = affects_size;
  for (std::int64_t v = min; v <= max; v += interval) def.grid.emplace_back(v);
  return def;
}

HyperparamDef HyperparamDef::categorical(std::string name, std::vector<ParamValue> values,
                                         bool affects_size) {
  if (values.empty()) throw std::invalid_argument(name + ": categorical grid is empty");
  HyperparamDef def;
  def.name = std::move(name);
  def.kind = ParamKind::categorical;
  def.grid = std::move(values);
  def.affects_size = affects_size;
  return def;
}

HyperparamDef HyperparamDef::fixed(std::string name, ParamValue value, bool affects_size) {
  HyperparamDef def;
  def.name = std::move(name);
  def.kind = ParamKind::fixed;
  def.grid.push_back(std::move(value));
  def.affects_size = affects_size;
  return def;
}

std::size_t HyperparamDef::index_of(const ParamValue& value) const {
  if (kind == ParamKind::integer_grid) {
    const auto* v = std::get_if<std::int64_t>(&value);
    if (v == nullptr || *v < range_min || (*v - range_min) % interval != 0) return npos;
    const auto i = static_cast<std::size_t>((*v - range_min) / interval);
    return i < grid.size() ? i : npos;
  }
  const auto it = std::find(grid.begin(), grid.end(), value);
  return it == grid.end() ? npos : static_cast<std::size_t>(it - grid.begin());
}

bool HyperparamDef::admits(const ParamValue& value) const {
  if (index_of(value) != npos) return true;
  if (kind == ParamKind::integer_grid) {
    const auto* v = std::get_if<std::int64_t>(&value);
    return v != nullptr && (*v == range_min || *v == range_max);
  }
  return false;
}

ParamValue ArchitectureConfig::get(std::string_view name) const {
  if (name == "tokenizer") return tokenizer;
  if (name == "vocab_size") return vocab_size;
  if (name == "num_hidden_layers") return num_hidden_layers;
  if (name == "hidden_size") return hidden_size;
  if (name == "hidden_act") return hidden_act;
  if (name == "hidden_dropout_prob") return hidden_dropout_prob;
  if (name == "intermediate_size") return intermediate_size;
  if (name == "num_attention_heads") return num_attention_heads;
  if (name == "attention_probs_dropout_prob") return attention_probs_dropout_prob;
  if (name == "max_sequence_length") return max_sequence_length;
  if (name == "position_embedding_type") return position_embedding_type;
  if (name == "learning_rate") return learning_rate;
  if (name == "batch_size") return batch_size;
  throw std::invalid_argument("unknown hyperparameter '" + std::string(name) + "'");
}

void ArchitectureConfig::set(std::string_view name, const ParamValue& value) {
  if (name == "tokenizer") tokenizer = expect<std::string>(value, name);
  else if (name == "vocab_size") vocab_size = expect<std::int64_t>(value, name);
  else if (name == "num_hidden_layers") num_hidden_layers = expect<std::int64_t>(value, name);
  else if (name == "hidden_size") hidden_size = expect<std::int64_t>(value, name);
  else if (name == "hidden_act") hidden_act = expect<std::string>(value, name);
  else if (name == "hidden_dropout_prob") hidden_dropout_prob = expect<double>(value, name);
  else if (name == "intermediate_size") intermediate_size = expect<std::int64_t>(value, name);
  else if (name == "num_attention_heads") num_attention_heads = expect<std::int64_t>(value, name);
  else if (name == "attention_probs_dropout_prob")
    attention_probs_dropout_prob = expect<double>(value, name);
  else if (name == "max_sequence_length") max_sequence_length = expect<std::int64_t>(value, name);
  else if (name == "position_embedding_type")
    position_embedding_type = expect<std::string>(value, name);
  else if (name == "learning_rate") learning_rate = expect<double>(value, name);
  else if (name == "batch_size") batch_size = expect<std::int64_t>(value, name);
  else throw std::invalid_argument("unknown hyperparameter '" + std::string(name) + "'");
}

std::span<const std::string_view> hyperparam_names() { return kNames; }

ConfigSpace::ConfigSpace(std::vector<HyperparamDef> dims) : dims_(std::move(dims)) {
  if (dims_.size() != kNames.size()) {
    throw std::invalid_argument("config space must have exactly 13 hyperparameters");
  }
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const auto& d = dims_[i];
    if (d.name != kNames[i]) {
      throw std::invalid_argument("hyperparameter " + std::to_string(i) + " must be '" +
                                  std::string(kNames[i]) + "', got '" + d.name + "'");
    }
    if (d.grid.empty()) throw std::invalid_argument(d.name + ": empty grid");
    if (d.kind == ParamKind::fixed && d.grid.size() != 1) {
      throw std::invalid_argument(d.name + ": fixed dims hold exactly one value");
    }
    if (d.kind == ParamKind::integer_grid && (d.interval <= 0 || d.range_min > d.range_max)) {
      throw std::invalid_argument(d.name + ": invalid integer range");
    }
    // Every grid value must type-check against the config field.
    ArchitectureConfig probe;
    for (const auto& v : d.grid) probe.set(d.name, v);
    if (d.searchable()) searchable_.push_back(i);
  }
}

const HyperparamDef& ConfigSpace::dim(std::string_view name) const {
  for (const auto& d : dims_) {
    if (d.name == name) return d;
  }
  throw std::invalid_argument("unknown hyperparameter '" + std::string(name) + "'");
}

ConfigSpace ConfigSpace::with_dim(HyperparamDef replacement) const {
  auto dims = dims_;
  for (auto& d : dims) {
    if (d.name == replacement.name) {
      d = std::move(replacement);
      return ConfigSpace(std::move(dims));
    }
  }
  throw std::invalid_argument("unknown hyperparameter '" + replacement.name + "'");
}

ConfigSpace default_space() {
  using HD = HyperparamDef;
  return ConfigSpace({
      HD::fixed("tokenizer", std::string("Byte-Pair Encoding"), false),
      HD::integer_grid("vocab_size", 1000, 50265, 1000, true),
      HD::integer_grid("num_hidden_layers", 1, 12, 1, true),
      HD::integer_grid("hidden_size", 16, 768, 16, true),
      HD::fixed("hidden_act", std::string("GELU"), false),
      HD::fixed("hidden_dropout_prob", 0.1, false),
      HD::integer_grid("intermediate_size", 16, 3072, 32, true),
      HD::integer_grid("num_attention_heads", 1, 12, 1, true),
      HD::fixed("attention_probs_dropout_prob", 0.1, false),
      HD::fixed("max_sequence_length", std::int64_t{512}, false),
      HD::fixed("position_embedding_type", std::string("absolute"), false),
      HD::categorical("learning_rate", {1e-5, 5e-5, 1e-4, 2e-4, 5e-4, 1e-3, 2e-3}, false),
      HD::fixed("batch_size", std::int64_t{32}, false),
  });
}

ArchitectureConfig teacher_config() { return ArchitectureConfig{}; }

std::vector<Violation> structural_violations(const ArchitectureConfig& cfg) {
  std::vector<Violation> out;
  const auto positive = [&out](std::string_view field, std::int64_t v) {
    if (v < 1) out.push_back({std::string(field), std::string(field) + " must be >= 1"});
  };
  positive("vocab_size", cfg.vocab_size);
  positive("num_hidden_layers", cfg.num_hidden_layers);
  positive("hidden_size", cfg.hidden_size);
  positive("intermediate_size", cfg.intermediate_size);
  positive("num_attention_heads", cfg.num_attention_heads);
  positive("max_sequence_length", cfg.max_sequence_length);
  positive("batch_size", cfg.batch_size);
  if (cfg.hidden_size >= 1 && cfg.num_attention_heads >= 1 &&
      cfg.hidden_size % cfg.num_attention_heads != 0) {
    out.push_back({"hidden_size", "hidden_size not divisible by num_attention_heads (" +
                                      std::to_string(cfg.hidden_size) + " mod " +
                                      std::to_string(cfg.num_attention_heads) + " != 0)"});
  }
  return out;
}

std::vector<Violation> validate(const ArchitectureConfig& cfg, const ConfigSpace& space) {
  std::vector<Violation> out;
  for (const auto& d : space.dims()) {
    const auto value = cfg.get(d.name);
    if (!d.admits(value)) {
      out.push_back({d.name, d.name + " = " + to_string(value) + " not on grid"});
    }
  }
  for (auto& v : structural_violations(cfg)) out.push_back(std::move(v));
  return out;
}

std::uint64_t space_cardinality(const ConfigSpace& space, bool enforce_divisibility) {
  const auto mul = [](std::uint64_t a, std::uint64_t b) {
    if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b) {
      throw std::overflow_error("space cardinality overflows 64 bits");
    }
    return a * b;
  };
  std::uint64_t count = 1;
  for (const auto& d : space.dims()) {
    if (enforce_divisibility && (d.name == "hidden_size" || d.name == "num_attention_heads")) {
      continue;
    }
    count = mul(count, d.grid.size());
  }
  if (!enforce_divisibility) return count;

  std::uint64_t pairs = 0;
  for (const auto& h : space.dim("hidden_size").grid) {
    for (const auto& a : space.dim("num_attention_heads").grid) {
      const auto hv = std::get<std::int64_t>(h);
      const auto av = std::get<std::int64_t>(a);
      if (av > 0 && hv % av == 0) ++pairs;
    }
  }
  return mul(count, pairs);
}

ArchitectureConfig decode(std::span<const double> position, const ConfigSpace& space) {
  if (position.size() != space.searchable_count()) {
    throw std::invalid_argument("position has " + std::to_string(position.size()) +
                                " coordinates, space has " +
                                std::to_string(space.searchable_count()) + " searchable dims");
  }
  ArchitectureConfig cfg;
  std::size_t k = 0;
  for (const auto& d : space.dims()) {
    if (!d.searchable()) {
      cfg.set(d.name, d.grid.front());
      continue;
    }
    const double coord = std::clamp(position[k++], 0.0, 1.0);
    const auto last = static_cast<double>(d.grid.size() - 1);
    auto idx = static_cast<std::size_t>(std::floor(coord * last + 0.5));
    idx = std::min(idx, d.grid.size() - 1);
    cfg.set(d.name, d.grid[idx]);
  }
  return cfg;
}

std::vector<double> encode(const ArchitectureConfig& cfg, const ConfigSpace& space) {
  std::vector<double> position;
  position.reserve(space.searchable_count());
  for (const auto& d : space.dims()) {
    const auto value = cfg.get(d.name);
    const auto idx = d.index_of(value);
    if (idx == HyperparamDef::npos) {
      throw std::invalid_argument(d.name + " = " + to_string(value) + " is not a search grid point");
    }
    if (!d.searchable()) continue;
    position.push_back(d.grid.size() == 1
                           ? 0.0
                           : static_cast<double>(idx) / static_cast<double>(d.grid.size() - 1));
  }
  return position;
}

void to_json(nlohmann::json& j, const ArchitectureConfig& cfg) {
  j = nlohmann::json::object();
  for (const auto name : kNames) j[std::string(name)] = value_to_json(cfg.get(name));
}

void from_json(const nlohmann::json& j, ArchitectureConfig& cfg) {
  if (!j.is_object()) throw SchemaError("architecture config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(kNames.begin(), kNames.end(), key) == kNames.end()) {
      throw SchemaError("field '" + key + "': unknown hyperparameter");
    }
    // Integers are accepted where a real is expected (e.g. "learning_rate": 0).
    auto v = value_from_json(value, key);
    const auto current = cfg.get(key);
    if (std::holds_alternative<double>(current) && std::holds_alternative<std::int64_t>(v)) {
      v = static_cast<double>(std::get<std::int64_t>(v));
    }
    if (v.index() != current.index()) {
      throw SchemaError("field '" + key + "': wrong type");
    }
    cfg.set(key, v);
  }
}

void to_json(nlohmann::json& j, const HyperparamDef& def) {
  j = nlohmann::json{{"name", def.name},
                     {"kind", std::string(kind_name(def.kind))},
                     {"affects_size", def.affects_size}};
  if (def.kind == ParamKind::integer_grid) {
    j["range"] = {{"min", def.range_min}, {"max", def.range_max}, {"interval", def.interval}};
  } else {
    auto grid = nlohmann::json::array();
    for (const auto& v : def.grid) grid.push_back(value_to_json(v));
    j["grid"] = std::move(grid);
  }
}

void from_json(const nlohmann::json& j, HyperparamDef& def) {
  const auto field = [&j](const char* key) -> const nlohmann::json& {
    if (!j.contains(key)) throw SchemaError(std::string("field '") + key + "': missing");
    return j.at(key);
  };
  try {
    const auto name = field("name").get<std::string>();
    const auto kind = kind_from_name(field("kind").get<std::string>());
    const bool affects = j.value("affects_size", false);
    if (kind == ParamKind::integer_grid) {
      const auto& r = field("range");
      def = HyperparamDef::integer_grid(name, r.at("min").get<std::int64_t>(),
                                        r.at("max").get<std::int64_t>(),
                                        r.at("interval").get<std::int64_t>(), affects);
      return;
    }
    std::vector<ParamValue> values;
    for (const auto& v : field("grid")) values.push_back(value_from_json(v, "grid"));
    if (kind == ParamKind::fixed) {
      if (values.size() != 1) throw SchemaError("field 'grid': fixed dims hold one value");
      def = HyperparamDef::fixed(name, values.front(), affects);
    } else {
      def = HyperparamDef::categorical(name, std::move(values), affects);
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("hyperparameter definition: ") + e.what());
  }
}

nlohmann::json space_to_json(const ConfigSpace& space) {
  auto dims = nlohmann::json::array();
  for (const auto& d : space.dims()) dims.push_back(d);
  return nlohmann::json{{"dims", std::move(dims)}};
}

ConfigSpace space_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.at("dims").is_array()) {
    throw SchemaError("field 'dims': missing or not an array");
  }
  std::vector<HyperparamDef> dims;
  for (const auto& d : j.at("dims")) dims.push_back(d.get<HyperparamDef>());
  try {
    return ConfigSpace(std::move(dims));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("field 'dims': ") + e.what());
  }
}

}  // namespace swarmkd
