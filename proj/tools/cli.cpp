// Copyright (c) 2026, The swarmkd Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "swarmkd/config_space.hpp"
#include "swarmkd/cost_model.hpp"
#include "swarmkd/data.hpp"
#include "swarmkd/distill.hpp"
#include "swarmkd/ga.hpp"
#include "swarmkd/metrics.hpp"
#include "swarmkd/mlp.hpp"
#include "swarmkd/pso.hpp"
#include "swarmkd/search.hpp"

namespace swarmkd::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using Clock = std::chrono::system_clock;

std::string iso_utc(Clock::time_point t) {
  const std::time_t tt = Clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count() % 1000;
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(3) << std::setfill('0') << ms
     << 'Z';
  return os.str();
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Provenance for every file a subcommand writes.
class RunContext {
 public:
  RunContext(const CLI::App& sub, std::uint64_t seed)
      : subcommand_(sub.get_name()), seed_(seed), started_(Clock::now()) {
    for (const CLI::Option* opt : sub.get_options()) {
      if (opt->get_lnames().empty()) continue;
      const auto& name = opt->get_lnames().front();
      if (name == "help") continue;
      if (opt->count() > 0) {
        const auto& r = opt->results();
        flags_[name] = r.size() == 1 ? json(r.front()) : json(r);
      } else {
        flags_[name] = opt->get_default_str();
      }
    }
  }

  void set_extra(const std::string& key, json value) { extra_[key] = std::move(value); }

  void write(const fs::path& path, const std::string& content) const {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    write_file(path, content);
    write_manifest(path);
  }

  void write_manifest(const fs::path& path) const {
    json m;
    m["artifact"] = path.filename().string();
    m["subcommand"] = subcommand_;
    m["flags"] = flags_;
    m["seed"] = seed_;
    m["tool_version"] = version();
    m["started_at"] = iso_utc(started_);
    m["finished_at"] = iso_utc(Clock::now());
    for (const auto& [k, v] : extra_.items()) m[k] = v;
    write_file(path.string() + ".manifest.json", m.dump(2) + "\n");
  }

 private:
  static void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
  }

  std::string subcommand_;
  std::uint64_t seed_;
  Clock::time_point started_;
  json flags_ = json::object();
  json extra_ = json::object();
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

ArchitectureConfig load_config(const std::string& path) {
  try {
    return read_json_file(path).get<ArchitectureConfig>();
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

ConfigSpace load_space(const std::string& path) {
  if (path.empty()) return default_space();
  try {
    return space_from_json(read_json_file(path));
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string curve_csv(const LossCurve& curve) {
  std::ostringstream os;
  os.precision(17);
  os << "epoch,loss\n";
  for (std::size_t e = 0; e < curve.epoch_loss.size(); ++e) os << e << ',' << curve.epoch_loss[e] << '\n';
  return os.str();
}

std::array<double, 3> parse_fractions(const std::string& text) {
  std::array<double, 3> out{};
  std::stringstream ss(text);
  std::string cell;
  std::size_t n = 0;
  while (std::getline(ss, cell, ',')) {
    if (n == 3) throw std::invalid_argument("--split needs three fractions");
    std::size_t used = 0;
    out[n++] = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument("--split: bad number '" + cell + "'");
  }
  if (n != 3) throw std::invalid_argument("--split needs three fractions");
  return out;
}

json class_count_json(const LabeledDataset& d) {
  json j = json::object();
  const auto counts = d.class_counts();
  for (std::size_t k = 0; k < kNumSeverities; ++k) {
    j[std::string(severity_name(static_cast<int>(k)))] = counts[k];
  }
  return j;
}

double model_size_mb(const Classifier& m) { return size_mb_for(m.param_count()); }

// ---------------------------------------------------------------------------
// estimate

struct EstimateArgs {
  std::string config;
  std::int64_t seq_len = kDefaultSeqLen;
  std::string out;
};

int cmd_estimate(const CLI::App& sub, const EstimateArgs& a, std::ostream& out) {
  RunContext ctx(sub, 0);
  const auto cfg = a.config.empty() ? teacher_config() : load_config(a.config);
  const auto est = estimate(cfg, a.seq_len);
  json j = est;
  j["rho_vs_teacher"] = compression_ratio(est, model_size(teacher_config()));
  out << dump(j);
  if (!a.out.empty()) ctx.write(a.out, dump(j));
  return kOk;
}

// ---------------------------------------------------------------------------
// search / compare-search

struct SearchArgs {
  std::string algo = "pso";
  double budget_mb = 3.0;
  std::size_t swarm = 200;
  std::size_t iters = 150;
  double w = 0.9;
  double c1 = 2.0;
  double c2 = 2.0;
  double v_max = 0.2;
  double crossover = 0.9;
  std::optional<double> mutation;
  std::size_t tournament = 2;
  std::size_t elitism = 1;
  std::int64_t seq_len = kDefaultSeqLen;
  std::uint64_t seed = 0;
  std::string space;
  std::string out;
  std::string best_config;
  std::size_t runs = 5;
};

PsoParams pso_params(const SearchArgs& a, std::uint64_t seed) {
  PsoParams p;
  p.swarm_size = a.swarm;
  p.max_iter = a.iters;
  p.inertia_w = a.w;
  p.c1 = a.c1;
  p.c2 = a.c2;
  p.v_max = a.v_max;
  p.seed = seed;
  return p;
}

GaParams ga_params(const SearchArgs& a, std::uint64_t seed) {
  GaParams p;
  p.population = a.swarm;
  p.generations = a.iters;
  p.crossover_p = a.crossover;
  p.mutation_p = a.mutation;
  p.tournament_k = a.tournament;
  p.elitism = a.elitism;
  p.seed = seed;
  return p;
}

FitnessSpec fitness_spec(const SearchArgs& a) {
  auto spec = FitnessSpec::for_budget(a.budget_mb);
  spec.seq_len = a.seq_len;
  spec.validate();
  return spec;
}

int cmd_search(const CLI::App& sub, const SearchArgs& a, std::ostream& out) {
  RunContext ctx(sub, a.seed);
  const auto space = load_space(a.space);
  const auto spec = fitness_spec(a);
  const auto trace = a.algo == "pso" ? pso_search(space, pso_params(a, a.seed), spec)
                                     : ga_search(space, ga_params(a, a.seed), spec);
  ctx.set_extra("wall_time_s", trace.wall_time_s);

  json summary;
  summary["algo"] = a.algo;
  summary["budget_mb"] = a.budget_mb;
  summary["best_fitness"] = trace.best_fitness;
  summary["best_config"] = trace.best_config;
  summary["best_cost"] = estimate(trace.best_config, a.seq_len);
  summary["evaluations"] = trace.evaluations;
  summary["iterations"] = trace.g_best_fitness.size() - 1;
  summary["wall_time_s"] = trace.wall_time_s;
  out << dump(summary);

  if (!a.out.empty()) {
    std::ostringstream os;
    write_trace_csv(os, trace);
    ctx.write(a.out, os.str());
  }
  if (!a.best_config.empty()) ctx.write(a.best_config, dump(json(trace.best_config)));
  return kOk;
}

json timing_json(const TimingSummary& t, const std::vector<double>& best) {
  return json{{"mean_s", t.mean_s}, {"stddev_s", t.stddev_s}, {"run_s", t.run_seconds}, {"best_fitness", best}};
}

int cmd_compare(const CLI::App& sub, const SearchArgs& a, std::ostream& out) {
  RunContext ctx(sub, a.seed);
  const auto space = load_space(a.space);
  const auto spec = fitness_spec(a);

  // Paired runs: both algorithms see the same seed in each round.
  std::vector<double> pso_best;
  std::vector<double> ga_best;
  std::size_t pso_evals = 0;
  std::size_t ga_evals = 0;
  std::vector<double> pso_s;
  std::vector<double> ga_s;
  for (std::size_t r = 0; r < a.runs; ++r) {
    const auto seed = a.seed + r;
    const auto p = pso_search(space, pso_params(a, seed), spec);
    const auto g = ga_search(space, ga_params(a, seed), spec);
    pso_s.push_back(p.wall_time_s);
    ga_s.push_back(g.wall_time_s);
    pso_best.push_back(p.best_fitness);
    ga_best.push_back(g.best_fitness);
    pso_evals = p.evaluations;
    ga_evals = g.evaluations;
  }
  const auto pso_t = summarize_timing(pso_s);
  const auto ga_t = summarize_timing(ga_s);

  json report;
  report["runs"] = a.runs;
  report["seed"] = a.seed;
  report["budget_mb"] = a.budget_mb;
  report["evaluations_per_run"] = {{"pso", pso_evals}, {"ga", ga_evals}};
  report["pso"] = timing_json(pso_t, pso_best);
  report["ga"] = timing_json(ga_t, ga_best);
  report["pso_mean_s"] = pso_t.mean_s;
  report["ga_mean_s"] = ga_t.mean_s;
  report["time_reduction_pct"] = ga_t.mean_s > 0.0 ? drop_pct(ga_t.mean_s, pso_t.mean_s) : 0.0;
  out << dump(report);
  if (!a.out.empty()) ctx.write(a.out, dump(report));
  return kOk;
}

// ---------------------------------------------------------------------------
// gen-data

struct GenDataArgs {
  std::size_t n = 12071;
  std::vector<std::size_t> class_counts;
  std::size_t feature_dim = 16;
  double separation = kDefaultSeparation;
  std::string split = "0.8,0.1,0.1";
  std::uint64_t seed = 0;
  std::string out_dir;
};

int cmd_gen_data(const CLI::App& sub, const GenDataArgs& a, std::ostream& out) {
  RunContext ctx(sub, a.seed);
  const auto fractions = parse_fractions(a.split);
  LabeledDataset data;
  if (!a.class_counts.empty()) {
    data = gen_synthetic_counts(a.class_counts, a.feature_dim, a.separation, derive_seed(a.seed, 0));
  } else {
    SyntheticSpec spec;
    spec.n = a.n;
    spec.feature_dim = a.feature_dim;
    spec.separation = a.separation;
    spec.seed = derive_seed(a.seed, 0);
    data = gen_synthetic(spec);
  }
  const auto split = stratified_split(data, fractions, derive_seed(a.seed, 1));

  const fs::path dir(a.out_dir);
  json summary;
  summary["examples"] = data.size();
  summary["feature_dim"] = data.feature_dim;
  const std::array<std::pair<const char*, const LabeledDataset*>, 3> parts = {
      {{"train", &split.train}, {"validation", &split.validation}, {"test", &split.test}}};
  for (const auto& [name, part] : parts) {
    std::ostringstream os;
    write_csv(os, *part);
    ctx.write(dir / (std::string(name) + ".csv"), os.str());
    summary["splits"][name] = {{"size", part->size()}, {"classes", class_count_json(*part)}};
  }
  out << dump(summary);
  return kOk;
}

// ---------------------------------------------------------------------------
// train-teacher / distill

struct TrainArgs {
  std::string data;
  std::string validation;
  std::string arch = "16,64,64,4";
  std::string activation = "gelu";
  std::size_t epochs = 50;
  double lr = 0.05;
  std::size_t batch = 32;
  std::uint64_t seed = 0;
  std::string out;
  std::string curve;
};

int cmd_train_teacher(const CLI::App& sub, const TrainArgs& a, std::ostream& out) {
  RunContext ctx(sub, a.seed);
  const auto train = load_csv(a.data);
  auto model = mlp_classifier(parse_layer_sizes(a.arch), parse_activation(a.activation),
                              derive_seed(a.seed, 0));
  TrainParams tp;
  tp.learning_rate = a.lr;
  tp.epochs = a.epochs;
  tp.batch_size = a.batch;
  tp.seed = derive_seed(a.seed, 1);
  const auto curve = train_supervised(model, train, tp);

  json summary;
  summary["params"] = model.param_count();
  summary["train_accuracy"] = accuracy(predict(model, train), train.labels);
  if (!a.validation.empty()) {
    const auto val = load_csv(a.validation);
    summary["validation_accuracy"] = accuracy(predict(model, val), val.labels);
  }
  if (!curve.epoch_loss.empty()) summary["final_loss"] = curve.epoch_loss.back();
  out << dump(summary);

  ctx.write(a.out, mlp_to_json(model).dump(1) + "\n");
  if (!a.curve.empty()) ctx.write(a.curve, curve_csv(curve));
  return kOk;
}

struct DistillArgs {
  std::string teacher;
  std::string student_arch = "16,16,4";
  std::string activation = "gelu";
  std::string data;
  double temperature = 10.0;
  double alpha = 0.0;
  double lr = 5e-4;
  std::size_t epochs = 30;
  std::size_t batch = 32;
  std::uint64_t seed = 0;
  std::string out;
  std::string curve;
};

int cmd_distill(const CLI::App& sub, const DistillArgs& a, std::ostream& out) {
  RunContext ctx(sub, a.seed);
  const auto teacher = load_mlp(a.teacher);
  const auto train = load_csv(a.data);
  auto student = mlp_classifier(parse_layer_sizes(a.student_arch), parse_activation(a.activation),
                                derive_seed(a.seed, 0));
  DistillParams dp;
  dp.temperature = a.temperature;
  dp.alpha = a.alpha;
  dp.learning_rate = a.lr;
  dp.epochs = a.epochs;
  dp.batch_size = a.batch;
  dp.seed = derive_seed(a.seed, 1);
  const auto curve = distill_train(teacher, student, train, dp);

  json summary;
  summary["student_params"] = student.param_count();
  summary["teacher_params"] = teacher.param_count();
  summary["param_ratio"] = static_cast<double>(student.param_count()) /
                           static_cast<double>(teacher.param_count());
  summary["train_accuracy"] = accuracy(predict(student, train), train.labels);
  if (!curve.epoch_loss.empty()) summary["final_loss"] = curve.epoch_loss.back();
  out << dump(summary);

  ctx.write(a.out, mlp_to_json(student).dump(1) + "\n");
  if (!a.curve.empty()) ctx.write(a.curve, curve_csv(curve));
  return kOk;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
  std::string model;
  std::string teacher;
  std::string data;
  std::string name;
  std::string out;
  std::string results;
  bool include_timing = false;
};

struct Scored {
  double accuracy;
  double mcc;
  double size_mb;
  double seconds;
};

Scored score(const Mlp& model, const LabeledDataset& data) {
  const auto start = std::chrono::steady_clock::now();
  const auto pred = predict(model, data);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {accuracy(pred, data.labels), mcc(pred, data.labels, kNumSeverities), model_size_mb(model),
          seconds};
}

int cmd_evaluate(const CLI::App& sub, const EvaluateArgs& a, std::ostream& out) {
  RunContext ctx(sub, 0);
  const auto model = load_mlp(a.model);
  const auto data = load_csv(a.data);
  const auto s = score(model, data);

  EvalReport report;
  report.model = a.name.empty() ? fs::path(a.model).stem().string() : a.name;
  report.accuracy = s.accuracy;
  report.mcc = s.mcc;
  report.model_size_mb = s.size_mb;
  if (!a.teacher.empty()) {
    const auto t = score(load_mlp(a.teacher), data);
    if (t.accuracy != 0.0) report.acc_drop_pct = drop_pct(t.accuracy, s.accuracy);
    if (t.mcc != 0.0) report.mcc_drop_pct = drop_pct(t.mcc, s.mcc);
    report.size_drop_pct = drop_pct(t.size_mb, s.size_mb);
  }
  ctx.set_extra("time_cost_s", s.seconds);

  EvalReport with_time = report;
  with_time.time_cost_s = s.seconds;
  const json shown = a.include_timing ? with_time : report;
  out << dump(shown);
  if (!a.out.empty()) ctx.write(a.out, dump(shown));

  if (!a.results.empty()) {
    const fs::path path(a.results);
    std::string existing;
    if (fs::exists(path)) {
      std::ifstream in(path, std::ios::binary);
      existing.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    if (existing.empty()) existing = results_csv_header() + "\n";
    ctx.write(path, existing + results_csv_row(with_time) + "\n");
  }
  return kOk;
}

}  // namespace

std::string version() { return SWARMKD_VERSION; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Architecture search and knowledge distillation for severity classifiers", "swarmkd"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1, 1);

  EstimateArgs est;
  auto* estimate_cmd = app.add_subcommand("estimate", "Cost estimate of an architecture config");
  estimate_cmd->add_option("--config", est.config, "Architecture config JSON (default: teacher)");
  estimate_cmd->add_option("--seq-len", est.seq_len, "Tokens per forward pass")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  estimate_cmd->add_option("--out", est.out, "Write the estimate JSON here");

  const auto add_search_flags = [](CLI::App* cmd, SearchArgs& s) {
    cmd->add_option("--budget-mb", s.budget_mb, "Size budget in MiB")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--swarm", s.swarm, "Swarm size (GA population)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--iters", s.iters, "Iterations (GA generations)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--w", s.w, "PSO inertia weight")->capture_default_str()->check(CLI::Range(0.0, 2.0));
    cmd->add_option("--c1", s.c1, "PSO cognitive coefficient")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--c2", s.c2, "PSO social coefficient")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--v-max", s.v_max, "PSO velocity clamp")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--crossover", s.crossover, "GA crossover probability")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--mutation", s.mutation, "GA per-gene mutation probability (default 1/D)")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--tournament", s.tournament, "GA tournament size")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--elitism", s.elitism, "GA elite count")->capture_default_str();
    cmd->add_option("--seq-len", s.seq_len, "Tokens per forward pass")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", s.seed, "Random seed")->capture_default_str();
    cmd->add_option("--space", s.space, "Config space JSON (default: built-in space)");
  };

  SearchArgs search;
  auto* search_cmd = app.add_subcommand("search", "Search a student architecture under a size budget");
  add_search_flags(search_cmd, search);
  search_cmd->add_option("--algo", search.algo, "Search algorithm")
      ->capture_default_str()
      ->check(CLI::IsMember({"pso", "ga"}));
  search_cmd->add_option("--out", search.out, "Convergence trace CSV");
  search_cmd->add_option("--best-config", search.best_config, "Best architecture config JSON");

  SearchArgs compare;
  auto* compare_cmd = app.add_subcommand("compare-search", "Paired PSO vs GA timing runs");
  add_search_flags(compare_cmd, compare);
  compare_cmd->add_option("--runs", compare.runs, "Paired runs")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  compare_cmd->add_option("--out", compare.out, "Comparison report JSON");

  GenDataArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-data", "Generate and split a synthetic severity dataset");
  gen_cmd->add_option("--n", gen.n, "Examples")->capture_default_str()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--class-counts", gen.class_counts, "Exact per-class counts (overrides --n)")
      ->delimiter(',')
      ->expected(kNumSeverities);
  gen_cmd->add_option("--feature-dim", gen.feature_dim, "Feature dimension")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--separation", gen.separation, "Class mean separation")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--split", gen.split, "Train,validation,test fractions")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--out-dir", gen.out_dir, "Directory for train/validation/test CSVs")->required();

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train-teacher", "Supervised training of the teacher MLP");
  train_cmd->add_option("--data", train.data, "Training CSV")->required();
  train_cmd->add_option("--validation", train.validation, "Validation CSV");
  train_cmd->add_option("--arch", train.arch, "Layer sizes")->capture_default_str();
  train_cmd->add_option("--activation", train.activation, "Hidden activation")->capture_default_str();
  train_cmd->add_option("--epochs", train.epochs, "Epochs")->capture_default_str();
  train_cmd->add_option("--lr", train.lr, "Learning rate")->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--batch", train.batch, "Batch size")->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--seed", train.seed, "Random seed")->capture_default_str();
  train_cmd->add_option("--out", train.out, "Teacher model JSON")->required();
  train_cmd->add_option("--curve", train.curve, "Loss curve CSV");

  DistillArgs dist;
  auto* distill_cmd = app.add_subcommand("distill", "Distill a student MLP from a frozen teacher");
  distill_cmd->add_option("--teacher", dist.teacher, "Teacher model JSON")->required();
  distill_cmd->add_option("--student-arch", dist.student_arch, "Student layer sizes")->capture_default_str();
  distill_cmd->add_option("--activation", dist.activation, "Student hidden activation")->capture_default_str();
  distill_cmd->add_option("--data", dist.data, "Training CSV")->required();
  distill_cmd->add_option("--temperature", dist.temperature, "Softmax temperature")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  distill_cmd->add_option("--alpha", dist.alpha, "Hard-label weight")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  distill_cmd->add_option("--lr", dist.lr, "Learning rate")->capture_default_str()->check(CLI::PositiveNumber);
  distill_cmd->add_option("--epochs", dist.epochs, "Epochs")->capture_default_str();
  distill_cmd->add_option("--batch", dist.batch, "Batch size")->capture_default_str()->check(CLI::PositiveNumber);
  distill_cmd->add_option("--seed", dist.seed, "Random seed")->capture_default_str();
  distill_cmd->add_option("--out", dist.out, "Student model JSON")->required();
  distill_cmd->add_option("--curve", dist.curve, "Loss curve CSV");

  EvaluateArgs eval;
  auto* eval_cmd = app.add_subcommand("evaluate", "Accuracy, MCC and size report for a model");
  eval_cmd->add_option("--model", eval.model, "Model JSON")->required();
  eval_cmd->add_option("--data", eval.data, "Evaluation CSV")->required();
  eval_cmd->add_option("--teacher", eval.teacher, "Teacher model JSON for drop percentages");
  eval_cmd->add_option("--name", eval.name, "Model name in the report (default: file stem)");
  eval_cmd->add_option("--out", eval.out, "Report JSON");
  eval_cmd->add_option("--results", eval.results, "Results CSV to append to");
  eval_cmd->add_flag("--include-timing", eval.include_timing, "Put time_cost_s in the report JSON");

  std::vector<const char*> argv{"swarmkd"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (estimate_cmd->parsed()) return cmd_estimate(*estimate_cmd, est, out);
    if (search_cmd->parsed()) return cmd_search(*search_cmd, search, out);
    if (compare_cmd->parsed()) return cmd_compare(*compare_cmd, compare, out);
    if (gen_cmd->parsed()) return cmd_gen_data(*gen_cmd, gen, out);
    if (train_cmd->parsed()) return cmd_train_teacher(*train_cmd, train, out);
    if (distill_cmd->parsed()) return cmd_distill(*distill_cmd, dist, out);
    if (eval_cmd->parsed()) return cmd_evaluate(*eval_cmd, eval, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace swarmkd::cli
