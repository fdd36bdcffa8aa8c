// Copyright 2026 The SmoothGNN Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "smoothgnn/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "smoothgnn/csv.hpp"
#include "smoothgnn/curriculum.hpp"
#include "smoothgnn/dataset_io.hpp"
#include "smoothgnn/error.hpp"
#include "smoothgnn/soft_labels.hpp"
#include "smoothgnn/synthetic.hpp"

namespace smoothgnn {
namespace {

constexpr std::uint64_t kNoiseSalt = 0x6a09e667f3bcc909ull;
constexpr std::uint64_t kReducerSalt = 0xbb67ae8584caa73bull;

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    raise(e.code(), std::string(name) + ": " + e.what());
  }
}

class Clock {
 public:
  explicit Clock(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
  double lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - start_).count();
    start_ = now;
    return enabled_ ? ms : 0.0;
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

struct Splits {
  IndexList train, val, test;
};

void add_split_rows(std::vector<ResultRow>& rows, const ResultRow& base, const Matrix& h, const Matrix& w,
                    const Graph& g, const Splits& splits) {
  const LinearClassifier clf{w, std::nullopt};
  const Prediction pred = predict(h, clf);
  const std::pair<const char*, const IndexList*> parts[] = {
      {"train", &splits.train}, {"val", &splits.val}, {"test", &splits.test}};
  for (const auto& [name, nodes] : parts) {
    if (nodes->empty()) continue;
    ResultRow row = base;
    row.split = name;
    row.accuracy = accuracy(pred.labels, g.labels(), *nodes);
    const SoftLabelMatrix truth = SoftLabelMatrix::one_hot(g.labels(), g.num_classes(), *nodes);
    row.loss = softmax_cross_entropy(h, truth, w, *nodes);
    rows.push_back(row);
  }
}

AuxGraph make_aux(const ExperimentConfig& cfg, const Graph& g, const Matrix& h) {
  if (cfg.noisy_features) return aux_from_graph(g);
  switch (cfg.curriculum.aux_mode) {
    case AuxGraphMode::kInputGraph:
      return aux_from_graph(g);
    case AuxGraphMode::kFeatureKnn:
      return build_knn_aux_graph(g.features(), cfg.curriculum.knn_k, cfg.curriculum.gamma_prime,
                                 AuxGraphMode::kFeatureKnn);
    case AuxGraphMode::kEmbeddingKnn:
      break;
  }
  return build_knn_aux_graph(h, cfg.curriculum.knn_k, cfg.curriculum.gamma_prime, AuxGraphMode::kEmbeddingKnn);
}

}  // namespace

std::vector<ResultRow> ExperimentOutput::rows() const {
  std::vector<ResultRow> all;
  for (const auto& s : seeds) all.insert(all.end(), s.rows.begin(), s.rows.end());
  return all;
}

Graph experiment_graph(const ExperimentConfig& cfg, std::uint64_t seed, const std::optional<Graph>& input) {
  Graph g = stage("dataset", [&] {
    if (input) return *input;
    if (!cfg.dataset_path.empty()) return load_dataset(std::filesystem::path(cfg.dataset_path));
    SyntheticSpec spec = cfg.synthetic;
    spec.seed = cfg.synthetic.seed + seed;
    return gen_gaussian_cluster_graph(spec);
  });
  if (cfg.noisy_features) g = add_feature_noise(g, seed ^ kNoiseSalt);
  return g;
}

SeedOutput run_seed(const ExperimentConfig& cfg, std::uint64_t seed, const std::optional<Graph>& input) {
  cfg.validate();
  Clock clock(!cfg.deterministic);
  SeedOutput out;
  out.seed = seed;

  const Graph g = experiment_graph(cfg, seed, input);
  if (!g.has_labels()) raise(ErrorCode::kInvalidConfig, "dataset: labels are required for training");
  const Splits splits{g.masks().train, g.masks().val, g.masks().test};
  if (splits.train.empty()) raise(ErrorCode::kInvalidConfig, "dataset: the train mask is empty");

  PropagationConfig prop = cfg.propagation;
  prop.validate();
  std::optional<Matrix> reducer;
  if (g.feature_dim() != prop.width) reducer = make_reducer(g.feature_dim(), prop.width, seed ^ kReducerSalt);
  PropagationResult run = stage("propagate", [&] { return propagate(g, prop, reducer, /*keep_trace=*/true); });
  const Matrix& h = run.embedding;
  const double propagate_ms = clock.lap_ms();

  ResultRow base;
  base.seed = seed;
  base.config_hash = config_hash(cfg);

  const Index classes = g.num_classes();
  const SoftLabelMatrix ground = SoftLabelMatrix::one_hot(g.labels(), classes, splits.train);
  const TrainResult teacher = stage("teacher", [&] { return train_linear(h, ground, splits.train, cfg.train); });

  Matrix final_weights = teacher.classifier.weights;
  if (cfg.mode == ExperimentMode::kCurriculum) {
    ResultRow row = base;
    row.task = "teacher";
    row.wall_ms = propagate_ms + clock.lap_ms();
    add_split_rows(out.rows, row, h, teacher.classifier.weights, g, splits);

    const CurriculumOutcome outcome = stage("curriculum", [&] {
      const Prediction pred = predict(h, teacher.classifier);
      const SoftLabelMatrix pseudo = estimate_labels_teacher(pred.probabilities, g.labels(), splits.train);
      const SoftLabelMatrix filtered = entropy_filter(pseudo, cfg.curriculum.mask_ratio);
      const AuxGraph aux = make_aux(cfg, g, h);
      auto snapshots = smooth_labels(aux, filtered, cfg.curriculum.n_t);
      if (cfg.export_snapshots) out.snapshots = snapshots;
      const CurriculumSchedule schedule =
          build_curriculum(snapshots, cfg.curriculum.pacing_epochs, ground, splits.train);
      return run_curriculum(h, schedule, cfg.train, g.labels(), splits.val, cfg.curriculum.reset_on_finetune);
    });
    const double curriculum_ms = clock.lap_ms();
    for (std::size_t i = 0; i < outcome.metrics.size(); ++i) {
      const TaskMetrics& m = outcome.metrics[i];
      ResultRow r = base;
      r.task = i + 1 == outcome.metrics.size() ? "finetune" : std::to_string(m.task);
      r.wall_ms = i + 1 == outcome.metrics.size() ? curriculum_ms : 0.0;
      r.split = "train";
      r.accuracy = m.train_accuracy;
      r.loss = m.train_loss;
      out.rows.push_back(r);
      if (!splits.val.empty()) {
        r.split = "val";
        r.accuracy = m.val_accuracy;
        r.loss = m.val_loss;
        r.wall_ms = 0.0;
        out.rows.push_back(r);
      }
    }
    final_weights = outcome.classifier.weights;
  }

  ResultRow final_row = base;
  final_row.task = "final";
  final_row.wall_ms = cfg.mode == ExperimentMode::kSupervised ? propagate_ms + clock.lap_ms() : 0.0;
  add_split_rows(out.rows, final_row, h, final_weights, g, splits);

  SweepOptions options;
  options.with_spectral = cfg.spectral_diagnostics;
  options.classifier = LinearClassifier{final_weights, std::nullopt};
  options.eval_nodes = splits.test;
  out.diagnostics = stage("diagnostics", [&] {
    return diagnose_snapshots(run.trace->snapshots, g, prop.width, options);
  });
  out.embedding = h;
  return out;
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg, const std::optional<Graph>& input) {
  cfg.validate();
  const std::size_t n = cfg.seeds.size();
  ExperimentOutput out;
  out.seeds.resize(n);
  std::vector<std::exception_ptr> failures(n);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out.seeds[i] = run_seed(cfg, cfg.seeds[i], input);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.threads), n);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const Error& e) {
      raise(e.code(), "seed " + std::to_string(cfg.seeds[i]) + ": " + e.what());
    }
  }
  return out;
}

void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << kResultsHeader << '\n';
  for (const auto& r : rows) {
    os << r.seed << ',' << r.config_hash << ',' << r.task << ',' << r.split << ',' << csv::format_double(r.accuracy)
       << ',' << csv::format_double(r.loss) << ',' << csv::format_double(r.wall_ms) << '\n';
  }
}

void write_experiment_outputs(const ExperimentOutput& out, const ExperimentConfig& cfg,
                              const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) raise(ErrorCode::kIoError, "cannot create " + dir.string() + ": " + ec.message());
  auto open = [](const std::filesystem::path& p) {
    std::ofstream f(p);
    if (!f) raise(ErrorCode::kIoError, "cannot write " + p.string());
    return f;
  };
  {
    auto f = open(dir / "results.csv");
    write_results_csv(f, out.rows());
  }
  for (const auto& s : out.seeds) {
    auto f = open(dir / ("diagnostics_seed" + std::to_string(s.seed) + ".csv"));
    write_diagnostics_csv(f, s.diagnostics);
    for (std::size_t i = 0; i < s.snapshots.size(); ++i) {
      auto snap = open(dir / ("snapshots_seed" + std::to_string(s.seed) + "_" + std::to_string(i) + ".csv"));
      write_soft_labels_csv(snap, s.snapshots[i]);
    }
  }
  auto f = open(dir / "config_echo.txt");
  f << config_to_text(cfg);
}

}  // namespace smoothgnn
