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

// Command-line front end: dataset generation, propagation, training, the
// curriculum pipeline and the oracle suites.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "smoothgnn/config.hpp"
#include "smoothgnn/dataset_io.hpp"
#include "smoothgnn/diagnostics.hpp"
#include "smoothgnn/error.hpp"
#include "smoothgnn/experiment.hpp"
#include "smoothgnn/propagation.hpp"
#include "smoothgnn/synthetic.hpp"
#include "smoothgnn/verify.hpp"

namespace fs = std::filesystem;
using namespace smoothgnn;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) raise(ErrorCode::kIoError, "cannot open " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p);
  if (!f) raise(ErrorCode::kIoError, "cannot write " + p.string());
  return f;
}

fs::path output_dir(const std::string& flag, const ExperimentConfig& cfg) {
  fs::path dir = !flag.empty() ? fs::path(flag) : !cfg.output_dir.empty() ? fs::path(cfg.output_dir) : fs::path(".");
  fs::create_directories(dir);
  return dir;
}

int run_pipeline(const std::string& graph_dir, const std::string& config_path, const std::string& out_flag,
                 std::optional<ExperimentMode> forced) {
  ExperimentConfig cfg = load_config(config_path);
  if (forced) cfg.mode = *forced;
  std::optional<Graph> input;
  if (!graph_dir.empty()) input = load_dataset(fs::path(graph_dir));
  const ExperimentOutput out = run_experiment(cfg, input);
  const fs::path dir = output_dir(out_flag, cfg);
  write_experiment_outputs(out, cfg, dir);
  for (const auto& row : out.rows()) {
    if (row.task == "final") {
      std::cout << "seed " << row.seed << " " << row.split << " accuracy " << row.accuracy << "\n";
    }
  }
  std::cout << "wrote " << (dir / "results.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deep graph propagation with anisotropic normalization and label-smoothing curricula"};
  app.require_subcommand(1);

  std::string spec_path, out_dir, graph_dir, config_path, suite = "all";
  bool trace = false;

  auto* gen = app.add_subcommand("gen", "write a synthetic Gaussian-cluster dataset");
  gen->add_option("--spec", spec_path, "file of synthetic.* keys")->required();
  gen->add_option("--out", out_dir, "output directory")->required();

  auto* prop = app.add_subcommand("propagate", "compute embeddings and per-layer diagnostics");
  prop->add_option("--graph", graph_dir, "dataset directory")->required();
  prop->add_option("--config", config_path, "experiment config")->required();
  prop->add_flag("--trace", trace, "write a diagnostics row for every layer");
  prop->add_option("--out", out_dir, "output directory (default: experiment.output_dir or .)");

  auto* train = app.add_subcommand("train", "supervised baseline without curriculum");
  auto* curr = app.add_subcommand("curriculum", "teacher, label smoothing, curriculum and fine-tune");
  for (auto* sub : {train, curr}) {
    sub->add_option("--graph", graph_dir, "dataset directory (default: dataset.path or synthetic)");
    sub->add_option("--config", config_path, "experiment config")->required();
    sub->add_option("--out", out_dir, "output directory (default: experiment.output_dir or .)");
  }

  auto* verify = app.add_subcommand("verify", "run oracle suites; exit 0 only if all pass");
  verify->add_option("--suite", suite, "theorem1|theorem2|theorem3|oversmooth|labelprop|all");

  app.add_subcommand("config-keys", "list every config key with its default");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const SyntheticSpec spec = parse_synthetic_spec(read_file(spec_path), spec_path);
      const Graph g = gen_gaussian_cluster_graph(spec);
      save_dataset(g, out_dir);
      std::cout << "wrote " << g.num_nodes() << " nodes, " << g.num_edges() << " edges to " << out_dir << "\n";
      return 0;
    }
    if (*prop) {
      const ExperimentConfig cfg = load_config(config_path);
      const Graph g = load_dataset(fs::path(graph_dir));
      PropagationConfig pc = cfg.propagation;
      pc.validate();
      std::optional<Matrix> reducer;
      if (g.feature_dim() != pc.width) reducer = make_reducer(g.feature_dim(), pc.width, pc.weight_seed);
      const PropagationResult run = propagate(g, pc, reducer, /*keep_trace=*/trace);
      std::vector<DiagnosticsRecord> records;
      SweepOptions options;
      options.with_spectral = cfg.spectral_diagnostics;
      if (trace) {
        records = diagnose_snapshots(run.trace->snapshots, g, pc.width, options);
      } else {
        records = diagnose_snapshots({run.embedding}, g, pc.width, options);
        records.back().layer = pc.layers;
      }
      const fs::path dir = output_dir(out_dir, cfg);
      {
        auto f = open_out(dir / "embeddings.csv");
        write_matrix_csv(f, run.embedding);
      }
      auto f = open_out(dir / "diagnostics.csv");
      write_diagnostics_csv(f, records);
      std::cout << "wrote " << (dir / "embeddings.csv").string() << " and diagnostics.csv\n";
      return 0;
    }
    if (*train) return run_pipeline(graph_dir, config_path, out_dir, ExperimentMode::kSupervised);
    if (*curr) return run_pipeline(graph_dir, config_path, out_dir, ExperimentMode::kCurriculum);
    if (*verify) {
      const std::vector<std::string> names = suite == "all" ? verify_suite_names() : std::vector<std::string>{suite};
      bool ok = true;
      for (const auto& name : names) {
        const SuiteReport report = run_verify_suite(name);
        print_report(std::cout, report);
        ok = ok && report.passed();
      }
      return ok ? 0 : 1;
    }
    std::cout << config_key_reference();
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
