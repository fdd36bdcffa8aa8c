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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "smoothgnn/config.hpp"
#include "smoothgnn/diagnostics.hpp"
#include "smoothgnn/graph.hpp"
#include "smoothgnn/soft_labels.hpp"

namespace smoothgnn {

struct ResultRow {
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  // "teacher", a curriculum task index, "finetune" or "final".
  std::string task;
  std::string split;  // train | val | test
  double accuracy = 0.0;
  double loss = 0.0;
  double wall_ms = 0.0;

  bool operator==(const ResultRow&) const = default;
};

struct SeedOutput {
  std::uint64_t seed = 0;
  std::vector<ResultRow> rows;
  std::vector<DiagnosticsRecord> diagnostics;
  std::vector<SoftLabelMatrix> snapshots;  // curriculum runs with export_snapshots
  Matrix embedding;
};

struct ExperimentOutput {
  std::vector<SeedOutput> seeds;  // in config seed order

  std::vector<ResultRow> rows() const;
};

// The graph a seed runs on: `input` if given, else the dataset directory,
// else the synthetic generator with seed synthetic.seed + seed. Noise
// replacement is applied when noisy_features is set.
Graph experiment_graph(const ExperimentConfig& cfg, std::uint64_t seed, const std::optional<Graph>& input);

// One seed of the pipeline. Errors are rethrown with the failing stage
// ("propagate:", "teacher:", "curriculum:", ...) in the message.
SeedOutput run_seed(const ExperimentConfig& cfg, std::uint64_t seed, const std::optional<Graph>& input = std::nullopt);

// All seeds, on up to cfg.threads workers; output order follows cfg.seeds.
ExperimentOutput run_experiment(const ExperimentConfig& cfg, const std::optional<Graph>& input = std::nullopt);

// results.csv, diagnostics_seed<k>.csv and config_echo.txt in `dir`, plus
// snapshots_seed<k>_<i>.csv when snapshots were kept.
void write_experiment_outputs(const ExperimentOutput& out, const ExperimentConfig& cfg,
                              const std::filesystem::path& dir);

inline constexpr const char* kResultsHeader = "seed,config_hash,task,split,accuracy,loss,wall_ms";
void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows);

}  // namespace smoothgnn
