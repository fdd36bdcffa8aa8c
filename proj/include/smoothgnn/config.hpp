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
#include <optional>
#include <string>
#include <vector>

#include "smoothgnn/classifier.hpp"
#include "smoothgnn/curriculum.hpp"
#include "smoothgnn/propagation.hpp"
#include "smoothgnn/synthetic.hpp"

namespace smoothgnn {

struct CurriculumConfig {
  Index n_t = 10;
  Index knn_k = 4;
  double gamma_prime = 1.0;
  double mask_ratio = 0.0;
  AuxGraphMode aux_mode = AuxGraphMode::kEmbeddingKnn;
  Index pacing_epochs = 50;
  bool reset_on_finetune = false;
};

enum class ExperimentMode { kSupervised, kCurriculum };

// Everything a run needs. Coefficients are kept exactly as written in the
// config file; normalization happens on a copy when the run starts.
struct ExperimentConfig {
  std::string dataset_path;  // empty: generate from `synthetic`
  SyntheticSpec synthetic;
  PropagationConfig propagation;
  CurriculumConfig curriculum;
  TrainConfig train;
  ExperimentMode mode = ExperimentMode::kSupervised;
  bool noisy_features = false;
  std::vector<std::uint64_t> seeds{0};
  std::string output_dir;
  Index threads = 1;
  // Writes wall_ms = 0 so results files are byte-reproducible.
  bool deterministic = true;
  bool spectral_diagnostics = false;
  // Write every smoothed label snapshot of curriculum runs as CSV.
  bool export_snapshots = false;

  void validate() const;
};

// Flat "key = value" lines; '#' starts a comment. Unknown keys, repeated
// keys and malformed values are InvalidConfig / ParseError naming the line.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "config");
ExperimentConfig load_config(const std::filesystem::path& path);

// Only synthetic.* keys are accepted.
SyntheticSpec parse_synthetic_spec(const std::string& text, const std::string& source = "spec");

// Every key in a fixed order; feeding the text back yields an equal config.
std::string config_to_text(const ExperimentConfig& cfg);

// FNV-1a of the echo without run-placement keys (seeds, output_dir, threads).
std::uint64_t config_hash(const ExperimentConfig& cfg);

// Documented key list with one-line descriptions.
std::string config_key_reference();

}  // namespace smoothgnn
