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

#include <iosfwd>
#include <optional>
#include <vector>

#include "smoothgnn/classifier.hpp"
#include "smoothgnn/graph.hpp"
#include "smoothgnn/propagation.hpp"
#include "smoothgnn/types.hpp"

namespace smoothgnn {

struct DiagnosticsRecord {
  Index layer = 0;
  // Sum over ordered node pairs of ||H_i - H_j||^2, divided by n; equals 2d
  // for whitened embeddings.
  double mean_pairwise_sq_dist = 0.0;
  double frob_sq = 0.0;
  double column_gram_dev = 0.0;  // max |H^T H - I|
  double column_sum_dev = 0.0;   // max |1^T H|
  std::optional<double> subspace_dist;
  std::optional<double> accuracy;

  bool operator==(const DiagnosticsRecord&) const = default;
};

struct PairwiseStats {
  double sum_sq_dist = 0.0;  // ordered pairs, i = j contributes 0
  double mean = 0.0;         // sum_sq_dist / n
};

// 2n sum_i ||H_i||^2 - 2 ||sum_i H_i||^2, in O(nd).
PairwiseStats pairwise_stats(const Matrix& h);

// Subspace distance between orthonormal H and the top-d eigenvectors of the
// dense doubly centered operator.
double spectral_alignment(const Matrix& h, const Graph& g, Index d);

struct SweepOptions {
  std::optional<Matrix> reducer;
  // Compare each layer's span with the top eigenvectors of A_bar (n <= 2000).
  bool with_spectral = false;
  // Per-layer accuracy of this classifier on `eval_nodes`.
  std::optional<LinearClassifier> classifier;
  IndexList eval_nodes;
};

std::vector<DiagnosticsRecord> layer_sweep(const Graph& g, const PropagationConfig& cfg,
                                           const SweepOptions& options = {});

// Records for already computed layers H_1..H_L; `options.reducer` is unused.
std::vector<DiagnosticsRecord> diagnose_snapshots(const std::vector<Matrix>& layers, const Graph& g, Index width,
                                                  const SweepOptions& options);

DiagnosticsRecord diagnose_layer(Index layer, const Matrix& h);

void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& records);
std::vector<DiagnosticsRecord> read_diagnostics_csv(std::istream& is);

}  // namespace smoothgnn
