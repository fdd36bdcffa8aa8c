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

#include "smoothgnn/graph.hpp"

namespace smoothgnn {

// Gaussian clusters joined by a two-probability block model.
struct SyntheticSpec {
  Index clusters = 3;
  Index centers_dim = 3;
  Index nodes_per_cluster = 100;
  double intra_p = 0.3;
  double inter_p = 0.02;
  // Centers are drawn from N(0, center_spread^2 I).
  double center_spread = 3.0;
  double feature_noise_sigma = 1.0;
  // Per-class split fractions; the remainder is the test split.
  double train_frac = 0.1;
  double val_frac = 0.2;
  std::uint64_t seed = 0;

  void validate() const;
};

// Cluster c holds nodes [c * m, (c + 1) * m). Features are center + sigma *
// N(0, I); each pair is linked with intra_p (same cluster) or inter_p.
Graph gen_gaussian_cluster_graph(const SyntheticSpec& spec);

// Replaces every feature entry with an independent N(0, 1) draw.
Graph add_feature_noise(const Graph& g, std::uint64_t seed);

// Stratified by label when labels exist; each class contributes
// round(frac * class_size) nodes to train and val.
Masks stratified_masks(const std::vector<int>& labels, double train_frac, double val_frac, std::uint64_t seed);

// Spanning path over a random permutation plus independent extra edges with
// probability p; features N(0, 1) of width `feature_dim`.
Graph random_connected_graph(Index n, double p, Index feature_dim, std::uint64_t seed);

}  // namespace smoothgnn
