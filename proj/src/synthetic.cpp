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

#include "smoothgnn/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "smoothgnn/error.hpp"

namespace smoothgnn {

void SyntheticSpec::validate() const {
  if (clusters < 1 || nodes_per_cluster < 1 || centers_dim < 1) {
    raise(ErrorCode::kInvalidConfig, "synthetic sizes must be positive");
  }
  if (!(inter_p >= 0.0 && inter_p < intra_p && intra_p <= 1.0)) {
    raise(ErrorCode::kInvalidConfig, "need 0 <= inter_p < intra_p <= 1");
  }
  if (!(center_spread >= 0.0) || !(feature_noise_sigma >= 0.0)) {
    raise(ErrorCode::kInvalidConfig, "spread and sigma must be nonnegative");
  }
  if (!(train_frac >= 0.0 && val_frac >= 0.0 && train_frac + val_frac <= 1.0)) {
    raise(ErrorCode::kInvalidConfig, "split fractions must be nonnegative and sum to at most 1");
  }
}

Graph gen_gaussian_cluster_graph(const SyntheticSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  const Index n = spec.clusters * spec.nodes_per_cluster;
  Matrix centers(spec.clusters, spec.centers_dim);
  for (Index c = 0; c < spec.clusters; ++c)
    for (Index k = 0; k < spec.centers_dim; ++k) centers(c, k) = spec.center_spread * normal(rng);

  std::vector<int> labels(static_cast<std::size_t>(n));
  Matrix features(n, spec.centers_dim);
  for (Index v = 0; v < n; ++v) {
    const Index c = v / spec.nodes_per_cluster;
    labels[v] = static_cast<int>(c);
    for (Index k = 0; k < spec.centers_dim; ++k) {
      features(v, k) = centers(c, k) + spec.feature_noise_sigma * normal(rng);
    }
  }

  std::vector<Edge> edges;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double prob = labels[i] == labels[j] ? spec.intra_p : spec.inter_p;
      if (uniform(rng) < prob) edges.emplace_back(i, j);
    }
  }

  Masks masks = stratified_masks(labels, spec.train_frac, spec.val_frac, spec.seed ^ 0x9e3779b97f4a7c15ull);
  return build_graph(edges, n, std::move(features), std::move(labels), std::move(masks));
}

Graph add_feature_noise(const Graph& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix noise(g.num_nodes(), g.feature_dim());
  for (Index i = 0; i < noise.rows(); ++i)
    for (Index k = 0; k < noise.cols(); ++k) noise(i, k) = normal(rng);
  return g.with_features(std::move(noise));
}

Masks stratified_masks(const std::vector<int>& labels, double train_frac, double val_frac, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::map<int, IndexList> by_class;
  for (std::size_t v = 0; v < labels.size(); ++v) by_class[labels[v]].push_back(static_cast<Index>(v));

  Masks masks;
  for (auto& [label, nodes] : by_class) {
    std::shuffle(nodes.begin(), nodes.end(), rng);
    const auto m = static_cast<double>(nodes.size());
    const auto n_train = static_cast<std::size_t>(std::llround(train_frac * m));
    const auto n_val = std::min(nodes.size() - n_train, static_cast<std::size_t>(std::llround(val_frac * m)));
    masks.train.insert(masks.train.end(), nodes.begin(), nodes.begin() + n_train);
    masks.val.insert(masks.val.end(), nodes.begin() + n_train, nodes.begin() + n_train + n_val);
    masks.test.insert(masks.test.end(), nodes.begin() + n_train + n_val, nodes.end());
  }
  std::sort(masks.train.begin(), masks.train.end());
  std::sort(masks.val.begin(), masks.val.end());
  std::sort(masks.test.begin(), masks.test.end());
  return masks;
}

Graph random_connected_graph(Index n, double p, Index feature_dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  IndexList order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Edge> edges;
  for (Index i = 0; i + 1 < n; ++i) edges.emplace_back(order[i], order[i + 1]);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (uniform(rng) < p) edges.emplace_back(i, j);
  Matrix features(n, feature_dim);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < feature_dim; ++k) features(i, k) = normal(rng);
  return build_graph(edges, n, std::move(features));
}

}  // namespace smoothgnn
