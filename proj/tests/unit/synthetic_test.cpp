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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "test_util.hpp"

namespace smoothgnn {
namespace {

SyntheticSpec base_spec(std::uint64_t seed) {
  SyntheticSpec spec;
  spec.clusters = 3;
  spec.nodes_per_cluster = 40;
  spec.seed = seed;
  return spec;
}

TEST(GaussianClusterGraph, DeterministicPerSeed) {
  const Graph a = gen_gaussian_cluster_graph(base_spec(5));
  const Graph b = gen_gaussian_cluster_graph(base_spec(5));
  const Graph c = gen_gaussian_cluster_graph(base_spec(6));
  EXPECT_TRUE(a == b);
  EXPECT_NE(structure_hash(a), structure_hash(c));
}

TEST(GaussianClusterGraph, ExactClusterSizesAndClasses) {
  const Graph g = gen_gaussian_cluster_graph(base_spec(1));
  ASSERT_EQ(g.num_nodes(), 120);
  EXPECT_EQ(g.num_classes(), 3);
  EXPECT_EQ(g.feature_dim(), 3);
  for (int c = 0; c < 3; ++c) EXPECT_EQ(std::count(g.labels().begin(), g.labels().end(), c), 40);
}

TEST(GaussianClusterGraph, NoCrossEdgesMeansFullHomophily) {
  SyntheticSpec spec = base_spec(2);
  spec.inter_p = 0.0;
  EXPECT_EQ(edge_homophily(gen_gaussian_cluster_graph(spec)), 1.0);
}

TEST(GaussianClusterGraph, DefaultsAreHomophilous) {
  std::vector<double> h;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SyntheticSpec spec;
    spec.seed = seed;
    h.push_back(edge_homophily(gen_gaussian_cluster_graph(spec)));
  }
  std::sort(h.begin(), h.end());
  EXPECT_GT(h[2], 0.8);
}

TEST(GaussianClusterGraph, MasksAreDisjointAndCoverEveryNode) {
  const Graph g = gen_gaussian_cluster_graph(base_spec(3));
  std::set<Index> seen;
  for (const IndexList* split : {&g.masks().train, &g.masks().val, &g.masks().test})
    for (Index v : *split) EXPECT_TRUE(seen.insert(v).second) << v;
  EXPECT_EQ(static_cast<Index>(seen.size()), g.num_nodes());
  // 10% train per class of 40 nodes.
  EXPECT_EQ(g.masks().train.size(), 12u);
  EXPECT_EQ(g.masks().val.size(), 24u);
}

TEST(GaussianClusterGraph, RejectsInvalidSpecs) {
  SyntheticSpec spec = base_spec(0);
  spec.intra_p = 1.5;
  EXPECT_ERROR_CODE(gen_gaussian_cluster_graph(spec), ErrorCode::kInvalidConfig);
  spec = base_spec(0);
  spec.clusters = 0;
  EXPECT_ERROR_CODE(gen_gaussian_cluster_graph(spec), ErrorCode::kInvalidConfig);
  spec = base_spec(0);
  spec.train_frac = 0.7;
  spec.val_frac = 0.5;
  EXPECT_ERROR_CODE(gen_gaussian_cluster_graph(spec), ErrorCode::kInvalidConfig);
}

TEST(FeatureNoise, KeepsStructureAndReplacesFeatures) {
  const Graph g = gen_gaussian_cluster_graph(base_spec(4));
  const Graph noisy = add_feature_noise(g, 11);
  EXPECT_EQ(structure_hash(noisy), structure_hash(g));
  EXPECT_EQ(noisy.labels(), g.labels());
  EXPECT_EQ(noisy.features().rows(), g.features().rows());
  // 360 draws: four standard errors of the mean.
  EXPECT_LT(std::abs(noisy.features().mean()), 0.21);
  EXPECT_FALSE(add_feature_noise(g, 11).features() != noisy.features());
  EXPECT_TRUE(add_feature_noise(g, 12).features() != noisy.features());
}

TEST(FeatureNoise, IsStandardNormal) {
  SyntheticSpec spec = base_spec(0);
  spec.nodes_per_cluster = 1000;
  spec.intra_p = 0.01;
  spec.inter_p = 0.0;
  const Matrix f = add_feature_noise(gen_gaussian_cluster_graph(spec), 3).features();
  const double mean = f.mean();
  const double var = (f.array() - mean).square().mean();
  EXPECT_LT(std::abs(mean), 0.05);
  EXPECT_NEAR(var, 1.0, 0.05);
}

TEST(StratifiedMasks, SplitsEachClass) {
  std::vector<int> labels;
  for (int c = 0; c < 2; ++c) labels.insert(labels.end(), 50, c);
  const Masks m = stratified_masks(labels, 0.2, 0.2, 1);
  int train_zero = 0;
  for (Index v : m.train) train_zero += labels[v] == 0;
  EXPECT_EQ(train_zero, 10);
  EXPECT_EQ(m.train.size(), 20u);
  EXPECT_EQ(m.test.size(), 60u);
  EXPECT_TRUE(std::is_sorted(m.train.begin(), m.train.end()));
}

TEST(RandomConnectedGraph, IsConnected) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = random_connected_graph(30, 0.02, 2, seed);
    std::vector<char> seen(30, 0);
    std::vector<Index> stack{0};
    seen[0] = 1;
    Index count = 1;
    while (!stack.empty()) {
      const Index v = stack.back();
      stack.pop_back();
      for (Index u : g.adjacency()[v])
        if (!seen[u]) {
          seen[u] = 1;
          ++count;
          stack.push_back(u);
        }
    }
    EXPECT_EQ(count, 30) << "seed " << seed;
  }
}

}  // namespace
}  // namespace smoothgnn
