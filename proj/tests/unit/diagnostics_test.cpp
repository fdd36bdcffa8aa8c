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

#include "smoothgnn/diagnostics.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "smoothgnn/dense_linalg.hpp"
#include "smoothgnn/spectral_oracle.hpp"
#include "smoothgnn/synthetic.hpp"
#include "test_util.hpp"

namespace smoothgnn {
namespace {

using testing::gaussian;

double brute_force_pairwise(const Matrix& h) {
  double total = 0.0;
  for (Index i = 0; i < h.rows(); ++i)
    for (Index j = 0; j < h.rows(); ++j) total += (h.row(i) - h.row(j)).squaredNorm();
  return total;
}

PropagationConfig hard_config(Index d, Index layers) {
  PropagationConfig cfg;
  cfg.width = d;
  cfg.filter = SpectralFilterParams::hard(d);
  cfg.layers = layers;
  return cfg;
}

TEST(PairwiseStats, IdenticalRowsGiveZero) {
  EXPECT_EQ(pairwise_stats(Matrix::Constant(6, 3, 1.5)).sum_sq_dist, 0.0);
}

TEST(PairwiseStats, TwoPointsCountBothOrders) {
  Matrix h(2, 1);
  h << 0.0, 2.0;
  const PairwiseStats s = pairwise_stats(h);
  EXPECT_DOUBLE_EQ(s.sum_sq_dist, 8.0);
  EXPECT_DOUBLE_EQ(s.mean, 4.0);
}

TEST(PairwiseStats, IdentityMatchesDoubleLoop) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix h = gaussian(5 + static_cast<Index>(seed), 3, seed);
    const double brute = brute_force_pairwise(h);
    EXPECT_NEAR(pairwise_stats(h).sum_sq_dist, brute, 1e-9 * brute);
  }
}

TEST(PairwiseStats, WhitenedEmbeddingsGiveTwoND) {
  const Graph g = random_connected_graph(30, 0.15, 4, 2);
  const Matrix h = graphain_step(g.features(), normalized_adjacency(g));
  const double expected = 2.0 * 30 * 4;
  EXPECT_NEAR(pairwise_stats(h).sum_sq_dist, expected, 1e-6 * expected);
  EXPECT_NEAR(brute_force_pairwise(h), expected, 1e-6 * expected);
}

TEST(SpectralAlignment, ZeroForEigenvectorsAndFullSpace) {
  const Graph g = random_connected_graph(12, 0.3, 1, 3);
  EXPECT_LT(spectral_alignment(top_d_eigvectors(dense_abar(g), 2), g, 2), 1e-12);
}

TEST(SpectralAlignment, DecreasesAlongGraphainTrajectory) {
  SyntheticSpec spec;
  spec.clusters = 2;
  spec.nodes_per_cluster = 25;
  spec.intra_p = 0.5;
  spec.inter_p = 0.04;
  spec.seed = 2;
  const Graph g = gen_gaussian_cluster_graph(spec);
  const NormalizedOperator op = normalized_adjacency(g);
  Matrix h = orthonormal_projection(apply_centering(gaussian(50, 1, 9)));
  double prev = spectral_alignment(h, g, 1);
  EXPECT_GT(prev, 0.0);
  EXPECT_LE(prev, 1.0);
  for (int t = 0; t < 100; ++t) {
    h = graphain_step(h, op);
    const double cur = spectral_alignment(h, g, 1);
    EXPECT_LE(cur, prev + 1e-12);
    prev = cur;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(LayerSweep, SingleLayerGivesOneRecord) {
  const Graph g = random_connected_graph(20, 0.2, 3, 1);
  EXPECT_EQ(layer_sweep(g, hard_config(3, 1)).size(), 1u);
}

TEST(LayerSweep, HardConfigKeepsMeanDistance) {
  const Graph g = random_connected_graph(40, 0.1, 4, 4);
  SweepOptions opt;
  opt.with_spectral = true;
  const auto records = layer_sweep(g, hard_config(4, 30), opt);
  ASSERT_EQ(records.size(), 30u);
  for (const auto& r : records) {
    EXPECT_NEAR(r.mean_pairwise_sq_dist, 8.0, 8.0 * 1e-6);
    EXPECT_NEAR(r.frob_sq, 4.0, 1e-9);
    EXPECT_LT(r.column_gram_dev, 1e-8);
    EXPECT_LT(r.column_sum_dev, 1e-9);
    ASSERT_TRUE(r.subspace_dist.has_value());
  }
  EXPECT_LT(*records.back().subspace_dist, *records.front().subspace_dist);
}

TEST(LayerSweep, SgcCollapsesTowardZeroOnRegularGraphs) {
  // Regular and non-bipartite, so the SGC limit has constant rows.
  std::vector<Edge> edges;
  for (Index v = 0; v < 30; ++v) {
    edges.push_back({v, (v + 1) % 30});
    edges.push_back({v, (v + 2) % 30});
  }
  const Graph g = build_graph(edges, 30, gaussian(30, 3, 5));
  PropagationConfig cfg = hard_config(3, 200);
  cfg.method = PropagationMethod::kSGC;
  const auto records = layer_sweep(g, cfg);
  // Compare with the input spread after the first smoothing step.
  EXPECT_LT(records.back().mean_pairwise_sq_dist, 1e-3 * records.front().mean_pairwise_sq_dist);
  for (std::size_t t = 1; t < records.size(); ++t) {
    EXPECT_LE(records[t].mean_pairwise_sq_dist, records[t - 1].mean_pairwise_sq_dist * (1.0 + 1e-9));
  }
}

TEST(LayerSweep, AccuracyColumnUsesClassifier) {
  const Graph base = random_connected_graph(20, 0.2, 2, 6);
  std::vector<int> labels(20, 0);
  const Graph g = build_graph(base.edges(), 20, base.features(), labels);
  SweepOptions opt;
  opt.classifier = LinearClassifier{Matrix::Zero(2, 2), std::nullopt};
  opt.eval_nodes = {0, 1, 2};
  const auto records = layer_sweep(g, hard_config(2, 3), opt);
  for (const auto& r : records) EXPECT_EQ(r.accuracy, 1.0);
}

TEST(DiagnosticsCsv, RoundTripsLosslessly) {
  const Graph g = random_connected_graph(25, 0.2, 3, 3);
  SweepOptions opt;
  opt.with_spectral = true;
  auto records = layer_sweep(g, hard_config(3, 5), opt);
  records[1].subspace_dist.reset();
  records[2].accuracy = 0.123456789012345678;
  std::stringstream ss;
  write_diagnostics_csv(ss, records);
  EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')),
            "layer,mean_pairwise_sq_dist,frob_sq,column_gram_dev,column_sum_dev,subspace_dist,accuracy");
  EXPECT_EQ(read_diagnostics_csv(ss), records);
}

TEST(DiagnosticsCsv, RejectsWrongHeader) {
  std::stringstream ss("layer,x\n1,2\n");
  EXPECT_ERROR_CODE(read_diagnostics_csv(ss), ErrorCode::kParseError);
}

}  // namespace
}  // namespace smoothgnn
