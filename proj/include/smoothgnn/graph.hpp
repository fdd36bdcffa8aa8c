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
#include <optional>
#include <utility>
#include <vector>

#include "smoothgnn/types.hpp"

namespace smoothgnn {

using Edge = std::pair<Index, Index>;

struct Masks {
  IndexList train;
  IndexList val;
  IndexList test;
};

inline constexpr int kUnlabeled = -1;

// Undirected, unweighted graph with node features and optional labels.
// Edges are stored once each as (i, j) with i < j, sorted; self-loops are
// never stored since the normalized operator adds them.
class Graph {
 public:
  Graph() = default;

  Index num_nodes() const { return num_nodes_; }
  Index num_edges() const { return static_cast<Index>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Matrix& features() const { return features_; }
  Index feature_dim() const { return features_.cols(); }

  // kUnlabeled for nodes without a class.
  const std::vector<int>& labels() const { return labels_; }
  bool has_labels() const;
  int num_classes() const { return num_classes_; }
  const Masks& masks() const { return masks_; }

  // Neighbor lists (sorted, excluding self).
  const std::vector<IndexList>& adjacency() const { return adjacency_; }

  // Same structure/labels/masks with a replaced feature matrix.
  Graph with_features(Matrix features) const;
  Graph with_masks(Masks masks) const;

  bool operator==(const Graph& other) const;

 private:
  friend Graph build_graph(const std::vector<Edge>&, Index, Matrix,
                           std::optional<std::vector<int>>, Masks);

  Index num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<IndexList> adjacency_;
  Matrix features_;
  std::vector<int> labels_;
  int num_classes_ = 0;
  Masks masks_;
};

// Deduplicates and symmetrizes `edge_list`; self-loop entries are dropped.
// Throws IndexOutOfRange for any node index outside [0, n) and
// FeatureRowMismatch when `features` does not have n rows.
Graph build_graph(const std::vector<Edge>& edge_list, Index n, Matrix features,
                  std::optional<std::vector<int>> labels = std::nullopt, Masks masks = {});

enum class OperatorMode { kSymmetric, kRandomWalk };

// Sparse row-compressed form of D^-1/2 (A+I) D^-1/2 or D^-1 (A+I).
class NormalizedOperator {
 public:
  OperatorMode mode() const { return mode_; }
  Index size() const { return static_cast<Index>(row_ptr_.size()) - 1; }
  Index nonzeros() const { return static_cast<Index>(values_.size()); }
  const std::vector<double>& degrees() const { return degrees_; }
  const std::vector<Index>& row_ptr() const { return row_ptr_; }
  const std::vector<Index>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

  // Entry lookup, zero when not stored. O(log degree).
  double coeff(Index row, Index col) const;

 private:
  friend NormalizedOperator normalized_adjacency(const Graph&, OperatorMode);

  OperatorMode mode_ = OperatorMode::kSymmetric;
  std::vector<Index> row_ptr_{0};
  std::vector<Index> col_idx_;
  std::vector<double> values_;
  std::vector<double> degrees_;
};

NormalizedOperator normalized_adjacency(const Graph& g, OperatorMode mode = OperatorMode::kSymmetric);

// op * m, accumulated row by row in ascending column order.
Matrix apply_operator(const NormalizedOperator& op, const Matrix& m);

// (I - 11^T/n) m without forming the n x n matrix.
Matrix apply_centering(const Matrix& m);

// T * (op * (T * m)).
Matrix apply_doubly_centered(const NormalizedOperator& op, const Matrix& m);

// Fraction of edges joining same-label endpoints; 1 for an edgeless graph.
double edge_homophily(const Graph& g);

// FNV-1a over node count and edge list.
std::uint64_t structure_hash(const Graph& g);

}  // namespace smoothgnn
