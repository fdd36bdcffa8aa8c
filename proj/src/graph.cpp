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

#include "smoothgnn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smoothgnn/error.hpp"

namespace smoothgnn {
namespace {

void check_index(Index idx, Index n, const char* what) {
  if (idx < 0 || idx >= n) {
    raise(ErrorCode::kIndexOutOfRange,
          std::string(what) + " index " + std::to_string(idx) + " outside [0, " + std::to_string(n) + ")");
  }
}

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t v) {
  for (int byte = 0; byte < 8; ++byte) {
    h ^= (v >> (8 * byte)) & 0xffu;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

bool Graph::has_labels() const {
  return std::any_of(labels_.begin(), labels_.end(), [](int y) { return y != kUnlabeled; });
}

Graph Graph::with_features(Matrix features) const {
  if (features.rows() != num_nodes_) {
    raise(ErrorCode::kFeatureRowMismatch, "feature matrix has " + std::to_string(features.rows()) +
                                              " rows, graph has " + std::to_string(num_nodes_) + " nodes");
  }
  Graph out = *this;
  out.features_ = std::move(features);
  return out;
}

Graph Graph::with_masks(Masks masks) const {
  return build_graph(edges_, num_nodes_, features_, labels_, std::move(masks));
}

bool Graph::operator==(const Graph& other) const {
  return num_nodes_ == other.num_nodes_ && edges_ == other.edges_ && labels_ == other.labels_ &&
         features_.rows() == other.features_.rows() && features_.cols() == other.features_.cols() &&
         features_ == other.features_ && masks_.train == other.masks_.train &&
         masks_.val == other.masks_.val && masks_.test == other.masks_.test;
}

Graph build_graph(const std::vector<Edge>& edge_list, Index n, Matrix features,
                  std::optional<std::vector<int>> labels, Masks masks) {
  if (n < 0) raise(ErrorCode::kIndexOutOfRange, "negative node count");
  if (features.rows() != n) {
    raise(ErrorCode::kFeatureRowMismatch,
          "feature matrix has " + std::to_string(features.rows()) + " rows, expected " + std::to_string(n));
  }

  Graph g;
  g.num_nodes_ = n;
  g.edges_.reserve(edge_list.size());
  for (const auto& [u, v] : edge_list) {
    check_index(u, n, "edge");
    check_index(v, n, "edge");
    if (u == v) continue;
    g.edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

  g.adjacency_.assign(static_cast<std::size_t>(n), {});
  for (const auto& [u, v] : g.edges_) {
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());

  g.features_ = std::move(features);

  if (labels) {
    if (static_cast<Index>(labels->size()) != n) {
      raise(ErrorCode::kIndexOutOfRange, "label vector has " + std::to_string(labels->size()) +
                                             " entries, expected " + std::to_string(n));
    }
    g.labels_ = std::move(*labels);
  } else {
    g.labels_.assign(static_cast<std::size_t>(n), kUnlabeled);
  }
  int max_label = -1;
  for (int y : g.labels_) {
    if (y < kUnlabeled) raise(ErrorCode::kIndexOutOfRange, "negative class label " + std::to_string(y));
    max_label = std::max(max_label, y);
  }
  g.num_classes_ = max_label + 1;

  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (const IndexList* split : {&masks.train, &masks.val, &masks.test}) {
    for (Index v : *split) {
      check_index(v, n, "mask");
      if (seen[v]) raise(ErrorCode::kInvalidConfig, "node " + std::to_string(v) + " appears in two masks");
      seen[v] = 1;
    }
  }
  g.masks_ = std::move(masks);
  return g;
}

double NormalizedOperator::coeff(Index row, Index col) const {
  auto first = col_idx_.begin() + row_ptr_[row];
  auto last = col_idx_.begin() + row_ptr_[row + 1];
  auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

NormalizedOperator normalized_adjacency(const Graph& g, OperatorMode mode) {
  const Index n = g.num_nodes();
  NormalizedOperator op;
  op.mode_ = mode;
  op.degrees_.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    op.degrees_[i] = static_cast<double>(g.adjacency()[i].size()) + 1.0;
  }

  op.row_ptr_.assign(1, 0);
  op.row_ptr_.reserve(static_cast<std::size_t>(n) + 1);
  op.col_idx_.reserve(static_cast<std::size_t>(2 * g.num_edges() + n));
  op.values_.reserve(op.col_idx_.capacity());
  for (Index i = 0; i < n; ++i) {
    const auto& nbrs = g.adjacency()[i];
    const double di = op.degrees_[i];
    bool self_done = false;
    auto push = [&](Index j) {
      const double dj = op.degrees_[j];
      op.col_idx_.push_back(j);
      op.values_.push_back(mode == OperatorMode::kSymmetric ? 1.0 / std::sqrt(di * dj) : 1.0 / di);
    };
    for (Index j : nbrs) {
      if (!self_done && j > i) {
        push(i);
        self_done = true;
      }
      push(j);
    }
    if (!self_done) push(i);
    op.row_ptr_.push_back(static_cast<Index>(op.col_idx_.size()));
  }
  return op;
}

Matrix apply_operator(const NormalizedOperator& op, const Matrix& m) {
  const Index n = op.size();
  if (m.rows() != n) {
    raise(ErrorCode::kDimensionMismatch,
          "operator is " + std::to_string(n) + "x" + std::to_string(n) + ", input has " +
              std::to_string(m.rows()) + " rows");
  }
  Matrix out = Matrix::Zero(n, m.cols());
  const auto& rp = op.row_ptr();
  const auto& ci = op.col_idx();
  const auto& vals = op.values();
  for (Index i = 0; i < n; ++i) {
    for (Index k = rp[i]; k < rp[i + 1]; ++k) {
      out.row(i) += vals[k] * m.row(ci[k]);
    }
  }
  return out;
}

Matrix apply_centering(const Matrix& m) {
  if (m.rows() == 0) return m;
  Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(m.cols());
  for (Index i = 0; i < m.rows(); ++i) mean += m.row(i);
  mean /= static_cast<double>(m.rows());
  Matrix out = m;
  out.rowwise() -= mean;
  return out;
}

Matrix apply_doubly_centered(const NormalizedOperator& op, const Matrix& m) {
  return apply_centering(apply_operator(op, apply_centering(m)));
}

double edge_homophily(const Graph& g) {
  if (g.num_edges() == 0) return 1.0;
  Index same = 0;
  for (const auto& [u, v] : g.edges()) {
    if (g.labels()[u] == g.labels()[v]) ++same;
  }
  return static_cast<double>(same) / static_cast<double>(g.num_edges());
}

std::uint64_t structure_hash(const Graph& g) {
  std::uint64_t h = 14695981039346656037ull;
  h = fnv_mix(h, static_cast<std::uint64_t>(g.num_nodes()));
  for (const auto& [u, v] : g.edges()) {
    h = fnv_mix(h, static_cast<std::uint64_t>(u));
    h = fnv_mix(h, static_cast<std::uint64_t>(v));
  }
  return h;
}

}  // namespace smoothgnn
