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

#include "smoothgnn/curriculum.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <string>
#include <utility>

#include "smoothgnn/error.hpp"

namespace smoothgnn {
namespace {

AuxGraph from_edge_weights(Index n, std::vector<std::vector<std::pair<Index, double>>> rows) {
  AuxGraph aux;
  aux.num_nodes = n;
  aux.row_ptr.assign(1, 0);
  for (auto& row : rows) {
    std::sort(row.begin(), row.end());
    for (const auto& [j, w] : row) {
      aux.col_idx.push_back(j);
      aux.weights.push_back(w);
    }
    aux.row_ptr.push_back(static_cast<Index>(aux.col_idx.size()));
  }
  return aux;
}

}  // namespace

double AuxGraph::weighted_degree(Index v) const {
  double total = 0.0;
  for (Index k = row_ptr[v]; k < row_ptr[v + 1]; ++k) total += weights[k];
  return total;
}

AuxGraph aux_from_graph(const Graph& g) {
  std::vector<std::vector<std::pair<Index, double>>> rows(static_cast<std::size_t>(g.num_nodes()));
  for (Index v = 0; v < g.num_nodes(); ++v)
    for (Index u : g.adjacency()[v]) rows[v].emplace_back(u, 1.0);
  AuxGraph aux = from_edge_weights(g.num_nodes(), std::move(rows));
  aux.mode = AuxGraphMode::kInputGraph;
  return aux;
}

AuxGraph build_knn_aux_graph(const Matrix& vectors, Index k, double gamma_prime, AuxGraphMode mode) {
  if (k < 1) raise(ErrorCode::kInvalidConfig, "KNN k must be at least 1");
  if (!(gamma_prime > 0.0)) raise(ErrorCode::kInvalidConfig, "gamma_prime must be positive");
  const Index n = vectors.rows();
  bool clamped = false;
  if (n > 0 && k > n - 1) {
    std::cerr << "warning: KNN k = " << k << " clamped to n - 1 = " << n - 1 << '\n';
    k = n - 1;
    clamped = true;
  }

  std::vector<std::vector<char>> linked(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  std::vector<std::pair<double, Index>> candidates;
  for (Index i = 0; i < n; ++i) {
    candidates.clear();
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      candidates.emplace_back((vectors.row(i) - vectors.row(j)).squaredNorm(), j);
    }
    std::partial_sort(candidates.begin(), candidates.begin() + k, candidates.end());
    for (Index r = 0; r < k; ++r) {
      const Index j = candidates[r].second;
      linked[i][j] = 1;
      linked[j][i] = 1;
    }
  }

  std::vector<std::vector<std::pair<Index, double>>> rows(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (!linked[i][j]) continue;
      const double sim = std::max(0.0, vectors.row(i).dot(vectors.row(j)));
      rows[i].emplace_back(j, sim > 0.0 ? std::pow(sim, gamma_prime) : 0.0);
    }
  }
  AuxGraph aux = from_edge_weights(n, std::move(rows));
  aux.mode = mode;
  aux.k = k;
  aux.gamma_prime = gamma_prime;
  aux.k_clamped = clamped;
  return aux;
}

Matrix apply_transition(const AuxGraph& aux, const Matrix& y) {
  if (y.rows() != aux.num_nodes) raise(ErrorCode::kDimensionMismatch, "label rows differ from aux graph size");
  Matrix out = Matrix::Zero(y.rows(), y.cols());
  for (Index i = 0; i < aux.num_nodes; ++i) {
    const double deg = aux.weighted_degree(i);
    if (!(deg > 0.0)) {
      out.row(i) = y.row(i);
      continue;
    }
    for (Index k = aux.row_ptr[i]; k < aux.row_ptr[i + 1]; ++k) {
      if (aux.weights[k] != 0.0) out.row(i) += (aux.weights[k] / deg) * y.row(aux.col_idx[k]);
    }
  }
  return out;
}

Matrix dense_transition(const AuxGraph& aux) {
  const Index n = aux.num_nodes;
  Matrix p = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const double deg = aux.weighted_degree(i);
    if (!(deg > 0.0)) {
      p(i, i) = 1.0;
      continue;
    }
    for (Index k = aux.row_ptr[i]; k < aux.row_ptr[i + 1]; ++k) p(i, aux.col_idx[k]) += aux.weights[k] / deg;
  }
  return p;
}

SoftLabelMatrix estimate_labels_teacher(const Matrix& teacher_probs, const std::vector<int>& labels,
                                        const IndexList& labeled) {
  const Index n = teacher_probs.rows();
  if (static_cast<Index>(labels.size()) != n) raise(ErrorCode::kDimensionMismatch, "label vector size differs");
  for (Index v = 0; v < n; ++v) {
    const auto row = teacher_probs.row(v);
    if (row.minCoeff() < 0.0 || std::abs(row.sum() - 1.0) > 1e-6 || !row.allFinite()) {
      raise(ErrorCode::kRowNotStochastic, "teacher row " + std::to_string(v) + " is not a distribution");
    }
  }
  SoftLabelMatrix out;
  out.y = teacher_probs;
  out.masked.assign(static_cast<std::size_t>(n), 0);
  out.ground_truth.assign(static_cast<std::size_t>(n), 0);
  for (Index v : labeled) {
    if (v < 0 || v >= n) raise(ErrorCode::kIndexOutOfRange, "labeled node out of range");
    const int c = labels[v];
    if (c < 0 || c >= teacher_probs.cols()) raise(ErrorCode::kIndexOutOfRange, "labeled node has no valid class");
    out.y.row(v).setZero();
    out.y(v, c) = 1.0;
    out.ground_truth[v] = 1;
  }
  return out;
}

SoftLabelMatrix iterative_label_propagation(const AuxGraph& aux, const Matrix& y_labeled, const IndexList& labeled,
                                            Index iters) {
  if (labeled.empty()) raise(ErrorCode::kInvalidConfig, "label propagation needs at least one labeled node");
  if (static_cast<Index>(labeled.size()) != y_labeled.rows()) {
    raise(ErrorCode::kDimensionMismatch, "Y_L rows differ from labeled count");
  }
  const Index n = aux.num_nodes;
  Matrix f = Matrix::Zero(n, y_labeled.cols());
  auto clamp = [&] {
    for (std::size_t r = 0; r < labeled.size(); ++r) f.row(labeled[r]) = y_labeled.row(static_cast<Index>(r));
  };
  for (Index v : labeled)
    if (v < 0 || v >= n) raise(ErrorCode::kIndexOutOfRange, "labeled node out of range");
  clamp();
  for (Index it = 0; it < iters; ++it) {
    f = apply_transition(aux, f);
    clamp();
  }
  SoftLabelMatrix out;
  out.y = std::move(f);
  out.masked.assign(static_cast<std::size_t>(n), 0);
  out.ground_truth.assign(static_cast<std::size_t>(n), 0);
  for (Index v : labeled) out.ground_truth[v] = 1;
  out.renormalize();
  return out;
}

double normalized_entropy(const Eigen::Ref<const Eigen::RowVectorXd>& p) {
  const Index c = p.size();
  if (c < 2) raise(ErrorCode::kNotADistribution, "need at least two classes");
  if (p.minCoeff() < 0.0 || std::abs(p.sum() - 1.0) > 1e-6) {
    raise(ErrorCode::kNotADistribution, "entries must be nonnegative and sum to one");
  }
  double h = 0.0;
  for (Index i = 0; i < c; ++i)
    if (p(i) > 0.0) h -= p(i) * std::log(p(i));
  return std::clamp(h / std::log(static_cast<double>(c)), 0.0, 1.0);
}

SoftLabelMatrix entropy_filter(const SoftLabelMatrix& labels, double mask_ratio) {
  if (!(mask_ratio >= 0.0 && mask_ratio <= 1.0)) raise(ErrorCode::kInvalidConfig, "mask_ratio must lie in [0, 1]");
  SoftLabelMatrix out = labels;
  std::vector<std::pair<double, Index>> scored;
  for (Index v = 0; v < labels.num_nodes(); ++v) {
    if (labels.is_masked(v) || labels.ground_truth[v]) continue;
    scored.emplace_back(normalized_entropy(labels.y.row(v)), v);
  }
  const auto count = static_cast<std::size_t>(
      std::min<double>(static_cast<double>(scored.size()),
                       std::ceil(mask_ratio * static_cast<double>(scored.size()) - 1e-9)));
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t r = 0; r < count; ++r) {
    const Index v = scored[r].second;
    out.y.row(v).setZero();
    out.masked[v] = 1;
  }
  out.renormalize();
  return out;
}

std::vector<SoftLabelMatrix> smooth_labels(const AuxGraph& aux, const SoftLabelMatrix& y0, Index n_t) {
  if (n_t < 0) raise(ErrorCode::kInvalidConfig, "smoothing depth must be nonnegative");
  std::vector<SoftLabelMatrix> snapshots;
  snapshots.reserve(static_cast<std::size_t>(n_t) + 1);
  snapshots.push_back(y0);
  for (Index i = 0; i < n_t; ++i) {
    SoftLabelMatrix next = snapshots.back();
    next.y = apply_transition(aux, snapshots.back().y);
    next.renormalize();
    snapshots.push_back(std::move(next));
  }
  return snapshots;
}

CurriculumSchedule build_curriculum(const std::vector<SoftLabelMatrix>& snapshots, Index pacing_epochs,
                                    const SoftLabelMatrix& original, const IndexList& original_nodes) {
  if (snapshots.empty()) raise(ErrorCode::kEmptySchedule, "no label snapshots to schedule");
  if (pacing_epochs < 0) raise(ErrorCode::kInvalidConfig, "pacing epochs must be nonnegative");
  CurriculumSchedule schedule;
  schedule.n_t = static_cast<Index>(snapshots.size()) - 1;
  for (Index i = 0; i <= schedule.n_t; ++i) {
    schedule.tasks.push_back({snapshots[static_cast<std::size_t>(schedule.n_t - i)], pacing_epochs});
  }
  schedule.final_labels = original;
  schedule.final_nodes = original_nodes;
  return schedule;
}

CurriculumSchedule supervised_schedule(const SoftLabelMatrix& original, const IndexList& original_nodes) {
  CurriculumSchedule schedule;
  schedule.final_labels = original;
  schedule.final_nodes = original_nodes;
  return schedule;
}

CurriculumOutcome run_curriculum(const Matrix& embeddings, const CurriculumSchedule& schedule,
                                 const TrainConfig& train_cfg, const std::vector<int>& truth,
                                 const IndexList& val_nodes, bool reset_on_finetune) {
  if (schedule.final_nodes.empty()) raise(ErrorCode::kEmptySchedule, "fine-tune task has no labeled nodes");
  CurriculumOutcome outcome;
  std::optional<Matrix> weights;
  Index epochs_so_far = 0;

  const Index classes = schedule.final_labels.y.cols();
  const SoftLabelMatrix val_truth =
      val_nodes.empty() ? SoftLabelMatrix{} : SoftLabelMatrix::one_hot(truth, classes, val_nodes);
  auto evaluate = [&](const Matrix& w, TaskMetrics& m) {
    LinearClassifier clf{w, std::nullopt};
    const std::vector<int> predicted = predict(embeddings, clf).labels;
    m.train_accuracy = accuracy(predicted, truth, schedule.final_nodes);
    m.val_accuracy = accuracy(predicted, truth, val_nodes);
    m.val_loss = val_nodes.empty() ? 0.0 : softmax_cross_entropy(embeddings, val_truth, w, val_nodes);
  };

  for (std::size_t i = 0; i < schedule.tasks.size(); ++i) {
    const CurriculumTask& task = schedule.tasks[i];
    const IndexList include = task.labels.unmasked_nodes();
    TrainConfig cfg = train_cfg;
    cfg.epochs = include.empty() ? 0 : task.pacing_epochs;
    TrainResult res = train_linear(embeddings, task.labels, include, cfg, weights, epochs_so_far);
    epochs_so_far += cfg.epochs;
    weights = res.classifier.weights;
    TaskMetrics m;
    m.task = static_cast<Index>(i);
    m.epochs = cfg.epochs;
    m.train_loss = include.empty() ? 0.0 : softmax_cross_entropy(embeddings, task.labels, *weights, include);
    evaluate(*weights, m);
    outcome.metrics.push_back(m);
  }

  TrainResult res = train_linear(embeddings, schedule.final_labels, schedule.final_nodes, train_cfg, weights,
                                 reset_on_finetune ? 0 : epochs_so_far);
  weights = res.classifier.weights;
  TaskMetrics m;
  m.task = static_cast<Index>(schedule.tasks.size());
  m.epochs = train_cfg.epochs;
  m.train_loss = softmax_cross_entropy(embeddings, schedule.final_labels, *weights, schedule.final_nodes);
  evaluate(*weights, m);
  outcome.metrics.push_back(m);
  outcome.classifier.weights = *weights;
  return outcome;
}

}  // namespace smoothgnn
