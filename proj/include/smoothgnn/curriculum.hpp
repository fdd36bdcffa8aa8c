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

#include <optional>
#include <vector>

#include "smoothgnn/classifier.hpp"
#include "smoothgnn/graph.hpp"
#include "smoothgnn/soft_labels.hpp"
#include "smoothgnn/types.hpp"

namespace smoothgnn {

enum class AuxGraphMode { kInputGraph, kFeatureKnn, kEmbeddingKnn };

// Weighted symmetric graph used for label smoothing. Stored as CSR with
// sorted columns; zero-weight edges may be present.
struct AuxGraph {
  Index num_nodes = 0;
  AuxGraphMode mode = AuxGraphMode::kInputGraph;
  Index k = 0;
  double gamma_prime = 1.0;
  bool k_clamped = false;
  std::vector<Index> row_ptr{0};
  std::vector<Index> col_idx;
  std::vector<double> weights;

  double weighted_degree(Index v) const;
};

// The input graph with unit weights.
AuxGraph aux_from_graph(const Graph& g);

// Brute-force k nearest neighbours under squared Euclidean distance (ties to
// the lower index), symmetrized, weighted max(0, h_i . h_j)^gamma_prime.
// k >= n is clamped to n - 1 with a warning on stderr.
AuxGraph build_knn_aux_graph(const Matrix& vectors, Index k, double gamma_prime,
                             AuxGraphMode mode = AuxGraphMode::kFeatureKnn);

// P_aux Y with P_aux = D^-1 W; nodes of zero weighted degree keep their row.
Matrix apply_transition(const AuxGraph& aux, const Matrix& y);

// Dense P_aux, for the closed-form oracle.
Matrix dense_transition(const AuxGraph& aux);

// Teacher probabilities on unlabeled rows, one-hot ground truth on `labeled`.
// RowNotStochastic when a teacher row is not a distribution.
SoftLabelMatrix estimate_labels_teacher(const Matrix& teacher_probs, const std::vector<int>& labels,
                                        const IndexList& labeled);

// Clamped propagation f <- P f, f_L <- Y_L from f_U = 0, renormalized once at
// the end. Rows still zero come back masked.
SoftLabelMatrix iterative_label_propagation(const AuxGraph& aux, const Matrix& y_labeled, const IndexList& labeled,
                                            Index iters);

// -sum p_i log p_i / log C. NotADistribution when p is negative or does not
// sum to one within 1e-6.
double normalized_entropy(const Eigen::Ref<const Eigen::RowVectorXd>& p);

// Masks ceil(mask_ratio * #candidates) of the unmasked, non-ground-truth rows
// with the highest normalized entropy (ties to the lower node index), then
// renormalizes.
SoftLabelMatrix entropy_filter(const SoftLabelMatrix& labels, double mask_ratio);

// Y^[0..n_T] with Y^[i+1] = P_aux Y^[i], each snapshot renormalized.
std::vector<SoftLabelMatrix> smooth_labels(const AuxGraph& aux, const SoftLabelMatrix& y0, Index n_t);

struct CurriculumTask {
  SoftLabelMatrix labels;
  Index pacing_epochs = 0;
};

struct CurriculumSchedule {
  // tasks[i] holds snapshot n_T - i: smoothest first, raw pseudo-labels last.
  std::vector<CurriculumTask> tasks;
  // Ground-truth fine-tune task on the labeled nodes.
  SoftLabelMatrix final_labels;
  IndexList final_nodes;
  Index n_t = 0;

  Index size() const { return static_cast<Index>(tasks.size()) + 1; }
};

// EmptySchedule when `snapshots` is empty.
CurriculumSchedule build_curriculum(const std::vector<SoftLabelMatrix>& snapshots, Index pacing_epochs,
                                    const SoftLabelMatrix& original, const IndexList& original_nodes);

// A schedule with only the fine-tune task.
CurriculumSchedule supervised_schedule(const SoftLabelMatrix& original, const IndexList& original_nodes);

struct TaskMetrics {
  Index task = 0;
  Index epochs = 0;
  double train_loss = 0.0;      // on the task's own soft labels
  double train_accuracy = 0.0;  // against ground truth on the labeled nodes
  double val_accuracy = 0.0;
  double val_loss = 0.0;        // one-hot ground truth on the val nodes; 0 if none
};

struct CurriculumOutcome {
  LinearClassifier classifier;
  std::vector<TaskMetrics> metrics;  // one per task, fine-tune last
};

// Trains one classifier through the schedule with warm starts. Smoothing
// tasks use `train_cfg` with their pacing epochs over unmasked rows; the
// fine-tune task uses train_cfg.epochs. The lr decay counts epochs across the
// whole schedule unless `reset_on_finetune` restarts it for the fine-tune.
CurriculumOutcome run_curriculum(const Matrix& embeddings, const CurriculumSchedule& schedule,
                                 const TrainConfig& train_cfg, const std::vector<int>& truth,
                                 const IndexList& val_nodes, bool reset_on_finetune = false);

}  // namespace smoothgnn
