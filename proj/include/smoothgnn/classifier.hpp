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
#include <iosfwd>
#include <optional>
#include <vector>

#include "smoothgnn/soft_labels.hpp"
#include "smoothgnn/types.hpp"

namespace smoothgnn {

// Softmax(H W) classifier on fixed embeddings.
struct LinearClassifier {
  Matrix weights;                  // d x C
  std::optional<Matrix> reducer;   // f x d width adapter applied before propagation
};

struct TrainConfig {
  double lr = 0.01;
  Index epochs = 200;
  double weight_decay = 5e-4;
  // The learning rate is halved once the running epoch count reaches this
  // value; 0 disables the decay.
  Index lr_decay_epoch = 0;

  void validate() const;
};

struct TrainResult {
  LinearClassifier classifier;
  // Regularized objective before each epoch, plus the final value.
  std::vector<double> losses;
};

struct Prediction {
  std::vector<int> labels;
  Matrix probabilities;
};

// Row softmax after subtracting the row max. Shared by loss and predict.
Matrix softmax_rows(const Matrix& logits);

// Mean soft-label cross-entropy over `include`. EmptyInclude for an empty
// subset; InvalidConfig when an included row is masked.
double softmax_cross_entropy(const Matrix& h, const SoftLabelMatrix& labels, const Matrix& w,
                             const IndexList& include);

// H_I^T (softmax(H_I W) - Y_I) / |I|, without the weight-decay term.
Matrix grad_wcls(const Matrix& h, const SoftLabelMatrix& labels, const Matrix& w, const IndexList& include);

// Full-batch gradient descent on CE + weight_decay/2 ||W||^2, starting from
// `warm_start` or zeros. `epoch_offset` places this call inside a longer
// schedule for the lr decay. NonFiniteLoss on divergence.
TrainResult train_linear(const Matrix& h, const SoftLabelMatrix& labels, const IndexList& include,
                         const TrainConfig& cfg, const std::optional<Matrix>& warm_start = std::nullopt,
                         Index epoch_offset = 0);

// Argmax per row, ties to the lower class.
Prediction predict(const Matrix& h, const LinearClassifier& clf);

// Fraction of `nodes` whose predicted label matches `truth`; 0 when empty.
double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth, const IndexList& nodes);

// Seeded f x d width adapter (orthonormal columns or rows).
Matrix make_reducer(Index in_dim, Index out_dim, std::uint64_t seed);

// First line "d,C", then d comma-separated rows of C values.
void write_classifier_csv(std::ostream& os, const Matrix& weights);
Matrix read_classifier_csv(std::istream& is);

}  // namespace smoothgnn
