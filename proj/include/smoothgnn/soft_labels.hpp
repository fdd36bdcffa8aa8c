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
#include <vector>

#include "smoothgnn/types.hpp"

namespace smoothgnn {

// n x C nonnegative label matrix. Unmasked rows are distributions; masked rows
// are all-zero and carry no training signal. `ground_truth` marks rows clamped
// to a known label.
struct SoftLabelMatrix {
  Matrix y;
  std::vector<char> masked;
  std::vector<char> ground_truth;

  Index num_nodes() const { return y.rows(); }
  Index num_classes() const { return y.cols(); }
  bool is_masked(Index v) const { return masked[v] != 0; }
  IndexList unmasked_nodes() const;

  // n x C zero matrix with every row masked.
  static SoftLabelMatrix zeros(Index n, Index num_classes);

  // One-hot rows for `nodes` (labels[v] in [0, C)), all other rows masked.
  static SoftLabelMatrix one_hot(const std::vector<int>& labels, Index num_classes, const IndexList& nodes);

  // Marks zero rows as masked and rescales the rest to sum to one.
  void renormalize();

  // max |row sum - 1| over unmasked rows.
  double max_row_sum_error() const;
};

// Header "node,class0,...,class{C-1}", then one row per node.
void write_soft_labels_csv(std::ostream& os, const SoftLabelMatrix& labels);

}  // namespace smoothgnn
