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

#include "smoothgnn/soft_labels.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "smoothgnn/csv.hpp"
#include "smoothgnn/error.hpp"

namespace smoothgnn {

IndexList SoftLabelMatrix::unmasked_nodes() const {
  IndexList out;
  for (Index v = 0; v < num_nodes(); ++v)
    if (!masked[v]) out.push_back(v);
  return out;
}

SoftLabelMatrix SoftLabelMatrix::zeros(Index n, Index num_classes) {
  SoftLabelMatrix out;
  out.y = Matrix::Zero(n, num_classes);
  out.masked.assign(static_cast<std::size_t>(n), 1);
  out.ground_truth.assign(static_cast<std::size_t>(n), 0);
  return out;
}

SoftLabelMatrix SoftLabelMatrix::one_hot(const std::vector<int>& labels, Index num_classes, const IndexList& nodes) {
  const Index n = static_cast<Index>(labels.size());
  SoftLabelMatrix out = zeros(n, num_classes);
  for (Index v : nodes) {
    if (v < 0 || v >= n) raise(ErrorCode::kIndexOutOfRange, "node " + std::to_string(v) + " out of range");
    const int c = labels[v];
    if (c < 0 || c >= num_classes) {
      raise(ErrorCode::kIndexOutOfRange, "node " + std::to_string(v) + " has no valid class");
    }
    out.y(v, c) = 1.0;
    out.masked[v] = 0;
    out.ground_truth[v] = 1;
  }
  return out;
}

void SoftLabelMatrix::renormalize() {
  for (Index v = 0; v < num_nodes(); ++v) {
    const double total = y.row(v).sum();
    if (total > 0.0) {
      y.row(v) /= total;
      masked[v] = 0;
    } else {
      y.row(v).setZero();
      masked[v] = 1;
    }
  }
}

double SoftLabelMatrix::max_row_sum_error() const {
  double worst = 0.0;
  for (Index v = 0; v < num_nodes(); ++v)
    if (!masked[v]) worst = std::max(worst, std::abs(y.row(v).sum() - 1.0));
  return worst;
}

void write_soft_labels_csv(std::ostream& os, const SoftLabelMatrix& labels) {
  os << "node";
  for (Index c = 0; c < labels.num_classes(); ++c) os << ",class" << c;
  os << '\n';
  for (Index v = 0; v < labels.num_nodes(); ++v) {
    os << v;
    for (Index c = 0; c < labels.num_classes(); ++c) os << ',' << csv::format_double(labels.y(v, c));
    os << '\n';
  }
}

}  // namespace smoothgnn
