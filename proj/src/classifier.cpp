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

#include "smoothgnn/classifier.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "smoothgnn/csv.hpp"
#include "smoothgnn/dense_linalg.hpp"
#include "smoothgnn/error.hpp"

namespace smoothgnn {
namespace {

void check_inputs(const Matrix& h, const SoftLabelMatrix& labels, const Matrix& w, const IndexList& include) {
  if (include.empty()) raise(ErrorCode::kEmptyInclude, "no nodes selected for the loss");
  if (h.rows() != labels.num_nodes()) raise(ErrorCode::kDimensionMismatch, "embedding and label rows differ");
  if (w.rows() != h.cols() || w.cols() != labels.num_classes()) {
    raise(ErrorCode::kDimensionMismatch, "classifier weights must be d x C");
  }
  for (Index v : include) {
    if (v < 0 || v >= h.rows()) raise(ErrorCode::kIndexOutOfRange, "included node out of range");
    if (labels.is_masked(v)) raise(ErrorCode::kInvalidConfig, "included node " + std::to_string(v) + " is masked");
  }
}

Matrix gather_rows(const Matrix& m, const IndexList& rows) {
  Matrix out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = m.row(rows[i]);
  return out;
}

double cross_entropy_rows(const Matrix& logits, const Matrix& targets) {
  double total = 0.0;
  for (Index i = 0; i < logits.rows(); ++i) {
    const double zmax = logits.row(i).maxCoeff();
    double sum = 0.0;
    for (Index c = 0; c < logits.cols(); ++c) sum += std::exp(logits(i, c) - zmax);
    const double log_sum = std::log(sum);
    for (Index c = 0; c < logits.cols(); ++c) {
      const double y = targets(i, c);
      if (y != 0.0) total -= y * (logits(i, c) - zmax - log_sum);
    }
  }
  return total / static_cast<double>(logits.rows());
}

}  // namespace

void TrainConfig::validate() const {
  if (!(lr > 0.0) || !std::isfinite(lr)) raise(ErrorCode::kInvalidConfig, "learning rate must be positive");
  if (epochs < 0) raise(ErrorCode::kInvalidConfig, "epoch count must be nonnegative");
  if (!(weight_decay >= 0.0)) raise(ErrorCode::kInvalidConfig, "weight decay must be nonnegative");
  if (lr_decay_epoch < 0) raise(ErrorCode::kInvalidConfig, "lr_decay_epoch must be nonnegative");
}

Matrix softmax_rows(const Matrix& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (Index i = 0; i < logits.rows(); ++i) {
    const double zmax = logits.row(i).maxCoeff();
    double sum = 0.0;
    for (Index c = 0; c < logits.cols(); ++c) {
      out(i, c) = std::exp(logits(i, c) - zmax);
      sum += out(i, c);
    }
    out.row(i) /= sum;
  }
  return out;
}

double softmax_cross_entropy(const Matrix& h, const SoftLabelMatrix& labels, const Matrix& w,
                             const IndexList& include) {
  check_inputs(h, labels, w, include);
  return cross_entropy_rows(gather_rows(h, include) * w, gather_rows(labels.y, include));
}

Matrix grad_wcls(const Matrix& h, const SoftLabelMatrix& labels, const Matrix& w, const IndexList& include) {
  check_inputs(h, labels, w, include);
  const Matrix hi = gather_rows(h, include);
  const Matrix residual = softmax_rows(hi * w) - gather_rows(labels.y, include);
  return hi.transpose() * residual / static_cast<double>(include.size());
}

TrainResult train_linear(const Matrix& h, const SoftLabelMatrix& labels, const IndexList& include,
                         const TrainConfig& cfg, const std::optional<Matrix>& warm_start, Index epoch_offset) {
  cfg.validate();
  Matrix w = warm_start ? *warm_start : Matrix::Zero(h.cols(), labels.num_classes());
  TrainResult result;
  if (cfg.epochs == 0) {
    result.classifier.weights = std::move(w);
    return result;
  }
  check_inputs(h, labels, w, include);
  const Matrix hi = gather_rows(h, include);
  const Matrix yi = gather_rows(labels.y, include);
  const double inv_count = 1.0 / static_cast<double>(include.size());

  auto objective = [&](const Matrix& weights) {
    const double loss = cross_entropy_rows(hi * weights, yi) + 0.5 * cfg.weight_decay * weights.squaredNorm();
    if (!std::isfinite(loss)) raise(ErrorCode::kNonFiniteLoss, "training objective diverged");
    return loss;
  };

  result.losses.reserve(static_cast<std::size_t>(cfg.epochs) + 1);
  for (Index e = 0; e < cfg.epochs; ++e) {
    result.losses.push_back(objective(w));
    const Index global_epoch = epoch_offset + e;
    const double lr = (cfg.lr_decay_epoch > 0 && global_epoch >= cfg.lr_decay_epoch) ? 0.5 * cfg.lr : cfg.lr;
    Matrix grad = hi.transpose() * (softmax_rows(hi * w) - yi) * inv_count;
    grad += cfg.weight_decay * w;
    w -= lr * grad;
  }
  result.losses.push_back(objective(w));
  result.classifier.weights = std::move(w);
  return result;
}

Prediction predict(const Matrix& h, const LinearClassifier& clf) {
  if (h.cols() != clf.weights.rows()) raise(ErrorCode::kDimensionMismatch, "embedding width differs from classifier");
  Prediction out;
  out.probabilities = softmax_rows(h * clf.weights);
  out.labels.resize(static_cast<std::size_t>(h.rows()));
  for (Index i = 0; i < h.rows(); ++i) {
    Index best = 0;
    for (Index c = 1; c < out.probabilities.cols(); ++c)
      if (out.probabilities(i, c) > out.probabilities(i, best)) best = c;
    out.labels[i] = static_cast<int>(best);
  }
  return out;
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth, const IndexList& nodes) {
  if (nodes.empty()) return 0.0;
  Index hits = 0;
  for (Index v : nodes)
    if (predicted[v] == truth[v]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(nodes.size());
}

Matrix make_reducer(Index in_dim, Index out_dim, std::uint64_t seed) {
  return random_orthonormal(in_dim, out_dim, seed);
}

void write_classifier_csv(std::ostream& os, const Matrix& weights) {
  os << weights.rows() << ',' << weights.cols() << '\n';
  for (Index i = 0; i < weights.rows(); ++i) {
    for (Index c = 0; c < weights.cols(); ++c) {
      if (c > 0) os << ',';
      os << csv::format_double(weights(i, c));
    }
    os << '\n';
  }
}

Matrix read_classifier_csv(std::istream& is) {
  const std::string source = "classifier";
  std::string line;
  if (!std::getline(is, line)) raise(ErrorCode::kParseError, source + ":1: missing header");
  const auto header = csv::split(line);
  if (header.size() != 2) raise(ErrorCode::kParseError, source + ":1: header must be d,C");
  const Index d = csv::parse_int(header[0], source, 1);
  const Index c = csv::parse_int(header[1], source, 1);
  if (d < 0 || c < 0) raise(ErrorCode::kParseError, source + ":1: negative dimensions");
  Matrix w(d, c);
  for (Index i = 0; i < d; ++i) {
    const long line_no = static_cast<long>(i) + 2;
    if (!std::getline(is, line)) raise(ErrorCode::kParseError, source + ":" + std::to_string(line_no) + ": missing row");
    const auto cells = csv::split(line);
    if (static_cast<Index>(cells.size()) != c) {
      raise(ErrorCode::kParseError, source + ":" + std::to_string(line_no) + ": expected " + std::to_string(c) + " values");
    }
    for (Index j = 0; j < c; ++j) w(i, j) = csv::parse_double(cells[j], source, line_no);
  }
  return w;
}

}  // namespace smoothgnn
