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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "smoothgnn/dense_linalg.hpp"
#include "test_util.hpp"

namespace smoothgnn {
namespace {

using testing::gaussian;
using testing::max_abs_diff;

IndexList all_nodes(Index n) {
  IndexList out(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = i;
  return out;
}

SoftLabelMatrix soft_from(const Matrix& y) {
  SoftLabelMatrix s = SoftLabelMatrix::zeros(y.rows(), y.cols());
  s.y = y;
  s.renormalize();
  return s;
}

SoftLabelMatrix random_soft(Index n, Index c, std::uint64_t seed) {
  return soft_from(gaussian(n, c, seed).array().exp().matrix());
}

// Straight-line mean cross-entropy, one node at a time.
double reference_loss(const Matrix& h, const Matrix& y, const Matrix& w, const IndexList& include) {
  double total = 0.0;
  for (Index v : include) {
    const Eigen::RowVectorXd z = h.row(v) * w;
    double denom = 0.0;
    for (Index c = 0; c < z.size(); ++c) denom += std::exp(z(c));
    for (Index c = 0; c < z.size(); ++c) total -= y(v, c) * (z(c) - std::log(denom));
  }
  return total / static_cast<double>(include.size());
}

double max_relative_error(const Matrix& analytic, const Matrix& numeric) {
  double worst = 0.0;
  for (Index i = 0; i < analytic.rows(); ++i) {
    for (Index j = 0; j < analytic.cols(); ++j) {
      const double a = analytic(i, j), f = numeric(i, j);
      worst = std::max(worst, std::abs(a - f) / std::max({std::abs(a), std::abs(f), 1e-8}));
    }
  }
  return worst;
}

TEST(SoftmaxCrossEntropy, ZeroWeightsGiveLogC) {
  const Matrix h = gaussian(10, 3, 1);
  std::vector<int> labels(10);
  for (int v = 0; v < 10; ++v) labels[v] = v % 4;
  const SoftLabelMatrix y = SoftLabelMatrix::one_hot(labels, 4, all_nodes(10));
  EXPECT_NEAR(softmax_cross_entropy(h, y, Matrix::Zero(3, 4), all_nodes(10)), std::log(4.0), 1e-14);
}

TEST(SoftmaxCrossEntropy, SelfConsistentLabelsGiveEntropy) {
  const Matrix h = gaussian(8, 3, 2), w = gaussian(3, 3, 3);
  const Matrix probs = softmax_rows(h * w);
  SoftLabelMatrix y = SoftLabelMatrix::zeros(8, 3);
  y.y = probs;
  std::fill(y.masked.begin(), y.masked.end(), 0);
  double entropy = 0.0;
  for (Index v = 0; v < 8; ++v)
    for (Index c = 0; c < 3; ++c) entropy -= probs(v, c) * std::log(probs(v, c));
  EXPECT_NEAR(softmax_cross_entropy(h, y, w, all_nodes(8)), entropy / 8.0, 1e-12);
}

TEST(SoftmaxCrossEntropy, MatchesReferenceEvaluation) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Matrix h = gaussian(12, 4, seed), w = gaussian(4, 3, seed + 10);
    const SoftLabelMatrix y = random_soft(12, 3, seed + 20);
    const IndexList include{0, 2, 3, 7, 11};
    EXPECT_NEAR(softmax_cross_entropy(h, y, w, include), reference_loss(h, y.y, w, include), 1e-12);
    EXPECT_GE(softmax_cross_entropy(h, y, w, include), 0.0);
  }
}

TEST(SoftmaxCrossEntropy, StableForLargeLogits) {
  const Matrix h = gaussian(5, 2, 1) * 1e3;
  const SoftLabelMatrix y = random_soft(5, 3, 2);
  EXPECT_TRUE(std::isfinite(softmax_cross_entropy(h, y, gaussian(2, 3, 3), all_nodes(5))));
}

TEST(SoftmaxCrossEntropy, RejectsEmptyOrMaskedSubsets) {
  const Matrix h = gaussian(4, 2, 1);
  const SoftLabelMatrix y = SoftLabelMatrix::one_hot({0, 1, 0, 1}, 2, {0, 1});
  EXPECT_ERROR_CODE(softmax_cross_entropy(h, y, Matrix::Zero(2, 2), {}), ErrorCode::kEmptyInclude);
  EXPECT_ERROR_CODE(softmax_cross_entropy(h, y, Matrix::Zero(2, 2), {0, 3}), ErrorCode::kInvalidConfig);
}

TEST(GradWcls, MatchesCentralDifferences) {
  const double eps = 1e-5;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix h = gaussian(20, 5, seed);
    const Matrix w = gaussian(5, 3, seed + 100) * 0.5;
    const SoftLabelMatrix y = random_soft(20, 3, seed + 200);
    const IndexList include{1, 2, 3, 5, 8, 13, 19};
    const Matrix analytic = grad_wcls(h, y, w, include);
    Matrix numeric(5, 3);
    for (Index i = 0; i < 5; ++i) {
      for (Index c = 0; c < 3; ++c) {
        Matrix up = w, down = w;
        up(i, c) += eps;
        down(i, c) -= eps;
        numeric(i, c) =
            (softmax_cross_entropy(h, y, up, include) - softmax_cross_entropy(h, y, down, include)) / (2.0 * eps);
      }
    }
    EXPECT_LT(max_relative_error(analytic, numeric), 1e-5) << "seed " << seed;
  }
}

TEST(GradWcls, VanishesAtSelfConsistentLabels) {
  const Matrix h = gaussian(9, 3, 4), w = gaussian(3, 2, 5);
  SoftLabelMatrix y = SoftLabelMatrix::zeros(9, 2);
  y.y = softmax_rows(h * w);
  std::fill(y.masked.begin(), y.masked.end(), 0);
  EXPECT_LT(grad_wcls(h, y, w, all_nodes(9)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(GradWcls, VanishesForZeroEmbeddings) {
  const SoftLabelMatrix y = random_soft(6, 3, 1);
  EXPECT_EQ(grad_wcls(Matrix::Zero(6, 4), y, gaussian(4, 3, 2), all_nodes(6)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(TrainLinear, SeparatesLinearlySeparableClasses) {
  Matrix h = gaussian(40, 2, 7);
  std::vector<int> labels(40);
  for (Index v = 0; v < 40; ++v) {
    labels[v] = v < 20 ? 0 : 1;
    h(v, 0) = labels[v] == 0 ? std::abs(h(v, 0)) + 0.5 : -std::abs(h(v, 0)) - 0.5;
  }
  const SoftLabelMatrix y = SoftLabelMatrix::one_hot(labels, 2, all_nodes(40));
  TrainConfig cfg;
  cfg.lr = 0.5;
  cfg.epochs = 500;
  const TrainResult r = train_linear(h, y, all_nodes(40), cfg);
  EXPECT_EQ(accuracy(predict(h, r.classifier).labels, labels, all_nodes(40)), 1.0);
  EXPECT_EQ(r.losses.size(), 501u);
}

TEST(TrainLinear, ZeroEpochsReturnsStartingPoint) {
  const SoftLabelMatrix y = random_soft(5, 2, 1);
  TrainConfig cfg;
  cfg.epochs = 0;
  const Matrix start = gaussian(3, 2, 1);
  EXPECT_TRUE(train_linear(gaussian(5, 3, 2), y, all_nodes(5), cfg, start).classifier.weights == start);
  EXPECT_TRUE(train_linear(gaussian(5, 3, 2), y, all_nodes(5), cfg).classifier.weights == Matrix::Zero(3, 2));
}

TEST(TrainLinear, WeightDecayShrinksWeights) {
  const Matrix h = gaussian(30, 4, 3);
  const SoftLabelMatrix y = random_soft(30, 3, 4);
  TrainConfig plain;
  plain.lr = 1e-4;
  plain.epochs = 300;
  plain.weight_decay = 0.0;
  TrainConfig heavy = plain;
  heavy.weight_decay = 1e3;
  const double a = train_linear(h, y, all_nodes(30), plain).classifier.weights.norm();
  const double b = train_linear(h, y, all_nodes(30), heavy).classifier.weights.norm();
  EXPECT_LT(b, a);
}

TEST(TrainLinear, LossIsNonIncreasingAtSmallStep) {
  const Matrix h = orthonormal_projection(gaussian(50, 6, 5));
  const SoftLabelMatrix y = random_soft(50, 4, 6);
  TrainConfig cfg;
  cfg.lr = 0.01;
  cfg.epochs = 200;
  const TrainResult r = train_linear(h, y, all_nodes(50), cfg);
  for (std::size_t e = 1; e < r.losses.size(); ++e) EXPECT_LE(r.losses[e], r.losses[e - 1] + 1e-12);
}

TEST(TrainLinear, DecayHalvesStepFromTheConfiguredEpoch) {
  const Matrix h = gaussian(15, 3, 8);
  const SoftLabelMatrix y = random_soft(15, 2, 9);
  TrainConfig cfg;
  cfg.lr = 0.2;
  cfg.epochs = 6;
  cfg.weight_decay = 0.01;
  cfg.lr_decay_epoch = 4;
  Matrix w = Matrix::Zero(3, 2);
  for (int e = 0; e < 6; ++e) {
    const double lr = e >= 4 ? 0.1 : 0.2;
    w -= lr * (grad_wcls(h, y, w, all_nodes(15)) + 0.01 * w);
  }
  EXPECT_LT(max_abs_diff(train_linear(h, y, all_nodes(15), cfg).classifier.weights, w), 1e-14);
  // An offset into a longer schedule moves the switch earlier.
  Matrix w2 = Matrix::Zero(3, 2);
  for (int e = 0; e < 6; ++e) {
    const double lr = e + 3 >= 4 ? 0.1 : 0.2;
    w2 -= lr * (grad_wcls(h, y, w2, all_nodes(15)) + 0.01 * w2);
  }
  EXPECT_LT(max_abs_diff(train_linear(h, y, all_nodes(15), cfg, std::nullopt, 3).classifier.weights, w2), 1e-14);
}

TEST(TrainLinear, DivergenceIsReported) {
  const SoftLabelMatrix y = random_soft(10, 2, 1);
  TrainConfig cfg;
  cfg.lr = 1e3;
  cfg.weight_decay = 1.0;
  cfg.epochs = 2000;
  EXPECT_ERROR_CODE(train_linear(gaussian(10, 3, 2), y, all_nodes(10), cfg), ErrorCode::kNonFiniteLoss);
}

TEST(TrainConfig, RejectsBadValues) {
  TrainConfig c;
  c.lr = 0.0;
  EXPECT_ERROR_CODE(c.validate(), ErrorCode::kInvalidConfig);
  c = TrainConfig{};
  c.epochs = -1;
  EXPECT_ERROR_CODE(c.validate(), ErrorCode::kInvalidConfig);
  c = TrainConfig{};
  c.weight_decay = -1.0;
  EXPECT_ERROR_CODE(c.validate(), ErrorCode::kInvalidConfig);
}

TEST(Predict, ZeroWeightsTieToClassZero) {
  const Prediction p = predict(gaussian(6, 3, 1), LinearClassifier{Matrix::Zero(3, 4), std::nullopt});
  for (int l : p.labels) EXPECT_EQ(l, 0);
  for (Index v = 0; v < 6; ++v) EXPECT_NEAR(p.probabilities.row(v).sum(), 1.0, 1e-15);
}

TEST(Predict, IdentityWeightsPickFeatureIndex) {
  const Prediction p = predict(Matrix::Identity(3, 3) * 2.0, LinearClassifier{Matrix::Identity(3, 3), std::nullopt});
  EXPECT_EQ(p.labels, (std::vector<int>{0, 1, 2}));
}

TEST(Predict, SharesTheSoftmaxKernel) {
  const Matrix h = gaussian(7, 3, 2), w = gaussian(3, 4, 3);
  EXPECT_TRUE(predict(h, LinearClassifier{w, std::nullopt}).probabilities == softmax_rows(h * w));
}

TEST(Predict, ShiftInvariantLogits) {
  const Matrix h = gaussian(20, 3, 4), w = gaussian(3, 4, 5);
  // A constant in every logit row comes from an extra all-ones feature column.
  Matrix h_ext(20, 4);
  h_ext << h, Matrix::Ones(20, 1);
  Matrix w_ext(4, 4);
  w_ext << w, Matrix::Constant(1, 4, 3.25);
  EXPECT_EQ(predict(h, LinearClassifier{w, std::nullopt}).labels,
            predict(h_ext, LinearClassifier{w_ext, std::nullopt}).labels);
}

TEST(Accuracy, CountsMatchesOverNodes) {
  EXPECT_DOUBLE_EQ(accuracy({0, 1, 1, 0}, {0, 1, 0, 0}, {0, 1, 2}), 2.0 / 3.0);
  EXPECT_EQ(accuracy({0}, {1}, {}), 0.0);
}

TEST(MakeReducer, IsSeededAndOrthonormal) {
  const Matrix r = make_reducer(10, 4, 3);
  EXPECT_LT(orthonormality_error(r), 1e-12);
  EXPECT_TRUE(r == make_reducer(10, 4, 3));
  EXPECT_FALSE(r == make_reducer(10, 4, 4));
  const Matrix wide = make_reducer(3, 8, 1);
  EXPECT_EQ(wide.rows(), 3);
  EXPECT_EQ(wide.cols(), 8);
}

TEST(ClassifierCsv, RoundTripsExactly) {
  const Matrix w = gaussian(4, 3, 9) * 1e-7;
  std::stringstream ss;
  write_classifier_csv(ss, w);
  EXPECT_EQ(ss.str().substr(0, 4), "4,3\n");
  EXPECT_TRUE(read_classifier_csv(ss) == w);
}

TEST(ClassifierCsv, ReportsMalformedRows) {
  std::stringstream ss("2,2\n1,2\n3\n");
  EXPECT_ERROR_CODE(read_classifier_csv(ss), ErrorCode::kParseError);
}

}  // namespace
}  // namespace smoothgnn
