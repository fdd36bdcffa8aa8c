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
#include <vector>

#include "smoothgnn/dense_linalg.hpp"
#include "smoothgnn/graph.hpp"
#include "smoothgnn/types.hpp"

namespace smoothgnn {

enum class Activation { kIdentity, kRelu };

enum class PropagationMethod {
  kRSoftGraphAIN,  // fuzzy residual SoftGraphAIN stack
  kSGC,            // repeated normalized aggregation
  kPairnorm,       // centered aggregation rescaled to norm C sqrt(n)
};

struct PropagationConfig {
  PropagationMethod method = PropagationMethod::kRSoftGraphAIN;

  // Aggregation / residual / initial weights; validate() rescales them to
  // sum to one.
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 0.0;

  Index width = 8;  // hidden width d
  SpectralFilterParams filter = SpectralFilterParams::hard(8);

  // Fuzzy decay factors for the residual (p) and initial (q) links.
  double p = 0.0;
  double q = 0.0;
  // When false, the residual link is the previous layer and the initial link
  // is H_1, with no accumulation.
  bool fuzzy = true;

  Index layers = 1;
  Activation activation = Activation::kIdentity;
  OperatorMode operator_mode = OperatorMode::kSymmetric;

  // Non-parametric runs use W_t = I. Parametric runs apply fixed seeded
  // orthogonal d x d layer weights (forward pass only, nothing is trained).
  bool parametric = false;
  std::uint64_t weight_seed = 0;

  double pairnorm_scale = 1.0;

  // Checks ranges and renormalizes alpha/beta/gamma. Throws InvalidConfig or
  // InvalidCoefficients.
  void validate();
};

// Per-layer state of a forward run. `snapshots` holds H_1..H_t when requested.
struct LayerTrace {
  std::vector<Matrix> snapshots;
  Matrix s_last;
  Matrix s_init;
  double q_pow = 1.0;
  bool keep_snapshots = false;
};

LayerTrace init_trace(const Matrix& h1, bool keep_snapshots);

// T A H (B^T B)^-1/2 with B = T A H. RankDeficient when B loses rank.
Matrix graphain_step(const Matrix& h, const NormalizedOperator& op);

// soft_spectral_filter(T A H, filter).
Matrix softgraphain_step(const Matrix& h, const NormalizedOperator& op, const SpectralFilterParams& filter);

// alpha T A H_t + beta S_last + gamma S_init, with cfg's coefficients.
Matrix residual_combine(const Matrix& h_t, const Matrix& s_last, const Matrix& s_init,
                        const PropagationConfig& cfg, const NormalizedOperator& op);

// q' <- q' q; S_last <- p S_last + H_t; S_init <- S_init + q' H_t.
LayerTrace fuzzy_update(LayerTrace trace, const Matrix& h_t, double p, double q);

// A^L X.
Matrix sgc_propagate(const Matrix& x, const NormalizedOperator& op, Index layers);

// C sqrt(n) H' / ||H'||_F with H' = T A H. ZeroActivation when H' vanishes.
Matrix pairnorm_step(const Matrix& h, const NormalizedOperator& op, double scale);

struct PropagationResult {
  Matrix embedding;
  std::optional<LayerTrace> trace;
};

// Width-d input: features times `reducer` (f x d) when given; otherwise the
// features must already have width d.
Matrix reduce_features(const Graph& g, Index width, const std::optional<Matrix>& reducer);

// Fuzzy R-SoftGraphAIN forward pass. Layer 1 has no skip connections; later
// layers combine, filter, activate and then update the fuzzy links. A
// RankDeficient failure is rethrown with the failing layer in the message.
PropagationResult run_fuzzy_r_softgraphain(const Graph& g, const PropagationConfig& cfg,
                                           const std::optional<Matrix>& reducer = std::nullopt,
                                           bool keep_trace = false);

// Dispatch on cfg.method. For SGC and Pairnorm the trace holds only snapshots.
PropagationResult propagate(const Graph& g, const PropagationConfig& cfg,
                            const std::optional<Matrix>& reducer = std::nullopt, bool keep_trace = false);

}  // namespace smoothgnn
