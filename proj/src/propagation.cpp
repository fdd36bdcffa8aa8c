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

#include "smoothgnn/propagation.hpp"

#include <cmath>
#include <string>

#include "smoothgnn/error.hpp"

namespace smoothgnn {
namespace {

Matrix activate(Matrix h, Activation act) {
  if (act == Activation::kRelu) h = h.cwiseMax(0.0);
  return h;
}

void check_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    raise(ErrorCode::kDimensionMismatch, std::string(what) + " shape mismatch");
  }
}

Matrix layer_weight(const PropagationConfig& cfg, Index layer) {
  return random_orthonormal(cfg.width, cfg.width, cfg.weight_seed * 1000003ull + static_cast<std::uint64_t>(layer));
}

// T A H W_t; W_t = I for non-parametric runs.
Matrix centered_aggregate(const Matrix& h, const NormalizedOperator& op, const PropagationConfig& cfg,
                          Index layer) {
  Matrix agg = apply_operator(op, h);
  if (cfg.parametric) agg = agg * layer_weight(cfg, layer);
  return apply_centering(agg);
}

[[noreturn]] void rethrow_at_layer(const Error& e, Index layer) {
  raise(e.code(), "layer " + std::to_string(layer) + ": " + e.what());
}

}  // namespace

void PropagationConfig::validate() {
  if (!(alpha >= 0.0 && beta >= 0.0 && gamma >= 0.0)) {
    raise(ErrorCode::kInvalidCoefficients, "alpha, beta, gamma must be nonnegative");
  }
  const double total = alpha + beta + gamma;
  if (!(total > 0.0) || !std::isfinite(total)) {
    raise(ErrorCode::kInvalidCoefficients, "alpha + beta + gamma must be positive");
  }
  alpha /= total;
  beta /= total;
  gamma /= total;
  if (width < 1) raise(ErrorCode::kInvalidConfig, "width must be at least 1");
  if (filter.d0() > width) raise(ErrorCode::kInvalidConfig, "filter d0 exceeds width");
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
    raise(ErrorCode::kInvalidConfig, "fuzzy factors p, q must lie in [0, 1]");
  }
  if (layers < 1) raise(ErrorCode::kInvalidConfig, "layer count must be at least 1");
  if (!parametric && activation != Activation::kIdentity) {
    raise(ErrorCode::kInvalidConfig, "non-parametric propagation requires the identity activation");
  }
  if (!(pairnorm_scale > 0.0)) raise(ErrorCode::kInvalidConfig, "pairnorm scale must be positive");
}

LayerTrace init_trace(const Matrix& h1, bool keep_snapshots) {
  LayerTrace trace;
  trace.s_last = h1;
  trace.s_init = h1;
  trace.q_pow = 1.0;
  trace.keep_snapshots = keep_snapshots;
  if (keep_snapshots) trace.snapshots.push_back(h1);
  return trace;
}

Matrix graphain_step(const Matrix& h, const NormalizedOperator& op) {
  return gram_whiten(apply_centering(apply_operator(op, h)));
}

Matrix softgraphain_step(const Matrix& h, const NormalizedOperator& op, const SpectralFilterParams& filter) {
  return soft_spectral_filter(apply_centering(apply_operator(op, h)), filter);
}

Matrix residual_combine(const Matrix& h_t, const Matrix& s_last, const Matrix& s_init,
                        const PropagationConfig& cfg, const NormalizedOperator& op) {
  check_same_shape(h_t, s_last, "residual link");
  check_same_shape(h_t, s_init, "initial link");
  Matrix b = cfg.alpha * apply_centering(apply_operator(op, h_t));
  b += cfg.beta * s_last;
  b += cfg.gamma * s_init;
  return b;
}

LayerTrace fuzzy_update(LayerTrace trace, const Matrix& h_t, double p, double q) {
  check_same_shape(trace.s_last, h_t, "fuzzy update");
  trace.q_pow *= q;
  trace.s_last = trace.s_last * p + h_t;
  trace.s_init = trace.s_init + trace.q_pow * h_t;
  if (trace.keep_snapshots) trace.snapshots.push_back(h_t);
  return trace;
}

Matrix sgc_propagate(const Matrix& x, const NormalizedOperator& op, Index layers) {
  if (layers < 0) raise(ErrorCode::kInvalidConfig, "negative layer count");
  Matrix h = x;
  for (Index l = 0; l < layers; ++l) h = apply_operator(op, h);
  return h;
}

Matrix pairnorm_step(const Matrix& h, const NormalizedOperator& op, double scale) {
  Matrix centered = apply_centering(apply_operator(op, h));
  const double norm = centered.norm();
  if (!(norm >= 1e-300)) raise(ErrorCode::kZeroActivation, "centered aggregation vanished");
  return centered * (scale * std::sqrt(static_cast<double>(h.rows())) / norm);
}

Matrix reduce_features(const Graph& g, Index width, const std::optional<Matrix>& reducer) {
  if (reducer) {
    if (reducer->rows() != g.feature_dim() || reducer->cols() != width) {
      raise(ErrorCode::kDimensionMismatch, "reducer must be " + std::to_string(g.feature_dim()) + "x" +
                                               std::to_string(width));
    }
    return g.features() * *reducer;
  }
  if (g.feature_dim() != width) {
    raise(ErrorCode::kDimensionMismatch, "feature width " + std::to_string(g.feature_dim()) +
                                             " differs from propagation width " + std::to_string(width) +
                                             " and no reducer was supplied");
  }
  return g.features();
}

PropagationResult run_fuzzy_r_softgraphain(const Graph& g, const PropagationConfig& config,
                                           const std::optional<Matrix>& reducer, bool keep_trace) {
  PropagationConfig cfg = config;
  cfg.validate();
  const NormalizedOperator op = normalized_adjacency(g, cfg.operator_mode);
  const Matrix x = reduce_features(g, cfg.width, reducer);

  Matrix h;
  try {
    h = activate(soft_spectral_filter(centered_aggregate(x, op, cfg, 1), cfg.filter), cfg.activation);
  } catch (const Error& e) {
    rethrow_at_layer(e, 1);
  }
  LayerTrace trace = init_trace(h, keep_trace);

  for (Index t = 2; t <= cfg.layers; ++t) {
    try {
      Matrix b = cfg.alpha * centered_aggregate(h, op, cfg, t);
      b += cfg.beta * trace.s_last;
      b += cfg.gamma * trace.s_init;
      h = activate(soft_spectral_filter(b, cfg.filter), cfg.activation);
    } catch (const Error& e) {
      rethrow_at_layer(e, t);
    }
    if (cfg.fuzzy) {
      trace = fuzzy_update(std::move(trace), h, cfg.p, cfg.q);
    } else {
      trace.s_last = h;
      if (keep_trace) trace.snapshots.push_back(h);
    }
  }

  PropagationResult result;
  result.embedding = h;
  if (keep_trace) result.trace = std::move(trace);
  return result;
}

PropagationResult propagate(const Graph& g, const PropagationConfig& config, const std::optional<Matrix>& reducer,
                            bool keep_trace) {
  if (config.method == PropagationMethod::kRSoftGraphAIN) {
    return run_fuzzy_r_softgraphain(g, config, reducer, keep_trace);
  }
  PropagationConfig cfg = config;
  cfg.validate();
  const NormalizedOperator op = normalized_adjacency(g, cfg.operator_mode);
  Matrix h = reduce_features(g, cfg.width, reducer);
  LayerTrace trace;
  trace.keep_snapshots = keep_trace;
  for (Index t = 1; t <= cfg.layers; ++t) {
    try {
      h = cfg.method == PropagationMethod::kSGC ? apply_operator(op, h) : pairnorm_step(h, op, cfg.pairnorm_scale);
    } catch (const Error& e) {
      rethrow_at_layer(e, t);
    }
    if (keep_trace) trace.snapshots.push_back(h);
  }
  PropagationResult result;
  result.embedding = h;
  if (keep_trace) {
    trace.s_last = h;
    result.trace = std::move(trace);
  }
  return result;
}

}  // namespace smoothgnn
