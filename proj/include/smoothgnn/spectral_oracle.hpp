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

#include <vector>

#include "smoothgnn/graph.hpp"
#include "smoothgnn/types.hpp"

namespace smoothgnn {

// Dense n x n brute-force references. Everything here is O(n^3) and capped
// at kOracleMaxNodes; it exists to certify the sparse/Gram production paths.
inline constexpr Index kOracleMaxNodes = 2000;

enum class SpectrumSource { kAHat, kABar, kPAux, kOther };

struct DenseSpectrum {
  Matrix vectors;  // columns, orthonormal
  Vector values;   // nonincreasing
  SpectrumSource source = SpectrumSource::kOther;
};

// D^-1/2 (A+I) D^-1/2 (or D^-1 (A+I)) built entry by entry from the edge list.
Matrix dense_a_hat(const Graph& g, OperatorMode mode = OperatorMode::kSymmetric);

// T A_hat T, materialized.
Matrix dense_abar(const Graph& g);

DenseSpectrum dense_spectrum(const Matrix& symmetric, SpectrumSource source = SpectrumSource::kOther);

// Eigenvectors of the d algebraically largest eigenvalues, each column signed
// so its largest-magnitude entry is positive. DegenerateGap when
// lambda_d and lambda_{d+1} agree to 1e-10.
Matrix top_d_eigvectors(const Matrix& symmetric, Index d);

// H <- UV^T(A_bar H), starting from the Procrustes projection of X.
Matrix pga_oracle_hard(const Matrix& x, const Graph& g, Index steps);

// Gradient ascent on 1/2 tr(H^T A_bar H) - 1/2 (gamma/alpha) ||H - X||^2 with
// step alpha (written through the penalty-one objective), then Procrustes
// projection. Requires alpha > 0 and alpha + beta + gamma = 1.
Matrix pga_oracle_residual(const Matrix& x, const Graph& g, double alpha, double beta, double gamma,
                           Index steps);

// |cos| between each column of A_hat^L X and D^1/2 1. NotErgodic unless the
// graph is connected and non-bipartite (lambda_2 < 1, lambda_min > -1).
std::vector<double> oversmoothing_limit_check(const Graph& g, const Matrix& x, Index layers);

// (I - P_UU)^-1 P_UL Y_L by dense LU. `y_labeled` rows follow `labeled`.
// SingularSystem when some unlabeled component never reaches a label.
Matrix label_prop_closed_form(const Matrix& transition, const Matrix& y_labeled, const IndexList& labeled,
                              const IndexList& unlabeled);

}  // namespace smoothgnn
