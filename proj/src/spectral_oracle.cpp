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

#include "smoothgnn/spectral_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "smoothgnn/dense_linalg.hpp"
#include "smoothgnn/error.hpp"
#include "smoothgnn/propagation.hpp"

namespace smoothgnn {
namespace {

void check_size(Index n) {
  if (n > kOracleMaxNodes) {
    raise(ErrorCode::kTooLarge, "dense oracle limited to " + std::to_string(kOracleMaxNodes) + " nodes, got " +
                                    std::to_string(n));
  }
}

Matrix centering_matrix(Index n) {
  return Matrix::Identity(n, n) - Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
}

}  // namespace

Matrix dense_a_hat(const Graph& g, OperatorMode mode) {
  const Index n = g.num_nodes();
  check_size(n);
  Matrix a_tilde = Matrix::Identity(n, n);
  for (const auto& [u, v] : g.edges()) {
    a_tilde(u, v) = 1.0;
    a_tilde(v, u) = 1.0;
  }
  const Vector deg = a_tilde.rowwise().sum();
  Matrix out(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      out(i, j) = mode == OperatorMode::kSymmetric ? a_tilde(i, j) / std::sqrt(deg(i) * deg(j))
                                                   : a_tilde(i, j) / deg(i);
  return out;
}

Matrix dense_abar(const Graph& g) {
  const Index n = g.num_nodes();
  check_size(n);
  if (n == 0) return Matrix(0, 0);
  const Matrix t = centering_matrix(n);
  return t * dense_a_hat(g) * t;
}

DenseSpectrum dense_spectrum(const Matrix& symmetric, SpectrumSource source) {
  check_size(symmetric.rows());
  Eigen::MatrixXd m = 0.5 * (symmetric + symmetric.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) raise(ErrorCode::kNoConvergence, "dense eigensolver failed");
  const Index n = m.rows();
  DenseSpectrum out;
  out.source = source;
  out.values.resize(n);
  out.vectors.resize(n, n);
  // Eigen returns ascending order.
  for (Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

Matrix top_d_eigvectors(const Matrix& symmetric, Index d) {
  const Index n = symmetric.rows();
  if (d < 1 || d > n) raise(ErrorCode::kDimensionMismatch, "requested eigvector count outside [1, n]");
  const DenseSpectrum spec = dense_spectrum(symmetric);
  if (d < n) {
    const double scale = std::max(1.0, spec.values.cwiseAbs().maxCoeff());
    if (spec.values(d - 1) - spec.values(d) <= 1e-10 * scale) {
      raise(ErrorCode::kDegenerateGap, "eigenvalues " + std::to_string(d) + " and " + std::to_string(d + 1) +
                                           " coincide; top subspace is ill-defined");
    }
  }
  Matrix out = spec.vectors.leftCols(d);
  for (Index k = 0; k < d; ++k) {
    Index arg = 0;
    for (Index i = 1; i < n; ++i)
      if (std::abs(out(i, k)) > std::abs(out(arg, k)) + 1e-14) arg = i;
    if (out(arg, k) < 0.0) out.col(k) *= -1.0;
  }
  return out;
}

Matrix pga_oracle_hard(const Matrix& x, const Graph& g, Index steps) {
  const Matrix abar = dense_abar(g);
  if (x.rows() != abar.rows()) raise(ErrorCode::kDimensionMismatch, "X rows differ from node count");
  Matrix h = orthonormal_projection(x);
  for (Index s = 0; s < steps; ++s) h = orthonormal_projection(abar * h);
  return h;
}

Matrix pga_oracle_residual(const Matrix& x, const Graph& g, double alpha, double beta, double gamma,
                           Index steps) {
  if (!(alpha > 0.0) || beta < 0.0 || gamma < 0.0 || std::abs(alpha + beta + gamma - 1.0) > 1e-12) {
    raise(ErrorCode::kInvalidCoefficients, "need alpha > 0, beta, gamma >= 0 and alpha + beta + gamma = 1");
  }
  const Matrix abar = dense_abar(g);
  if (x.rows() != abar.rows()) raise(ErrorCode::kDimensionMismatch, "X rows differ from node count");
  const double step = alpha;
  const double anchor = gamma / alpha;
  Matrix h = orthonormal_projection(x);
  for (Index s = 0; s < steps; ++s) {
    // Gradient of 1/2 tr(H^T (A_bar - I) H) - 1/2 anchor ||H - X||^2.
    const Matrix grad = abar * h - (anchor + 1.0) * h + anchor * x;
    h = orthonormal_projection(h + step * grad);
  }
  return h;
}

std::vector<double> oversmoothing_limit_check(const Graph& g, const Matrix& x, Index layers) {
  const Index n = g.num_nodes();
  check_size(n);
  if (x.rows() != n) raise(ErrorCode::kDimensionMismatch, "X rows differ from node count");
  const DenseSpectrum spec = dense_spectrum(dense_a_hat(g), SpectrumSource::kAHat);
  if (n >= 2 && (spec.values(1) >= 1.0 - 1e-10 || spec.values(n - 1) <= -1.0 + 1e-10)) {
    raise(ErrorCode::kNotErgodic, "graph is disconnected or bipartite; the limit direction is not unique");
  }
  const NormalizedOperator op = normalized_adjacency(g, OperatorMode::kSymmetric);
  const Matrix h = sgc_propagate(x, op, layers);
  Vector direction(n);
  for (Index i = 0; i < n; ++i) direction(i) = std::sqrt(op.degrees()[i]);
  direction.normalize();
  std::vector<double> cosines;
  cosines.reserve(static_cast<std::size_t>(h.cols()));
  for (Index c = 0; c < h.cols(); ++c) {
    const Vector col = h.col(c);
    const double norm = col.norm();
    cosines.push_back(norm > 0.0 ? std::abs(col.dot(direction)) / norm : 0.0);
  }
  return cosines;
}

Matrix label_prop_closed_form(const Matrix& transition, const Matrix& y_labeled, const IndexList& labeled,
                              const IndexList& unlabeled) {
  const Index n = transition.rows();
  const Index nu = static_cast<Index>(unlabeled.size());
  const Index nl = static_cast<Index>(labeled.size());
  check_size(nu);
  if (transition.cols() != n) raise(ErrorCode::kDimensionMismatch, "transition matrix must be square");
  if (y_labeled.rows() != nl) raise(ErrorCode::kDimensionMismatch, "Y_L rows differ from labeled count");
  for (Index v : labeled)
    if (v < 0 || v >= n) raise(ErrorCode::kIndexOutOfRange, "labeled node out of range");
  for (Index v : unlabeled)
    if (v < 0 || v >= n) raise(ErrorCode::kIndexOutOfRange, "unlabeled node out of range");

  Eigen::MatrixXd system(nu, nu);
  Eigen::MatrixXd p_ul(nu, nl);
  for (Index i = 0; i < nu; ++i) {
    for (Index j = 0; j < nu; ++j) system(i, j) = (i == j ? 1.0 : 0.0) - transition(unlabeled[i], unlabeled[j]);
    for (Index j = 0; j < nl; ++j) p_ul(i, j) = transition(unlabeled[i], labeled[j]);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    raise(ErrorCode::kSingularSystem, "I - P_UU is singular: some unlabeled component has no labeled node");
  }
  const Eigen::MatrixXd rhs = p_ul * Eigen::MatrixXd(y_labeled);
  Matrix out = lu.solve(rhs);
  return out;
}

}  // namespace smoothgnn
