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

#include "smoothgnn/types.hpp"

namespace smoothgnn {

// Eigenvectors are the columns of `vectors`; `values` is nonincreasing.
struct EigPair {
  Matrix vectors;
  Vector values;
};

inline constexpr double kDefaultRankEps = 1e-12;

// Soft normalization knobs: `a` blends whitened and raw channels, `b` is the
// whitening exponent and only the top `d0` Gram eigenpairs are whitened.
class SpectralFilterParams {
 public:
  SpectralFilterParams() = default;
  SpectralFilterParams(double a, double b, Index d0, double eps_rank = kDefaultRankEps);

  // a = b = 1 with d0 = d: the hard whitening B (B^T B)^-1/2.
  static SpectralFilterParams hard(Index d) { return {1.0, 1.0, d}; }

  double a() const { return a_; }
  double b() const { return b_; }
  Index d0() const { return d0_; }
  double eps_rank() const { return eps_rank_; }

 private:
  double a_ = 1.0;
  double b_ = 1.0;
  Index d0_ = 1;
  double eps_rank_ = kDefaultRankEps;
};

// Cyclic Jacobi diagonalization of a small symmetric matrix. Sweeps visit
// (p, q) pairs in row-major order; stops once the off-diagonal Frobenius norm
// falls below 1e-12 * ||s||_F. NotSymmetric / NoConvergence (100 sweeps).
EigPair sym_eig(const Matrix& s);

// s^-1/2 for symmetric positive-definite s. RankDeficient when the smallest
// eigenvalue is at or below eps_rank times the largest.
Matrix inv_sqrt(const Matrix& s, double eps_rank = kDefaultRankEps);

// B^T B, symmetrized so Jacobi sees an exactly symmetric input.
Matrix gram(const Matrix& b);

// B (B^T B)^-1/2 through inv_sqrt.
Matrix gram_whiten(const Matrix& b, double eps_rank = kDefaultRankEps);

// B [a U Lambda^{-b/2} U^T + (1 - a) I] with (U, Lambda) the top-d0
// eigenpairs of B^T B. Eigenvalues at or below eps_rank * lambda_max are left
// out of the whitened set. In singular-value terms every kept channel maps
// s -> (1 - a) s + a s^{1-b}; dropped channels keep (1 - a) s.
Matrix soft_spectral_filter(const Matrix& b, const SpectralFilterParams& params);

// Nearest matrix with orthonormal columns, U V^T from a thin SVD of m.
// Uses a library SVD so it stays independent of sym_eig/inv_sqrt.
Matrix orthonormal_projection(const Matrix& m);

// ||H H^T - U U^T||_F / sqrt(2d) for column-orthonormal H and U of equal
// shape, evaluated as ||H - U (U^T H)||_F / sqrt(d) so no n x n product is
// formed. NotOrthonormal when either input deviates by more than 1e-6.
double principal_subspace_distance(const Matrix& h, const Matrix& u_ref);

// max |M^T M - I|.
double orthonormality_error(const Matrix& m);

// rows x cols matrix with orthonormal columns (rows >= cols) or orthonormal
// rows (rows < cols), from the QR factor of a seeded Gaussian matrix.
Matrix random_orthonormal(Index rows, Index cols, std::uint64_t seed);

}  // namespace smoothgnn
