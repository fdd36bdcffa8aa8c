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

#include "smoothgnn/dense_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "smoothgnn/error.hpp"

namespace smoothgnn {
namespace {

constexpr int kMaxSweeps = 100;
constexpr double kSymmetryTol = 1e-10;
constexpr double kOffDiagTol = 1e-12;
constexpr double kOrthonormalTol = 1e-6;

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

}  // namespace

SpectralFilterParams::SpectralFilterParams(double a, double b, Index d0, double eps_rank)
    : a_(a), b_(b), d0_(d0), eps_rank_(eps_rank) {
  if (!(a >= 0.0 && a <= 1.0)) raise(ErrorCode::kInvalidConfig, "filter a must lie in [0, 1]");
  if (!(b >= 0.0 && b <= 1.0)) raise(ErrorCode::kInvalidConfig, "filter b must lie in [0, 1]");
  if (d0 < 1) raise(ErrorCode::kInvalidConfig, "filter d0 must be at least 1");
  if (!(eps_rank > 0.0 && eps_rank < 1.0)) raise(ErrorCode::kInvalidConfig, "eps_rank must lie in (0, 1)");
}

EigPair sym_eig(const Matrix& s) {
  if (s.rows() != s.cols()) raise(ErrorCode::kDimensionMismatch, "sym_eig needs a square matrix");
  const Index d = s.rows();
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if (d > 0 && (s - s.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
    raise(ErrorCode::kNotSymmetric, "input deviates from symmetry beyond 1e-10 relative");
  }

  Matrix a = 0.5 * (s + s.transpose());
  Matrix v = Matrix::Identity(d, d);
  const double target = kOffDiagTol * a.norm();

  bool converged = false;
  for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= target) {
      converged = true;
      break;
    }
    if (sweep == kMaxSweeps) break;
    for (Index p = 0; p + 1 < d; ++p) {
      for (Index q = p + 1; q < d; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (Index k = 0; k < d; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (Index k = 0; k < d; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Index k = 0; k < d; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged) raise(ErrorCode::kNoConvergence, "Jacobi sweeps exceeded " + std::to_string(kMaxSweeps));

  std::vector<Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) { return a(i, i) > a(j, j); });

  EigPair out;
  out.values.resize(d);
  out.vectors.resize(d, d);
  for (Index k = 0; k < d; ++k) {
    out.values(k) = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

Matrix inv_sqrt(const Matrix& s, double eps_rank) {
  const EigPair eig = sym_eig(s);
  const Index d = eig.values.size();
  if (d == 0) return Matrix(0, 0);
  const double lmax = eig.values(0);
  const double lmin = eig.values(d - 1);
  if (!(lmax > 0.0) || !(lmin > eps_rank * lmax)) {
    raise(ErrorCode::kRankDeficient, "smallest eigenvalue " + std::to_string(lmin) +
                                         " not above eps_rank * largest (" + std::to_string(lmax) + ")");
  }
  Matrix scaled = eig.vectors;
  for (Index k = 0; k < d; ++k) scaled.col(k) *= 1.0 / std::sqrt(eig.values(k));
  Matrix out = scaled * eig.vectors.transpose();
  return 0.5 * (out + out.transpose());
}

Matrix gram(const Matrix& b) {
  Matrix g = b.transpose() * b;
  return 0.5 * (g + g.transpose());
}

Matrix gram_whiten(const Matrix& b, double eps_rank) { return b * inv_sqrt(gram(b), eps_rank); }

Matrix soft_spectral_filter(const Matrix& b, const SpectralFilterParams& params) {
  const Index d = b.cols();
  if (params.d0() > d) {
    raise(ErrorCode::kInvalidConfig,
          "filter d0 = " + std::to_string(params.d0()) + " exceeds width " + std::to_string(d));
  }
  if (!b.allFinite()) raise(ErrorCode::kRankDeficient, "non-finite entries entering the spectral filter");
  if (params.a() == 0.0) return b;

  const EigPair eig = sym_eig(gram(b));
  const double lmax = eig.values(0);
  const bool whitening = params.b() > 0.0;
  if (whitening && !(lmax >= std::numeric_limits<double>::min())) {
    raise(ErrorCode::kRankDeficient, "Gram matrix is numerically zero; cannot whiten");
  }

  Matrix filter = (1.0 - params.a()) * Matrix::Identity(d, d);
  Matrix kept_scaled(d, 0);
  Matrix kept(d, 0);
  for (Index k = 0; k < params.d0(); ++k) {
    const double lambda = eig.values(k);
    if (!(lambda > params.eps_rank() * lmax)) break;
    const double weight = std::pow(lambda, -0.5 * params.b());
    if (!std::isfinite(weight)) raise(ErrorCode::kRankDeficient, "eigenvalue underflow in soft filter");
    kept.conservativeResize(d, kept.cols() + 1);
    kept.col(kept.cols() - 1) = eig.vectors.col(k);
    kept_scaled.conservativeResize(d, kept_scaled.cols() + 1);
    kept_scaled.col(kept_scaled.cols() - 1) = weight * eig.vectors.col(k);
  }
  if (kept.cols() > 0) {
    Matrix whiten = kept_scaled * kept.transpose();
    filter += params.a() * (0.5 * (whiten + whiten.transpose()));
  }
  return b * filter;
}

Matrix orthonormal_projection(const Matrix& m) {
  const Index d = m.cols();
  if (m.rows() < d) raise(ErrorCode::kRankDeficient, "more columns than rows");
  Eigen::MatrixXd dense = m;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (d > 0 && (!(sv(0) > 0.0) || !(sv(d - 1) > 1e-12 * sv(0)))) {
    raise(ErrorCode::kRankDeficient, "input is not full column rank");
  }
  Matrix q = svd.matrixU() * svd.matrixV().transpose();
  return q;
}

double orthonormality_error(const Matrix& m) {
  const Index d = m.cols();
  if (d == 0) return 0.0;
  return (m.transpose() * m - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

double principal_subspace_distance(const Matrix& h, const Matrix& u_ref) {
  if (h.rows() != u_ref.rows() || h.cols() != u_ref.cols()) {
    raise(ErrorCode::kDimensionMismatch, "subspace bases must have equal shapes");
  }
  if (orthonormality_error(h) > kOrthonormalTol || orthonormality_error(u_ref) > kOrthonormalTol) {
    raise(ErrorCode::kNotOrthonormal, "subspace bases must have orthonormal columns");
  }
  const Index d = h.cols();
  if (d == 0) return 0.0;
  Matrix residual = h - u_ref * (u_ref.transpose() * h);
  return std::clamp(std::sqrt(residual.squaredNorm() / static_cast<double>(d)), 0.0, 1.0);
}

Matrix random_orthonormal(Index rows, Index cols, std::uint64_t seed) {
  const Index tall = std::max(rows, cols);
  const Index wide = std::min(rows, cols);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd gaussian(tall, wide);
  for (Index i = 0; i < tall; ++i)
    for (Index j = 0; j < wide; ++j) gaussian(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(tall, wide);
  // Fix the sign ambiguity of Householder QR so columns line up with R's
  // positive diagonal.
  const Eigen::MatrixXd r = qr.matrixQR();
  for (Index j = 0; j < wide; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  if (rows >= cols) return q;
  return q.transpose();
}

}  // namespace smoothgnn
