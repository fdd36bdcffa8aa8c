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

#include <gtest/gtest.h>

#include <cstdint>
#include <random>

#include "smoothgnn/error.hpp"
#include "smoothgnn/types.hpp"

namespace smoothgnn::testing {

// Runs `stmt` and checks it throws smoothgnn::Error with `code`.
#define EXPECT_ERROR_CODE(stmt, expected_code)                                   \
  do {                                                                          \
    try {                                                                       \
      stmt;                                                                     \
      ADD_FAILURE() << "expected " << ::smoothgnn::error_code_name(expected_code); \
    } catch (const ::smoothgnn::Error& e) {                                     \
      EXPECT_EQ(e.code(), expected_code) << e.what();                           \
    }                                                                           \
  } while (0)

inline Matrix gaussian(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Dense centering matrix I - 11^T / n, only for test oracles.
inline Matrix dense_centering(Index n) {
  return Matrix::Identity(n, n) - Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
}

}  // namespace smoothgnn::testing
