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

#include <stdexcept>
#include <string>
#include <string_view>

namespace smoothgnn {

enum class ErrorCode {
  kIndexOutOfRange,
  kFeatureRowMismatch,
  kDimensionMismatch,
  kNotSymmetric,
  kNoConvergence,
  kRankDeficient,
  kNotOrthonormal,
  kZeroActivation,
  kInvalidConfig,
  kInvalidCoefficients,
  kTooLarge,
  kDegenerateGap,
  kNotErgodic,
  kSingularSystem,
  kRowNotStochastic,
  kNotADistribution,
  kEmptySchedule,
  kEmptyInclude,
  kNonFiniteLoss,
  kParseError,
  kMissingMask,
  kIoError,
};

std::string_view error_code_name(ErrorCode code);

// All library failures are reported through this exception type; `code()`
// identifies the failure class so callers can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

}  // namespace smoothgnn
