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

#include "smoothgnn/error.hpp"

namespace smoothgnn {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kFeatureRowMismatch: return "FeatureRowMismatch";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kNotOrthonormal: return "NotOrthonormal";
    case ErrorCode::kZeroActivation: return "ZeroActivation";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kInvalidCoefficients: return "InvalidCoefficients";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kDegenerateGap: return "DegenerateGap";
    case ErrorCode::kNotErgodic: return "NotErgodic";
    case ErrorCode::kSingularSystem: return "SingularSystem";
    case ErrorCode::kRowNotStochastic: return "RowNotStochastic";
    case ErrorCode::kNotADistribution: return "NotADistribution";
    case ErrorCode::kEmptySchedule: return "EmptySchedule";
    case ErrorCode::kEmptyInclude: return "EmptyInclude";
    case ErrorCode::kNonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kMissingMask: return "MissingMask";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

void raise(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace smoothgnn
