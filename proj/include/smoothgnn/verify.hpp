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
#include <iosfwd>
#include <string>
#include <vector>

#include "smoothgnn/types.hpp"

namespace smoothgnn {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // largest observed error (or the relevant statistic)
  double tolerance = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool passed() const;
};

// Hard-GraphAIN invariants along 20-layer runs: zero column sums, orthonormal
// columns, T H = H, B_t against the dense doubly centered operator, and the
// pairwise-distance sum 2nd.
SuiteReport verify_theorem1(int graphs = 20, int layers = 20, std::uint64_t seed = 1);

// Hard-GraphAIN trajectory against projected gradient ascent with Procrustes
// projection; plus convergence to the top eigenvectors on a planted partition.
SuiteReport verify_theorem2(int graphs = 20, int steps = 10, std::uint64_t seed = 2);

// One residual step against the step-alpha ascent on the anchored objective.
SuiteReport verify_theorem3(int graphs = 20, std::uint64_t seed = 3);

// SGC at depth 10^4: columns align with D^1/2 1 and pairwise distances vanish.
SuiteReport verify_oversmooth(std::uint64_t seed = 4);

// Clamped iterative propagation against the dense solve, and label smoothing
// to a rank-one, row-stochastic limit.
SuiteReport verify_labelprop(int graphs = 10, std::uint64_t seed = 5);

// Suites: theorem1, theorem2, theorem3, oversmooth, labelprop. InvalidConfig
// for anything else.
SuiteReport run_verify_suite(const std::string& name);
std::vector<std::string> verify_suite_names();

void print_report(std::ostream& os, const SuiteReport& report);

}  // namespace smoothgnn
