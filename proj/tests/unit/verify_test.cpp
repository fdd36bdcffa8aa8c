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

#include "smoothgnn/verify.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "test_util.hpp"

namespace smoothgnn {
namespace {

void expect_all_pass(const SuiteReport& report) {
  EXPECT_TRUE(report.passed()) << [&] {
    std::ostringstream os;
    print_report(os, report);
    return os.str();
  }();
  EXPECT_FALSE(report.checks.empty());
  for (const auto& c : report.checks) EXPECT_LT(c.worst, c.tolerance) << c.name;
}

TEST(VerifySuites, ReducedRunsPass) {
  expect_all_pass(verify_theorem1(4, 5, 10));
  expect_all_pass(verify_theorem2(4, 5, 11));
  expect_all_pass(verify_theorem3(4, 12));
  expect_all_pass(verify_oversmooth(13));
  expect_all_pass(verify_labelprop(3, 14));
}

TEST(VerifySuites, NamedLookup) {
  const auto names = verify_suite_names();
  ASSERT_EQ(names.size(), 5u);
  EXPECT_EQ(run_verify_suite(names.front()).suite, names.front());
  EXPECT_ERROR_CODE(run_verify_suite("theorem9"), ErrorCode::kInvalidConfig);
}

TEST(VerifySuites, ReportLinesCarryVerdicts) {
  SuiteReport r;
  r.suite = "demo";
  r.checks.push_back({"ok", true, 1e-12, 1e-9, ""});
  r.checks.push_back({"bad", false, 2.0, 1.0, "graph 3"});
  EXPECT_FALSE(r.passed());
  std::ostringstream os;
  print_report(os, r);
  const std::string text = os.str();
  EXPECT_NE(text.find("PASS demo: ok"), std::string::npos) << text;
  EXPECT_NE(text.find("FAIL demo: bad"), std::string::npos) << text;
  EXPECT_NE(text.find("graph 3"), std::string::npos) << text;
}

}  // namespace
}  // namespace smoothgnn
