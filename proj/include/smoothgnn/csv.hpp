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

#include <string>
#include <string_view>
#include <vector>

namespace smoothgnn::csv {

// 17 significant digits, enough to round-trip any double.
std::string format_double(double value);

std::vector<std::string> split(std::string_view line, char sep = ',');

std::string_view trim(std::string_view s);

// Throw ParseError naming `source` and `line_no` on malformed input.
double parse_double(std::string_view token, const std::string& source, long line_no);
long long parse_int(std::string_view token, const std::string& source, long line_no);

}  // namespace smoothgnn::csv
