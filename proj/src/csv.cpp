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

#include "smoothgnn/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "smoothgnn/error.hpp"

namespace smoothgnn::csv {
namespace {

[[noreturn]] void bad_token(std::string_view token, const std::string& source, long line_no, const char* kind) {
  raise(ErrorCode::kParseError, source + ":" + std::to_string(line_no) + ": expected " + kind + ", got '" +
                                    std::string(token) + "'");
}

}  // namespace

std::string format_double(double value) {
  // Shortest representation that parses back to the same value.
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view token, const std::string& source, long line_no) {
  const std::string text(trim(token));
  if (text.empty()) bad_token(token, source, line_no, "a number");
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || (errno == ERANGE && std::isinf(value))) {
    bad_token(token, source, line_no, "a number");
  }
  return value;
}

long long parse_int(std::string_view token, const std::string& source, long line_no) {
  const std::string text(trim(token));
  if (text.empty()) bad_token(token, source, line_no, "an integer");
  char* end = nullptr;
  errno = 0;
  const long long value = std::strtoll(text.c_str(), &end, 10);
  if (end != text.c_str() + text.size() || errno == ERANGE) bad_token(token, source, line_no, "an integer");
  return value;
}

}  // namespace smoothgnn::csv
