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

#include <filesystem>
#include <iosfwd>

#include "smoothgnn/graph.hpp"

namespace smoothgnn {

// Dataset directory layout:
//   edges.tsv     "i<TAB>j" per line, 0-based, '#' starts a comment
//   features.csv  row i = node i, no header
//   labels.csv    "node,label" (optional header line)
//   masks.csv     "node,split" with split in {train, val, test}
struct DatasetPaths {
  std::filesystem::path edges;
  std::filesystem::path features;
  std::filesystem::path labels;
  std::filesystem::path masks;

  static DatasetPaths in_directory(const std::filesystem::path& dir);
};

// ParseError(file:line) on malformed content, IndexOutOfRange for node ids
// outside the feature rows, MissingMask when the mask file is absent.
Graph load_dataset(const DatasetPaths& paths);
Graph load_dataset(const std::filesystem::path& dir);

void save_dataset(const Graph& g, const std::filesystem::path& dir);

// Dense matrix as CSV with 17 significant digits, no header.
void write_matrix_csv(std::ostream& os, const Matrix& m);

}  // namespace smoothgnn
