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

#include "smoothgnn/dataset_io.hpp"

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "smoothgnn/csv.hpp"
#include "smoothgnn/error.hpp"

namespace smoothgnn {
namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::kIoError, "cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::kIoError, "cannot write " + path.string());
  return out;
}

std::string_view strip_comment(std::string_view line) {
  const auto pos = line.find('#');
  return csv::trim(pos == std::string_view::npos ? line : line.substr(0, pos));
}

[[noreturn]] void fail(ErrorCode code, const std::string& source, long line_no, const std::string& what) {
  raise(code, source + ":" + std::to_string(line_no) + ": " + what);
}

void check_node(Index v, Index n, const std::string& source, long line_no) {
  if (v < 0 || v >= n) {
    fail(ErrorCode::kIndexOutOfRange, source, line_no,
         "node " + std::to_string(v) + " outside [0, " + std::to_string(n) + ")");
  }
}

Matrix read_features(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  const std::string source = path.string();
  std::vector<std::vector<double>> rows;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    std::vector<double> row;
    for (const auto& cell : csv::split(line)) row.push_back(csv::parse_double(cell, source, line_no));
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail(ErrorCode::kParseError, source, line_no, "row width differs from the first row");
    }
    rows.push_back(std::move(row));
  }
  const Index width = rows.empty() ? 0 : static_cast<Index>(rows.front().size());
  Matrix m(static_cast<Index>(rows.size()), width);
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < width; ++k) m(i, k) = rows[i][k];
  return m;
}

std::vector<Edge> read_edges(const std::filesystem::path& path, Index n) {
  std::ifstream in = open_input(path);
  const std::string source = path.string();
  std::vector<Edge> edges;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = strip_comment(line);
    if (body.empty()) continue;
    const auto cells = csv::split(body, '\t');
    if (cells.size() != 2) fail(ErrorCode::kParseError, source, line_no, "expected 'i<TAB>j'");
    const Index u = csv::parse_int(cells[0], source, line_no);
    const Index v = csv::parse_int(cells[1], source, line_no);
    check_node(u, n, source, line_no);
    check_node(v, n, source, line_no);
    edges.emplace_back(u, v);
  }
  return edges;
}

// Yields (node, value, line) for "node,value" files, skipping a header line.
template <typename Fn>
void read_pairs(const std::filesystem::path& path, const char* header_key, Fn&& fn) {
  std::ifstream in = open_input(path);
  const std::string source = path.string();
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = csv::trim(line);
    if (body.empty()) continue;
    const auto cells = csv::split(body);
    if (cells.size() != 2) fail(ErrorCode::kParseError, source, line_no, "expected two comma-separated fields");
    if (line_no == 1 && cells[0] == "node" && cells[1] == header_key) continue;
    fn(csv::parse_int(cells[0], source, line_no), cells[1], source, line_no);
  }
}

}  // namespace

DatasetPaths DatasetPaths::in_directory(const std::filesystem::path& dir) {
  return {dir / "edges.tsv", dir / "features.csv", dir / "labels.csv", dir / "masks.csv"};
}

Graph load_dataset(const std::filesystem::path& dir) { return load_dataset(DatasetPaths::in_directory(dir)); }

Graph load_dataset(const DatasetPaths& paths) {
  Matrix features = read_features(paths.features);
  const Index n = features.rows();
  const std::vector<Edge> edges = read_edges(paths.edges, n);

  std::vector<int> labels(static_cast<std::size_t>(n), kUnlabeled);
  if (std::filesystem::exists(paths.labels)) {
    read_pairs(paths.labels, "label", [&](Index v, const std::string& value, const std::string& src, long ln) {
      check_node(v, n, src, ln);
      const long long y = csv::parse_int(value, src, ln);
      if (y < 0) fail(ErrorCode::kParseError, src, ln, "labels must be nonnegative");
      labels[v] = static_cast<int>(y);
    });
  }

  if (!std::filesystem::exists(paths.masks)) {
    raise(ErrorCode::kMissingMask, "mask file " + paths.masks.string() + " not found");
  }
  Masks masks;
  read_pairs(paths.masks, "split", [&](Index v, const std::string& split, const std::string& src, long ln) {
    check_node(v, n, src, ln);
    if (split == "train") masks.train.push_back(v);
    else if (split == "val") masks.val.push_back(v);
    else if (split == "test") masks.test.push_back(v);
    else fail(ErrorCode::kParseError, src, ln, "unknown split '" + split + "'");
  });
  return build_graph(edges, n, std::move(features), std::move(labels), std::move(masks));
}

void write_matrix_csv(std::ostream& os, const Matrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index k = 0; k < m.cols(); ++k) {
      if (k > 0) os << ',';
      os << csv::format_double(m(i, k));
    }
    os << '\n';
  }
}

void save_dataset(const Graph& g, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const DatasetPaths paths = DatasetPaths::in_directory(dir);
  {
    std::ofstream out = open_output(paths.edges);
    out << "# " << g.num_nodes() << " nodes, " << g.num_edges() << " undirected edges\n";
    for (const auto& [u, v] : g.edges()) out << u << '\t' << v << '\n';
  }
  {
    std::ofstream out = open_output(paths.features);
    write_matrix_csv(out, g.features());
  }
  {
    std::ofstream out = open_output(paths.labels);
    out << "node,label\n";
    for (Index v = 0; v < g.num_nodes(); ++v)
      if (g.labels()[v] != kUnlabeled) out << v << ',' << g.labels()[v] << '\n';
  }
  {
    std::ofstream out = open_output(paths.masks);
    out << "node,split\n";
    for (Index v : g.masks().train) out << v << ",train\n";
    for (Index v : g.masks().val) out << v << ",val\n";
    for (Index v : g.masks().test) out << v << ",test\n";
  }
}

}  // namespace smoothgnn
