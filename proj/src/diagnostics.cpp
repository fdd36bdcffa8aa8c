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

#include "smoothgnn/diagnostics.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "smoothgnn/csv.hpp"
#include "smoothgnn/dense_linalg.hpp"
#include "smoothgnn/error.hpp"
#include "smoothgnn/spectral_oracle.hpp"

namespace smoothgnn {
namespace {

constexpr const char* kHeader =
    "layer,mean_pairwise_sq_dist,frob_sq,column_gram_dev,column_sum_dev,subspace_dist,accuracy";

std::string optional_cell(const std::optional<double>& v) { return v ? csv::format_double(*v) : std::string(); }

std::optional<double> parse_optional(const std::string& cell, const std::string& source, long line_no) {
  if (cell.empty()) return std::nullopt;
  return csv::parse_double(cell, source, line_no);
}

}  // namespace

PairwiseStats pairwise_stats(const Matrix& h) {
  PairwiseStats out;
  const Index n = h.rows();
  if (n == 0) return out;
  Eigen::RowVectorXd total = Eigen::RowVectorXd::Zero(h.cols());
  double sq = 0.0;
  for (Index i = 0; i < n; ++i) {
    total += h.row(i);
    sq += h.row(i).squaredNorm();
  }
  out.sum_sq_dist = std::max(0.0, 2.0 * static_cast<double>(n) * sq - 2.0 * total.squaredNorm());
  out.mean = out.sum_sq_dist / static_cast<double>(n);
  return out;
}

double spectral_alignment(const Matrix& h, const Graph& g, Index d) {
  if (h.cols() != d) raise(ErrorCode::kDimensionMismatch, "embedding width differs from d");
  return principal_subspace_distance(h, top_d_eigvectors(dense_abar(g), d));
}

DiagnosticsRecord diagnose_layer(Index layer, const Matrix& h) {
  DiagnosticsRecord rec;
  rec.layer = layer;
  rec.mean_pairwise_sq_dist = pairwise_stats(h).mean;
  rec.frob_sq = h.squaredNorm();
  rec.column_gram_dev = orthonormality_error(h);
  rec.column_sum_dev = h.rows() > 0 ? h.colwise().sum().cwiseAbs().maxCoeff() : 0.0;
  return rec;
}

std::vector<DiagnosticsRecord> diagnose_snapshots(const std::vector<Matrix>& layers, const Graph& g, Index width,
                                                  const SweepOptions& options) {
  std::optional<Matrix> reference;
  if (options.with_spectral) reference = top_d_eigvectors(dense_abar(g), width);

  std::vector<DiagnosticsRecord> records;
  records.reserve(layers.size());
  for (std::size_t t = 0; t < layers.size(); ++t) {
    const Matrix& h = layers[t];
    DiagnosticsRecord rec = diagnose_layer(static_cast<Index>(t) + 1, h);
    if (reference) {
      try {
        rec.subspace_dist = principal_subspace_distance(orthonormal_projection(h), *reference);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kRankDeficient) throw;
      }
    }
    if (options.classifier) {
      rec.accuracy = accuracy(predict(h, *options.classifier).labels, g.labels(), options.eval_nodes);
    }
    records.push_back(rec);
  }
  return records;
}

std::vector<DiagnosticsRecord> layer_sweep(const Graph& g, const PropagationConfig& cfg,
                                           const SweepOptions& options) {
  const PropagationResult run = propagate(g, cfg, options.reducer, /*keep_trace=*/true);
  return diagnose_snapshots(run.trace->snapshots, g, cfg.width, options);
}

void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& records) {
  os << kHeader << '\n';
  for (const auto& r : records) {
    os << r.layer << ',' << csv::format_double(r.mean_pairwise_sq_dist) << ',' << csv::format_double(r.frob_sq)
       << ',' << csv::format_double(r.column_gram_dev) << ',' << csv::format_double(r.column_sum_dev) << ','
       << optional_cell(r.subspace_dist) << ',' << optional_cell(r.accuracy) << '\n';
  }
}

std::vector<DiagnosticsRecord> read_diagnostics_csv(std::istream& is) {
  const std::string source = "diagnostics";
  std::string line;
  if (!std::getline(is, line) || csv::trim(line) != kHeader) {
    raise(ErrorCode::kParseError, source + ":1: unexpected header");
  }
  std::vector<DiagnosticsRecord> out;
  long line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    const auto cells = csv::split(line);
    if (cells.size() != 7) raise(ErrorCode::kParseError, source + ":" + std::to_string(line_no) + ": expected 7 fields");
    DiagnosticsRecord r;
    r.layer = csv::parse_int(cells[0], source, line_no);
    r.mean_pairwise_sq_dist = csv::parse_double(cells[1], source, line_no);
    r.frob_sq = csv::parse_double(cells[2], source, line_no);
    r.column_gram_dev = csv::parse_double(cells[3], source, line_no);
    r.column_sum_dev = csv::parse_double(cells[4], source, line_no);
    r.subspace_dist = parse_optional(cells[5], source, line_no);
    r.accuracy = parse_optional(cells[6], source, line_no);
    out.push_back(r);
  }
  return out;
}

}  // namespace smoothgnn
