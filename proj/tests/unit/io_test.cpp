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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "smoothgnn/csv.hpp"
#include "smoothgnn/dataset_io.hpp"
#include "smoothgnn/soft_labels.hpp"
#include "smoothgnn/synthetic.hpp"
#include "test_util.hpp"

namespace smoothgnn {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  const fs::path dir = fs::temp_directory_path() / "smoothgnn_tests" /
                       (std::string(info->test_suite_name()) + "_" + info->name());
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

Graph small_labelled_graph() {
  SyntheticSpec spec;
  spec.clusters = 2;
  spec.nodes_per_cluster = 10;
  spec.intra_p = 0.5;
  spec.inter_p = 0.1;
  spec.seed = 4;
  return gen_gaussian_cluster_graph(spec);
}

TEST(FormatDouble, RoundTripsExactly) {
  const double values[] = {0.0, -0.0, 1.0, 0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23,
                           std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::max(),
                           std::numeric_limits<double>::epsilon()};
  for (double v : values) {
    const std::string s = csv::format_double(v);
    const double back = csv::parse_double(s, "test", 1);
    EXPECT_EQ(back, v) << s;
    EXPECT_EQ(std::signbit(back), std::signbit(v)) << s;
  }
}

TEST(FormatDouble, UsesShortestForm) {
  EXPECT_EQ(csv::format_double(0.3), "0.3");
  EXPECT_EQ(csv::format_double(2.0), "2");
}

TEST(CsvSplit, TrimsCellsAndKeepsEmptyFields) {
  const auto cells = csv::split(" a , b,,c ");
  ASSERT_EQ(cells.size(), 4u);
  EXPECT_EQ(cells[0], "a");
  EXPECT_EQ(cells[1], "b");
  EXPECT_EQ(cells[2], "");
  EXPECT_EQ(cells[3], "c");
}

TEST(CsvParse, RejectsGarbageWithLocation) {
  try {
    csv::parse_double("1.5x", "file.csv", 7);
    FAIL() << "expected ParseError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("file.csv:7"), std::string::npos);
  }
  EXPECT_ERROR_CODE(csv::parse_int("3.0", "f", 1), ErrorCode::kParseError);
  EXPECT_ERROR_CODE(csv::parse_int("", "f", 1), ErrorCode::kParseError);
  EXPECT_EQ(csv::parse_int("-12", "f", 1), -12);
}

TEST(SoftLabels, OneHotMasksOtherNodes) {
  const SoftLabelMatrix s = SoftLabelMatrix::one_hot({1, 0, 2, 1}, 3, {0, 2});
  EXPECT_EQ(s.unmasked_nodes(), (IndexList{0, 2}));
  EXPECT_EQ(s.y(0, 1), 1.0);
  EXPECT_EQ(s.y(2, 2), 1.0);
  EXPECT_EQ(s.y.row(1).sum(), 0.0);
  EXPECT_EQ(s.max_row_sum_error(), 0.0);
}

TEST(SoftLabels, RenormalizeMasksZeroRows) {
  SoftLabelMatrix s = SoftLabelMatrix::zeros(3, 2);
  s.y << 1.0, 3.0, 0.0, 0.0, 0.5, 0.5;
  s.masked.assign(3, 0);
  s.renormalize();
  EXPECT_EQ(s.unmasked_nodes(), (IndexList{0, 2}));
  EXPECT_DOUBLE_EQ(s.y(0, 1), 0.75);
  EXPECT_LT(s.max_row_sum_error(), 1e-15);
}

TEST(SoftLabels, CsvHasOneColumnPerClass) {
  const SoftLabelMatrix s = SoftLabelMatrix::one_hot({1, 0}, 2, {0, 1});
  std::ostringstream os;
  write_soft_labels_csv(os, s);
  EXPECT_EQ(os.str(), "node,class0,class1\n0,0,1\n1,1,0\n");
}

TEST(DatasetIo, SaveLoadRoundTrip) {
  const fs::path dir = scratch_dir();
  const Graph g = small_labelled_graph();
  save_dataset(g, dir);
  const Graph back = load_dataset(dir);
  EXPECT_TRUE(back == g);
  EXPECT_EQ(structure_hash(back), structure_hash(g));
  EXPECT_EQ(back.masks().train, g.masks().train);
  EXPECT_EQ(back.masks().test, g.masks().test);
}

TEST(DatasetIo, MalformedEdgeLineReportsLine) {
  const fs::path dir = scratch_dir();
  save_dataset(small_labelled_graph(), dir);
  write_file(dir / "edges.tsv", "0\t1\na b c\n");
  try {
    load_dataset(dir);
    FAIL() << "expected ParseError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("edges.tsv:2"), std::string::npos) << e.what();
  }
}

TEST(DatasetIo, LabelOutsideGraphIsRejected) {
  const fs::path dir = scratch_dir();
  save_dataset(small_labelled_graph(), dir);
  write_file(dir / "labels.csv", "node,label\n0,1\n20,0\n");
  EXPECT_ERROR_CODE(load_dataset(dir), ErrorCode::kIndexOutOfRange);
}

TEST(DatasetIo, EdgeOutsideGraphIsRejected) {
  const fs::path dir = scratch_dir();
  save_dataset(small_labelled_graph(), dir);
  write_file(dir / "edges.tsv", "0\t-1\n");
  EXPECT_ERROR_CODE(load_dataset(dir), ErrorCode::kIndexOutOfRange);
}

TEST(DatasetIo, MissingMaskFile) {
  const fs::path dir = scratch_dir();
  save_dataset(small_labelled_graph(), dir);
  fs::remove(dir / "masks.csv");
  EXPECT_ERROR_CODE(load_dataset(dir), ErrorCode::kMissingMask);
}

TEST(DatasetIo, RaggedFeaturesAndUnknownSplit) {
  const fs::path dir = scratch_dir();
  save_dataset(small_labelled_graph(), dir);
  write_file(dir / "masks.csv", "node,split\n0,holdout\n");
  EXPECT_ERROR_CODE(load_dataset(dir), ErrorCode::kParseError);
  write_file(dir / "features.csv", "1,2\n3\n");
  EXPECT_ERROR_CODE(load_dataset(dir), ErrorCode::kParseError);
}

TEST(DatasetIo, MissingFeatureFileIsIoError) {
  EXPECT_ERROR_CODE(load_dataset(scratch_dir() / "absent"), ErrorCode::kIoError);
}

}  // namespace
}  // namespace smoothgnn
