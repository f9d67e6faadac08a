// Copyright 2026 The rfflab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rfflab/serialize.h"

#include <filesystem>

#include <gtest/gtest.h>

#include "rfflab/csv.h"
#include "rfflab/errors.h"

namespace rfflab {
namespace {

namespace fs = std::filesystem;

fs::path TempPath(const std::string& name) { return fs::temp_directory_path() / name; }

TEST(RffMapJsonTest, BitExactRoundTrip) {
  for (FeatureVariant v : {FeatureVariant::kSinCos, FeatureVariant::kCosOffset}) {
    const RffMap m = RffMap::Build({SpectralKind::kCauchy, 0.7, true}, 3, 50, v,
                                   FeatureScaling::kUnbiased, SeededRng(12, "map"));
    const RffMap back = RffMapFromJson(RffMapToJson(m));
    EXPECT_EQ(back.omega(), m.omega());
    EXPECT_EQ(back.offsets(), m.offsets());
    EXPECT_EQ(back.family().kind, SpectralKind::kCauchy);
    EXPECT_EQ(back.family().bandwidth, 0.7);
    EXPECT_TRUE(back.family().normalized_cauchy);
    EXPECT_EQ(back.variant(), v);
    EXPECT_EQ(back.scaling(), FeatureScaling::kUnbiased);
    EXPECT_EQ(back.seed(), m.seed());
    const Vec x{0.1, -2.0, 3.3};
    EXPECT_EQ(back.Transform(x), m.Transform(x));
  }
}

TEST(RffMapJsonTest, FileRoundTripAndErrors) {
  const RffMap m = RffMap::Build({SpectralKind::kGaussian, 1.0}, 2, 8, FeatureVariant::kSinCos,
                                 FeatureScaling::kStandard, SeededRng(0, "m"));
  const fs::path p = TempPath("rfflab_map.json");
  SaveRffMap(p, m);
  EXPECT_EQ(LoadRffMap(p).omega(), m.omega());
  fs::remove(p);
  EXPECT_THROW(RffMapFromJson("{"), IoError);
  EXPECT_THROW(RffMapFromJson(R"({"format": "rfflab.mlp", "version": 1})"), IoError);
  EXPECT_THROW(RffMapFromJson(R"({"format": "rfflab.rff_map", "version": 99})"), IoError);
}

TEST(MlpJsonTest, RoundTrip) {
  const Mlp net = Mlp::Init({4, 6, 1}, Activation::LeakyReLU(0.25), 1.3, SeededRng(0, "n"));
  EXPECT_TRUE(MlpFromJson(MlpToJson(net)) == net);
  const Mlp with_bias = Mlp::Init({3, 5, 2}, Activation::ReLU(), 1.0, SeededRng(1, "n"), true);
  EXPECT_TRUE(MlpFromJson(MlpToJson(with_bias)) == with_bias);
}

TEST(HistoryCsvTest, Columns) {
  const fs::path p = TempPath("rfflab_history.csv");
  WriteHistoryCsv(p, {{0, 1.5, 0.25}, {100, 0.5, 0.125}});
  const CsvTable t = ReadCsv(p);
  EXPECT_EQ(t.header, (std::vector<std::string>{"step", "loss"}));
  EXPECT_EQ(t.rows[1], (std::vector<std::string>{"100", "0.5"}));
  fs::remove(p);
}

TEST(KernelReportTest, CsvAndJson) {
  const Mlp net = Mlp::FromWeights({Mat{{1.0, 2.0}}}, {Activation::Identity()});
  const KernelReport r = NtkGram(net, Mat{{1, 0}, {0, 1}, {1, 1}});
  const fs::path prefix = TempPath("rfflab_kernel");
  WriteKernelReport(prefix, r);
  const CsvTable t = ReadCsv(prefix.string() + ".csv");
  EXPECT_EQ(t.rows.size(), 6u);  // i <= j pairs of 3 points
  EXPECT_EQ(t.rows[2], (std::vector<std::string>{"0", "2", "1"}));
  const std::string json = ReadTextFile(prefix.string() + ".json");
  EXPECT_NE(json.find("\"condition_number\""), std::string::npos);
  fs::remove(prefix.string() + ".csv");
  fs::remove(prefix.string() + ".json");
}

}  // namespace
}  // namespace rfflab
