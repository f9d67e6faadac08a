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

// Runs the rfflab binary end to end.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "rfflab/csv.h"
#include "rfflab/serialize.h"

namespace rfflab {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("rfflab_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Exit status of `rfflab <args>`, with stderr captured to err.txt.
  int Run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + RFFLAB_CLI_PATH + " " + args + " > " +
                            (dir_ / "out.txt").string() + " 2> " + (dir_ / "err.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string Err() { return ReadTextFile(dir_ / "err.txt"); }

  fs::path dir_;
};

TEST_F(CliTest, BochnerDefaultWritesFiles) {
  ASSERT_EQ(Run("-o " + (dir_ / "b").string() + " bochner"), 0);
  EXPECT_TRUE(fs::exists(dir_ / "b" / "bochner.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "b" / "bochner.svg"));
  EXPECT_TRUE(fs::exists(dir_ / "b" / "run.json"));
}

TEST_F(CliTest, BochnerErrorShrinksWithD) {
  ASSERT_EQ(Run("-o " + (dir_ / "b").string() + " bochner --frequencies 16,1024"), 0);
  const CsvTable t = ReadCsv(dir_ / "b" / "bochner.csv");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_LT(std::stod(t.rows[1][1]), std::stod(t.rows[0][1]));
}

TEST_F(CliTest, UnknownFamilyIsUsageErrorWithoutOutputs) {
  EXPECT_EQ(Run("-o " + (dir_ / "b").string() + " bochner --family rbf"), 1);
  EXPECT_NE(Err().find("gaussian, laplacian, cauchy"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "b"));
}

TEST_F(CliTest, MissingSubcommandIsUsageError) { EXPECT_EQ(Run(""), 1); }

TEST_F(CliTest, VerifyHomogeneity) {
  EXPECT_EQ(Run("-o " + (dir_ / "v").string() + " verify --suite homogeneity --trials 1000"), 0);
  EXPECT_TRUE(fs::exists(dir_ / "v" / "verify.json"));
}

TEST_F(CliTest, ExplosionDefaultRadii) {
  ASSERT_EQ(Run("-o " + (dir_ / "e").string() + " explosion"), 0);
  const CsvTable t = ReadCsv(dir_ / "e" / "explosion.csv");
  ASSERT_EQ(t.rows.size(), 5u);
  EXPECT_EQ(t.rows[0][0], "1");
  EXPECT_EQ(t.rows[4][0], "10000");
}

TEST_F(CliTest, ConvergeWritesFiftyOneRowsPerArm) {
  ASSERT_EQ(Run("-o " + (dir_ / "c").string() + " converge --alpha 1 --lr 0.0625"), 0);
  EXPECT_EQ(ReadCsv(dir_ / "c" / "converge_raw.csv").rows.size(), 51u);
  EXPECT_EQ(ReadCsv(dir_ / "c" / "converge_rff.csv").rows.size(), 51u);
  EXPECT_TRUE(fs::exists(dir_ / "c" / "rff_map.json"));
}

TEST_F(CliTest, DivergenceExitsThreeAndCleansUp) {
  EXPECT_EQ(Run("-o " + (dir_ / "c").string() +
                " converge --lr 1e6 --steps 200 --n 64 --hidden 16,16"),
            3);
  EXPECT_FALSE(fs::exists(dir_ / "c"));
}

TEST_F(CliTest, OutputRootFromEnvironment) {
  ASSERT_EQ(Run("gen-housing --rows 50", "RFFLAB_OUT=" + (dir_ / "root").string()), 0);
  EXPECT_TRUE(fs::exists(dir_ / "root" / "gen-housing" / "housing.csv"));
}

TEST_F(CliTest, ReplayIsByteIdentical) {
  ASSERT_EQ(Run("-o " + (dir_ / "t").string() + " telescope --steps 20"), 0);
  ASSERT_EQ(Run("replay " + (dir_ / "t" / "run.json").string()), 0);
  for (const char* f : {"telescope.csv", "trace_0.csv", "trace_1.csv", "kernel_init.csv"})
    EXPECT_EQ(ReadTextFile(dir_ / "t" / f), ReadTextFile(dir_ / "t" / "replay" / f)) << f;
}

TEST_F(CliTest, BenchOnGeneratedTable) {
  ASSERT_EQ(Run("-o " + (dir_ / "h").string() + " gen-housing --rows 400"), 0);
  ASSERT_EQ(Run("-o " + (dir_ / "r").string() + " bench --csv " +
                (dir_ / "h" / "housing.csv").string() +
                " --seeds 0 --epochs 2 --frequencies 32 --hidden 16"),
            0);
  const CsvTable t = ReadCsv(dir_ / "r" / "results.csv");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][1], "raw");
  EXPECT_EQ(t.rows[1][1], "rff");
  EXPECT_EQ(t.header.size(), 12u);
  EXPECT_TRUE(fs::exists(dir_ / "r" / "results.json"));
}

}  // namespace
}  // namespace rfflab
