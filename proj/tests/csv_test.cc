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

#include "rfflab/csv.h"

#include <cmath>
#include <filesystem>
#include <limits>

#include <gtest/gtest.h>

#include "rfflab/errors.h"
#include "rfflab/random.h"

namespace rfflab {
namespace {

TEST(ParseCsvTest, QuotedFieldsAndBlankLines) {
  const CsvTable t = ParseCsv("a,b,c\n1,\"x, y\",\"say \"\"hi\"\"\"\n\n2,,3\r\n");
  EXPECT_EQ(t.header, (std::vector<std::string>{"a", "b", "c"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][1], "x, y");
  EXPECT_EQ(t.rows[0][2], "say \"hi\"");
  EXPECT_EQ(t.rows[1][1], "");
  EXPECT_EQ(t.rows[1][2], "3");
}

TEST(ParseCsvTest, RaggedRowThrows) {
  EXPECT_THROW(ParseCsv("a,b\n1,2,3\n"), IoError);
}

TEST(ReadCsvTest, MissingFileThrows) {
  EXPECT_THROW(ReadCsv("/nonexistent/file.csv"), IoError);
}

TEST(FormatDoubleTest, RoundTripsExactly) {
  SeededRng rng(1, "fmt");
  for (int i = 0; i < 2000; ++i) {
    const double v = rng.StdCauchy() * std::pow(10.0, rng.Uniform(-200, 200));
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(2.0), "2");
}

TEST(CsvWriterTest, WriteThenReadRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "rfflab_csv_roundtrip.csv";
  SeededRng rng(2, "rt");
  std::vector<std::vector<std::string>> expected;
  {
    CsvWriter w(path, {"name", "value", "count"});
    for (int i = 0; i < 50; ++i) {
      const double v = rng.StdNormal();
      const std::string name = i % 3 == 0 ? "a,\"b\"" : "row" + std::to_string(i);
      w.Field(name).Field(v).Field(i).EndRow();
      expected.push_back({name, FormatDouble(v), std::to_string(i)});
    }
  }
  const CsvTable t = ReadCsv(path);
  EXPECT_EQ(t.rows, expected);
  std::filesystem::remove(path);
}

TEST(QuoteCsvFieldTest, OnlyQuotesWhenNeeded) {
  EXPECT_EQ(QuoteCsvField("plain"), "plain");
  EXPECT_EQ(QuoteCsvField("a,b"), "\"a,b\"");
  EXPECT_EQ(QuoteCsvField("q\""), "\"q\"\"\"");
}

}  // namespace
}  // namespace rfflab
