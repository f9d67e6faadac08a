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

#include "rfflab/verify.h"

#include <gtest/gtest.h>

#include "rfflab/errors.h"

namespace rfflab {
namespace {

class SuiteTest : public ::testing::TestWithParam<std::string> {};

TEST_P(SuiteTest, PassesWithReducedTrials) {
  const SuiteReport r = RunSuite(GetParam(), {GetParam() == "bochner" ? 100u : 50u, 3});
  EXPECT_TRUE(r.passed()) << (r.failures.empty() ? "" : r.failures.front());
  EXPECT_GT(r.checks, 0u);
  EXPECT_EQ(r.suite, GetParam());
}

INSTANTIATE_TEST_SUITE_P(AllSuites, SuiteTest, ::testing::ValuesIn(SuiteNames()));

TEST(VerifyTest, UnknownSuiteListsNames) {
  try {
    RunSuite("nope", {});
    FAIL();
  } catch (const ContractError& e) {
    EXPECT_NE(std::string(e.what()).find("homogeneity"), std::string::npos);
  }
}

TEST(VerifyTest, MetricLookup) {
  const SuiteReport r = VerifyHomogeneity({10, 0});
  EXPECT_LE(r.metric("max_relative_error_f"), 1e-10);
  EXPECT_THROW(r.metric("missing"), ContractError);
}

}  // namespace
}  // namespace rfflab
