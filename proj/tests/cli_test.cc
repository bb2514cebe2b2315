// Copyright 2026 The tatetower Authors
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

#include "cli.h"

#include <gtest/gtest.h>

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace tatetower::cli {
namespace {

struct CliRun {
  int status;
  std::string out;
  std::string err;
};

CliRun Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "tatetower");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string WriteTemp(const std::string& name, const std::string& body) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

TEST(CliTest, VerifyProductByNumberAndRole) {
  EXPECT_EQ(Invoke({"verify", "2.7", "--p", "3", "--n", "2", "--beta", "2"}).status,
            kExitPass);
  const CliRun r = Invoke({"verify", "product", "--p", "3", "--n", "2", "--beta", "2"});
  ASSERT_EQ(r.status, kExitPass);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(CliTest, UniformizerAtLevelThree) {
  const CliRun r = Invoke({"uniformizer", "--p", "3", "--m", "3", "--n", "1"});
  ASSERT_EQ(r.status, kExitPass) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["valuation"]["num"], 1);
  EXPECT_EQ(j["valuation"]["den"], 54);
  EXPECT_TRUE(j["verified"].get<bool>());
}

TEST(CliTest, HigherRadicalLevelNeedsBase) {
  const CliRun r = Invoke({"uniformizer", "--p", "3", "--m", "3", "--n", "2"});
  EXPECT_EQ(r.status, kExitBadInput);
  EXPECT_NE(r.err.find("MissingBaseUniformizer"), std::string::npos);
}

TEST(CliTest, BaseWithWrongValuationIsRejected) {
  const CliRun base = Invoke({"uniformizer", "--p", "3", "--m", "2", "--n", "1"});
  ASSERT_EQ(base.status, kExitPass);
  const std::string path = WriteTemp("base.json", base.out);
  EXPECT_EQ(Invoke({"uniformizer", "--p", "3", "--m", "3", "--n", "2", "--base", path})
                .status,
            kExitBadInput);
}

TEST(CliTest, RecurrenceText) {
  const CliRun r = Invoke({"recurrence", "--p", "3", "--m", "3", "--n", "1",
                        "--format", "text"});
  ASSERT_EQ(r.status, kExitPass) << r.err;
  EXPECT_NE(r.out.find("d: 13\n"), std::string::npos);
  EXPECT_NE(r.out.find("alpha: -4\n"), std::string::npos);
  EXPECT_NE(r.out.find("valuation: 1/54\n"), std::string::npos);
}

TEST(CliTest, ZetaBelowRootSeparationFails) {
  EXPECT_EQ(Invoke({"zeta", "--p", "3", "--n", "2"}).status, kExitPass);
  EXPECT_EQ(Invoke({"zeta", "--p", "3", "--n", "3"}).status,
            kExitVerificationFailed);
}

TEST(CliTest, Classify) {
  const std::string chain = WriteTemp(
      "chain.json",
      R"({"p": 3, "stages": [{"phi": [-1, 1], "lambda": "1/2"},
                             {"phi": [1, 1], "lambda": {"irrational": "sqrt2"}}]})");
  const CliRun r = Invoke({"classify", "--chain", chain});
  ASSERT_EQ(r.status, kExitPass) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["type"], "TypeIII");
  const std::string bad = WriteTemp(
      "bad.json", R"({"p": 3, "stages": [{"phi": [-1, 1], "lambda": "-1"}]})");
  EXPECT_EQ(Invoke({"classify", "--chain", bad}).status, kExitBadInput);
  EXPECT_EQ(Invoke({"classify", "--chain", WriteTemp("junk.json", "{")}).status,
            kExitBadInput);
}

TEST(CliTest, StabilityAndRoundTrip) {
  EXPECT_EQ(Invoke({"stability", "--p", "3", "--m-max", "5"}).status, kExitPass);
  const CliRun a = Invoke({"verify", "roundtrip", "--p", "3", "--seed", "9"});
  const CliRun b = Invoke({"verify", "roundtrip", "--p", "3", "--seed", "9"});
  EXPECT_EQ(a.status, kExitPass);
  EXPECT_EQ(a.out, b.out);
}

TEST(CliTest, BadInput) {
  EXPECT_EQ(Invoke({}).status, kExitBadInput);
  EXPECT_EQ(Invoke({"zeta", "--p", "9", "--n", "2"}).status, kExitBadInput);
  EXPECT_EQ(Invoke({"verify", "nothing", "--p", "3"}).status, kExitBadInput);
  EXPECT_EQ(Invoke({"verify", "2.6", "--p", "3", "--n", "2", "--beta", "1/3"}).status,
            kExitBadInput);
  EXPECT_EQ(Invoke({"verify", "2.5", "--p", "3", "--n", "2", "--k", "9"}).status,
            kExitBadInput);
}

}  // namespace
}  // namespace tatetower::cli
