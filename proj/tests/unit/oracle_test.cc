// Copyright 2026 The fosgkit Authors.
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

// Checks of the test oracles themselves against hand-computed values.

#include <gtest/gtest.h>

#include "fosg/domains.h"
#include "support/oracles.h"

namespace {

TEST(Oracle, KeyTokens) {
  const oracle::Tokens t = oracle::TokensOfKey("O(a\\,b,c)A(bet)P(x)");
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[0], "O:a,b|c");
  EXPECT_EQ(t[1], "A:bet");
  EXPECT_EQ(t[2], "P:x");
}

TEST(Oracle, ReduceDropsTicksAndUnpacks) {
  const std::string empty = "\xE2\x88\x85";
  const oracle::Tokens a = {"O:(J,deal)|" + empty, "O:<tick>|<tick>", "A:bet"};
  const oracle::Tokens b = {"O:J|deal", "A:bet"};
  EXPECT_EQ(oracle::Reduce(a), oracle::Reduce(b));
}

TEST(Oracle, ExpandSampling) {
  oracle::KeyRules rules;
  rules.expand_sampling = true;
  const oracle::Tokens a = {"O:O(J,deal)A(bet)|{}", "O:<tick>|<tick>", "O:-|call"};
  const oracle::Tokens b = {"O:J|deal", "A:bet", "O:-|call"};
  EXPECT_EQ(oracle::Reduce(a, rules), oracle::Reduce(b));
}

TEST(Oracle, MatchingPenniesUniformValue) {
  const auto uniform = [](int, const std::string&, int n) {
    return std::vector<double>(n, 1.0 / n);
  };
  const auto v = oracle::DirectExpectedUtility(fosg::MatchingPennies(), uniform);
  EXPECT_NEAR(v[0], 0.0, 1e-15);
}

// Kuhn under uniform play. Holding the higher card player 1 wins
// 1/2 (3/4) + 1/2 (3/2) = 9/8, the lower card gives 1/2 (-5/4) + 1/2 (-1/2)
// = -7/8, so the value is 1/8.
TEST(Oracle, KuhnUniformValue) {
  const auto uniform = [](int, const std::string&, int n) {
    return std::vector<double>(n, 1.0 / n);
  };
  const auto v = oracle::DirectExpectedUtility(fosg::KuhnPoker(), uniform);
  EXPECT_NEAR(v[0], 0.125, 1e-15);
  EXPECT_NEAR(v[1], -0.125, 1e-15);
}

TEST(Oracle, HashPolicyIsDistribution) {
  const auto policy = oracle::HashPolicy(11);
  const auto d = policy(0, "k", 3);
  EXPECT_NEAR(d[0] + d[1] + d[2], 1.0, 1e-15);
  EXPECT_EQ(d, policy(0, "k", 3));
  EXPECT_NE(d, policy(1, "k", 3));
}

TEST(Oracle, ChiSquare) {
  EXPECT_DOUBLE_EQ(oracle::ChiSquare({50, 50}, {0.5, 0.5}), 0.0);
  EXPECT_DOUBLE_EQ(oracle::ChiSquare({60, 40}, {0.5, 0.5}), 4.0);
}

}  // namespace
