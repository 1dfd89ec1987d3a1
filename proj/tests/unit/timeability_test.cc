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

#include <gtest/gtest.h>

#include "fosg/domains.h"
#include "fosg/timeability.h"
#include "support/expect.h"

namespace fosg {
namespace {

TEST(Timing, FixtureWitness) {
  const ClassicalEFG efg = NontimeableFixture();
  const TimingResult result = FindExactTiming(efg);
  ASSERT_FALSE(result.timeable);
  EXPECT_TRUE(VerifyWitness(efg, result.witness));
  ASSERT_EQ(result.witness.size(), 4u);
  EXPECT_EQ(result.witness[0].node, 1);
  EXPECT_FALSE(result.witness[0].infoset_link);
  EXPECT_EQ(result.witness[1].node, 3);
  EXPECT_TRUE(result.witness[1].infoset_link);
}

TEST(Timing, SplittingEitherInfosetHelps) {
  EXPECT_TRUE(FindExactTiming(NontimeableFixture(false, true)).timeable);
  EXPECT_TRUE(FindExactTiming(NontimeableFixture(true, false)).timeable);
}

TEST(Timing, TamperedWitnessFails) {
  const ClassicalEFG efg = NontimeableFixture();
  std::vector<WitnessStep> witness = FindExactTiming(efg).witness;
  witness[0].infoset_link = !witness[0].infoset_link;
  EXPECT_FALSE(VerifyWitness(efg, witness));
  EXPECT_FALSE(VerifyWitness(efg, {}));
}

TEST(Timing, ExactTimingValidates) {
  const PaddingChain chain = MakePaddingChain(4);
  const TimingResult result = FindExactTiming(chain.efg);
  ASSERT_TRUE(result.timeable);
  ValidateTiming(chain.efg, result.timing);
  ValidateTiming(chain.efg, chain.timing);
  EXPECT_FALSE(IsOneTimeable(chain.efg));
}

TEST(Timing, InvalidTimingRejected) {
  const PaddingChain chain = MakePaddingChain(3);
  Timing bad = chain.timing;
  bad.labels[chain.efg.Root()] = 100;
  EXPECT_FOSG_ERROR(ValidateTiming(chain.efg, bad), ErrorCode::kInvalidTiming);
  Timing short_labels{{0, 1}};
  EXPECT_FOSG_ERROR(ValidateTiming(chain.efg, short_labels),
                    ErrorCode::kInvalidTiming);
  EXPECT_FOSG_ERROR(PadToOneTimeable(chain.efg, bad), ErrorCode::kInvalidTiming);
}

TEST(Timing, Normalize) {
  const Timing t = NormalizeTiming(Timing{{4, 10, 10, 7}});
  EXPECT_EQ(t.labels, (std::vector<int>{0, 2, 2, 1}));
}

TEST(Padding, ChainOfFive) {
  const PaddingChain chain = MakePaddingChain(5);
  PadReport report;
  const ClassicalEFG padded = PadToOneTimeable(chain.efg, chain.timing, &report);
  EXPECT_EQ(report.original, 21);
  EXPECT_EQ(report.added, 10);
  EXPECT_EQ(report.padded, 31);
  EXPECT_EQ(report.bound, 441);
  EXPECT_EQ(padded.nodes.size(), 31u);
  EXPECT_TRUE(IsOneTimeable(padded));
  ValidateEfg(padded);
}

TEST(Padding, KeepsOriginalIds) {
  const PaddingChain chain = MakePaddingChain(3);
  const ClassicalEFG padded = PadToOneTimeable(chain.efg, chain.timing);
  for (size_t k = 0; k < chain.efg.nodes.size(); ++k) {
    EXPECT_EQ(padded.nodes[k].name, chain.efg.nodes[k].name);
    EXPECT_EQ(padded.nodes[k].actor, chain.efg.nodes[k].actor);
  }
  for (size_t k = chain.efg.nodes.size(); k < padded.nodes.size(); ++k) {
    EXPECT_EQ(padded.nodes[k].actor, kChanceActor);
    EXPECT_EQ(padded.nodes[k].children.size(), 1u);
  }
}

TEST(Padding, RandomTimeable) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const ClassicalEFG efg = RandomTimeableEfg(seed);
    const TimingResult result = FindExactTiming(efg);
    ASSERT_TRUE(result.timeable) << seed;
    const ClassicalEFG padded = PadToOneTimeable(efg, result.timing);
    EXPECT_TRUE(IsOneTimeable(padded)) << seed;
    EXPECT_LE(padded.nodes.size(), efg.nodes.size() * efg.nodes.size());
  }
}

TEST(Timing, OneTimeableRandom) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_TRUE(IsOneTimeable(RandomOneTimeableEfg(seed))) << seed;
  }
}

}  // namespace
}  // namespace fosg
