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

#include <cmath>

#include <gtest/gtest.h>

#include "fosg/domains.h"
#include "fosg/sequence_form.h"
#include "fosg/simplex.h"
#include "support/expect.h"
#include "support/oracles.h"

namespace fosg {
namespace {

ExtensiveFormRep Kuhn() { return Unroll(Serialize(KuhnPoker())); }

TEST(Simplex, SmallLp) {
  const StandardFormLp lp{{{1, 2, 1, 0}, {3, 1, 0, 1}}, {4, 6}, {-1, -1, 0, 0}};
  const SimplexResult r = SolveStandardForm(lp);
  EXPECT_NEAR(r.objective, -2.8, 1e-12);
  EXPECT_NEAR(r.x[0], 1.6, 1e-12);
  EXPECT_NEAR(r.x[1], 1.2, 1e-12);
  EXPECT_NEAR(r.duals[0], -0.4, 1e-12);
  EXPECT_NEAR(r.duals[1], -0.2, 1e-12);
  EXPECT_FALSE(r.pivots.empty());
}

TEST(Simplex, RedundantRow) {
  const StandardFormLp lp{{{1, 1}, {2, 2}}, {1, 2}, {1, 2}};
  const SimplexResult r = SolveStandardForm(lp);
  EXPECT_NEAR(r.objective, 1.0, 1e-12);
}

// Beale's example cycles under the textbook pivot rule.
TEST(Simplex, DegenerateCycleExample) {
  const StandardFormLp lp{
      {{1, 0, 0, 0.25, -60, -0.04, 9},
       {0, 1, 0, 0.5, -90, -0.02, 3},
       {0, 0, 1, 0, 0, 1, 0}},
      {0, 0, 1},
      {0, 0, 0, -0.75, 150, -0.02, 6}};
  EXPECT_NEAR(SolveStandardForm(lp).objective, -0.05, 1e-12);
}

TEST(Simplex, InfeasibleAndUnbounded) {
  EXPECT_FOSG_ERROR(SolveStandardForm({{{1, 1}}, {-1}, {0, 0}}), ErrorCode::kInfeasible);
  EXPECT_FOSG_ERROR(SolveStandardForm({{{1, -1}}, {1}, {-1, 0}}), ErrorCode::kUnbounded);
}

TEST(SequenceForm, KuhnShapes) {
  const ExtensiveFormRep rep = Kuhn();
  const SequenceLp lp = BuildSequenceLp(rep);
  EXPECT_EQ(lp.first.Size(), 13);
  EXPECT_EQ(lp.second.Size(), 13);
  EXPECT_EQ(lp.e.matrix.rows, 7);
  EXPECT_EQ(lp.e.matrix.cols, 13);
  EXPECT_EQ(lp.payoff.rows, 13);
  EXPECT_EQ(lp.payoff.cols, 13);
  EXPECT_EQ(lp.e.rhs.front(), 1.0);
}

TEST(SequenceForm, BilinearMatchesUtility) {
  const ExtensiveFormRep rep = Kuhn();
  const SequenceLp lp = BuildSequenceLp(rep);
  for (int k = 0; k < 10; ++k) {
    const TabularPolicy policy = oracle::TabulateOverKeys(rep, oracle::HashPolicy(k));
    const auto x = PolicyToPlan(rep, lp.first, policy);
    const auto y = PolicyToPlan(rep, lp.second, policy);
    EXPECT_NEAR(BilinearValue(lp.payoff, x, y), oracle::TreeUtility(rep, policy)[0],
                1e-12);
    const auto dense = lp.e.matrix.Dense();
    for (size_t r = 0; r < dense.size(); ++r) {
      double lhs = 0.0;
      for (size_t c = 0; c < x.size(); ++c) lhs += dense[r][c] * x[c];
      EXPECT_NEAR(lhs, lp.e.rhs[r], 1e-12);
    }
    const auto back = RealizationToBehavioral(rep, lp.first, x);
    for (size_t s = 0; s < rep.infosets[0].size(); ++s) {
      if (!rep.infosets[0][s].acting) continue;
      for (size_t a = 0; a < back[s].size(); ++a) {
        EXPECT_NEAR(back[s][a], policy[0][s][a], 1e-12);
      }
    }
  }
}

TEST(SequenceForm, InvalidPlan) {
  const ExtensiveFormRep rep = Kuhn();
  const SequenceLp lp = BuildSequenceLp(rep);
  std::vector<double> plan(lp.first.Size(), 0.0);
  EXPECT_FOSG_ERROR(RealizationToBehavioral(rep, lp.first, plan), ErrorCode::kInvalidPlan);
  plan = PolicyToPlan(rep, lp.first, UniformPolicy(rep));
  plan[1] += 0.25;
  EXPECT_FOSG_ERROR(RealizationToBehavioral(rep, lp.first, plan), ErrorCode::kInvalidPlan);
}

TEST(SequenceForm, KuhnValue) {
  const ExtensiveFormRep rep = Kuhn();
  const SequenceLp lp = BuildSequenceLp(rep);
  const LpSolution sol = SolveZeroSumLp(lp);
  EXPECT_NEAR(sol.value, -1.0 / 18, 1e-9);
  EXPECT_NEAR(BilinearValue(lp.payoff, sol.x, sol.y), sol.value, 1e-9);
  const TabularPolicy profile = ProfileFromPlans(rep, lp, sol.x, sol.y);
  EXPECT_LE(Exploitability(rep, profile), 1e-9);
}

TEST(SequenceForm, MatchingPennies) {
  const ExtensiveFormRep rep = Unroll(Serialize(MatchingPennies()));
  const LpSolution sol = SolveZeroSumLp(BuildSequenceLp(rep));
  EXPECT_NEAR(sol.value, 0.0, 1e-9);
}

TEST(SequenceForm, LpDumpSections) {
  const ExtensiveFormRep rep = Kuhn();
  const std::string text = LpDump(rep, BuildSequenceLp(rep));
  for (const char* section : {"Minimize", "Subject To", "Bounds", "End"}) {
    EXPECT_NE(text.find(section), std::string::npos) << section;
  }
}

}  // namespace
}  // namespace fosg
