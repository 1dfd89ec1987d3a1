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

#ifndef FOSG_CFR_H_
#define FOSG_CFR_H_

#include <functional>
#include <vector>

#include "fosg/efg.h"
#include "fosg/unroller.h"

namespace fosg {

// policy[player][infoset][action]; entries of non-acting infosets are empty.
using TabularPolicy = std::vector<std::vector<std::vector<double>>>;

TabularPolicy UniformPolicy(const ExtensiveFormRep& rep);
// Throws ErrorCode::kMissingPolicy unless every acting infoset of the listed
// players carries a distribution over its actions. An empty list means all.
void CheckPolicy(const ExtensiveFormRep& rep, const TabularPolicy& policy,
                 const std::vector<int>& players = {});

std::vector<double> RegretMatching(const std::vector<double>& regrets);

// Replaces the reach contributions at one history. Used for subgames whose
// root ranges stand in for the trunk.
struct ReachOverride {
  int node = -1;
  double chance = 1.0;
  std::vector<double> player;
};

struct ReachTable {
  std::vector<double> chance;               // [node]
  std::vector<std::vector<double>> player;  // [player][node]
  std::vector<std::vector<double>> infoset_cf;   // P_{-i}(s), [player][s]
  std::vector<std::vector<double>> infoset_own;  // P_i(s), [player][s]

  double Joint(int node) const;
  double Counterfactual(int player, int node) const;
};

// Nodes flagged in `cut` are treated as leaves whose per-player values are
// supplied externally; their subtrees are not visited.
struct LeafValues {
  std::vector<char> cut;                   // [node]
  std::vector<std::vector<double>> value;  // [node][player]
};

struct ValueTable {
  std::vector<std::vector<double>> node_value;  // v_i(h), [player][node]
  std::vector<std::vector<double>> infoset_value;  // v_i(s)
  std::vector<std::vector<double>> infoset_cf;     // v_{i,cf}(s)
  std::vector<std::vector<std::vector<double>>> infoset_q;    // q_i(s, a)
  std::vector<std::vector<std::vector<double>>> infoset_qcf;  // q_{i,cf}(s, a)
};

ReachTable ComputeReach(const ExtensiveFormRep& rep, const TabularPolicy& policy,
                        const std::vector<ReachOverride>& overrides = {},
                        const std::vector<char>* cut = nullptr);
ValueTable ComputeValues(const ExtensiveFormRep& rep,
                         const TabularPolicy& policy, const ReachTable& reach,
                         const LeafValues* leaves = nullptr);

// Expected total reward per player.
std::vector<double> ExpectedUtility(const ExtensiveFormRep& rep,
                                    const TabularPolicy& policy);

enum class UpdateMode { kSimultaneous, kAlternating };

struct CfrOptions {
  UpdateMode mode = UpdateMode::kSimultaneous;
  std::vector<ReachOverride> overrides;
  // When set, the average policy is weighted by reaches computed under these
  // overrides instead of `overrides`.
  std::vector<ReachOverride> average_overrides;
  bool record_policies = false;
};

class CfrSolver {
 public:
  using LeafHook = std::function<void(const TabularPolicy& policy,
                                      const ReachTable& reach,
                                      LeafValues* leaves)>;

  explicit CfrSolver(const ExtensiveFormRep& rep, CfrOptions options = {});

  // Restricts the iteration to the part of the tree above `cut`; the hook
  // fills leaf values from the current reaches every iteration.
  void SetLeafHook(std::vector<char> cut, LeafHook hook);

  void Iterate();
  void Run(int iterations);

  int iteration() const { return iteration_; }
  const TabularPolicy& current_policy() const { return policy_; }
  TabularPolicy AveragePolicy() const;
  const TabularPolicy& cumulative_regret() const { return regret_; }
  const TabularPolicy& last_instant_regret() const { return instant_; }
  const TabularPolicy& strategy_sum() const { return strategy_sum_; }
  // Policies played at iterations 1..t when recording is enabled.
  const std::vector<TabularPolicy>& policy_history() const { return history_; }
  // Infosets updated by this solver (not below the cut).
  bool IsActive(int player, int infoset) const {
    return active_infoset_[player][infoset] != 0;
  }

 private:
  void Accumulate(int player, const ReachTable& reach, const ValueTable& values,
                  const ReachTable* weights);

  const ExtensiveFormRep& rep_;
  CfrOptions options_;
  int iteration_ = 0;
  TabularPolicy policy_;
  TabularPolicy regret_;
  TabularPolicy instant_;
  TabularPolicy strategy_sum_;
  std::vector<TabularPolicy> history_;
  std::vector<char> cut_;
  LeafHook hook_;
  std::vector<std::vector<char>> active_infoset_;
};

struct BestResponseResult {
  double value = 0.0;
  TabularPolicy policy;  // Pure policy for the responding player only.
};

// Opponent policies must be complete; the responder's entries are ignored.
BestResponseResult BestResponse(const ExtensiveFormRep& rep,
                                const TabularPolicy& policy, int player);

// Throws ErrorCode::kNotZeroSum for inputs that are not two-player zero-sum.
void RequireZeroSum(const ExtensiveFormRep& rep);
double Exploitability(const ExtensiveFormRep& rep, const TabularPolicy& policy);

// CFR on a classical EFG with terminal utilities; infosets follow the EFG's
// canonical order. Returns the policies played at iterations 1..T.
std::vector<TabularPolicy> ClassicalCfrPolicies(const ClassicalEFG& efg,
                                                int iterations);

}  // namespace fosg

#endif  // FOSG_CFR_H_
