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

#ifndef FOSG_DECOMPOSITION_H_
#define FOSG_DECOMPOSITION_H_

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fosg/cfr.h"
#include "fosg/game_spec.h"
#include "fosg/unroller.h"

namespace fosg {

struct PublicSubtree {
  std::vector<int> public_sets;  // Root of the subtree first.
  std::vector<int> histories;    // Ascending.
  std::vector<std::vector<int>> infosets;  // [player], ascending.
};

// Throws kUnknownPublicState.
int RequirePublicSet(const ExtensiveFormRep& rep, const std::string& key);

PublicSubtree PublicSubtreeOf(const ExtensiveFormRep& rep,
                              const std::string& public_key);

enum class SubgameMethod { kClosure, kExtension, kInfostate, kPublic };

std::vector<int> SubgameHistories(const ExtensiveFormRep& rep, int anchor,
                                  SubgameMethod method);

// True when every infoset of every player is wholly inside or outside.
bool ClosedUnderInfosets(const ExtensiveFormRep& rep,
                         const std::vector<int>& histories);

struct Range {
  int public_set = -1;
  std::string public_key;
  // Reach contribution P_i(s) per infostate key, [player].
  std::vector<std::map<std::string, double>> player;
  // Chance reach P_c(h) per history id.
  std::map<int, double> chance;
  bool normalized = false;
  // Per player: the total was zero and the normalized view is uniform.
  std::vector<bool> uniform_fallback;
};

struct PublicBeliefState {
  std::string public_key;
  Range range;
};

Range RangeFromReach(const ExtensiveFormRep& rep, const ReachTable& reach,
                     int public_set);
Range RangeAt(const ExtensiveFormRep& rep, const TabularPolicy& profile,
              const std::string& public_key);
Range NormalizeRange(const Range& range);
// Chance mass of each infostate key of `player`.
std::map<std::string, double> ChanceMarginal(const ExtensiveFormRep& rep,
                                             const Range& range, int player);

// Canonical text form carried in the public observation of the subgame.
std::string EncodeRange(const Range& range);

// `spec` is the serial game `rep` was unrolled from. `chance_only` is set
// when the joint range mass is zero and sampling falls back to chance reach.
GameSpec BuildSubgame(const GameSpec& spec, const ExtensiveFormRep& rep,
                      const PublicBeliefState& pbs, bool* chance_only = nullptr);

extern const char kSubgameInitState[];

// Reach overrides placing the range at the subgame's sampled histories.
std::vector<ReachOverride> SubgameOverrides(const ExtensiveFormRep& subgame,
                                            const PublicBeliefState& pbs);

// Full-game key of a subgame infostate key below the sampling layer, or ""
// for keys of the sampling layer itself.
std::string SubgameKeyToGame(const std::string& subgame_key);

struct Trunk {
  std::vector<int> public_sets;  // Ascending.
  std::vector<int> leaves;       // Ascending.
};

Trunk TrunkByDepth(const ExtensiveFormRep& rep, int depth);
Trunk TrunkFromKeys(const ExtensiveFormRep& rep,
                    const std::vector<std::string>& keys);

using SubgameSolver = std::function<TabularPolicy(
    const ExtensiveFormRep& subgame, const std::vector<ReachOverride>& overrides,
    int budget)>;

TabularPolicy CfrSubgameSolver(const ExtensiveFormRep& subgame,
                               const std::vector<ReachOverride>& overrides,
                               int budget);

struct CfrdOptions {
  int iterations = 1000;
  int subgame_budget = 1000;
  bool parallel_leaves = false;
  int trace_stride = 0;  // 0 disables the trace.
  UpdateMode mode = UpdateMode::kSimultaneous;
  SubgameSolver solver;  // Defaults to CfrSubgameSolver.
};

struct CfrdTracePoint {
  int iteration = 0;
  double exploitability = 0.0;
  double value_p1 = 0.0;
  double wall_ms = 0.0;
};

struct CfrdResult {
  // Arithmetic mean of the trunk policies; empty outside the trunk.
  TabularPolicy trunk_average;
  std::vector<TabularPolicy> trunk_history;
  // Reach-weighted average of the full per-iteration profiles.
  TabularPolicy completed;
  std::vector<CfrdTracePoint> trace;
  bool uniform_fallback = false;
};

CfrdResult CfrD(const GameSpec& spec, const ExtensiveFormRep& rep,
                const Trunk& trunk, const CfrdOptions& options);

}  // namespace fosg

#endif  // FOSG_DECOMPOSITION_H_
