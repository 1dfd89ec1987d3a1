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

#ifndef FOSG_UNROLLER_H_
#define FOSG_UNROLLER_H_

#include <string>
#include <utility>
#include <vector>

#include "fosg/efg.h"
#include "fosg/game_spec.h"

namespace fosg {

inline constexpr std::string_view kEmptyPublic = "\xE2\x88\x85";  // "∅"

struct HistoryNode {
  int id = 0;
  int parent = -1;
  std::string incoming_action;
  int world_state = -1;
  std::string name;
  int actor = kTerminalActor;  // Player index, kChanceActor or kTerminalActor.
  std::vector<double> cumulative_reward;
  std::vector<double> incoming_reward;  // Reward paid on the parent edge.
  std::vector<std::string> actions;
  std::vector<int> children;  // Aligned with `actions`.
  std::vector<double> chance;  // Aligned with `actions` at chance nodes.
  int depth = 0;
  std::vector<int> infoset;  // Per player, index into infosets[player].
  int public_set = -1;
};

struct Infoset {
  std::string key;
  int player = 0;
  std::vector<int> nodes;  // Ascending node ids.
  bool acting = false;     // The owner acts at every member.
  std::vector<std::string> actions;
  int public_set = -1;
  int parent = -1;  // Infoset of the parent history, -1 at the root.
};

struct PublicSet {
  std::string key;
  std::vector<int> nodes;
  int parent = -1;
  std::vector<int> children;
  int depth = 0;
};

// Augmented extensive-form representation: a history tree with a partition
// of all histories per player and a public partition.
struct ExtensiveFormRep {
  int num_players = 0;
  std::vector<HistoryNode> nodes;
  std::vector<int> order;  // Parents before children; root first.
  std::vector<int> terminals;
  std::vector<std::vector<Infoset>> infosets;
  std::vector<PublicSet> public_sets;
  // Keys are encoded action-observation sequences (see infostate.h).
  bool sequence_keys = false;
  // Spec player index of every representation player (differs from the
  // identity when a chance actor was folded away).
  std::vector<int> spec_player;

  int Root() const { return order.empty() ? -1 : order.front(); }
  int FindInfoset(int player, const std::string& key) const;
  int FindPublicSet(const std::string& key) const;
  const std::vector<double>& Utility(int terminal) const {
    return nodes[terminal].cumulative_reward;
  }
};

// Materializes the reachable history tree of a serial spec. Outcomes with an
// observation record are kept even at probability zero.
// Errors: kNotSerial, kDepthExceeded, kValidation.
ExtensiveFormRep Unroll(const GameSpec& spec,
                        int depth_bound = kDefaultDepthBound);

ClassicalEFG ForgetNonActing(const ExtensiveFormRep& rep);

GameSpec ForgetFactorization(const GameSpec& spec);

// Histories become world states; keys become observations.
// Errors: kImperfectRecall, kThickPublicSets, kInvalidArgument.
GameSpec LiftToFosg(const ExtensiveFormRep& rep);

// Extends a 1-timeable perfect-recall classical EFG to an augmented one.
// Errors: kNotOneTimeable, kImperfectRecall, kValidation.
ExtensiveFormRep AugmentClassical(const ClassicalEFG& efg);

// Builds a representation from explicit per-node partition labels. Used by
// AugmentClassical and for hand-built augmentations.
ExtensiveFormRep RepFromEfgPartitions(
    const ClassicalEFG& efg,
    const std::vector<std::vector<std::string>>& player_labels,
    const std::vector<std::string>& public_labels);

RecallCheck CheckPerfectRecall(const ExtensiveFormRep& rep);

struct ThickCheck {
  bool thick = false;
  int ancestor = -1;
  int descendant = -1;
};
ThickCheck CheckThickPublicSets(const ExtensiveFormRep& rep);

// Number of distinct public sets on the root path of each node, minus one.
std::vector<int> PublicSetTiming(const ExtensiveFormRep& rep);

struct IsoResult {
  bool isomorphic = true;
  std::string reason;
};
// Ordered-children tree isomorphism that also requires bijections between
// the infoset partitions and the public partitions. `skip_b_root` ignores a
// leading single-child chance node in `b`.
IsoResult CheckIsomorphic(const ExtensiveFormRep& a, const ExtensiveFormRep& b,
                          bool skip_b_root = false, double tolerance = 1e-12);

}  // namespace fosg

#endif  // FOSG_UNROLLER_H_
