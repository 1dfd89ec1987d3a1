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

#ifndef FOSG_EFG_H_
#define FOSG_EFG_H_

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace fosg {

inline constexpr int kChanceActor = -1;
inline constexpr int kTerminalActor = -2;

struct EfgNode {
  int id = 0;
  std::string name;
  int parent = -1;
  std::string action;  // Label of the incoming edge.
  int actor = kTerminalActor;
  std::vector<std::string> actions;
  std::vector<int> children;  // Aligned with `actions`.
  std::vector<double> chance;  // Aligned with `actions` at chance nodes.
  std::vector<double> utility;  // One entry per player at terminals.

  bool operator==(const EfgNode&) const = default;
};

// A classical extensive-form game: partitions cover only the nodes where
// their owner acts. Node ids equal their index in `nodes`.
struct ClassicalEFG {
  int num_players = 0;
  std::vector<EfgNode> nodes;
  // infosets[p] lists node-id sets; kept canonical (each set ascending, sets
  // ordered by smallest member).
  std::vector<std::vector<std::vector<int>>> infosets;

  int Root() const;
  std::vector<int> Terminals() const;
  void Canonicalize();
  // For every node: (player, infoset index) or (-1, -1).
  std::vector<std::pair<int, int>> InfosetIndex() const;

  bool operator==(const ClassicalEFG&) const = default;
};

// Checks structural well-formedness: a single root, consistent parent/child
// links, chance distributions summing to 1, utility arity, and infosets that
// cover only acting nodes with identical action labels. Throws
// ErrorCode::kValidation.
void ValidateEfg(const ClassicalEFG& efg);

ClassicalEFG EfgFromJson(const nlohmann::json& doc);
ClassicalEFG EfgFromJsonText(const std::string& text);
nlohmann::json EfgToJson(const ClassicalEFG& efg);

// Behavioural policy lookup: (player, infoset index) -> distribution.
using EfgPolicyFn =
    std::function<std::vector<double>(int player, int infoset, int actions)>;

// Expected utility vector under `policy`.
std::vector<double> EfgExpectedUtility(const ClassicalEFG& efg,
                                       const EfgPolicyFn& policy);

struct RecallCheck {
  bool perfect_recall = true;
  int player = -1;
  int first = -1;   // Two members of one infoset with different histories.
  int second = -1;
};

RecallCheck CheckPerfectRecall(const ClassicalEFG& efg);

}  // namespace fosg

#endif  // FOSG_EFG_H_
