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

#ifndef FOSG_GAME_SPEC_H_
#define FOSG_GAME_SPEC_H_

#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace fosg {

inline constexpr std::string_view kNoopAction = "noop";
// Observation emitted by bookkeeping transitions that carry no information.
inline constexpr std::string_view kTickSymbol = "<tick>";
inline constexpr int kDefaultDepthBound = 64;
inline constexpr int kNoop = -1;

struct FactoredObservation {
  std::vector<std::string> priv;  // One symbol per player.
  std::string pub;

  bool operator==(const FactoredObservation&) const = default;
};

FactoredObservation TickObservation(int num_players);

struct Outcome {
  int next = -1;
  double prob = 0.0;
  std::optional<FactoredObservation> observation;
};

// T(w, a), R(w, a) and O(w, a, .) for one joint action.
struct Transition {
  bool defined = false;
  std::vector<Outcome> outcomes;
  std::vector<double> reward;
};

struct WorldState {
  std::string name;
  // Active players in ascending order, and their legal actions aligned with
  // this list.
  std::vector<int> players;
  std::vector<std::vector<std::string>> actions;
  // Indexed by mixed-radix joint index over `players` (the first active player
  // is the least significant digit). States without players have exactly one
  // slot, the noop joint action; leaving it undefined makes the state terminal.
  std::vector<Transition> transitions;
  // Distribution over the chance actor's actions, when it is active here.
  std::vector<double> chance_policy;
};

// Joint action over all players; inactive players hold kNoop, active players
// hold an index into their legal action list.
struct JointAction {
  std::vector<int> per_player;

  bool operator==(const JointAction&) const = default;
};

// A tabular factored-observation stochastic game.
class GameSpec {
 public:
  GameSpec() = default;
  explicit GameSpec(int num_players) : num_players(num_players) {}

  int num_players = 0;
  std::vector<WorldState> states;
  int initial = 0;
  // A designated player whose fixed, public policy is `chance_policy`.
  std::optional<int> chance_player;

  int AddState(std::string name, std::vector<int> players = {},
               std::vector<std::vector<std::string>> actions = {});
  // Returns -1 when absent.
  int FindState(std::string_view name) const;
  int StateIndex(std::string_view name) const;

  bool IsActive(int state, int player) const;
  int PlayerSlot(int state, int player) const;  // -1 when inactive.
  bool IsTerminal(int state) const;
  int NumJointActions(int state) const;
  int JointIndex(int state, const JointAction& joint) const;
  JointAction JointFromIndex(int state, int index) const;
  // Builds a joint action from the action names of the active players, in
  // ascending player order.
  JointAction JointFromNames(int state,
                             const std::vector<std::string>& names) const;
  std::vector<std::string> JointNames(int state, const JointAction& joint) const;

  const Transition& GetTransition(int state, const JointAction& joint) const;
  void SetTransition(int state, const JointAction& joint,
                     std::vector<Outcome> outcomes, std::vector<double> reward);
};

struct Violation {
  std::string kind;
  std::string message;
  std::string state;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport Validate(const GameSpec& spec,
                          int depth_bound = kDefaultDepthBound);

struct StepResult {
  int next_state = -1;
  std::vector<double> reward;
  FactoredObservation observation;
};

StepResult Step(const GameSpec& spec, int state, const JointAction& action,
                std::mt19937_64& rng);

// Folds the chance actor into the transition function. Input without a chance
// actor is returned unchanged.
GameSpec MergeChance(const GameSpec& spec);

// Sequentializes simultaneous moves: active players act one by one in
// ascending index order, then a chance state emits the original transition.
// States that are already serial are kept as they are.
GameSpec Serialize(const GameSpec& spec);

bool IsSerial(const GameSpec& spec);

}  // namespace fosg

#endif  // FOSG_GAME_SPEC_H_
