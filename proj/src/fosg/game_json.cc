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

#include "fosg/game_json.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <utility>

#include "fosg/status.h"

namespace fosg {
namespace {

using nlohmann::json;

constexpr double kLoadTolerance = 1e-9;

// Sums within a few ulps of 1 are left alone so that exact distributions
// such as six times 1/6 survive a save and load unchanged.
bool NeedsRescale(double total) {
  return std::abs(total - 1.0) > 8 * std::numeric_limits<double>::epsilon();
}

std::string JointKey(const std::vector<std::string>& names) {
  if (names.empty()) return std::string(kNoopAction);
  std::string out;
  for (size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ",";
    out += names[i];
  }
  return out;
}

void CheckName(const std::string& name, const char* what) {
  if (name.empty() || name.find_first_of("/,") != std::string::npos) {
    Fail(ErrorCode::kValidation, std::string(what) + " '" + name +
                                     "' must be non-empty without '/' or ','");
  }
}

template <typename T>
T Get(const json& j, const char* field) {
  if (!j.contains(field)) {
    Fail(ErrorCode::kParseError, std::string("missing field '") + field + "'");
  }
  try {
    return j.at(field).get<T>();
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParseError,
         std::string("bad field '") + field + "': " + e.what());
  }
}

std::vector<std::string> SplitSlash(const std::string& key) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t pos = key.find('/', start);
    parts.push_back(key.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

GameSpec GameSpecFromJson(const json& doc) {
  if (!doc.is_object()) Fail(ErrorCode::kParseError, "game must be an object");
  const int n = Get<int>(doc, "players");
  if (n <= 0) Fail(ErrorCode::kValidation, "players must be positive");
  GameSpec spec(n);
  const auto names = Get<std::vector<std::string>>(doc, "states");
  std::set<std::string> seen;
  for (const auto& name : names) {
    CheckName(name, "state");
    if (!seen.insert(name).second) {
      Fail(ErrorCode::kValidation, "duplicate state '" + name + "'");
    }
  }
  auto state_index = [&spec](const std::string& name) {
    int s = spec.FindState(name);
    if (s < 0) Fail(ErrorCode::kValidation, "undeclared state '" + name + "'");
    return s;
  };

  std::map<std::string, std::vector<int>> player_fn;
  if (doc.contains("player_fn")) {
    for (const auto& [state, players] : doc.at("player_fn").items()) {
      std::vector<int> list;
      try {
        list = players.get<std::vector<int>>();
      } catch (const json::exception&) {
        Fail(ErrorCode::kParseError, "player_fn of '" + state +
                                         "' must be a list of integers");
      }
      std::set<int> sorted;
      for (int p : list) {
        if (p < 1 || p > n) {
          Fail(ErrorCode::kValidation,
               "player " + std::to_string(p) + " out of range at '" + state +
                   "'");
        }
        sorted.insert(p - 1);
      }
      player_fn[state] = std::vector<int>(sorted.begin(), sorted.end());
    }
  }
  std::map<std::string, std::vector<std::string>> actions;
  if (doc.contains("actions")) {
    for (const auto& [key, list] : doc.at("actions").items()) {
      try {
        actions[key] = list.get<std::vector<std::string>>();
      } catch (const json::exception&) {
        Fail(ErrorCode::kParseError, "actions of '" + key +
                                         "' must be a list of strings");
      }
      for (const auto& a : actions[key]) CheckName(a, "action");
    }
  }
  for (const auto& name : names) {
    std::vector<int> players;
    if (auto it = player_fn.find(name); it != player_fn.end()) {
      players = it->second;
    }
    std::vector<std::vector<std::string>> legal;
    for (int p : players) {
      auto it = actions.find(name + "/" + std::to_string(p + 1));
      legal.push_back(it == actions.end() ? std::vector<std::string>{}
                                          : it->second);
    }
    spec.AddState(name, players, legal);
  }
  for (const auto& [state, players] : player_fn) state_index(state);
  for (const auto& [key, list] : actions) {
    auto parts = SplitSlash(key);
    if (parts.size() != 2) {
      Fail(ErrorCode::kParseError, "actions key '" + key +
                                       "' must be 'state/player'");
    }
    const int s = state_index(parts[0]);
    int p = 0;
    try {
      p = std::stoi(parts[1]) - 1;
    } catch (const std::exception&) {
      Fail(ErrorCode::kParseError, "bad player in actions key '" + key + "'");
    }
    if (!spec.IsActive(s, p)) {
      Fail(ErrorCode::kValidation, "actions given for inactive player in '" +
                                       key + "'");
    }
  }
  spec.initial = state_index(Get<std::string>(doc, "initial"));

  if (doc.contains("chance_player") && !doc.at("chance_player").is_null()) {
    const int c = Get<int>(doc, "chance_player");
    if (c < 1 || c > n) {
      Fail(ErrorCode::kValidation, "chance_player out of range");
    }
    spec.chance_player = c - 1;
  }
  if (doc.contains("chance_policy")) {
    if (!spec.chance_player) {
      Fail(ErrorCode::kValidation, "chance_policy given without chance_player");
    }
    for (const auto& [state, dist] : doc.at("chance_policy").items()) {
      const int s = state_index(state);
      const int slot = spec.PlayerSlot(s, *spec.chance_player);
      if (slot < 0) {
        Fail(ErrorCode::kValidation,
             "chance_policy given where the chance actor is inactive: '" +
                 state + "'");
      }
      const auto& legal = spec.states[s].actions[slot];
      std::vector<double> policy(legal.size(), 0.0);
      double total = 0.0;
      for (const auto& [action, prob] : dist.items()) {
        auto it = std::find(legal.begin(), legal.end(), action);
        if (it == legal.end()) {
          Fail(ErrorCode::kValidation, "chance_policy action '" + action +
                                           "' is not legal at '" + state +
                                           "'");
        }
        policy[it - legal.begin()] = prob.get<double>();
        total += policy[it - legal.begin()];
      }
      if (std::abs(total - 1.0) > kLoadTolerance) {
        Fail(ErrorCode::kValidation,
             "chance_policy at '" + state + "' does not sum to 1");
      }
      if (NeedsRescale(total)) {
        for (double& p : policy) p /= total;
      }
      spec.states[s].chance_policy = policy;
    }
  }

  std::map<std::pair<int, int>, std::vector<Outcome>> grouped;
  if (doc.contains("transitions")) {
    for (const auto& entry : doc.at("transitions")) {
      const int s = state_index(Get<std::string>(entry, "from"));
      const int to = state_index(Get<std::string>(entry, "to"));
      const auto joint_names = Get<std::vector<std::string>>(entry, "joint");
      const double prob = Get<double>(entry, "prob");
      if (!(prob >= 0.0) || !std::isfinite(prob)) {
        Fail(ErrorCode::kValidation, "negative or non-finite probability at '" +
                                         spec.states[s].name + "'");
      }
      JointAction joint;
      try {
        joint = spec.JointFromNames(s, joint_names);
      } catch (const FosgError& e) {
        Fail(ErrorCode::kValidation, e.what());
      }
      grouped[{s, spec.JointIndex(s, joint)}].push_back({to, prob, {}});
    }
  }
  for (auto& [where, outcomes] : grouped) {
    double total = 0.0;
    for (const Outcome& o : outcomes) total += o.prob;
    if (std::abs(total - 1.0) > kLoadTolerance) {
      Fail(ErrorCode::kValidation,
           "transition distribution at '" + spec.states[where.first].name +
               "' sums to " + std::to_string(total));
    }
    if (NeedsRescale(total)) {
      for (Outcome& o : outcomes) o.prob /= total;
    }
    Transition& t = spec.states[where.first].transitions[where.second];
    t.defined = true;
    t.outcomes = std::move(outcomes);
    t.reward.assign(n, 0.0);
  }

  auto locate = [&spec, &state_index](const std::string& state,
                                      const std::string& joint_key) {
    const int s = state_index(state);
    std::vector<std::string> joint_names;
    if (joint_key != kNoopAction || !spec.states[s].players.empty()) {
      size_t start = 0;
      while (true) {
        size_t pos = joint_key.find(',', start);
        joint_names.push_back(joint_key.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
      }
    }
    try {
      return std::make_pair(
          s, spec.JointIndex(s, spec.JointFromNames(s, joint_names)));
    } catch (const FosgError& e) {
      Fail(ErrorCode::kValidation, e.what());
    }
  };

  if (doc.contains("rewards")) {
    for (const auto& [key, value] : doc.at("rewards").items()) {
      auto parts = SplitSlash(key);
      if (parts.size() != 2) {
        Fail(ErrorCode::kParseError, "rewards key '" + key +
                                         "' must be 'state/joint'");
      }
      auto [s, j] = locate(parts[0], parts[1]);
      Transition& t = spec.states[s].transitions[j];
      if (!t.defined) {
        Fail(ErrorCode::kValidation, "reward given for undefined transition '" +
                                         key + "'");
      }
      try {
        t.reward = value.get<std::vector<double>>();
      } catch (const json::exception&) {
        Fail(ErrorCode::kParseError, "reward '" + key +
                                         "' must be a list of numbers");
      }
    }
  }
  if (doc.contains("observations")) {
    for (const auto& [key, value] : doc.at("observations").items()) {
      auto parts = SplitSlash(key);
      if (parts.size() != 3) {
        Fail(ErrorCode::kParseError, "observations key '" + key +
                                         "' must be 'state/joint/to'");
      }
      auto [s, j] = locate(parts[0], parts[1]);
      const int to = state_index(parts[2]);
      Transition& t = spec.states[s].transitions[j];
      bool matched = false;
      for (Outcome& o : t.outcomes) {
        if (o.next != to) continue;
        FactoredObservation obs;
        obs.priv = Get<std::vector<std::string>>(value, "priv");
        obs.pub = Get<std::string>(value, "pub");
        o.observation = obs;
        matched = true;
      }
      if (!matched) {
        Fail(ErrorCode::kValidation,
             "observation given outside the transition support: '" + key +
                 "'");
      }
    }
  }
  return spec;
}

GameSpec GameSpecFromJsonText(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    Fail(ErrorCode::kParseError, std::string("invalid JSON: ") + e.what());
  }
  return GameSpecFromJson(doc);
}

json GameSpecToJson(const GameSpec& spec) {
  json doc;
  doc["players"] = spec.num_players;
  json states = json::array();
  json player_fn = json::object();
  json actions = json::object();
  json transitions = json::array();
  json rewards = json::object();
  json observations = json::object();
  json chance_policy = json::object();
  for (int s = 0; s < static_cast<int>(spec.states.size()); ++s) {
    const WorldState& w = spec.states[s];
    states.push_back(w.name);
    if (!w.players.empty()) {
      json list = json::array();
      for (size_t k = 0; k < w.players.size(); ++k) {
        list.push_back(w.players[k] + 1);
        actions[w.name + "/" + std::to_string(w.players[k] + 1)] =
            w.actions[k];
      }
      player_fn[w.name] = list;
    }
    if (spec.chance_player && !w.chance_policy.empty()) {
      const int slot = spec.PlayerSlot(s, *spec.chance_player);
      json dist = json::object();
      for (size_t a = 0; a < w.chance_policy.size(); ++a) {
        dist[w.actions[slot][a]] = w.chance_policy[a];
      }
      chance_policy[w.name] = dist;
    }
    for (int j = 0; j < static_cast<int>(w.transitions.size()); ++j) {
      const Transition& t = w.transitions[j];
      if (!t.defined) continue;
      const auto names = spec.JointNames(s, spec.JointFromIndex(s, j));
      const std::string joint_key = JointKey(names);
      for (const Outcome& o : t.outcomes) {
        transitions.push_back({{"from", w.name},
                               {"joint", names},
                               {"to", spec.states[o.next].name},
                               {"prob", o.prob}});
        if (o.observation) {
          observations[w.name + "/" + joint_key + "/" +
                       spec.states[o.next].name] = {
              {"priv", o.observation->priv}, {"pub", o.observation->pub}};
        }
      }
      rewards[w.name + "/" + joint_key] = t.reward;
    }
  }
  doc["states"] = states;
  doc["initial"] = spec.states.at(spec.initial).name;
  doc["player_fn"] = player_fn;
  doc["actions"] = actions;
  doc["transitions"] = transitions;
  doc["rewards"] = rewards;
  doc["observations"] = observations;
  if (spec.chance_player) {
    doc["chance_player"] = *spec.chance_player + 1;
    doc["chance_policy"] = chance_policy;
  }
  return doc;
}

}  // namespace fosg
