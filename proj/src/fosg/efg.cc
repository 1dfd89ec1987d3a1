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

#include "fosg/efg.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

#include "fosg/status.h"

namespace fosg {

using nlohmann::json;

int ClassicalEFG::Root() const {
  for (const EfgNode& n : nodes) {
    if (n.parent < 0) return n.id;
  }
  return -1;
}

std::vector<int> ClassicalEFG::Terminals() const {
  std::vector<int> out;
  for (const EfgNode& n : nodes) {
    if (n.actor == kTerminalActor) out.push_back(n.id);
  }
  return out;
}

void ClassicalEFG::Canonicalize() {
  infosets.resize(num_players);
  for (auto& partition : infosets) {
    for (auto& set : partition) std::sort(set.begin(), set.end());
    std::sort(partition.begin(), partition.end());
  }
}

std::vector<std::pair<int, int>> ClassicalEFG::InfosetIndex() const {
  std::vector<std::pair<int, int>> out(nodes.size(), {-1, -1});
  for (int p = 0; p < static_cast<int>(infosets.size()); ++p) {
    for (int s = 0; s < static_cast<int>(infosets[p].size()); ++s) {
      for (int h : infosets[p][s]) out.at(h) = {p, s};
    }
  }
  return out;
}

void ValidateEfg(const ClassicalEFG& efg) {
  auto fail = [](const std::string& msg) { Fail(ErrorCode::kValidation, msg); };
  const int count = static_cast<int>(efg.nodes.size());
  if (count == 0) fail("game has no nodes");
  if (efg.num_players <= 0) fail("number of players must be positive");
  int roots = 0;
  for (int k = 0; k < count; ++k) {
    const EfgNode& n = efg.nodes[k];
    const std::string where = "node " + std::to_string(k);
    if (n.id != k) fail(where + " has a mismatched id");
    if (n.parent < 0) {
      ++roots;
    } else if (n.parent >= count) {
      fail(where + " has an unknown parent");
    }
    if (n.actions.size() != n.children.size()) {
      fail(where + " has misaligned actions");
    }
    for (int c : n.children) {
      if (c < 0 || c >= count || efg.nodes[c].parent != k) {
        fail(where + " has an inconsistent child link");
      }
    }
    if (n.actor == kTerminalActor) {
      if (!n.children.empty()) fail(where + " is terminal with children");
      if (static_cast<int>(n.utility.size()) != efg.num_players) {
        fail(where + " needs one utility per player");
      }
    } else {
      if (n.children.empty()) fail(where + " is non-terminal without actions");
      if (n.actor == kChanceActor) {
        if (n.chance.size() != n.actions.size()) {
          fail(where + " lacks a chance distribution");
        }
        const double total =
            std::accumulate(n.chance.begin(), n.chance.end(), 0.0);
        if (std::abs(total - 1.0) > 1e-9 ||
            std::any_of(n.chance.begin(), n.chance.end(),
                        [](double p) { return p < 0; })) {
          fail(where + " has an invalid chance distribution");
        }
      } else if (n.actor < 0 || n.actor >= efg.num_players) {
        fail(where + " has an invalid actor");
      }
    }
  }
  for (int k = 0; k < count; ++k) {
    const int parent = efg.nodes[k].parent;
    if (parent >= 0) {
      const auto& siblings = efg.nodes[parent].children;
      if (std::find(siblings.begin(), siblings.end(), k) == siblings.end()) {
        fail("node " + std::to_string(k) + " is not listed by its parent");
      }
    }
  }
  if (roots != 1) fail("game must have exactly one root");
  if (static_cast<int>(efg.infosets.size()) != efg.num_players) {
    fail("one partition per player is required");
  }
  std::vector<int> covered(count, 0);
  for (int p = 0; p < efg.num_players; ++p) {
    for (const auto& set : efg.infosets[p]) {
      if (set.empty()) fail("empty infoset");
      for (int h : set) {
        if (h < 0 || h >= count) fail("infoset lists an unknown node");
        if (efg.nodes[h].actor != p) {
          fail("infoset of player " + std::to_string(p + 1) +
               " contains node " + std::to_string(h) +
               " where that player does not act");
        }
        if (efg.nodes[h].actions != efg.nodes[set.front()].actions) {
          fail("infoset members have different legal actions");
        }
        ++covered[h];
      }
    }
  }
  for (int k = 0; k < count; ++k) {
    const int actor = efg.nodes[k].actor;
    if (actor >= 0 && covered[k] != 1) {
      fail("acting node " + std::to_string(k) +
           " must belong to exactly one infoset");
    }
  }
}

ClassicalEFG EfgFromJson(const json& doc) {
  try {
    ClassicalEFG efg;
    const auto& nodes = doc.at("nodes");
    int max_player = 0;
    std::map<int, json> by_id;
    for (const auto& n : nodes) {
      const int id = n.at("id").get<int>();
      if (!by_id.emplace(id, n).second) {
        Fail(ErrorCode::kValidation, "duplicate node id " + std::to_string(id));
      }
      if (n.contains("actor") && n.at("actor").is_number_integer()) {
        max_player = std::max(max_player, n.at("actor").get<int>());
      }
      if (n.contains("utilities")) {
        max_player = std::max(max_player,
                              static_cast<int>(n.at("utilities").size()));
      }
    }
    efg.num_players = doc.value("players", max_player);
    const int count = static_cast<int>(by_id.size());
    efg.nodes.resize(count);
    for (const auto& [id, n] : by_id) {
      if (id < 0 || id >= count) {
        Fail(ErrorCode::kValidation, "node ids must be 0..n-1");
      }
      EfgNode& node = efg.nodes[id];
      node.id = id;
      node.name = n.value("name", std::to_string(id));
      node.parent = n.contains("parent") && !n.at("parent").is_null()
                        ? n.at("parent").get<int>()
                        : -1;
      node.action = n.value("action", std::string());
      const json& actor = n.at("actor");
      if (actor.is_string()) {
        const std::string a = actor.get<std::string>();
        if (a == "chance") {
          node.actor = kChanceActor;
        } else if (a == "terminal") {
          node.actor = kTerminalActor;
        } else {
          Fail(ErrorCode::kParseError, "unknown actor '" + a + "'");
        }
      } else {
        node.actor = actor.get<int>() - 1;
      }
      if (n.contains("utilities")) {
        node.utility = n.at("utilities").get<std::vector<double>>();
      }
    }
    for (const auto& [id, n] : by_id) {
      const int parent = efg.nodes[id].parent;
      if (parent >= count) {
        Fail(ErrorCode::kValidation, "unknown parent of node " +
                                         std::to_string(id));
      }
      if (parent >= 0) efg.nodes[parent].children.push_back(id);
    }
    for (auto& [id, n] : by_id) {
      EfgNode& node = efg.nodes[id];
      if (n.contains("actions")) {
        const auto order = n.at("actions").get<std::vector<std::string>>();
        std::vector<int> children;
        for (const auto& a : order) {
          auto it = std::find_if(node.children.begin(), node.children.end(),
                                 [&](int c) { return efg.nodes[c].action == a; });
          if (it == node.children.end()) {
            Fail(ErrorCode::kValidation, "node " + std::to_string(id) +
                                             " lists action '" + a +
                                             "' without a child");
          }
          children.push_back(*it);
        }
        if (children.size() != node.children.size()) {
          Fail(ErrorCode::kValidation, "node " + std::to_string(id) +
                                           " has unlisted children");
        }
        node.children = children;
      }
      for (int c : node.children) node.actions.push_back(efg.nodes[c].action);
      if (node.actor == kChanceActor) {
        const json& dist = n.at("chance");
        for (const auto& a : node.actions) {
          node.chance.push_back(dist.at(a).get<double>());
        }
      }
    }
    efg.infosets.assign(efg.num_players, {});
    if (doc.contains("infosets")) {
      for (const auto& [player, sets] : doc.at("infosets").items()) {
        const int p = std::stoi(player) - 1;
        if (p < 0 || p >= efg.num_players) {
          Fail(ErrorCode::kValidation, "infosets given for unknown player " +
                                           player);
        }
        for (const auto& set : sets) {
          efg.infosets[p].push_back(set.get<std::vector<int>>());
        }
      }
    }
    // Acting nodes not listed anywhere form singleton infosets.
    auto listed = efg.InfosetIndex();
    for (const EfgNode& node : efg.nodes) {
      if (node.actor >= 0 && node.actor < efg.num_players &&
          listed[node.id].first < 0) {
        efg.infosets[node.actor].push_back({node.id});
      }
    }
    efg.Canonicalize();
    ValidateEfg(efg);
    return efg;
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParseError, std::string("malformed EFG: ") + e.what());
  } catch (const std::invalid_argument&) {
    Fail(ErrorCode::kParseError, "malformed EFG player key");
  }
}

ClassicalEFG EfgFromJsonText(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    Fail(ErrorCode::kParseError, std::string("invalid JSON: ") + e.what());
  }
  return EfgFromJson(doc);
}

json EfgToJson(const ClassicalEFG& efg) {
  json nodes = json::array();
  for (const EfgNode& n : efg.nodes) {
    json j;
    j["id"] = n.id;
    j["name"] = n.name;
    j["parent"] = n.parent < 0 ? json(nullptr) : json(n.parent);
    if (n.parent >= 0) j["action"] = n.action;
    if (n.actor == kChanceActor) {
      j["actor"] = "chance";
      json dist = json::object();
      for (size_t a = 0; a < n.actions.size(); ++a) {
        dist[n.actions[a]] = n.chance[a];
      }
      j["chance"] = dist;
    } else if (n.actor == kTerminalActor) {
      j["actor"] = "terminal";
      j["utilities"] = n.utility;
    } else {
      j["actor"] = n.actor + 1;
    }
    if (!n.actions.empty()) j["actions"] = n.actions;
    nodes.push_back(j);
  }
  json infosets = json::object();
  for (int p = 0; p < static_cast<int>(efg.infosets.size()); ++p) {
    infosets[std::to_string(p + 1)] = efg.infosets[p];
  }
  return {{"players", efg.num_players}, {"nodes", nodes},
          {"infosets", infosets}};
}

std::vector<double> EfgExpectedUtility(const ClassicalEFG& efg,
                                       const EfgPolicyFn& policy) {
  const auto index = efg.InfosetIndex();
  std::vector<double> total(efg.num_players, 0.0);
  std::vector<std::pair<int, double>> stack{{efg.Root(), 1.0}};
  while (!stack.empty()) {
    auto [h, reach] = stack.back();
    stack.pop_back();
    const EfgNode& n = efg.nodes[h];
    if (n.actor == kTerminalActor) {
      for (int p = 0; p < efg.num_players; ++p) total[p] += reach * n.utility[p];
      continue;
    }
    std::vector<double> dist;
    if (n.actor == kChanceActor) {
      dist = n.chance;
    } else {
      dist = policy(n.actor, index[h].second,
                    static_cast<int>(n.actions.size()));
    }
    for (size_t a = 0; a < n.children.size(); ++a) {
      stack.emplace_back(n.children[a], reach * dist.at(a));
    }
  }
  return total;
}

RecallCheck CheckPerfectRecall(const ClassicalEFG& efg) {
  const auto index = efg.InfosetIndex();
  const int count = static_cast<int>(efg.nodes.size());
  RecallCheck result;
  for (int p = 0; p < efg.num_players; ++p) {
    // Interned own action-infoset histories.
    std::map<std::tuple<int, int, int>, int> intern;
    std::vector<int> history(count, -1);
    std::vector<int> order{efg.Root()};
    history[efg.Root()] = 0;
    for (size_t k = 0; k < order.size(); ++k) {
      const EfgNode& n = efg.nodes[order[k]];
      for (size_t a = 0; a < n.children.size(); ++a) {
        const int c = n.children[a];
        if (n.actor == p) {
          auto key = std::make_tuple(history[n.id], index[n.id].second,
                                     static_cast<int>(a));
          auto [it, inserted] =
              intern.emplace(key, static_cast<int>(intern.size()) + 1);
          history[c] = it->second;
        } else {
          history[c] = history[n.id];
        }
        order.push_back(c);
      }
    }
    for (const auto& set : efg.infosets[p]) {
      for (int h : set) {
        if (history[h] != history[set.front()]) {
          result.perfect_recall = false;
          result.player = p;
          result.first = set.front();
          result.second = h;
          return result;
        }
      }
    }
  }
  return result;
}

}  // namespace fosg
