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

#include "fosg/unroller.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>

#include "fosg/infostate.h"
#include "fosg/status.h"

namespace fosg {
namespace {

constexpr size_t kMaxNodes = 20'000'000;

// Groups nodes into infosets and public sets from per-node labels.
void FinalizePartitions(ExtensiveFormRep& rep,
                        const std::vector<std::vector<std::string>>& keys,
                        const std::vector<std::string>& public_keys) {
  const int count = static_cast<int>(rep.nodes.size());
  rep.public_sets.clear();
  std::unordered_map<std::string, int> public_index;
  for (int h = 0; h < count; ++h) {
    auto [it, inserted] = public_index.emplace(
        public_keys[h], static_cast<int>(rep.public_sets.size()));
    if (inserted) rep.public_sets.push_back({public_keys[h], {}, -1, {}, 0});
    rep.nodes[h].public_set = it->second;
    rep.public_sets[it->second].nodes.push_back(h);
  }
  for (PublicSet& set : rep.public_sets) {
    const int parent = rep.nodes[set.nodes.front()].parent;
    set.parent = parent < 0 ? -1 : rep.nodes[parent].public_set;
  }
  for (int s = 0; s < static_cast<int>(rep.public_sets.size()); ++s) {
    if (rep.public_sets[s].parent >= 0) {
      rep.public_sets[rep.public_sets[s].parent].children.push_back(s);
    }
  }
  std::vector<int> depth(rep.public_sets.size(), -1);
  std::function<int(int)> depth_of = [&](int s) {
    if (depth[s] >= 0) return depth[s];
    depth[s] = 0;  // Guards against cyclic parent links.
    const int parent = rep.public_sets[s].parent;
    depth[s] = parent < 0 || parent == s ? 0 : depth_of(parent) + 1;
    return depth[s];
  };
  for (int s = 0; s < static_cast<int>(rep.public_sets.size()); ++s) {
    rep.public_sets[s].depth = depth_of(s);
  }

  rep.infosets.assign(rep.num_players, {});
  for (int p = 0; p < rep.num_players; ++p) {
    std::unordered_map<std::string, int> index;
    auto& partition = rep.infosets[p];
    for (int h = 0; h < count; ++h) {
      HistoryNode& node = rep.nodes[h];
      node.infoset.resize(rep.num_players, -1);
      auto [it, inserted] =
          index.emplace(keys[p][h], static_cast<int>(partition.size()));
      if (inserted) {
        Infoset info;
        info.key = keys[p][h];
        info.player = p;
        partition.push_back(std::move(info));
      }
      node.infoset[p] = it->second;
      partition[it->second].nodes.push_back(h);
    }
    for (Infoset& info : partition) {
      const HistoryNode& first = rep.nodes[info.nodes.front()];
      int acting = 0;
      for (int h : info.nodes) {
        const HistoryNode& node = rep.nodes[h];
        if (node.actor == p) ++acting;
        if (node.public_set != first.public_set) {
          Fail(ErrorCode::kValidation,
               "infoset partition of player " + std::to_string(p + 1) +
                   " does not refine the public partition");
        }
      }
      if (acting != 0 && acting != static_cast<int>(info.nodes.size())) {
        Fail(ErrorCode::kValidation,
             "player " + std::to_string(p + 1) +
                 " acts at only some histories of one information state");
      }
      info.acting = acting > 0;
      if (info.acting) {
        info.actions = first.actions;
        for (int h : info.nodes) {
          if (rep.nodes[h].actions != info.actions) {
            Fail(ErrorCode::kValidation,
                 "legal actions differ within an information state of player " +
                     std::to_string(p + 1));
          }
        }
      }
      info.public_set = first.public_set;
      info.parent = first.parent < 0 ? -1 : rep.nodes[first.parent].infoset[p];
    }
  }
  rep.terminals.clear();
  for (int h : rep.order) {
    if (rep.nodes[h].actor == kTerminalActor) rep.terminals.push_back(h);
  }
  std::sort(rep.terminals.begin(), rep.terminals.end());
}

std::vector<int> BfsOrder(const ClassicalEFG& efg) {
  std::vector<int> order{efg.Root()};
  for (size_t k = 0; k < order.size(); ++k) {
    for (int c : efg.nodes[order[k]].children) order.push_back(c);
  }
  return order;
}

}  // namespace

int ExtensiveFormRep::FindInfoset(int player, const std::string& key) const {
  const auto& partition = infosets.at(player);
  for (int s = 0; s < static_cast<int>(partition.size()); ++s) {
    if (partition[s].key == key) return s;
  }
  return -1;
}

int ExtensiveFormRep::FindPublicSet(const std::string& key) const {
  for (int s = 0; s < static_cast<int>(public_sets.size()); ++s) {
    if (public_sets[s].key == key) return s;
  }
  return -1;
}

ExtensiveFormRep Unroll(const GameSpec& spec, int depth_bound) {
  if (depth_bound < 1) {
    Fail(ErrorCode::kInvalidArgument, "depth bound must be at least 1");
  }
  const int n = spec.num_players;
  const std::optional<int> chance = spec.chance_player;
  ExtensiveFormRep rep;
  for (int p = 0; p < n; ++p) {
    if (!chance || p != *chance) rep.spec_player.push_back(p);
  }
  rep.num_players = static_cast<int>(rep.spec_player.size());
  rep.sequence_keys = true;
  const int m = rep.num_players;
  auto rep_index = [&](int spec_p) {
    for (int q = 0; q < m; ++q) {
      if (rep.spec_player[q] == spec_p) return q;
    }
    return -1;
  };

  std::vector<std::vector<std::string>> keys(m);
  std::vector<std::string> public_keys;

  HistoryNode root;
  root.world_state = spec.initial;
  root.name = spec.states.at(spec.initial).name;
  root.cumulative_reward.assign(m, 0.0);
  root.incoming_reward.assign(m, 0.0);
  rep.nodes.push_back(root);
  for (int q = 0; q < m; ++q) keys[q].push_back("");
  public_keys.push_back("");

  auto add_child = [&](int h, const std::string& label, const Transition& t,
                       const Outcome& o, int acting, const std::string& action) {
    if (!o.observation) {
      Fail(ErrorCode::kValidation, "undefined observation at '" +
                                       spec.states[rep.nodes[h].world_state].name +
                                       "'");
    }
    if (static_cast<int>(o.observation->priv.size()) != n ||
        static_cast<int>(t.reward.size()) != n) {
      Fail(ErrorCode::kValidation, "observation or reward arity mismatch at '" +
                                       spec.states[rep.nodes[h].world_state].name +
                                       "'");
    }
    if (rep.nodes.size() >= kMaxNodes) {
      Fail(ErrorCode::kInvalidArgument, "history tree is too large to unroll");
    }
    HistoryNode child;
    child.id = static_cast<int>(rep.nodes.size());
    child.parent = h;
    child.incoming_action = label;
    child.world_state = o.next;
    child.name = spec.states[o.next].name;
    child.depth = rep.nodes[h].depth + 1;
    child.cumulative_reward.resize(m);
    child.incoming_reward.resize(m);
    for (int q = 0; q < m; ++q) {
      const double r = t.reward[rep.spec_player[q]];
      child.incoming_reward[q] = r;
      child.cumulative_reward[q] = rep.nodes[h].cumulative_reward[q] + r;
    }
    const FactoredObservation& obs = *o.observation;
    for (int q = 0; q < m; ++q) {
      const int j = rep.spec_player[q];
      std::string key = keys[q][h];
      if (j == acting && action != kNoopAction) key += ActionElement(action);
      key += ObservationElement(obs.priv[j], obs.pub);
      keys[q].push_back(std::move(key));
    }
    public_keys.push_back(public_keys[h] + PublicElement(obs.pub));
    rep.nodes[h].children.push_back(child.id);
    rep.nodes.push_back(std::move(child));
  };

  auto single_outcome = [&](int s, const Transition& t) -> const Outcome& {
    const Outcome* found = nullptr;
    int support = 0;
    for (const Outcome& o : t.outcomes) {
      if (o.prob > 0) {
        found = &o;
        ++support;
      }
    }
    if (support != 1 || !t.defined) {
      Fail(ErrorCode::kNotSerial, "transition at acting state '" +
                                      spec.states[s].name +
                                      "' is not deterministic");
    }
    return *found;
  };

  for (size_t k = 0; k < rep.nodes.size(); ++k) {
    const int h = static_cast<int>(k);
    const int s = rep.nodes[h].world_state;
    const WorldState& w = spec.states[s];
    if (spec.IsTerminal(s)) {
      rep.nodes[h].actor = kTerminalActor;
      continue;
    }
    if (rep.nodes[h].depth >= depth_bound) {
      Fail(ErrorCode::kDepthExceeded,
           "non-terminal history at depth " + std::to_string(depth_bound) +
               " (state '" + w.name + "')");
    }
    if (w.players.empty()) {
      const Transition& t = w.transitions.at(0);
      rep.nodes[h].actor = kChanceActor;
      std::map<int, int> seen;
      for (const Outcome& o : t.outcomes) {
        if (!(o.prob > 0) && !o.observation) continue;
        std::string label = spec.states[o.next].name;
        if (int c = seen[o.next]++; c > 0) label += "#" + std::to_string(c);
        rep.nodes[h].actions.push_back(label);
        rep.nodes[h].chance.push_back(o.prob);
        add_child(h, label, t, o, -1, "");
      }
      if (rep.nodes[h].children.empty()) {
        Fail(ErrorCode::kValidation, "chance state '" + w.name +
                                         "' has no observable outcome");
      }
    } else if (w.players.size() == 1) {
      const int p = w.players[0];
      const auto& legal = w.actions[0];
      const bool is_chance = chance && p == *chance;
      if (is_chance) {
        if (w.chance_policy.size() != legal.size()) {
          Fail(ErrorCode::kMissingChancePolicy,
               "no chance policy at '" + w.name + "'");
        }
        rep.nodes[h].actor = kChanceActor;
        rep.nodes[h].chance = w.chance_policy;
      } else {
        rep.nodes[h].actor = rep_index(p);
      }
      rep.nodes[h].actions = legal;
      for (size_t a = 0; a < legal.size(); ++a) {
        JointAction joint{std::vector<int>(n, kNoop)};
        joint.per_player[p] = static_cast<int>(a);
        const Transition& t = spec.GetTransition(s, joint);
        add_child(h, legal[a], t, single_outcome(s, t), p, legal[a]);
      }
    } else {
      Fail(ErrorCode::kNotSerial,
           "several players act simultaneously at '" + w.name + "'");
    }
  }
  rep.order.resize(rep.nodes.size());
  std::iota(rep.order.begin(), rep.order.end(), 0);
  FinalizePartitions(rep, keys, public_keys);
  return rep;
}

ClassicalEFG ForgetNonActing(const ExtensiveFormRep& rep) {
  ClassicalEFG efg;
  efg.num_players = rep.num_players;
  for (const HistoryNode& h : rep.nodes) {
    EfgNode n;
    n.id = h.id;
    n.name = h.name;
    n.parent = h.parent;
    n.action = h.incoming_action;
    n.actor = h.actor;
    n.actions = h.actions;
    n.children = h.children;
    n.chance = h.chance;
    if (h.actor == kTerminalActor) n.utility = h.cumulative_reward;
    efg.nodes.push_back(std::move(n));
  }
  efg.infosets.assign(rep.num_players, {});
  for (int p = 0; p < rep.num_players; ++p) {
    for (const Infoset& info : rep.infosets[p]) {
      if (info.acting) efg.infosets[p].push_back(info.nodes);
    }
  }
  efg.Canonicalize();
  return efg;
}

GameSpec ForgetFactorization(const GameSpec& input) {
  const GameSpec spec = input.chance_player ? MergeChance(input) : input;
  const int n = spec.num_players;
  GameSpec out(n);
  out.initial = spec.initial;
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (int s = 0; s < static_cast<int>(spec.states.size()); ++s) {
    const WorldState& w = spec.states[s];
    if (s == spec.initial || spec.IsTerminal(s)) {
      out.AddState(w.name, w.players, w.actions);
      continue;
    }
    std::vector<std::vector<std::string>> actions(n);
    for (int p = 0; p < n; ++p) {
      const int slot = spec.PlayerSlot(s, p);
      actions[p] = slot >= 0 ? w.actions[slot]
                             : std::vector<std::string>{std::string(kNoopAction)};
    }
    out.AddState(w.name, all, std::move(actions));
  }
  auto convert = [](const Transition& t) {
    Transition c = t;
    for (Outcome& o : c.outcomes) {
      if (!o.observation) continue;
      FactoredObservation obs;
      for (const auto& priv : o.observation->priv) {
        obs.priv.push_back(PackPair(priv, o.observation->pub));
      }
      obs.pub = std::string(kEmptyPublic);
      o.observation = obs;
    }
    return c;
  };
  for (int s = 0; s < static_cast<int>(spec.states.size()); ++s) {
    const WorldState& w = spec.states[s];
    WorldState& dst = out.states[s];
    if (dst.players.size() == w.players.size()) {
      for (size_t j = 0; j < w.transitions.size(); ++j) {
        dst.transitions[j] = convert(w.transitions[j]);
      }
      continue;
    }
    for (int j = 0; j < out.NumJointActions(s); ++j) {
      JointAction joint = out.JointFromIndex(s, j);
      for (int p = 0; p < n; ++p) {
        if (!spec.IsActive(s, p)) joint.per_player[p] = kNoop;
      }
      dst.transitions[j] = convert(spec.GetTransition(s, joint));
    }
  }
  return out;
}

RecallCheck CheckPerfectRecall(const ExtensiveFormRep& rep) {
  RecallCheck result;
  const int count = static_cast<int>(rep.nodes.size());
  for (int p = 0; p < rep.num_players; ++p) {
    std::map<std::tuple<int, int, int>, int> intern;
    std::vector<int> history(count, 0);
    for (int h : rep.order) {
      const HistoryNode& node = rep.nodes[h];
      for (size_t a = 0; a < node.children.size(); ++a) {
        auto key = std::make_tuple(history[h], node.infoset[p],
                                   node.actor == p ? static_cast<int>(a) : -1);
        auto [it, inserted] =
            intern.emplace(key, static_cast<int>(intern.size()) + 1);
        history[node.children[a]] = it->second;
      }
    }
    for (const Infoset& info : rep.infosets[p]) {
      for (int h : info.nodes) {
        if (history[h] != history[info.nodes.front()]) {
          result.perfect_recall = false;
          result.player = p;
          result.first = info.nodes.front();
          result.second = h;
          return result;
        }
      }
    }
  }
  return result;
}

ThickCheck CheckThickPublicSets(const ExtensiveFormRep& rep) {
  ThickCheck result;
  for (int h : rep.order) {
    const int set = rep.nodes[h].public_set;
    for (int g = rep.nodes[h].parent; g >= 0; g = rep.nodes[g].parent) {
      if (rep.nodes[g].public_set == set) {
        // Report the earliest offending pair in node order.
        if (!result.thick || h < result.descendant) {
          result.thick = true;
          result.ancestor = g;
          result.descendant = h;
        }
        break;
      }
    }
  }
  return result;
}

std::vector<int> PublicSetTiming(const ExtensiveFormRep& rep) {
  std::vector<int> label(rep.nodes.size(), 0);
  for (int h : rep.order) {
    std::set<int> seen;
    for (int g = h; g >= 0; g = rep.nodes[g].parent) {
      seen.insert(rep.nodes[g].public_set);
    }
    label[h] = static_cast<int>(seen.size()) - 1;
  }
  return label;
}

GameSpec LiftToFosg(const ExtensiveFormRep& rep) {
  const RecallCheck recall = CheckPerfectRecall(rep);
  if (!recall.perfect_recall) {
    Fail(ErrorCode::kImperfectRecall,
         "player " + std::to_string(recall.player + 1) +
             " forgets between histories " + std::to_string(recall.first) +
             " and " + std::to_string(recall.second));
  }
  const ThickCheck thick = CheckThickPublicSets(rep);
  if (thick.thick) {
    Fail(ErrorCode::kThickPublicSets,
         "history " + std::to_string(thick.descendant) +
             " shares a public set with its ancestor " +
             std::to_string(thick.ancestor));
  }
  // Public observations rebuild public sets only when every set's members
  // have parents in a single public set.
  for (const PublicSet& set : rep.public_sets) {
    const int p0 = rep.nodes[set.nodes.front()].parent;
    for (int h : set.nodes) {
      const int p = rep.nodes[h].parent;
      if ((p < 0) != (p0 < 0) ||
          (p >= 0 && rep.nodes[p].public_set != rep.nodes[p0].public_set)) {
        Fail(ErrorCode::kInvalidArgument,
             "public partition is not a tree over public sets");
      }
    }
  }
  const int m = rep.num_players;
  GameSpec spec(m);
  auto observation = [&](int h) {
    FactoredObservation obs;
    for (int p = 0; p < m; ++p) {
      obs.priv.push_back("I" + std::to_string(rep.nodes[h].infoset[p]));
    }
    obs.pub = "S" + std::to_string(rep.nodes[h].public_set);
    return obs;
  };
  std::vector<int> state(rep.nodes.size());
  for (const HistoryNode& h : rep.nodes) {
    if (h.actor >= 0) {
      state[h.id] = spec.AddState("h" + std::to_string(h.id), {h.actor},
                                  {h.actions});
    } else {
      state[h.id] = spec.AddState("h" + std::to_string(h.id));
    }
  }
  const HistoryNode& root = rep.nodes[rep.Root()];
  if (root.actor >= 0) {
    const int start = spec.AddState("start");
    spec.initial = start;
    spec.states[start].transitions[0] = Transition{
        true, {Outcome{state[root.id], 1.0, observation(root.id)}},
        std::vector<double>(m, 0.0)};
  } else {
    spec.initial = state[root.id];
  }
  for (const HistoryNode& h : rep.nodes) {
    const int s = state[h.id];
    if (h.actor >= 0) {
      for (size_t a = 0; a < h.children.size(); ++a) {
        const int c = h.children[a];
        JointAction joint{std::vector<int>(m, kNoop)};
        joint.per_player[h.actor] = static_cast<int>(a);
        spec.SetTransition(s, joint, {Outcome{state[c], 1.0, observation(c)}},
                           rep.nodes[c].incoming_reward);
      }
    } else if (h.actor == kChanceActor) {
      std::vector<Outcome> outcomes;
      const auto& reward = rep.nodes[h.children.front()].incoming_reward;
      for (size_t a = 0; a < h.children.size(); ++a) {
        const int c = h.children[a];
        for (int p = 0; p < m; ++p) {
          if (std::abs(rep.nodes[c].incoming_reward[p] - reward[p]) > 1e-12) {
            Fail(ErrorCode::kInvalidArgument,
                 "rewards after chance history " + std::to_string(h.id) +
                     " depend on the chance outcome");
          }
        }
        outcomes.push_back({state[c], h.chance[a], observation(c)});
      }
      spec.states[s].transitions[0] = Transition{true, outcomes, reward};
    }
  }
  return spec;
}

ExtensiveFormRep RepFromEfgPartitions(
    const ClassicalEFG& efg,
    const std::vector<std::vector<std::string>>& player_labels,
    const std::vector<std::string>& public_labels) {
  ExtensiveFormRep rep;
  rep.num_players = efg.num_players;
  rep.spec_player.resize(efg.num_players);
  std::iota(rep.spec_player.begin(), rep.spec_player.end(), 0);
  rep.order = BfsOrder(efg);
  rep.nodes.resize(efg.nodes.size());
  for (const EfgNode& n : efg.nodes) {
    HistoryNode& h = rep.nodes[n.id];
    h.id = n.id;
    h.parent = n.parent;
    h.incoming_action = n.action;
    h.name = n.name;
    h.actor = n.actor;
    h.actions = n.actions;
    h.children = n.children;
    h.chance = n.chance;
    h.cumulative_reward.assign(efg.num_players, 0.0);
    h.incoming_reward.assign(efg.num_players, 0.0);
    if (n.actor == kTerminalActor) {
      h.cumulative_reward = n.utility;
      h.incoming_reward = n.utility;
    }
  }
  for (int h : rep.order) {
    const int parent = rep.nodes[h].parent;
    rep.nodes[h].depth = parent < 0 ? 0 : rep.nodes[parent].depth + 1;
  }
  FinalizePartitions(rep, player_labels, public_labels);
  return rep;
}

ExtensiveFormRep AugmentClassical(const ClassicalEFG& efg) {
  ValidateEfg(efg);
  const std::vector<int> order = BfsOrder(efg);
  std::vector<int> depth(efg.nodes.size(), 0);
  for (int h : order) {
    const int parent = efg.nodes[h].parent;
    depth[h] = parent < 0 ? 0 : depth[parent] + 1;
  }
  for (int p = 0; p < efg.num_players; ++p) {
    for (const auto& set : efg.infosets[p]) {
      for (int h : set) {
        if (depth[h] != depth[set.front()]) {
          Fail(ErrorCode::kNotOneTimeable,
               "histories " + std::to_string(set.front()) + " and " +
                   std::to_string(h) + " share an infoset at different depths");
        }
      }
    }
  }
  const RecallCheck recall = CheckPerfectRecall(efg);
  if (!recall.perfect_recall) {
    Fail(ErrorCode::kImperfectRecall,
         "player " + std::to_string(recall.player + 1) +
             " forgets between histories " + std::to_string(recall.first) +
             " and " + std::to_string(recall.second));
  }
  const auto index = efg.InfosetIndex();
  const int count = static_cast<int>(efg.nodes.size());
  std::vector<std::vector<std::string>> labels(
      efg.num_players, std::vector<std::string>(count));
  for (int p = 0; p < efg.num_players; ++p) {
    // Nearest ancestor labelled by one of the direct rules, and its distance.
    std::vector<int> anchor(count, -1);
    std::vector<int> distance(count, 0);
    for (int h : order) {
      const EfgNode& n = efg.nodes[h];
      const int parent = n.parent;
      if (n.actor == p) {
        labels[p][h] = "I" + std::to_string(index[h].second);
      } else if (parent >= 0 && efg.nodes[parent].actor == p) {
        const auto& siblings = efg.nodes[parent].children;
        const int a = static_cast<int>(
            std::find(siblings.begin(), siblings.end(), h) - siblings.begin());
        labels[p][h] =
            "I" + std::to_string(index[parent].second) + "." + std::to_string(a);
      } else if (parent < 0) {
        labels[p][h] = "root";
      } else {
        const int g = anchor[parent] < 0 ? parent : anchor[parent];
        const int k = anchor[parent] < 0 ? 1 : distance[parent] + 1;
        anchor[h] = g;
        distance[h] = k;
        labels[p][h] = labels[p][g] + "+" + std::to_string(k);
      }
    }
  }
  // Public partition: merge every cell of every player's partition with
  // union-find, visiting cells in node-id order.
  std::vector<int> uf(count);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  for (int p = 0; p < efg.num_players; ++p) {
    std::map<std::string, int> first;
    for (int h = 0; h < count; ++h) {
      auto [it, inserted] = first.emplace(labels[p][h], h);
      if (!inserted) {
        int a = find(it->second);
        int b = find(h);
        if (a != b) uf[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<std::string> public_labels(count);
  for (int h = 0; h < count; ++h) {
    public_labels[h] = "pub" + std::to_string(find(h));
  }
  return RepFromEfgPartitions(efg, labels, public_labels);
}

IsoResult CheckIsomorphic(const ExtensiveFormRep& a, const ExtensiveFormRep& b,
                          bool skip_b_root, double tolerance) {
  auto fail = [](std::string why) { return IsoResult{false, std::move(why)}; };
  if (a.num_players != b.num_players) return fail("player counts differ");
  int b_root = b.Root();
  size_t b_extra = 0;
  if (skip_b_root) {
    const HistoryNode& r = b.nodes[b_root];
    if (r.actor != kChanceActor || r.children.size() != 1) {
      return fail("second tree has no single-child chance root to skip");
    }
    b_root = r.children.front();
    b_extra = 1;
  }
  if (a.nodes.size() + b_extra != b.nodes.size()) {
    return fail("node counts differ");
  }
  const int m = a.num_players;
  std::vector<std::map<int, int>> ab(m), ba(m);
  std::map<int, int> pub_ab, pub_ba;
  auto bind = [](std::map<int, int>& fwd, std::map<int, int>& back, int x,
                 int y) {
    auto f = fwd.emplace(x, y);
    auto r = back.emplace(y, x);
    return f.first->second == y && r.first->second == x;
  };
  std::deque<std::pair<int, int>> queue{{a.Root(), b_root}};
  size_t visited = 0;
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    ++visited;
    const HistoryNode& u = a.nodes[x];
    const HistoryNode& v = b.nodes[y];
    const std::string where =
        "histories " + std::to_string(x) + " / " + std::to_string(y);
    if (u.actor != v.actor) return fail(where + " differ in actor");
    if (u.children.size() != v.children.size()) {
      return fail(where + " differ in branching");
    }
    for (size_t k = 0; k < u.chance.size() && u.actor == kChanceActor; ++k) {
      if (std::abs(u.chance[k] - v.chance.at(k)) > tolerance) {
        return fail(where + " differ in chance probabilities");
      }
    }
    for (int p = 0; p < m; ++p) {
      if (std::abs(u.cumulative_reward[p] - v.cumulative_reward[p]) >
          tolerance) {
        return fail(where + " differ in cumulative reward");
      }
      if (!bind(ab[p], ba[p], u.infoset[p], v.infoset[p])) {
        return fail(where + " break the infoset bijection of player " +
                    std::to_string(p + 1));
      }
    }
    if (!bind(pub_ab, pub_ba, u.public_set, v.public_set)) {
      return fail(where + " break the public-set bijection");
    }
    for (size_t k = 0; k < u.children.size(); ++k) {
      queue.emplace_back(u.children[k], v.children[k]);
    }
  }
  if (visited != a.nodes.size()) return fail("trees are not connected alike");
  return {};
}

}  // namespace fosg
