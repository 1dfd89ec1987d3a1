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

#include "fosg/domains.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "fosg/status.h"

namespace fosg {
namespace {

JointAction Solo(int num_players, int player, int action) {
  JointAction joint{std::vector<int>(num_players, kNoop)};
  if (player >= 0) joint.per_player[player] = action;
  return joint;
}

FactoredObservation PublicOnly(int num_players, const std::string& pub) {
  return FactoredObservation{std::vector<std::string>(num_players, "-"), pub};
}

GameSpec BuildKuhn(bool explicit_chance) {
  const int n = explicit_chance ? 3 : 2;
  const std::string cards = "JQK";
  std::vector<std::string> deals;
  for (char a : cards) {
    for (char b : cards) {
      if (a != b) deals.push_back(std::string{a, b});
    }
  }
  GameSpec spec(n);
  const int init = spec.AddState("init");
  spec.initial = init;
  int dealer = -1;
  if (explicit_chance) {
    spec.chance_player = 2;
    dealer = spec.AddState("deal", {2}, {deals});
    spec.states[dealer].chance_policy.assign(deals.size(), 1.0 / deals.size());
  }
  const std::vector<double> zero(n, 0.0);
  std::vector<Outcome> deal_outcomes;
  for (size_t k = 0; k < deals.size(); ++k) {
    const std::string d = deals[k];
    const int root = spec.AddState(d, {0}, {{"check", "bet"}});
    const int c = spec.AddState(d + ":c", {1}, {{"check", "bet"}});
    const int b = spec.AddState(d + ":b", {1}, {{"fold", "call"}});
    const int cb = spec.AddState(d + ":cb", {0}, {{"fold", "call"}});
    const int cc = spec.AddState(d + ":cc");
    const int bf = spec.AddState(d + ":bf");
    const int bc = spec.AddState(d + ":bc");
    const int cbf = spec.AddState(d + ":cbf");
    const int cbc = spec.AddState(d + ":cbc");
    const bool p1_wins = cards.find(d[0]) > cards.find(d[1]);
    auto showdown = [&](double pot) {
      std::vector<double> r(n, 0.0);
      r[0] = p1_wins ? pot : -pot;
      r[1] = -r[0];
      return r;
    };
    auto payoff = [&](double p1) {
      std::vector<double> r(n, 0.0);
      r[0] = p1;
      r[1] = -p1;
      return r;
    };
    const std::string reveal = "showdown:" + d;
    spec.SetTransition(root, Solo(n, 0, 0),
                       {{c, 1.0, PublicOnly(n, "check")}}, zero);
    spec.SetTransition(root, Solo(n, 0, 1), {{b, 1.0, PublicOnly(n, "bet")}},
                       zero);
    spec.SetTransition(c, Solo(n, 1, 0),
                       {{cc, 1.0, PublicOnly(n, "check/" + reveal)}},
                       showdown(1));
    spec.SetTransition(c, Solo(n, 1, 1), {{cb, 1.0, PublicOnly(n, "bet")}},
                       zero);
    spec.SetTransition(b, Solo(n, 1, 0), {{bf, 1.0, PublicOnly(n, "fold")}},
                       payoff(1));
    spec.SetTransition(b, Solo(n, 1, 1),
                       {{bc, 1.0, PublicOnly(n, "call/" + reveal)}},
                       showdown(2));
    spec.SetTransition(cb, Solo(n, 0, 0), {{cbf, 1.0, PublicOnly(n, "fold")}},
                       payoff(-1));
    spec.SetTransition(cb, Solo(n, 0, 1),
                       {{cbc, 1.0, PublicOnly(n, "call/" + reveal)}},
                       showdown(2));
    FactoredObservation dealt{std::vector<std::string>(n, "-"), "deal"};
    dealt.priv[0] = std::string(1, d[0]);
    dealt.priv[1] = std::string(1, d[1]);
    if (explicit_chance) {
      spec.SetTransition(dealer, Solo(n, 2, static_cast<int>(k)),
                         {{root, 1.0, dealt}}, zero);
    } else {
      deal_outcomes.push_back({root, 1.0 / deals.size(), dealt});
    }
  }
  if (explicit_chance) {
    spec.SetTransition(init, Solo(n, -1, 0),
                       {{dealer, 1.0, PublicOnly(n, "start")}}, zero);
  } else {
    spec.SetTransition(init, Solo(n, -1, 0), deal_outcomes, zero);
  }
  return spec;
}

EfgNode MakeNode(ClassicalEFG& efg, int parent, const std::string& action,
                 int actor, std::string name = "") {
  EfgNode node;
  node.id = static_cast<int>(efg.nodes.size());
  node.name = name.empty() ? std::to_string(node.id) : std::move(name);
  node.parent = parent;
  node.action = action;
  node.actor = actor;
  if (parent >= 0) {
    efg.nodes[parent].children.push_back(node.id);
    efg.nodes[parent].actions.push_back(action);
  }
  return node;
}

int Add(ClassicalEFG& efg, int parent, const std::string& action, int actor,
        std::string name = "") {
  efg.nodes.push_back(MakeNode(efg, parent, action, actor, std::move(name)));
  return efg.nodes.back().id;
}

int AddLeaf(ClassicalEFG& efg, int parent, const std::string& action,
            std::vector<double> utility, std::string name = "") {
  const int id = Add(efg, parent, action, kTerminalActor, std::move(name));
  efg.nodes[id].utility = std::move(utility);
  return id;
}

// Random tree shared by both random EFG generators. `group_key` decides
// which same-player nodes may share an infoset.
ClassicalEFG RandomTree(std::mt19937_64& rng, const RandomEfgParams& params,
                        std::vector<int>* depth_out) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> actions_dist(params.min_actions,
                                                  params.max_actions);
  std::uniform_int_distribution<int> player_dist(0, params.players - 1);
  std::uniform_int_distribution<int> utility_dist(-3, 3);
  ClassicalEFG efg;
  efg.num_players = params.players;
  std::vector<int> depth;
  std::vector<int> frontier{Add(efg, -1, "", kTerminalActor, "r")};
  depth.push_back(0);
  for (size_t k = 0; k < efg.nodes.size(); ++k) {
    const int d = depth[k];
    const bool leaf = d >= params.max_depth ||
                      (k > 0 && unit(rng) < params.terminal_prob);
    if (leaf) {
      efg.nodes[k].actor = kTerminalActor;
      const double u = utility_dist(rng);
      efg.nodes[k].utility.assign(params.players, 0.0);
      efg.nodes[k].utility[0] = u;
      if (params.players > 1) efg.nodes[k].utility[1] = -u;
      continue;
    }
    const bool chance = unit(rng) < params.chance_prob;
    const int actions = actions_dist(rng);
    efg.nodes[k].actor = chance ? kChanceActor : player_dist(rng);
    std::vector<double> weights;
    for (int a = 0; a < actions; ++a) {
      Add(efg, static_cast<int>(k), "a" + std::to_string(a), kTerminalActor);
      depth.push_back(d + 1);
      weights.push_back(1.0 + std::uniform_int_distribution<int>(0, 3)(rng));
    }
    if (chance) {
      const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
      for (double w : weights) efg.nodes[k].chance.push_back(w / total);
    }
  }
  if (depth_out != nullptr) *depth_out = depth;
  return efg;
}

// Splits each group into random clusters.
void ClusterGroups(std::mt19937_64& rng,
                   const std::map<std::tuple<int, int, int, int>,
                                  std::vector<int>>& groups,
                   ClassicalEFG& efg) {
  for (const auto& [key, members] : groups) {
    const int player = std::get<0>(key);
    const int clusters =
        std::uniform_int_distribution<int>(1, static_cast<int>(members.size()))(rng);
    std::vector<std::vector<int>> sets(clusters);
    for (int h : members) {
      sets[std::uniform_int_distribution<int>(0, clusters - 1)(rng)].push_back(h);
    }
    for (auto& set : sets) {
      if (!set.empty()) efg.infosets[player].push_back(set);
    }
  }
}

std::string Symbol(std::mt19937_64& rng, const std::string& prefix, int count) {
  return prefix + std::to_string(std::uniform_int_distribution<int>(0, count - 1)(rng));
}

}  // namespace

GameSpec KuhnPoker() { return BuildKuhn(false); }

GameSpec KuhnExplicitChance() { return BuildKuhn(true); }

GameSpec MatchingPennies() {
  GameSpec spec(2);
  const int init = spec.AddState("init");
  const int play = spec.AddState("play", {0, 1}, {{"H", "T"}, {"H", "T"}});
  spec.initial = init;
  spec.SetTransition(init, Solo(2, -1, 0),
                     {{play, 1.0, PublicOnly(2, "start")}}, {0.0, 0.0});
  const std::vector<std::string> sides = {"H", "T"};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const std::string name = sides[a] + sides[b];
      const int end = spec.AddState(name);
      const double r = a == b ? 1.0 : -1.0;
      spec.SetTransition(play, JointAction{{a, b}},
                         {{end, 1.0, PublicOnly(2, "reveal:" + name)}},
                         {r, -r});
    }
  }
  return spec;
}

ClassicalEFG NontimeableFixture(bool merge_i, bool merge_j) {
  ClassicalEFG efg;
  efg.num_players = 2;
  const int root = Add(efg, -1, "", kChanceActor, "root");
  const int g = Add(efg, root, "left", 0, "g");
  const int hp = Add(efg, root, "right", 1, "h'");
  efg.nodes[root].chance = {0.5, 0.5};
  const int h = Add(efg, g, "a", 1, "h");
  AddLeaf(efg, g, "b", {0.0, 0.0});
  const int gp = Add(efg, hp, "x", 0, "g'");
  AddLeaf(efg, hp, "y", {0.0, 0.0});
  AddLeaf(efg, h, "x", {0.0, 0.0});
  AddLeaf(efg, h, "y", {0.0, 0.0});
  AddLeaf(efg, gp, "a", {0.0, 0.0});
  AddLeaf(efg, gp, "b", {0.0, 0.0});
  efg.infosets.assign(2, {});
  if (merge_i) {
    efg.infosets[0] = {{g, gp}};
  } else {
    efg.infosets[0] = {{g}, {gp}};
  }
  if (merge_j) {
    efg.infosets[1] = {{hp, h}};
  } else {
    efg.infosets[1] = {{hp}, {h}};
  }
  efg.Canonicalize();
  return efg;
}

PaddingChain MakePaddingChain(int n) {
  if (n < 2) Fail(ErrorCode::kInvalidArgument, "padding chain needs N >= 2");
  PaddingChain out;
  ClassicalEFG& efg = out.efg;
  efg.num_players = 2;
  std::vector<int> label;
  std::vector<int> stops;
  int h = Add(efg, -1, "", 0, "h0");
  label.push_back(0);
  for (int k = 0; k < n; ++k) {
    int next;
    if (k + 1 < n) {
      next = Add(efg, h, "continue", 0, "h" + std::to_string(k + 1));
    } else {
      next = AddLeaf(efg, h, "continue", {0.0, 0.0}, "h" + std::to_string(n));
    }
    label.push_back(k + 1);
    const int g = Add(efg, h, "stop", 1, "g" + std::to_string(k));
    label.push_back(n);
    stops.push_back(g);
    h = next;
  }
  for (int k = 0; k < n; ++k) {
    const double u = k + 1;
    AddLeaf(efg, stops[k], "L", {u, -u});
    label.push_back(n + 1);
    AddLeaf(efg, stops[k], "R", {-u, u});
    label.push_back(n + 1);
  }
  efg.infosets.assign(2, {});
  for (const EfgNode& node : efg.nodes) {
    if (node.actor == 0) efg.infosets[0].push_back({node.id});
  }
  efg.infosets[1].push_back(stops);
  efg.Canonicalize();
  out.timing.labels = label;
  return out;
}

AugmentationPair MakeAugmentationPair() {
  ClassicalEFG efg;
  efg.num_players = 2;
  const int root = Add(efg, -1, "", 0, "root");
  const int left = Add(efg, root, "a", 1, "ha");
  const int right = Add(efg, root, "b", 1, "hb");
  AddLeaf(efg, left, "x", {1.0, -1.0});
  AddLeaf(efg, left, "y", {-1.0, 1.0});
  AddLeaf(efg, right, "x", {-1.0, 1.0});
  AddLeaf(efg, right, "y", {1.0, -1.0});
  efg.infosets = {{{root}}, {{left, right}}};
  efg.Canonicalize();
  AugmentationPair pair;
  pair.efg = efg;
  pair.first = AugmentClassical(efg);
  // Everything becomes common knowledge once the game ends.
  const std::vector<std::vector<std::string>> labels = {
      {"r", "a", "b", "z3", "z4", "z5", "z6"},
      {"r", "J", "J", "z3", "z4", "z5", "z6"}};
  const std::vector<std::string> pub = {"r", "J", "J", "z3", "z4", "z5", "z6"};
  pair.second = RepFromEfgPartitions(efg, labels, pub);
  return pair;
}

GameSpec RandomFosg(uint64_t seed, const RandomFosgParams& params) {
  if (params.depth < 1 || params.branching < 1 || params.players < 1 ||
      params.obs_alphabet < 1 || params.width < 1 ||
      params.depth > kDefaultDepthBound || (params.zero_sum && params.players != 2)) {
    Fail(ErrorCode::kInvalidArgument, "invalid random game parameters");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = params.players + (params.chance_actor ? 1 : 0);
  const int chance_index = params.chance_actor ? params.players : -1;
  GameSpec spec(n);
  if (params.chance_actor) spec.chance_player = chance_index;

  // Layer kinds: -2 nature (no players), -3 all players at once, otherwise
  // the single acting player. Layer 0 is always nature.
  std::vector<int> kind(params.depth, -2);
  for (int l = 1; l < params.depth; ++l) {
    const double x = unit(rng);
    if (x < 0.3) {
      kind[l] = -2;
    } else if (!params.serial && x < 0.65) {
      kind[l] = -3;
    } else {
      kind[l] = std::uniform_int_distribution<int>(0, params.players - 1)(rng);
    }
  }
  std::vector<std::string> actions;
  for (int a = 0; a < params.branching; ++a) actions.push_back("a" + std::to_string(a));
  std::vector<std::string> chance_actions;
  for (int a = 0; a < params.branching; ++a) chance_actions.push_back("c" + std::to_string(a));

  std::vector<std::vector<int>> layer(params.depth + 1);
  layer[0].push_back(spec.AddState("init"));
  for (int l = 1; l <= params.depth; ++l) {
    for (int j = 0; j < params.width; ++j) {
      const std::string name =
          (l == params.depth ? "t" : "s" + std::to_string(l) + "_") +
          std::to_string(j);
      std::vector<int> players;
      std::vector<std::vector<std::string>> legal;
      if (l < params.depth) {
        if (kind[l] == -2 && params.chance_actor) {
          players = {chance_index};
          legal = {chance_actions};
        } else if (kind[l] == -3) {
          for (int p = 0; p < params.players; ++p) {
            players.push_back(p);
            legal.push_back(actions);
          }
        } else if (kind[l] >= 0) {
          players = {kind[l]};
          legal = {actions};
        }
      }
      layer[l].push_back(spec.AddState(name, players, legal));
    }
  }
  spec.initial = layer[0][0];

  auto observation = [&]() {
    FactoredObservation obs;
    for (int p = 0; p < n; ++p) {
      obs.priv.push_back(Symbol(rng, "o", params.obs_alphabet));
    }
    obs.pub = Symbol(rng, "p", params.obs_alphabet);
    return obs;
  };
  auto reward = [&]() {
    std::vector<double> r(n, 0.0);
    for (int p = 0; p < params.players; ++p) {
      r[p] = std::uniform_int_distribution<int>(-2, 2)(rng);
    }
    if (params.zero_sum) r[1] = -r[0];
    return r;
  };
  auto distribution = [&](const std::vector<int>& next, int max_support) {
    std::vector<int> pool = next;
    std::shuffle(pool.begin(), pool.end(), rng);
    const int support = std::uniform_int_distribution<int>(
        1, std::min<int>(max_support, static_cast<int>(pool.size())))(rng);
    std::vector<Outcome> outcomes;
    double total = 0.0;
    for (int k = 0; k < support; ++k) {
      const double w = 1.0 + std::uniform_int_distribution<int>(0, 3)(rng);
      outcomes.push_back({pool[k], w, observation()});
      total += w;
    }
    for (Outcome& o : outcomes) o.prob /= total;
    return outcomes;
  };
  auto deterministic = [&](const std::vector<int>& next) {
    const int to = next[std::uniform_int_distribution<int>(
        0, static_cast<int>(next.size()) - 1)(rng)];
    return std::vector<Outcome>{{to, 1.0, observation()}};
  };

  for (int l = 0; l < params.depth; ++l) {
    const std::vector<int>& next = layer[l + 1];
    for (int s : layer[l]) {
      WorldState& w = spec.states[s];
      if (w.players.empty()) {
        w.transitions[0] = {true, distribution(next, params.branching), reward()};
        continue;
      }
      if (params.chance_actor && w.players.front() == chance_index) {
        std::vector<double> policy;
        double total = 0.0;
        for (int a = 0; a < params.branching; ++a) {
          policy.push_back(1.0 + std::uniform_int_distribution<int>(0, 3)(rng));
          total += policy.back();
        }
        for (double& p : policy) p /= total;
        w.chance_policy = policy;
        const std::vector<double> r = reward();
        for (int a = 0; a < params.branching; ++a) {
          w.transitions[a] = {true, deterministic(next), r};
        }
        continue;
      }
      for (auto& t : w.transitions) {
        t = {true, w.players.size() > 1 ? distribution(next, 2) : deterministic(next),
             reward()};
      }
    }
  }
  return spec;
}

ClassicalEFG RandomOneTimeableEfg(uint64_t seed, const RandomEfgParams& params) {
  std::mt19937_64 rng(seed);
  std::vector<int> depth;
  ClassicalEFG efg = RandomTree(rng, params, &depth);
  efg.infosets.assign(params.players, {});
  const int count = static_cast<int>(efg.nodes.size());
  // Own action-infoset history ids, filled depth by depth.
  std::vector<std::vector<int>> history(params.players, std::vector<int>(count, 0));
  std::vector<std::map<std::tuple<int, int, int>, int>> intern(params.players);
  std::vector<std::pair<int, int>> infoset_of(count, {-1, -1});
  for (int d = 0; d <= params.max_depth; ++d) {
    std::map<std::tuple<int, int, int, int>, std::vector<int>> groups;
    for (int h = 0; h < count; ++h) {
      if (depth[h] != d) continue;
      const int parent = efg.nodes[h].parent;
      for (int p = 0; p < params.players; ++p) {
        if (parent < 0) continue;
        if (efg.nodes[parent].actor == p) {
          const auto& siblings = efg.nodes[parent].children;
          const int a = static_cast<int>(
              std::find(siblings.begin(), siblings.end(), h) - siblings.begin());
          auto key = std::make_tuple(history[p][parent], infoset_of[parent].second, a);
          auto [it, inserted] =
              intern[p].emplace(key, static_cast<int>(intern[p].size()) + 1);
          history[p][h] = it->second;
        } else {
          history[p][h] = history[p][parent];
        }
      }
      const int actor = efg.nodes[h].actor;
      if (actor >= 0) {
        groups[{actor, static_cast<int>(efg.nodes[h].actions.size()),
                history[actor][h], d}]
            .push_back(h);
      }
    }
    std::vector<size_t> before(params.players);
    for (int p = 0; p < params.players; ++p) before[p] = efg.infosets[p].size();
    ClusterGroups(rng, groups, efg);
    for (int p = 0; p < params.players; ++p) {
      for (size_t s = before[p]; s < efg.infosets[p].size(); ++s) {
        for (int h : efg.infosets[p][s]) infoset_of[h] = {p, static_cast<int>(s)};
      }
    }
  }
  efg.Canonicalize();
  return efg;
}

ClassicalEFG RandomTimeableEfg(uint64_t seed, const RandomEfgParams& params) {
  std::mt19937_64 rng(seed);
  ClassicalEFG efg = RandomTree(rng, params, nullptr);
  efg.infosets.assign(params.players, {});
  const int count = static_cast<int>(efg.nodes.size());
  std::vector<int> label(count, 0);
  std::map<std::tuple<int, int, int, int>, std::vector<int>> groups;
  for (int h = 0; h < count; ++h) {
    const int parent = efg.nodes[h].parent;
    if (parent >= 0) {
      label[h] = label[parent] + 1 + std::uniform_int_distribution<int>(0, 2)(rng);
    }
    const int actor = efg.nodes[h].actor;
    if (actor >= 0) {
      groups[{actor, static_cast<int>(efg.nodes[h].actions.size()), label[h], 0}]
          .push_back(h);
    }
  }
  ClusterGroups(rng, groups, efg);
  efg.Canonicalize();
  return efg;
}

std::vector<std::string> BuiltinGameNames() {
  return {"kuhn", "kuhn_explicit_chance", "matching_pennies"};
}

GameSpec BuiltinGame(const std::string& name) {
  if (name == "kuhn" || name == "kuhn_poker") return KuhnPoker();
  if (name == "kuhn_explicit_chance") return KuhnExplicitChance();
  if (name == "matching_pennies") return MatchingPennies();
  if (name.rfind("random:", 0) == 0) {
    try {
      return RandomFosg(std::stoull(name.substr(7)));
    } catch (const std::logic_error&) {
    }
  }
  Fail(ErrorCode::kInvalidArgument, "unknown built-in game '" + name + "'");
}

bool IsBuiltinEfgName(const std::string& name) {
  return name == "nontimeable" || name == "two_augmentations" ||
         name.rfind("padding_chain:", 0) == 0 ||
         name.rfind("random_efg:", 0) == 0 ||
         name.rfind("random_timeable:", 0) == 0;
}

ClassicalEFG BuiltinEfg(const std::string& name) {
  try {
    if (name == "nontimeable") return NontimeableFixture();
    if (name == "two_augmentations") return MakeAugmentationPair().efg;
    if (name.rfind("padding_chain:", 0) == 0) {
      return MakePaddingChain(std::stoi(name.substr(14))).efg;
    }
    if (name.rfind("random_efg:", 0) == 0) {
      return RandomOneTimeableEfg(std::stoull(name.substr(11)));
    }
    if (name.rfind("random_timeable:", 0) == 0) {
      return RandomTimeableEfg(std::stoull(name.substr(16)));
    }
  } catch (const std::logic_error&) {
  }
  Fail(ErrorCode::kInvalidArgument, "unknown built-in EFG '" + name + "'");
}

}  // namespace fosg
