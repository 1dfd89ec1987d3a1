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

#include "fosg/decomposition.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <set>
#include <thread>

#include "fosg/infostate.h"
#include "fosg/status.h"
#include "json.hpp"

namespace fosg {

const char kSubgameInitState[] = "pbs:init";

namespace {

constexpr char kAuxPrefix[] = "pbs:h";

const std::string& KeyOf(const ExtensiveFormRep& rep, int player, int h) {
  return rep.infosets[player][rep.nodes[h].infoset[player]].key;
}

std::vector<int> Sorted(const std::vector<char>& mask) {
  std::vector<int> out;
  for (size_t h = 0; h < mask.size(); ++h) {
    if (mask[h]) out.push_back(static_cast<int>(h));
  }
  return out;
}

std::vector<int> PublicDescendants(const ExtensiveFormRep& rep, int root) {
  std::vector<int> sets{root};
  for (size_t k = 0; k < sets.size(); ++k) {
    for (int c : rep.public_sets[sets[k]].children) sets.push_back(c);
  }
  return sets;
}

// Counterfactual values seen at each original history of a leaf, plus the
// subgame policy translated to full-game infosets.
struct LeafSolve {
  std::vector<std::pair<int, std::vector<double>>> values;
  std::vector<std::vector<std::pair<int, std::vector<double>>>> policy;
  bool chance_only = false;
};

LeafSolve SolveLeaf(const GameSpec& spec, const ExtensiveFormRep& rep,
                    const ReachTable& reach, int leaf,
                    const CfrdOptions& options) {
  LeafSolve out;
  PublicBeliefState pbs;
  pbs.public_key = rep.public_sets[leaf].key;
  pbs.range = RangeFromReach(rep, reach, leaf);
  const GameSpec sub_spec = BuildSubgame(spec, rep, pbs, &out.chance_only);
  const ExtensiveFormRep sub = Unroll(sub_spec);
  const std::vector<ReachOverride> overrides = SubgameOverrides(sub, pbs);
  const TabularPolicy policy =
      options.solver ? options.solver(sub, overrides, options.subgame_budget)
                     : CfrSubgameSolver(sub, overrides, options.subgame_budget);
  const ReachTable sub_reach = ComputeReach(sub, policy, overrides);
  const ValueTable values = ComputeValues(sub, policy, sub_reach);
  const int m = rep.num_players;
  for (int aux : sub.nodes[sub.Root()].children) {
    const int h = std::stoi(sub.nodes[aux].name.substr(sizeof(kAuxPrefix) - 1));
    const int g = sub.nodes[aux].children.front();
    std::vector<double> v(m);
    for (int q = 0; q < m; ++q) {
      v[q] = values.infoset_value[q][sub.nodes[g].infoset[q]];
    }
    out.values.emplace_back(h, std::move(v));
  }
  out.policy.resize(m);
  for (int q = 0; q < m; ++q) {
    for (size_t s = 0; s < sub.infosets[q].size(); ++s) {
      if (!sub.infosets[q][s].acting) continue;
      const std::string key = SubgameKeyToGame(sub.infosets[q][s].key);
      const int target = key.empty() ? -1 : rep.FindInfoset(q, key);
      if (target < 0) {
        Fail(ErrorCode::kInternal,
             "subgame infostate has no counterpart in the game");
      }
      out.policy[q].emplace_back(target, policy[q][s]);
    }
  }
  return out;
}

}  // namespace

int RequirePublicSet(const ExtensiveFormRep& rep, const std::string& key) {
  const int s = rep.FindPublicSet(key);
  if (s < 0) {
    Fail(ErrorCode::kUnknownPublicState, "unknown public state '" + key + "'");
  }
  return s;
}

PublicSubtree PublicSubtreeOf(const ExtensiveFormRep& rep,
                              const std::string& public_key) {
  PublicSubtree out;
  out.public_sets = PublicDescendants(rep, RequirePublicSet(rep, public_key));
  for (int s : out.public_sets) {
    const auto& nodes = rep.public_sets[s].nodes;
    out.histories.insert(out.histories.end(), nodes.begin(), nodes.end());
  }
  std::sort(out.histories.begin(), out.histories.end());
  out.infosets.resize(rep.num_players);
  for (int p = 0; p < rep.num_players; ++p) {
    std::set<int> seen;
    for (int h : out.histories) seen.insert(rep.nodes[h].infoset[p]);
    out.infosets[p].assign(seen.begin(), seen.end());
  }
  return out;
}

std::vector<int> SubgameHistories(const ExtensiveFormRep& rep, int anchor,
                                  SubgameMethod method) {
  if (anchor < 0 || anchor >= static_cast<int>(rep.nodes.size())) {
    Fail(ErrorCode::kInvalidArgument, "unknown anchor history");
  }
  const int count = static_cast<int>(rep.nodes.size());
  const int anchor_set = rep.nodes[anchor].public_set;
  std::vector<char> in(count, 0);
  switch (method) {
    case SubgameMethod::kClosure: {
      std::vector<int> queue{anchor};
      in[anchor] = 1;
      auto push = [&](int h) {
        if (!in[h]) {
          in[h] = 1;
          queue.push_back(h);
        }
      };
      for (size_t k = 0; k < queue.size(); ++k) {
        const int h = queue[k];
        for (int c : rep.nodes[h].children) push(c);
        for (int g : rep.public_sets[rep.nodes[h].public_set].nodes) push(g);
      }
      break;
    }
    case SubgameMethod::kExtension: {
      for (int g : rep.public_sets[anchor_set].nodes) in[g] = 1;
      for (int h : rep.order) {
        const int parent = rep.nodes[h].parent;
        if (parent >= 0 && in[parent]) in[h] = 1;
      }
      break;
    }
    case SubgameMethod::kInfostate: {
      for (int p = 0; p < rep.num_players; ++p) {
        const auto& infosets = rep.infosets[p];
        std::vector<char> extends(infosets.size(), 0);
        for (int g : rep.public_sets[anchor_set].nodes) {
          extends[rep.nodes[g].infoset[p]] = 1;
        }
        // Parents come first in node order, so one pass over the order
        // settles every infostate.
        for (int h : rep.order) {
          const int s = rep.nodes[h].infoset[p];
          const int parent = infosets[s].parent;
          if (parent >= 0 && extends[parent]) extends[s] = 1;
        }
        for (size_t s = 0; s < infosets.size(); ++s) {
          if (!extends[s]) continue;
          for (int h : infosets[s].nodes) in[h] = 1;
        }
      }
      break;
    }
    case SubgameMethod::kPublic: {
      for (int s : PublicDescendants(rep, anchor_set)) {
        for (int h : rep.public_sets[s].nodes) in[h] = 1;
      }
      break;
    }
  }
  return Sorted(in);
}

bool ClosedUnderInfosets(const ExtensiveFormRep& rep,
                         const std::vector<int>& histories) {
  std::vector<char> in(rep.nodes.size(), 0);
  for (int h : histories) in[h] = 1;
  for (int p = 0; p < rep.num_players; ++p) {
    for (const Infoset& info : rep.infosets[p]) {
      for (int h : info.nodes) {
        if (in[h] != in[info.nodes.front()]) return false;
      }
    }
  }
  return true;
}

Range RangeFromReach(const ExtensiveFormRep& rep, const ReachTable& reach,
                     int public_set) {
  Range range;
  range.public_set = public_set;
  range.public_key = rep.public_sets[public_set].key;
  range.player.resize(rep.num_players);
  range.uniform_fallback.assign(rep.num_players, false);
  for (int h : rep.public_sets[public_set].nodes) {
    for (int p = 0; p < rep.num_players; ++p) {
      range.player[p][KeyOf(rep, p, h)] = reach.player[p][h];
    }
    range.chance[h] = reach.chance[h];
  }
  return range;
}

Range RangeAt(const ExtensiveFormRep& rep, const TabularPolicy& profile,
              const std::string& public_key) {
  const int s = RequirePublicSet(rep, public_key);
  // Only the part of the tree above the public state needs a policy.
  std::vector<char> cut(rep.nodes.size(), 0);
  for (int h : rep.public_sets[s].nodes) cut[h] = 1;
  return RangeFromReach(rep, ComputeReach(rep, profile, {}, &cut), s);
}

Range NormalizeRange(const Range& range) {
  Range out = range;
  out.normalized = true;
  out.uniform_fallback.assign(range.player.size(), false);
  for (size_t p = 0; p < out.player.size(); ++p) {
    double total = 0.0;
    for (const auto& [key, r] : out.player[p]) total += r;
    for (auto& [key, r] : out.player[p]) {
      r = total > 0.0 ? r / total : 1.0 / out.player[p].size();
    }
    out.uniform_fallback[p] = !(total > 0.0);
  }
  double total = 0.0;
  for (const auto& [h, c] : out.chance) total += c;
  if (total > 0.0) {
    for (auto& [h, c] : out.chance) c /= total;
  }
  return out;
}

std::map<std::string, double> ChanceMarginal(const ExtensiveFormRep& rep,
                                             const Range& range, int player) {
  std::map<std::string, double> out;
  for (const auto& [h, c] : range.chance) out[KeyOf(rep, player, h)] += c;
  return out;
}

std::string EncodeRange(const Range& range) {
  nlohmann::json j;
  j["pub"] = range.public_key;
  j["r"] = nlohmann::json::array();
  for (const auto& player : range.player) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [key, r] : player) entries.push_back({key, r});
    j["r"].push_back(entries);
  }
  nlohmann::json chance = nlohmann::json::array();
  for (const auto& [h, c] : range.chance) {
    chance.push_back({"h" + std::to_string(h), c});
  }
  j["c"] = chance;
  return j.dump();
}

GameSpec BuildSubgame(const GameSpec& spec, const ExtensiveFormRep& rep,
                      const PublicBeliefState& pbs, bool* chance_only) {
  const int set = RequirePublicSet(rep, pbs.public_key);
  const Range& range = pbs.range;
  const int n = spec.num_players;
  const int m = rep.num_players;
  auto inconsistent = [](const std::string& why) {
    Fail(ErrorCode::kInconsistentPbs, why);
  };
  if (range.public_key != pbs.public_key) {
    inconsistent("range belongs to a different public state");
  }
  if (static_cast<int>(range.player.size()) != m) {
    inconsistent("range has the wrong number of players");
  }
  if (spec.FindState(kSubgameInitState) >= 0) {
    Fail(ErrorCode::kInvalidArgument,
         std::string("game already has a state named '") + kSubgameInitState +
             "'");
  }
  const std::vector<int>& members = rep.public_sets[set].nodes;
  std::vector<double> joint, chance;
  for (int h : members) {
    auto c = range.chance.find(h);
    if (c == range.chance.end() || c->second < 0 || !std::isfinite(c->second)) {
      inconsistent("range has no valid chance entry for history " +
                   std::to_string(h));
    }
    double w = c->second;
    for (int q = 0; q < m; ++q) {
      auto r = range.player[q].find(KeyOf(rep, q, h));
      if (r == range.player[q].end() || r->second < 0 ||
          !std::isfinite(r->second)) {
        inconsistent("range has no valid entry for infostate '" +
                     KeyOf(rep, q, h) + "' of player " + std::to_string(q + 1));
      }
      w *= r->second;
    }
    chance.push_back(c->second);
    joint.push_back(w);
  }
  double total = 0.0;
  for (double w : joint) total += w;
  const bool fallback = !(total > 0.0);
  if (fallback) {
    joint = chance;
    total = 0.0;
    for (double w : joint) total += w;
    if (!(total > 0.0)) inconsistent("range has zero mass on the public state");
  }
  if (chance_only != nullptr) *chance_only = fallback;

  GameSpec sub = spec;
  const int init = sub.AddState(kSubgameInitState);
  sub.initial = init;
  const std::string pub = EncodeRange(range);
  const std::vector<double> zero(n, 0.0);
  std::vector<Outcome> outcomes;
  for (size_t k = 0; k < members.size(); ++k) {
    const int h = members[k];
    const int aux = sub.AddState(kAuxPrefix + std::to_string(h));
    std::vector<double> paid(n, 0.0);
    FactoredObservation obs{std::vector<std::string>(n, std::string(kTickSymbol)),
                            pub};
    for (int q = 0; q < m; ++q) {
      paid[rep.spec_player[q]] = rep.nodes[h].cumulative_reward[q];
      obs.priv[rep.spec_player[q]] = KeyOf(rep, q, h);
    }
    sub.SetTransition(aux, JointAction{std::vector<int>(n, kNoop)},
                      {{rep.nodes[h].world_state, 1.0, TickObservation(n)}},
                      paid);
    outcomes.push_back({aux, joint[k] / total, obs});
  }
  sub.SetTransition(init, JointAction{std::vector<int>(n, kNoop)},
                    std::move(outcomes), zero);
  return sub;
}

std::vector<ReachOverride> SubgameOverrides(const ExtensiveFormRep& subgame,
                                            const PublicBeliefState& pbs) {
  const Range& range = pbs.range;
  std::vector<ReachOverride> out;
  for (int aux : subgame.nodes[subgame.Root()].children) {
    const std::string& name = subgame.nodes[aux].name;
    if (name.rfind(kAuxPrefix, 0) != 0) {
      Fail(ErrorCode::kInvalidArgument, "not a subgame built from a PBS");
    }
    ReachOverride o;
    o.node = aux;
    o.chance = range.chance.at(std::stoi(name.substr(sizeof(kAuxPrefix) - 1)));
    for (int q = 0; q < subgame.num_players; ++q) {
      const auto elements = DecodeKey(KeyOf(subgame, q, aux));
      o.player.push_back(range.player.at(q).at(elements.at(0).fields.at(0)));
    }
    out.push_back(std::move(o));
  }
  return out;
}

std::string SubgameKeyToGame(const std::string& subgame_key) {
  std::vector<KeyElement> elements = DecodeKey(subgame_key);
  if (elements.size() < 2) return "";
  const std::string prefix = elements.front().fields.at(0);
  elements.erase(elements.begin(), elements.begin() + 2);
  return prefix + EncodeKey(elements);
}

Trunk TrunkByDepth(const ExtensiveFormRep& rep, int depth) {
  if (depth < 1) Fail(ErrorCode::kInvalidArgument, "trunk depth must be >= 1");
  std::vector<std::string> keys;
  for (const PublicSet& s : rep.public_sets) {
    if (s.depth < depth) keys.push_back(s.key);
  }
  return TrunkFromKeys(rep, keys);
}

Trunk TrunkFromKeys(const ExtensiveFormRep& rep,
                    const std::vector<std::string>& keys) {
  std::vector<char> in(rep.public_sets.size(), 0);
  in[rep.nodes[rep.Root()].public_set] = 1;
  for (const std::string& key : keys) {
    for (int s = RequirePublicSet(rep, key); s >= 0 && !in[s];
         s = rep.public_sets[s].parent) {
      in[s] = 1;
    }
  }
  Trunk trunk;
  std::set<int> leaves;
  for (size_t s = 0; s < in.size(); ++s) {
    if (!in[s]) continue;
    trunk.public_sets.push_back(static_cast<int>(s));
    for (int c : rep.public_sets[s].children) {
      if (!in[c]) leaves.insert(c);
    }
  }
  trunk.leaves.assign(leaves.begin(), leaves.end());
  return trunk;
}

TabularPolicy CfrSubgameSolver(const ExtensiveFormRep& subgame,
                               const std::vector<ReachOverride>& overrides,
                               int budget) {
  CfrOptions options;
  options.overrides = overrides;
  // Average each root infostate's subtree on its own so that infostates the
  // range never reaches still get a converged policy.
  options.average_overrides = overrides;
  for (ReachOverride& o : options.average_overrides) {
    std::fill(o.player.begin(), o.player.end(), 1.0);
  }
  CfrSolver solver(subgame, options);
  solver.Run(budget);
  return solver.AveragePolicy();
}

CfrdResult CfrD(const GameSpec& spec, const ExtensiveFormRep& rep,
                const Trunk& trunk, const CfrdOptions& options) {
  RequireZeroSum(rep);
  if (options.iterations < 1 || options.subgame_budget < 1) {
    Fail(ErrorCode::kInvalidArgument, "iteration counts must be >= 1");
  }
  const int m = rep.num_players;
  std::vector<char> in_trunk(rep.public_sets.size(), 0);
  for (int s : trunk.public_sets) {
    if (s < 0 || s >= static_cast<int>(rep.public_sets.size())) {
      Fail(ErrorCode::kInvalidArgument, "trunk names an unknown public state");
    }
    in_trunk[s] = 1;
  }
  for (int s : trunk.public_sets) {
    const int parent = rep.public_sets[s].parent;
    if (parent >= 0 && !in_trunk[parent]) {
      Fail(ErrorCode::kInvalidArgument, "trunk is not closed under ancestors");
    }
  }
  if (!in_trunk[rep.nodes[rep.Root()].public_set]) {
    Fail(ErrorCode::kInvalidArgument, "trunk does not contain the root");
  }
  const Trunk expected = TrunkFromKeys(rep, [&] {
    std::vector<std::string> keys;
    for (int s : trunk.public_sets) keys.push_back(rep.public_sets[s].key);
    return keys;
  }());
  if (expected.leaves != trunk.leaves) {
    Fail(ErrorCode::kInvalidArgument, "trunk leaves do not match the trunk");
  }

  CfrOptions cfr_options;
  cfr_options.mode = options.mode;
  cfr_options.record_policies = true;
  CfrSolver solver(rep, cfr_options);

  CfrdResult result;
  TabularPolicy full = UniformPolicy(rep);
  if (!trunk.leaves.empty()) {
    std::vector<char> cut(rep.nodes.size(), 0);
    for (int s : trunk.leaves) {
      for (int h : rep.public_sets[s].nodes) cut[h] = 1;
    }
    solver.SetLeafHook(cut, [&](const TabularPolicy& policy,
                                const ReachTable& reach, LeafValues* leaves) {
      const size_t count = trunk.leaves.size();
      std::vector<LeafSolve> solved(count);
      if (options.parallel_leaves && count > 1) {
        std::vector<std::exception_ptr> errors(count);
        std::vector<std::thread> workers;
        for (size_t k = 0; k < count; ++k) {
          workers.emplace_back([&, k] {
            try {
              solved[k] = SolveLeaf(spec, rep, reach, trunk.leaves[k], options);
            } catch (...) {
              errors[k] = std::current_exception();
            }
          });
        }
        for (auto& w : workers) w.join();
        for (auto& e : errors) {
          if (e) std::rethrow_exception(e);
        }
      } else {
        for (size_t k = 0; k < count; ++k) {
          solved[k] = SolveLeaf(spec, rep, reach, trunk.leaves[k], options);
        }
      }
      for (int p = 0; p < m; ++p) {
        for (size_t s = 0; s < policy[p].size(); ++s) {
          if (solver.IsActive(p, static_cast<int>(s))) full[p][s] = policy[p][s];
        }
      }
      for (const LeafSolve& leaf : solved) {
        result.uniform_fallback = result.uniform_fallback || leaf.chance_only;
        for (const auto& [h, v] : leaf.values) leaves->value[h] = v;
        for (int q = 0; q < m; ++q) {
          for (const auto& [s, dist] : leaf.policy[q]) full[q][s] = dist;
        }
      }
    });
  }

  TabularPolicy sum = UniformPolicy(rep);
  for (auto& player : sum) {
    for (auto& dist : player) std::fill(dist.begin(), dist.end(), 0.0);
  }
  auto completed = [&] {
    TabularPolicy avg = sum;
    for (auto& player : avg) {
      for (auto& dist : player) {
        double total = 0.0;
        for (double x : dist) total += x;
        for (double& x : dist) x = total > 0.0 ? x / total : 1.0 / dist.size();
      }
    }
    return avg;
  };
  const auto start = std::chrono::steady_clock::now();
  for (int t = 1; t <= options.iterations; ++t) {
    if (trunk.leaves.empty()) full = solver.current_policy();
    solver.Iterate();
    const ReachTable reach = ComputeReach(rep, full);
    for (int p = 0; p < m; ++p) {
      for (size_t s = 0; s < sum[p].size(); ++s) {
        for (size_t a = 0; a < sum[p][s].size(); ++a) {
          sum[p][s][a] += reach.infoset_own[p][s] * full[p][s][a];
        }
      }
    }
    const bool trace = options.trace_stride > 0 &&
                       (t % options.trace_stride == 0 || t == options.iterations);
    if (trace) {
      const TabularPolicy profile = completed();
      const std::chrono::duration<double, std::milli> elapsed =
          std::chrono::steady_clock::now() - start;
      result.trace.push_back({t, Exploitability(rep, profile),
                              ExpectedUtility(rep, profile)[0],
                              elapsed.count()});
    }
  }
  result.completed = completed();
  result.trunk_history = solver.policy_history();
  result.trunk_average.assign(m, {});
  for (int p = 0; p < m; ++p) {
    result.trunk_average[p].resize(rep.infosets[p].size());
    for (size_t s = 0; s < rep.infosets[p].size(); ++s) {
      if (!solver.IsActive(p, static_cast<int>(s))) continue;
      std::vector<double> mean(rep.infosets[p][s].actions.size(), 0.0);
      for (const TabularPolicy& pi : result.trunk_history) {
        for (size_t a = 0; a < mean.size(); ++a) mean[a] += pi[p][s][a];
      }
      for (double& x : mean) x /= result.trunk_history.size();
      result.trunk_average[p][s] = std::move(mean);
    }
  }
  return result;
}

}  // namespace fosg
