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

#include "fosg/cfr.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "fosg/status.h"

namespace fosg {
namespace {

std::vector<char> VisitedMask(const ExtensiveFormRep& rep,
                              const std::vector<char>* cut) {
  std::vector<char> visited(rep.nodes.size(), 0);
  if (rep.order.empty()) return visited;
  visited[rep.Root()] = 1;
  for (int h : rep.order) {
    if (!visited[h] || (cut != nullptr && (*cut)[h])) continue;
    for (int c : rep.nodes[h].children) visited[c] = 1;
  }
  return visited;
}

const std::vector<double>& PolicyAt(const ExtensiveFormRep& rep,
                                    const TabularPolicy& policy, int h) {
  const HistoryNode& node = rep.nodes[h];
  if (node.actor == kChanceActor) return node.chance;
  const int s = node.infoset[node.actor];
  const auto& dist = policy.at(node.actor).at(s);
  if (dist.size() != node.actions.size()) {
    Fail(ErrorCode::kMissingPolicy,
         "no policy for player " + std::to_string(node.actor + 1) +
             " at infoset " + std::to_string(s));
  }
  return dist;
}

}  // namespace

TabularPolicy UniformPolicy(const ExtensiveFormRep& rep) {
  TabularPolicy policy(rep.num_players);
  for (int p = 0; p < rep.num_players; ++p) {
    policy[p].resize(rep.infosets[p].size());
    for (size_t s = 0; s < rep.infosets[p].size(); ++s) {
      const Infoset& info = rep.infosets[p][s];
      if (info.acting) {
        policy[p][s].assign(info.actions.size(), 1.0 / info.actions.size());
      }
    }
  }
  return policy;
}

void CheckPolicy(const ExtensiveFormRep& rep, const TabularPolicy& policy,
                 const std::vector<int>& players) {
  std::vector<int> list = players;
  if (list.empty()) {
    for (int p = 0; p < rep.num_players; ++p) list.push_back(p);
  }
  if (static_cast<int>(policy.size()) != rep.num_players) {
    Fail(ErrorCode::kMissingPolicy, "profile has the wrong number of players");
  }
  for (int p : list) {
    if (policy[p].size() != rep.infosets[p].size()) {
      Fail(ErrorCode::kMissingPolicy, "profile of player " +
                                          std::to_string(p + 1) +
                                          " does not cover every infoset");
    }
    for (size_t s = 0; s < rep.infosets[p].size(); ++s) {
      const Infoset& info = rep.infosets[p][s];
      if (!info.acting) continue;
      const auto& dist = policy[p][s];
      double total = 0.0;
      for (double x : dist) total += x;
      if (dist.size() != info.actions.size() || std::abs(total - 1.0) > 1e-9 ||
          std::any_of(dist.begin(), dist.end(),
                      [](double x) { return x < 0; })) {
        Fail(ErrorCode::kMissingPolicy,
             "invalid distribution for player " + std::to_string(p + 1) +
                 " at infostate '" + info.key + "'");
      }
    }
  }
}

std::vector<double> RegretMatching(const std::vector<double>& regrets) {
  if (regrets.empty()) {
    Fail(ErrorCode::kInvalidArgument, "regret vector must be non-empty");
  }
  double total = 0.0;
  for (double r : regrets) total += std::max(r, 0.0);
  std::vector<double> out(regrets.size());
  if (total > 0.0) {
    for (size_t a = 0; a < regrets.size(); ++a) {
      out[a] = std::max(regrets[a], 0.0) / total;
    }
  } else {
    std::fill(out.begin(), out.end(), 1.0 / regrets.size());
  }
  return out;
}

double ReachTable::Joint(int node) const {
  double p = chance[node];
  for (const auto& r : player) p *= r[node];
  return p;
}

double ReachTable::Counterfactual(int i, int node) const {
  double p = chance[node];
  for (size_t j = 0; j < player.size(); ++j) {
    if (static_cast<int>(j) != i) p *= player[j][node];
  }
  return p;
}

ReachTable ComputeReach(const ExtensiveFormRep& rep, const TabularPolicy& policy,
                        const std::vector<ReachOverride>& overrides,
                        const std::vector<char>* cut) {
  const int count = static_cast<int>(rep.nodes.size());
  const int m = rep.num_players;
  std::vector<int> override_at(count, -1);
  for (size_t k = 0; k < overrides.size(); ++k) {
    const ReachOverride& o = overrides[k];
    if (o.node < 0 || o.node >= count ||
        static_cast<int>(o.player.size()) != m) {
      Fail(ErrorCode::kInvalidArgument, "malformed reach override");
    }
    override_at[o.node] = static_cast<int>(k);
  }
  ReachTable reach;
  reach.chance.assign(count, 0.0);
  reach.player.assign(m, std::vector<double>(count, 0.0));
  const std::vector<char> visited = VisitedMask(rep, cut);
  const int root = rep.Root();
  reach.chance[root] = 1.0;
  for (int p = 0; p < m; ++p) reach.player[p][root] = 1.0;
  for (int h : rep.order) {
    if (!visited[h]) continue;
    if (override_at[h] >= 0) {
      const ReachOverride& o = overrides[override_at[h]];
      reach.chance[h] = o.chance;
      for (int p = 0; p < m; ++p) reach.player[p][h] = o.player[p];
    }
    const HistoryNode& node = rep.nodes[h];
    if (node.children.empty() || (cut != nullptr && (*cut)[h])) continue;
    const std::vector<double>& dist = PolicyAt(rep, policy, h);
    for (size_t a = 0; a < node.children.size(); ++a) {
      const int c = node.children[a];
      reach.chance[c] = reach.chance[h];
      for (int p = 0; p < m; ++p) reach.player[p][c] = reach.player[p][h];
      if (node.actor == kChanceActor) {
        reach.chance[c] *= dist[a];
      } else {
        reach.player[node.actor][c] *= dist[a];
      }
    }
  }
  reach.infoset_cf.resize(m);
  reach.infoset_own.resize(m);
  for (int p = 0; p < m; ++p) {
    reach.infoset_cf[p].assign(rep.infosets[p].size(), 0.0);
    reach.infoset_own[p].assign(rep.infosets[p].size(), 0.0);
    for (size_t s = 0; s < rep.infosets[p].size(); ++s) {
      bool first = true;
      for (int h : rep.infosets[p][s].nodes) {
        if (!visited[h]) continue;
        reach.infoset_cf[p][s] += reach.Counterfactual(p, h);
        if (first) reach.infoset_own[p][s] = reach.player[p][h];
        first = false;
      }
    }
  }
  return reach;
}

ValueTable ComputeValues(const ExtensiveFormRep& rep,
                         const TabularPolicy& policy, const ReachTable& reach,
                         const LeafValues* leaves) {
  const int count = static_cast<int>(rep.nodes.size());
  const int m = rep.num_players;
  const std::vector<char>* cut = leaves != nullptr ? &leaves->cut : nullptr;
  const std::vector<char> visited = VisitedMask(rep, cut);
  ValueTable values;
  values.node_value.assign(m, std::vector<double>(count, 0.0));
  for (auto it = rep.order.rbegin(); it != rep.order.rend(); ++it) {
    const int h = *it;
    if (!visited[h]) continue;
    const HistoryNode& node = rep.nodes[h];
    if (cut != nullptr && (*cut)[h]) {
      for (int p = 0; p < m; ++p) values.node_value[p][h] = leaves->value[h][p];
      continue;
    }
    if (node.children.empty()) continue;
    const std::vector<double>& dist = PolicyAt(rep, policy, h);
    for (int p = 0; p < m; ++p) {
      double v = 0.0;
      for (size_t a = 0; a < node.children.size(); ++a) {
        const int c = node.children[a];
        v += dist[a] * (rep.nodes[c].incoming_reward[p] + values.node_value[p][c]);
      }
      values.node_value[p][h] = v;
    }
  }
  values.infoset_value.resize(m);
  values.infoset_cf.resize(m);
  values.infoset_q.resize(m);
  values.infoset_qcf.resize(m);
  for (int p = 0; p < m; ++p) {
    const size_t infosets = rep.infosets[p].size();
    values.infoset_value[p].assign(infosets, 0.0);
    values.infoset_cf[p].assign(infosets, 0.0);
    values.infoset_q[p].assign(infosets, {});
    values.infoset_qcf[p].assign(infosets, {});
    for (size_t s = 0; s < infosets; ++s) {
      const Infoset& info = rep.infosets[p][s];
      const size_t actions = info.acting ? info.actions.size() : 0;
      double cf = 0.0;
      double plain = 0.0;
      std::vector<double> qcf(actions, 0.0);
      std::vector<double> qplain(actions, 0.0);
      int members = 0;
      for (int h : info.nodes) {
        if (!visited[h]) continue;
        ++members;
        const double w = reach.Counterfactual(p, h);
        cf += w * values.node_value[p][h];
        plain += values.node_value[p][h];
        if (cut != nullptr && (*cut)[h]) continue;
        for (size_t a = 0; a < actions; ++a) {
          const int c = rep.nodes[h].children[a];
          const double q =
              rep.nodes[c].incoming_reward[p] + values.node_value[p][c];
          qcf[a] += w * q;
          qplain[a] += q;
        }
      }
      if (members == 0) continue;
      const double total = reach.infoset_cf[p][s];
      values.infoset_cf[p][s] = cf;
      values.infoset_qcf[p][s] = qcf;
      std::vector<double> q(actions);
      if (total > 0.0) {
        values.infoset_value[p][s] = cf / total;
        for (size_t a = 0; a < actions; ++a) q[a] = qcf[a] / total;
      } else {
        // Zero counterfactual reach: equal weight on every member.
        values.infoset_value[p][s] = plain / members;
        for (size_t a = 0; a < actions; ++a) q[a] = qplain[a] / members;
      }
      values.infoset_q[p][s] = q;
    }
  }
  return values;
}

std::vector<double> ExpectedUtility(const ExtensiveFormRep& rep,
                                    const TabularPolicy& policy) {
  const ReachTable reach = ComputeReach(rep, policy);
  const ValueTable values = ComputeValues(rep, policy, reach);
  std::vector<double> out(rep.num_players);
  for (int p = 0; p < rep.num_players; ++p) {
    out[p] = rep.nodes[rep.Root()].cumulative_reward[p] +
             values.node_value[p][rep.Root()];
  }
  return out;
}

CfrSolver::CfrSolver(const ExtensiveFormRep& rep, CfrOptions options)
    : rep_(rep), options_(std::move(options)) {
  policy_ = UniformPolicy(rep);
  regret_ = policy_;
  for (auto& player : regret_) {
    for (auto& dist : player) std::fill(dist.begin(), dist.end(), 0.0);
  }
  instant_ = regret_;
  strategy_sum_ = regret_;
  active_infoset_.resize(rep.num_players);
  for (int p = 0; p < rep.num_players; ++p) {
    active_infoset_[p].resize(rep.infosets[p].size());
    for (size_t s = 0; s < rep.infosets[p].size(); ++s) {
      active_infoset_[p][s] = rep.infosets[p][s].acting ? 1 : 0;
    }
  }
}

void CfrSolver::SetLeafHook(std::vector<char> cut, LeafHook hook) {
  cut_ = std::move(cut);
  hook_ = std::move(hook);
  const std::vector<char> visited = VisitedMask(rep_, &cut_);
  for (int p = 0; p < rep_.num_players; ++p) {
    for (size_t s = 0; s < rep_.infosets[p].size(); ++s) {
      const Infoset& info = rep_.infosets[p][s];
      bool inside = info.acting;
      for (int h : info.nodes) inside = inside && visited[h] && !cut_[h];
      active_infoset_[p][s] = inside ? 1 : 0;
    }
  }
}

void CfrSolver::Accumulate(int i, const ReachTable& reach,
                           const ValueTable& values, const ReachTable* weights) {
  for (size_t s = 0; s < rep_.infosets[i].size(); ++s) {
    if (!active_infoset_[i][s]) continue;
    const auto& qcf = values.infoset_qcf[i][s];
    const double vcf = values.infoset_cf[i][s];
    const double own =
        (weights != nullptr ? *weights : reach).infoset_own[i][s];
    for (size_t a = 0; a < qcf.size(); ++a) {
      instant_[i][s][a] = qcf[a] - vcf;
      regret_[i][s][a] += instant_[i][s][a];
      strategy_sum_[i][s][a] += own * policy_[i][s][a];
    }
  }
}

void CfrSolver::Iterate() {
  const std::vector<char>* cut = cut_.empty() ? nullptr : &cut_;
  auto evaluate = [&](ReachTable* reach, ValueTable* values) {
    *reach = ComputeReach(rep_, policy_, options_.overrides, cut);
    if (hook_) {
      LeafValues leaves;
      leaves.cut = cut_;
      leaves.value.assign(rep_.nodes.size(),
                          std::vector<double>(rep_.num_players, 0.0));
      hook_(policy_, *reach, &leaves);
      *values = ComputeValues(rep_, policy_, *reach, &leaves);
    } else {
      *values = ComputeValues(rep_, policy_, *reach, nullptr);
    }
  };
  auto update = [&](int i) {
    for (size_t s = 0; s < rep_.infosets[i].size(); ++s) {
      if (active_infoset_[i][s]) policy_[i][s] = RegretMatching(regret_[i][s]);
    }
  };
  if (options_.record_policies) history_.push_back(policy_);
  ReachTable reach;
  ValueTable values;
  ReachTable weights;
  const bool reweight = !options_.average_overrides.empty();
  auto reweigh = [&] {
    if (reweight) {
      weights = ComputeReach(rep_, policy_, options_.average_overrides, cut);
    }
  };
  auto accumulate = [&](int i) {
    Accumulate(i, reach, values, reweight ? &weights : nullptr);
  };
  if (options_.mode == UpdateMode::kSimultaneous) {
    evaluate(&reach, &values);
    reweigh();
    for (int i = 0; i < rep_.num_players; ++i) accumulate(i);
    for (int i = 0; i < rep_.num_players; ++i) update(i);
  } else {
    for (int i = 0; i < rep_.num_players; ++i) {
      evaluate(&reach, &values);
      reweigh();
      accumulate(i);
      update(i);
    }
  }
  ++iteration_;
}

void CfrSolver::Run(int iterations) {
  for (int t = 0; t < iterations; ++t) Iterate();
}

TabularPolicy CfrSolver::AveragePolicy() const {
  TabularPolicy avg = policy_;
  for (int p = 0; p < rep_.num_players; ++p) {
    for (size_t s = 0; s < avg[p].size(); ++s) {
      auto& dist = avg[p][s];
      if (dist.empty()) continue;
      double total = 0.0;
      for (double x : strategy_sum_[p][s]) total += x;
      for (size_t a = 0; a < dist.size(); ++a) {
        dist[a] = total > 0.0 ? strategy_sum_[p][s][a] / total
                              : 1.0 / dist.size();
      }
    }
  }
  return avg;
}

BestResponseResult BestResponse(const ExtensiveFormRep& rep,
                                const TabularPolicy& policy, int player) {
  if (player < 0 || player >= rep.num_players) {
    Fail(ErrorCode::kInvalidArgument, "unknown responding player");
  }
  std::vector<int> opponents;
  for (int p = 0; p < rep.num_players; ++p) {
    if (p != player) opponents.push_back(p);
  }
  CheckPolicy(rep, policy, opponents);
  TabularPolicy filled = policy;
  const TabularPolicy uniform = UniformPolicy(rep);
  filled[player] = uniform[player];
  const ReachTable reach = ComputeReach(rep, filled);

  const int count = static_cast<int>(rep.nodes.size());
  std::vector<double> memo(count, 0.0);
  std::vector<char> done(count, 0);
  const auto& infosets = rep.infosets[player];
  std::vector<int> choice(infosets.size(), -1);

  std::function<double(int)> value;
  std::function<int(int)> decide = [&](int s) {
    if (choice[s] >= 0) return choice[s];
    const Infoset& info = infosets[s];
    int best = 0;
    double best_value = 0.0;
    for (size_t a = 0; a < info.actions.size(); ++a) {
      double total = 0.0;
      for (int h : info.nodes) total += value(rep.nodes[h].children[a]);
      if (a == 0 || total > best_value) {
        best = static_cast<int>(a);
        best_value = total;
      }
    }
    choice[s] = best;
    return best;
  };
  // Counterfactual-reach-weighted utility of the subtree under the response.
  value = [&](int h) -> double {
    if (done[h]) return memo[h];
    const HistoryNode& node = rep.nodes[h];
    double v = 0.0;
    if (node.actor == kTerminalActor) {
      v = reach.Counterfactual(player, h) * node.cumulative_reward[player];
    } else if (node.actor == player) {
      v = value(node.children[decide(node.infoset[player])]);
    } else {
      for (int c : node.children) v += value(c);
    }
    memo[h] = v;
    done[h] = 1;
    return v;
  };

  BestResponseResult result;
  result.value = value(rep.Root());
  result.policy.assign(rep.num_players, {});
  result.policy[player].resize(infosets.size());
  for (size_t s = 0; s < infosets.size(); ++s) {
    if (!infosets[s].acting) continue;
    auto& dist = result.policy[player][s];
    dist.assign(infosets[s].actions.size(), 0.0);
    dist[choice[s] < 0 ? 0 : choice[s]] = 1.0;
  }
  return result;
}

void RequireZeroSum(const ExtensiveFormRep& rep) {
  if (rep.num_players != 2) {
    Fail(ErrorCode::kNotZeroSum, "exactly two players are required");
  }
  for (int z : rep.terminals) {
    const auto& u = rep.Utility(z);
    if (std::abs(u[0] + u[1]) > 1e-9) {
      Fail(ErrorCode::kNotZeroSum, "utilities at terminal history " +
                                       std::to_string(z) + " do not sum to 0");
    }
  }
}

double Exploitability(const ExtensiveFormRep& rep, const TabularPolicy& policy) {
  RequireZeroSum(rep);
  const double br1 = BestResponse(rep, policy, 0).value;
  const double br2 = BestResponse(rep, policy, 1).value;
  return (br1 + br2) / 2.0;
}

std::vector<TabularPolicy> ClassicalCfrPolicies(const ClassicalEFG& efg,
                                                int iterations) {
  const int count = static_cast<int>(efg.nodes.size());
  const int m = efg.num_players;
  const auto index = efg.InfosetIndex();
  std::vector<int> order{efg.Root()};
  for (size_t k = 0; k < order.size(); ++k) {
    for (int c : efg.nodes[order[k]].children) order.push_back(c);
  }
  TabularPolicy policy(m), regret(m);
  for (int p = 0; p < m; ++p) {
    for (const auto& set : efg.infosets[p]) {
      const size_t actions = efg.nodes[set.front()].actions.size();
      policy[p].push_back(std::vector<double>(actions, 1.0 / actions));
      regret[p].push_back(std::vector<double>(actions, 0.0));
    }
  }
  std::vector<TabularPolicy> history;
  std::vector<double> chance(count);
  std::vector<std::vector<double>> reach(m, std::vector<double>(count));
  std::vector<std::vector<double>> value(m, std::vector<double>(count));
  for (int t = 0; t < iterations; ++t) {
    history.push_back(policy);
    chance[efg.Root()] = 1.0;
    for (int p = 0; p < m; ++p) reach[p][efg.Root()] = 1.0;
    for (int h : order) {
      const EfgNode& n = efg.nodes[h];
      for (size_t a = 0; a < n.children.size(); ++a) {
        const int c = n.children[a];
        chance[c] = chance[h];
        for (int p = 0; p < m; ++p) reach[p][c] = reach[p][h];
        if (n.actor == kChanceActor) {
          chance[c] *= n.chance[a];
        } else {
          reach[n.actor][c] *= policy[n.actor][index[h].second][a];
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const EfgNode& n = efg.nodes[*it];
      for (int p = 0; p < m; ++p) {
        if (n.actor == kTerminalActor) {
          value[p][n.id] = n.utility[p];
          continue;
        }
        double v = 0.0;
        for (size_t a = 0; a < n.children.size(); ++a) {
          const double w = n.actor == kChanceActor
                               ? n.chance[a]
                               : policy[n.actor][index[n.id].second][a];
          v += w * value[p][n.children[a]];
        }
        value[p][n.id] = v;
      }
    }
    for (int p = 0; p < m; ++p) {
      for (size_t s = 0; s < efg.infosets[p].size(); ++s) {
        for (int h : efg.infosets[p][s]) {
          double cf = chance[h];
          for (int j = 0; j < m; ++j) {
            if (j != p) cf *= reach[j][h];
          }
          const EfgNode& n = efg.nodes[h];
          for (size_t a = 0; a < n.children.size(); ++a) {
            regret[p][s][a] += cf * (value[p][n.children[a]] - value[p][h]);
          }
        }
      }
    }
    for (int p = 0; p < m; ++p) {
      for (size_t s = 0; s < policy[p].size(); ++s) {
        policy[p][s] = RegretMatching(regret[p][s]);
      }
    }
  }
  return history;
}

}  // namespace fosg
