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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace oracle {
namespace {

constexpr char kSep = '\x1f';
const std::string kTick = "<tick>";
const std::string kEmpty = "\xE2\x88\x85";

// Reads "(f1,f2,...)" with backslash escapes starting at text[pos] == '('.
std::vector<std::string> Fields(const std::string& text, size_t* pos) {
  std::vector<std::string> fields(1);
  size_t i = *pos + 1;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\\' && i + 1 < text.size()) {
      fields.back() += text[++i];
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c == ')') {
      *pos = i + 1;
      return fields;
    } else {
      fields.back() += c;
    }
  }
  throw std::runtime_error("unterminated element in '" + text + "'");
}

bool Unpack(const std::string& symbol, std::string* priv, std::string* pub) {
  if (symbol.empty() || symbol[0] != '(') return false;
  size_t pos = 0;
  std::vector<std::string> f;
  try {
    f = Fields(symbol, &pos);
  } catch (const std::runtime_error&) {
    return false;
  }
  if (f.size() != 2 || pos != symbol.size()) return false;
  *priv = f[0];
  *pub = f[1];
  return true;
}

std::string Observation(const std::string& priv, const std::string& pub) {
  return "O:" + priv + "|" + pub;
}

int RealPlayer(const fosg::GameSpec& spec, int p) {
  if (spec.chance_player && p > *spec.chance_player) return p - 1;
  return p;
}

struct Walker {
  const fosg::GameSpec& spec;
  const PolicyFn& policy;
  const KeyRules& rules;
  int players;

  std::vector<double> Value(int s, const std::vector<Tokens>& keys, int depth) {
    std::vector<double> total(players, 0.0);
    if (spec.IsTerminal(s)) return total;
    if (depth > 200) throw std::runtime_error("oracle recursion too deep");
    const fosg::WorldState& w = spec.states[s];
    const int joints = spec.NumJointActions(s);
    for (int j = 0; j < joints; ++j) {
      const fosg::JointAction joint = spec.JointFromIndex(s, j);
      double prob = 1.0;
      for (size_t k = 0; k < w.players.size(); ++k) {
        const int p = w.players[k];
        const int a = joint.per_player[p];
        if (spec.chance_player && p == *spec.chance_player) {
          prob *= w.chance_policy.at(a);
        } else {
          const auto dist = policy(RealPlayer(spec, p),
                                   Reduce(keys[RealPlayer(spec, p)], rules),
                                   static_cast<int>(w.actions[k].size()));
          prob *= dist.at(a);
        }
      }
      if (prob == 0.0) continue;
      const fosg::Transition& t = spec.GetTransition(s, joint);
      for (const fosg::Outcome& o : t.outcomes) {
        if (!(o.prob > 0.0) || !o.observation) continue;
        std::vector<Tokens> next = keys;
        for (int p = 0; p < spec.num_players; ++p) {
          if (spec.chance_player && p == *spec.chance_player) continue;
          Tokens& key = next[RealPlayer(spec, p)];
          const int slot = spec.PlayerSlot(s, p);
          if (slot >= 0) {
            const std::string& name = w.actions[slot][joint.per_player[p]];
            if (name != "noop") key.push_back("A:" + name);
          }
          key.push_back(Observation(o.observation->priv[p], o.observation->pub));
        }
        const std::vector<double> below = Value(o.next, next, depth + 1);
        for (int p = 0; p < spec.num_players; ++p) {
          if (spec.chance_player && p == *spec.chance_player) continue;
          const int q = RealPlayer(spec, p);
          total[q] += prob * o.prob * (t.reward[p] + below[q]);
        }
      }
    }
    return total;
  }
};

}  // namespace

std::string Reduce(const Tokens& tokens, const KeyRules& rules) {
  Tokens work = tokens;
  if (rules.expand_sampling && !work.empty() && work[0].rfind("O:", 0) == 0) {
    const size_t bar = work[0].find('|');
    Tokens head = TokensOfKey(work[0].substr(2, bar - 2));
    head.insert(head.end(), work.begin() + 1, work.end());
    work = std::move(head);
  }
  std::string out;
  for (const std::string& t : work) {
    std::string token = t;
    if (token == Observation(kTick, kTick)) continue;
    const size_t bar = token.rfind('|');
    if (token.rfind("O:", 0) == 0 && bar != std::string::npos &&
        token.substr(bar + 1) == kEmpty) {
      std::string priv, pub;
      if (Unpack(token.substr(2, bar - 2), &priv, &pub)) {
        token = Observation(priv, pub);
      }
    }
    out += token;
    out += kSep;
  }
  return out;
}

Tokens TokensOfKey(const std::string& key) {
  Tokens out;
  size_t pos = 0;
  while (pos < key.size()) {
    const char kind = key[pos];
    ++pos;
    if (pos >= key.size() || key[pos] != '(') {
      throw std::runtime_error("bad key '" + key + "'");
    }
    const std::vector<std::string> f = Fields(key, &pos);
    if (kind == 'A') {
      out.push_back("A:" + f.at(0));
    } else if (kind == 'O') {
      out.push_back(Observation(f.at(0), f.at(1)));
    } else {
      out.push_back("P:" + f.at(0));
    }
  }
  return out;
}

PolicyFn HashPolicy(uint64_t seed) {
  return [seed](int player, const std::string& key, int actions) {
    const uint64_t h = std::hash<std::string>{}(key) ^
                       (seed * 0x9E3779B97F4A7C15ULL) ^
                       (static_cast<uint64_t>(player + 1) << 56);
    std::mt19937_64 rng(h);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> dist(actions);
    double total = 0.0;
    for (double& x : dist) total += (x = u(rng));
    for (double& x : dist) x /= total;
    return dist;
  };
}

std::vector<double> DirectExpectedUtility(const fosg::GameSpec& spec,
                                          const PolicyFn& policy,
                                          const KeyRules& rules) {
  const int players = spec.num_players - (spec.chance_player ? 1 : 0);
  Walker walker{spec, policy, rules, players};
  return walker.Value(spec.initial, std::vector<Tokens>(players), 0);
}

fosg::TabularPolicy TabulateOverKeys(const fosg::ExtensiveFormRep& rep,
                                     const PolicyFn& policy,
                                     const KeyRules& rules) {
  fosg::TabularPolicy out(rep.num_players);
  for (int p = 0; p < rep.num_players; ++p) {
    out[p].resize(rep.infosets[p].size());
    for (size_t s = 0; s < rep.infosets[p].size(); ++s) {
      const fosg::Infoset& info = rep.infosets[p][s];
      if (!info.acting) continue;
      out[p][s] = policy(p, Reduce(TokensOfKey(info.key), rules),
                         static_cast<int>(info.actions.size()));
    }
  }
  return out;
}

std::vector<double> EfgUtility(
    const fosg::ClassicalEFG& efg,
    const std::function<std::vector<double>(int, int, int)>& policy) {
  std::map<int, std::pair<int, int>> owner;
  for (int p = 0; p < efg.num_players; ++p) {
    for (size_t s = 0; s < efg.infosets[p].size(); ++s) {
      for (int h : efg.infosets[p][s]) owner[h] = {p, static_cast<int>(s)};
    }
  }
  std::function<std::vector<double>(int)> value = [&](int h) {
    const fosg::EfgNode& n = efg.nodes[h];
    if (n.actor == fosg::kTerminalActor) return n.utility;
    std::vector<double> dist;
    if (n.actor == fosg::kChanceActor) {
      dist = n.chance;
    } else {
      const auto [p, s] = owner.at(h);
      dist = policy(p, s, static_cast<int>(n.children.size()));
    }
    std::vector<double> v(efg.num_players, 0.0);
    for (size_t a = 0; a < n.children.size(); ++a) {
      if (dist[a] == 0.0) continue;
      const std::vector<double> c = value(n.children[a]);
      for (int p = 0; p < efg.num_players; ++p) v[p] += dist[a] * c[p];
    }
    return v;
  };
  for (const fosg::EfgNode& n : efg.nodes) {
    if (n.parent < 0) return value(n.id);
  }
  throw std::runtime_error("EFG has no root");
}

std::vector<double> TreeUtility(const fosg::ExtensiveFormRep& rep,
                                const fosg::TabularPolicy& policy) {
  std::function<std::vector<double>(int)> value = [&](int h) {
    const fosg::HistoryNode& n = rep.nodes[h];
    if (n.children.empty()) return n.cumulative_reward;
    const std::vector<double>& dist =
        n.actor == fosg::kChanceActor ? n.chance
                                      : policy[n.actor][n.infoset[n.actor]];
    std::vector<double> v(rep.num_players, 0.0);
    for (size_t a = 0; a < n.children.size(); ++a) {
      if (dist[a] == 0.0) continue;
      const std::vector<double> c = value(n.children[a]);
      for (int p = 0; p < rep.num_players; ++p) v[p] += dist[a] * c[p];
    }
    return v;
  };
  return value(rep.order.front());
}

double EnumeratedBestResponse(const fosg::ExtensiveFormRep& rep,
                              const fosg::TabularPolicy& policy, int player) {
  std::vector<int> acting;
  for (size_t s = 0; s < rep.infosets[player].size(); ++s) {
    if (rep.infosets[player][s].acting) acting.push_back(static_cast<int>(s));
  }
  std::vector<int> choice(acting.size(), 0);
  double best = -INFINITY;
  while (true) {
    fosg::TabularPolicy trial = policy;
    for (size_t k = 0; k < acting.size(); ++k) {
      auto& dist = trial[player][acting[k]];
      dist.assign(rep.infosets[player][acting[k]].actions.size(), 0.0);
      dist[choice[k]] = 1.0;
    }
    best = std::max(best, TreeUtility(rep, trial)[player]);
    size_t k = 0;
    for (; k < acting.size(); ++k) {
      const int n = static_cast<int>(rep.infosets[player][acting[k]].actions.size());
      if (++choice[k] < n) break;
      choice[k] = 0;
    }
    if (k == acting.size()) break;
  }
  return best;
}

std::vector<int> HistoriesBelowPublicKey(const fosg::ExtensiveFormRep& rep,
                                         const std::string& key) {
  std::vector<int> out;
  for (const fosg::HistoryNode& h : rep.nodes) {
    const std::string& k = rep.public_sets[h.public_set].key;
    if (k.compare(0, key.size(), key) == 0) out.push_back(h.id);
  }
  return out;
}

double ChiSquare(const std::vector<int>& counts, const std::vector<double>& probs) {
  double total = 0.0;
  for (int c : counts) total += c;
  double chi = 0.0;
  for (size_t k = 0; k < counts.size(); ++k) {
    const double e = total * probs[k];
    chi += (counts[k] - e) * (counts[k] - e) / e;
  }
  return chi;
}

}  // namespace oracle
