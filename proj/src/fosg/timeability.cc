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

#include "fosg/timeability.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "fosg/game_spec.h"
#include "fosg/status.h"

namespace fosg {
namespace {

std::vector<int> ChildOrder(const ClassicalEFG& efg) {
  std::vector<int> order{efg.Root()};
  for (size_t k = 0; k < order.size(); ++k) {
    for (int c : efg.nodes[order[k]].children) order.push_back(c);
  }
  return order;
}

}  // namespace

TimingResult FindExactTiming(const ClassicalEFG& efg) {
  const int count = static_cast<int>(efg.nodes.size());
  // Collapse every infoset into one class; other nodes are singletons.
  std::vector<int> cls(count, -1);
  int classes = 0;
  for (const auto& partition : efg.infosets) {
    for (const auto& set : partition) {
      for (int h : set) cls[h] = classes;
      ++classes;
    }
  }
  for (int h = 0; h < count; ++h) {
    if (cls[h] < 0) cls[h] = classes++;
  }
  std::vector<int> min_node(classes, count);
  for (int h = 0; h < count; ++h) min_node[cls[h]] = std::min(min_node[cls[h]], h);
  // Class edges with one representative tree edge each, in node order.
  std::vector<std::map<int, std::pair<int, int>>> out(classes);
  std::vector<int> indegree(classes, 0);
  for (int h = 0; h < count; ++h) {
    for (int c : efg.nodes[h].children) {
      auto [it, inserted] = out[cls[h]].emplace(cls[c], std::make_pair(h, c));
      if (inserted) ++indegree[cls[c]];
    }
  }
  std::vector<int> queue;
  std::vector<int> label(classes, 0);
  for (int k = 0; k < classes; ++k) {
    if (indegree[k] == 0) queue.push_back(k);
  }
  std::vector<int> remaining = indegree;
  for (size_t q = 0; q < queue.size(); ++q) {
    const int k = queue[q];
    for (const auto& [next, edge] : out[k]) {
      label[next] = std::max(label[next], label[k] + 1);
      if (--remaining[next] == 0) queue.push_back(next);
    }
  }
  TimingResult result;
  if (static_cast<int>(queue.size()) == classes) {
    result.timeable = true;
    result.timing.labels.resize(count);
    for (int h = 0; h < count; ++h) result.timing.labels[h] = label[cls[h]];
    result.timing = NormalizeTiming(result.timing);
    return result;
  }
  // Extract one cycle among the classes left over by the topological sort.
  std::vector<int> candidates;
  for (int k = 0; k < classes; ++k) {
    if (remaining[k] > 0) candidates.push_back(k);
  }
  std::sort(candidates.begin(), candidates.end(),
            [&](int x, int y) { return min_node[x] < min_node[y]; });
  std::vector<int> color(classes, 0);
  std::vector<int> cycle;
  for (int start : candidates) {
    if (color[start] != 0 || !cycle.empty()) continue;
    std::vector<std::pair<int, std::map<int, std::pair<int, int>>::iterator>>
        stack{{start, out[start].begin()}};
    color[start] = 1;
    while (!stack.empty() && cycle.empty()) {
      auto& [k, it] = stack.back();
      if (it == out[k].end()) {
        color[k] = 2;
        stack.pop_back();
        continue;
      }
      const int next = it->first;
      ++it;
      if (remaining[next] == 0) continue;
      if (color[next] == 1) {
        // Unwind the stack from `next` to `k`.
        size_t pos = 0;
        while (stack[pos].first != next) ++pos;
        for (size_t j = pos; j < stack.size(); ++j) cycle.push_back(stack[j].first);
      } else if (color[next] == 0) {
        color[next] = 1;
        stack.emplace_back(next, out[next].begin());
      }
    }
  }
  const int len = static_cast<int>(cycle.size());
  for (int j = 0; j < len; ++j) {
    const auto [u, v] = out[cycle[j]].at(cycle[(j + 1) % len]);
    const int next_u = out[cycle[(j + 1) % len]].at(cycle[(j + 2) % len]).first;
    result.witness.push_back({u, false});
    if (v != next_u) result.witness.push_back({v, true});
  }
  return result;
}

Timing NormalizeTiming(const Timing& timing) {
  std::vector<int> values = timing.labels;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  Timing out;
  for (int t : timing.labels) {
    out.labels.push_back(static_cast<int>(
        std::lower_bound(values.begin(), values.end(), t) - values.begin()));
  }
  return out;
}

void ValidateTiming(const ClassicalEFG& efg, const Timing& timing) {
  if (timing.labels.size() != efg.nodes.size()) {
    Fail(ErrorCode::kInvalidTiming, "timing must label every node");
  }
  for (const EfgNode& n : efg.nodes) {
    if (timing.labels[n.id] < 0) {
      Fail(ErrorCode::kInvalidTiming, "timing labels must be non-negative");
    }
    for (int c : n.children) {
      if (timing.labels[c] < timing.labels[n.id] + 1) {
        Fail(ErrorCode::kInvalidTiming,
             "edge " + std::to_string(n.id) + " -> " + std::to_string(c) +
                 " does not advance the timing");
      }
    }
  }
  for (const auto& partition : efg.infosets) {
    for (const auto& set : partition) {
      for (int h : set) {
        if (timing.labels[h] != timing.labels[set.front()]) {
          Fail(ErrorCode::kInvalidTiming,
               "infoset members " + std::to_string(set.front()) + " and " +
                   std::to_string(h) + " have different labels");
        }
      }
    }
  }
}

bool VerifyWitness(const ClassicalEFG& efg,
                   const std::vector<WitnessStep>& witness) {
  if (witness.empty()) return false;
  const auto index = efg.InfosetIndex();
  const int count = static_cast<int>(efg.nodes.size());
  bool has_edge = false;
  for (size_t j = 0; j < witness.size(); ++j) {
    const int u = witness[j].node;
    const int v = witness[(j + 1) % witness.size()].node;
    if (u < 0 || u >= count || v < 0 || v >= count) return false;
    if (witness[j].infoset_link) {
      if (u == v || index[u].first < 0 || index[u] != index[v]) return false;
    } else {
      if (efg.nodes[v].parent != u) return false;
      has_edge = true;
    }
  }
  return has_edge;
}

bool IsOneTimeable(const ClassicalEFG& efg) {
  std::vector<int> depth(efg.nodes.size(), 0);
  for (int h : ChildOrder(efg)) {
    const int parent = efg.nodes[h].parent;
    depth[h] = parent < 0 ? 0 : depth[parent] + 1;
  }
  for (const auto& partition : efg.infosets) {
    for (const auto& set : partition) {
      for (int h : set) {
        if (depth[h] != depth[set.front()]) return false;
      }
    }
  }
  return true;
}

ClassicalEFG PadToOneTimeable(const ClassicalEFG& efg, const Timing& timing,
                              PadReport* report) {
  ValidateTiming(efg, timing);
  ClassicalEFG out = efg;
  const int count = static_cast<int>(efg.nodes.size());
  int64_t added = 0;
  for (int h = 0; h < count; ++h) {
    int made = 0;
    for (size_t a = 0; a < efg.nodes[h].children.size(); ++a) {
      const int child = efg.nodes[h].children[a];
      const int tau = timing.labels[child] - timing.labels[h] - 1;
      int prev = h;
      std::string label = efg.nodes[h].actions[a];
      for (int k = 0; k < tau; ++k) {
        EfgNode pad;
        pad.id = static_cast<int>(out.nodes.size());
        pad.name = "pad/" + std::to_string(h) + "/" + std::to_string(++made);
        pad.parent = prev;
        pad.action = label;
        pad.actor = kChanceActor;
        pad.actions = {std::string(kNoopAction)};
        pad.chance = {1.0};
        if (prev == h) {
          out.nodes[h].children[a] = pad.id;
        } else {
          out.nodes[prev].children = {pad.id};
        }
        prev = pad.id;
        label = std::string(kNoopAction);
        out.nodes.push_back(std::move(pad));
        ++added;
      }
      if (tau > 0) {
        out.nodes[prev].children = {child};
        out.nodes[child].parent = prev;
        out.nodes[child].action = std::string(kNoopAction);
      }
    }
  }
  if (report != nullptr) {
    report->original = count;
    report->added = added;
    report->padded = static_cast<int64_t>(out.nodes.size());
    report->bound = static_cast<int64_t>(count) * count;
  }
  return out;
}

}  // namespace fosg
