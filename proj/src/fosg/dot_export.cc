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

#include "fosg/dot_export.h"

#include <cstdio>
#include <sstream>

#include "fosg/status.h"

namespace fosg {
namespace {

std::string Quote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string Prob(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", p);
  return buf;
}

std::string Utilities(const std::vector<double>& u) {
  std::string out;
  for (size_t p = 0; p < u.size(); ++p) {
    out += (p ? ", " : "") + Prob(u[p]);
  }
  return "(" + out + ")";
}

const char* Shape(int actor) {
  if (actor == kChanceActor) return "diamond";
  if (actor == kTerminalActor) return "box";
  return "circle";
}

std::string ActorLabel(int actor) {
  if (actor == kChanceActor) return "c";
  if (actor == kTerminalActor) return "";
  return "P" + std::to_string(actor + 1);
}

}  // namespace

std::string HistoryDot(const ExtensiveFormRep& rep) {
  std::ostringstream os;
  os << "digraph history {\n  node [fontsize=10];\n";
  for (int h : rep.order) {
    const HistoryNode& node = rep.nodes[h];
    std::string label = std::to_string(h) + " " + node.name;
    if (node.actor == kTerminalActor) {
      label += "\\n" + Utilities(node.cumulative_reward);
    } else {
      label += "\\n" + ActorLabel(node.actor);
    }
    os << "  h" << h << " [shape=" << Shape(node.actor)
       << ", label=" << Quote(label) << "];\n";
  }
  for (int h : rep.order) {
    const HistoryNode& node = rep.nodes[h];
    for (size_t a = 0; a < node.children.size(); ++a) {
      std::string label = node.actions[a];
      if (node.actor == kChanceActor) label += " " + Prob(node.chance[a]);
      os << "  h" << h << " -> h" << node.children[a]
         << " [label=" << Quote(label) << "];\n";
    }
  }
  for (int p = 0; p < rep.num_players; ++p) {
    for (size_t s = 0; s < rep.infosets[p].size(); ++s) {
      const Infoset& info = rep.infosets[p][s];
      if (!info.acting || info.nodes.size() < 2) continue;
      for (size_t k = 1; k < info.nodes.size(); ++k) {
        os << "  h" << info.nodes[k - 1] << " -> h" << info.nodes[k]
           << " [style=dashed, dir=none, constraint=false];\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

std::string InfosetDot(const ExtensiveFormRep& rep, int player) {
  if (player < 0 || player >= rep.num_players) {
    Fail(ErrorCode::kInvalidArgument,
         "unknown player " + std::to_string(player + 1));
  }
  std::ostringstream os;
  os << "digraph infostates_p" << player + 1 << " {\n  node [fontsize=10];\n";
  const auto& infosets = rep.infosets[player];
  std::vector<int> children(infosets.size(), 0);
  for (const Infoset& info : infosets) {
    if (info.parent >= 0) ++children[info.parent];
  }
  for (size_t s = 0; s < infosets.size(); ++s) {
    const Infoset& info = infosets[s];
    const std::string shape = children[s] == 0 ? "box" : (info.acting ? "circle" : "ellipse");
    os << "  s" << s << " [shape=" << shape << ", label="
       << Quote("s" + std::to_string(s) + " |I|=" +
                std::to_string(info.nodes.size()))
       << "];\n";
  }
  for (size_t s = 0; s < infosets.size(); ++s) {
    const Infoset& info = infosets[s];
    if (info.parent < 0) continue;
    // The edge is labelled with the owner's action when the owner acted.
    std::string label;
    const int h = info.nodes.front();
    const int ph = rep.nodes[h].parent;
    if (ph >= 0 && rep.nodes[ph].actor == player) label = rep.nodes[h].incoming_action;
    os << "  s" << info.parent << " -> s" << s << " [label=" << Quote(label)
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string PublicDot(const ExtensiveFormRep& rep) {
  std::ostringstream os;
  os << "digraph public {\n  node [fontsize=10];\n";
  for (size_t s = 0; s < rep.public_sets.size(); ++s) {
    const PublicSet& set = rep.public_sets[s];
    os << "  p" << s << " [shape="
       << (set.children.empty() ? "box" : "ellipse") << ", label="
       << Quote("p" + std::to_string(s) + " |S|=" +
                std::to_string(set.nodes.size()))
       << "];\n";
  }
  for (size_t s = 0; s < rep.public_sets.size(); ++s) {
    for (int c : rep.public_sets[s].children) {
      const int h = rep.public_sets[c].nodes.front();
      os << "  p" << s << " -> p" << c
         << " [label=" << Quote(rep.nodes[h].incoming_action) << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string EfgDot(const ClassicalEFG& efg) {
  std::ostringstream os;
  os << "digraph efg {\n  node [fontsize=10];\n";
  for (const EfgNode& node : efg.nodes) {
    std::string label = std::to_string(node.id) + " " + node.name;
    if (node.actor == kTerminalActor) {
      label += "\\n" + Utilities(node.utility);
    } else {
      label += "\\n" + ActorLabel(node.actor);
    }
    os << "  n" << node.id << " [shape=" << Shape(node.actor)
       << ", label=" << Quote(label) << "];\n";
  }
  for (const EfgNode& node : efg.nodes) {
    for (size_t a = 0; a < node.children.size(); ++a) {
      std::string label = node.actions[a];
      if (node.actor == kChanceActor) label += " " + Prob(node.chance[a]);
      os << "  n" << node.id << " -> n" << node.children[a]
         << " [label=" << Quote(label) << "];\n";
    }
  }
  for (const auto& player : efg.infosets) {
    for (const auto& set : player) {
      for (size_t k = 1; k < set.size(); ++k) {
        os << "  n" << set[k - 1] << " -> n" << set[k]
           << " [style=dashed, dir=none, constraint=false];\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

std::string ExportDot(const ExtensiveFormRep& rep, const std::string& view) {
  if (view == "history") return HistoryDot(rep);
  if (view == "public") return PublicDot(rep);
  if (view.rfind("infoset:", 0) == 0) {
    const std::string rest = view.substr(8);
    if (!rest.empty() && rest.find_first_not_of("0123456789") == std::string::npos &&
        rest.size() < 6) {
      return InfosetDot(rep, std::stoi(rest) - 1);
    }
  }
  Fail(ErrorCode::kInvalidArgument, "unknown view '" + view + "'");
}

}  // namespace fosg
