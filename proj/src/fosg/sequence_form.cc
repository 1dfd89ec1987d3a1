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

#include "fosg/sequence_form.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "fosg/simplex.h"
#include "fosg/status.h"

namespace fosg {
namespace {

constexpr double kPlanTolerance = 1e-9;

void RequireTwoPlayers(const ExtensiveFormRep& rep) {
  if (rep.num_players != 2) {
    Fail(ErrorCode::kInvalidArgument,
         "the sequence form needs exactly two players");
  }
}

SparseMatrix FromMap(int rows, int cols,
                     const std::map<std::pair<int, int>, double>& cells) {
  SparseMatrix out;
  out.rows = rows;
  out.cols = cols;
  for (const auto& [rc, v] : cells) {
    if (v != 0.0) out.entries.push_back({rc.first, rc.second, v});
  }
  return out;
}

// Standard form of: min e'u  s.t.  F y = f,  E'u - A y >= 0,  y >= 0.
// Columns are [ y | u+ | u- | s ] with u = u+ - u- free and s >= 0 the
// surplus of the second block. Rows are [ F y = f ; E'(u+ - u-) - A y - s = 0 ].
struct Transcription {
  StandardFormLp lp;
  int ny = 0;
  int nu = 0;
  int ns = 0;
  int f_rows = 0;
};

Transcription Transcribe(const SequenceLp& lp) {
  Transcription t;
  t.ny = lp.second.Size();
  t.nu = lp.e.matrix.rows;
  t.ns = lp.first.Size();
  t.f_rows = lp.f.matrix.rows;
  const int columns = t.ny + 2 * t.nu + t.ns;
  const int rows = t.f_rows + t.ns;
  t.lp.a.assign(rows, std::vector<double>(columns, 0.0));
  t.lp.b.assign(rows, 0.0);
  t.lp.c.assign(columns, 0.0);
  for (const SparseEntry& e : lp.f.matrix.entries) t.lp.a[e.row][e.col] = e.value;
  for (int r = 0; r < t.f_rows; ++r) t.lp.b[r] = lp.f.rhs[r];
  for (const SparseEntry& e : lp.e.matrix.entries) {
    const int row = t.f_rows + e.col;
    t.lp.a[row][t.ny + e.row] += e.value;
    t.lp.a[row][t.ny + t.nu + e.row] -= e.value;
  }
  for (const SparseEntry& e : lp.payoff.entries) {
    t.lp.a[t.f_rows + e.row][e.col] -= e.value;
  }
  for (int k = 0; k < t.ns; ++k) {
    t.lp.a[t.f_rows + k][t.ny + 2 * t.nu + k] = -1.0;
  }
  for (int r = 0; r < t.nu; ++r) {
    t.lp.c[t.ny + r] = lp.e.rhs[r];
    t.lp.c[t.ny + t.nu + r] = -lp.e.rhs[r];
  }
  return t;
}

std::string Number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string SequenceSet::Label(const ExtensiveFormRep& rep, int seq) const {
  if (seq == 0) return "empty";
  const Sequence& s = sequences[seq];
  return "I" + std::to_string(s.infoset) + ":" +
         rep.infosets[player][s.infoset].actions[s.action];
}

SequenceSet EnumerateSequences(const ExtensiveFormRep& rep, int player) {
  if (player < 0 || player >= rep.num_players) {
    Fail(ErrorCode::kInvalidArgument, "unknown player");
  }
  const RecallCheck recall = CheckPerfectRecall(rep);
  if (!recall.perfect_recall) {
    Fail(ErrorCode::kImperfectRecall,
         "player " + std::to_string(recall.player + 1) +
             " forgets between histories " + std::to_string(recall.first) +
             " and " + std::to_string(recall.second));
  }
  const auto& infosets = rep.infosets[player];
  SequenceSet out;
  out.player = player;
  out.sequences.push_back({});
  out.infoset_first.assign(infosets.size(), -1);
  out.infoset_parent.assign(infosets.size(), -1);
  for (size_t s = 0; s < infosets.size(); ++s) {
    if (infosets[s].acting) out.infoset_order.push_back(static_cast<int>(s));
  }
  std::sort(out.infoset_order.begin(), out.infoset_order.end(),
            [&](int a, int b) {
              return infosets[a].nodes.front() < infosets[b].nodes.front();
            });
  for (int s : out.infoset_order) {
    out.infoset_first[s] = out.Size();
    for (size_t a = 0; a < infosets[s].actions.size(); ++a) {
      out.sequences.push_back({s, static_cast<int>(a), -1});
    }
  }
  out.node_seq.assign(rep.nodes.size(), 0);
  for (int h : rep.order) {
    const HistoryNode& node = rep.nodes[h];
    for (size_t a = 0; a < node.children.size(); ++a) {
      out.node_seq[node.children[a]] =
          node.actor == player ? out.Of(node.infoset[player], static_cast<int>(a))
                               : out.node_seq[h];
    }
  }
  for (int s : out.infoset_order) {
    const int parent = out.node_seq[infosets[s].nodes.front()];
    for (int h : infosets[s].nodes) {
      if (out.node_seq[h] != parent) {
        Fail(ErrorCode::kImperfectRecall,
             "histories of one infostate follow different own sequences");
      }
    }
    out.infoset_parent[s] = parent;
    for (size_t a = 0; a < infosets[s].actions.size(); ++a) {
      out.sequences[out.Of(s, static_cast<int>(a))].parent = parent;
    }
  }
  return out;
}

std::vector<std::vector<double>> SparseMatrix::Dense() const {
  std::vector<std::vector<double>> out(rows, std::vector<double>(cols, 0.0));
  for (const SparseEntry& e : entries) out[e.row][e.col] = e.value;
  return out;
}

SparseMatrix PayoffMatrix(const ExtensiveFormRep& rep, const SequenceSet& first,
                          const SequenceSet& second) {
  RequireTwoPlayers(rep);
  std::vector<double> chance(rep.nodes.size(), 0.0);
  chance[rep.Root()] = 1.0;
  for (int h : rep.order) {
    const HistoryNode& node = rep.nodes[h];
    for (size_t a = 0; a < node.children.size(); ++a) {
      chance[node.children[a]] =
          chance[h] * (node.actor == kChanceActor ? node.chance[a] : 1.0);
    }
  }
  std::map<std::pair<int, int>, double> cells;
  for (int z : rep.terminals) {
    if (chance[z] == 0.0) continue;
    cells[{first.node_seq[z], second.node_seq[z]}] += chance[z] * rep.Utility(z)[0];
  }
  return FromMap(first.Size(), second.Size(), cells);
}

ConstraintSystem ConstraintMatrices(const ExtensiveFormRep& rep,
                                    const SequenceSet& sequences) {
  (void)rep;
  const int rows = 1 + static_cast<int>(sequences.infoset_order.size());
  std::map<std::pair<int, int>, double> cells;
  cells[{0, 0}] = 1.0;
  for (size_t k = 0; k < sequences.infoset_order.size(); ++k) {
    const int s = sequences.infoset_order[k];
    const int r = static_cast<int>(k) + 1;
    cells[{r, sequences.infoset_parent[s]}] = -1.0;
    for (int q = 1; q < sequences.Size(); ++q) {
      if (sequences.sequences[q].infoset == s) cells[{r, q}] = 1.0;
    }
  }
  ConstraintSystem out;
  out.matrix = FromMap(rows, sequences.Size(), cells);
  out.rhs.assign(rows, 0.0);
  out.rhs[0] = 1.0;
  return out;
}

SequenceLp BuildSequenceLp(const ExtensiveFormRep& rep) {
  RequireTwoPlayers(rep);
  SequenceLp lp;
  lp.first = EnumerateSequences(rep, 0);
  lp.second = EnumerateSequences(rep, 1);
  lp.payoff = PayoffMatrix(rep, lp.first, lp.second);
  lp.e = ConstraintMatrices(rep, lp.first);
  lp.f = ConstraintMatrices(rep, lp.second);
  return lp;
}

LpSolution SolveZeroSumLp(const SequenceLp& lp, double tolerance) {
  const Transcription t = Transcribe(lp);
  const SimplexResult r = SolveStandardForm(t.lp, tolerance);
  LpSolution out;
  out.y.assign(r.x.begin(), r.x.begin() + t.ny);
  out.u.resize(t.nu);
  for (int k = 0; k < t.nu; ++k) out.u[k] = r.x[t.ny + k] - r.x[t.ny + t.nu + k];
  out.x.assign(r.duals.begin() + t.f_rows, r.duals.end());
  out.value = r.objective;
  out.pivots = r.pivots;
  return out;
}

std::vector<double> PolicyToPlan(const ExtensiveFormRep& rep,
                                 const SequenceSet& sequences,
                                 const TabularPolicy& policy) {
  std::vector<double> plan(sequences.Size(), 0.0);
  plan[0] = 1.0;
  const auto& own = policy.at(sequences.player);
  for (int s : sequences.infoset_order) {
    const auto& dist = own.at(s);
    const auto& actions = rep.infosets[sequences.player][s].actions;
    if (dist.size() != actions.size()) {
      Fail(ErrorCode::kMissingPolicy,
           "no policy at infoset " + std::to_string(s));
    }
    for (size_t a = 0; a < actions.size(); ++a) {
      plan[sequences.Of(s, static_cast<int>(a))] =
          plan[sequences.infoset_parent[s]] * dist[a];
    }
  }
  return plan;
}

std::vector<std::vector<double>> RealizationToBehavioral(
    const ExtensiveFormRep& rep, const SequenceSet& sequences,
    const std::vector<double>& plan, bool* used_uniform) {
  if (static_cast<int>(plan.size()) != sequences.Size()) {
    Fail(ErrorCode::kInvalidPlan, "plan has the wrong number of sequences");
  }
  if (std::abs(plan[0] - 1.0) > kPlanTolerance) {
    Fail(ErrorCode::kInvalidPlan, "empty sequence must have mass 1");
  }
  for (double v : plan) {
    if (!(v >= -kPlanTolerance)) {
      Fail(ErrorCode::kInvalidPlan, "plan has a negative entry");
    }
  }
  const auto& infosets = rep.infosets[sequences.player];
  std::vector<std::vector<double>> out(infosets.size());
  if (used_uniform != nullptr) *used_uniform = false;
  for (int s : sequences.infoset_order) {
    const size_t actions = infosets[s].actions.size();
    const double parent = plan[sequences.infoset_parent[s]];
    double total = 0.0;
    for (size_t a = 0; a < actions; ++a) {
      total += plan[sequences.Of(s, static_cast<int>(a))];
    }
    if (std::abs(total - parent) > kPlanTolerance) {
      Fail(ErrorCode::kInvalidPlan,
           "flow is not conserved at infoset " + std::to_string(s));
    }
    out[s].assign(actions, 1.0 / actions);
    if (parent > kPlanTolerance && total > 0.0) {
      for (size_t a = 0; a < actions; ++a) {
        out[s][a] =
            std::max(plan[sequences.Of(s, static_cast<int>(a))], 0.0) / total;
      }
    } else if (used_uniform != nullptr) {
      *used_uniform = true;
    }
  }
  return out;
}

TabularPolicy ProfileFromPlans(const ExtensiveFormRep& rep, const SequenceLp& lp,
                               const std::vector<double>& x,
                               const std::vector<double>& y,
                               bool* used_uniform) {
  bool first = false, second = false;
  TabularPolicy profile(2);
  profile[0] = RealizationToBehavioral(rep, lp.first, x, &first);
  profile[1] = RealizationToBehavioral(rep, lp.second, y, &second);
  if (used_uniform != nullptr) *used_uniform = first || second;
  return profile;
}

double BilinearValue(const SparseMatrix& payoff, const std::vector<double>& x,
                     const std::vector<double>& y) {
  double v = 0.0;
  for (const SparseEntry& e : payoff.entries) v += x[e.row] * e.value * y[e.col];
  return v;
}

std::string LpDump(const ExtensiveFormRep& rep, const SequenceLp& lp) {
  const Transcription t = Transcribe(lp);
  std::vector<std::string> names;
  for (int k = 0; k < t.ny; ++k) names.push_back("y" + std::to_string(k));
  for (int k = 0; k < t.nu; ++k) names.push_back("up" + std::to_string(k));
  for (int k = 0; k < t.nu; ++k) names.push_back("um" + std::to_string(k));
  for (int k = 0; k < t.ns; ++k) names.push_back("s" + std::to_string(k));
  auto row_text = [&](const std::vector<double>& coeffs) {
    std::string out;
    for (size_t j = 0; j < coeffs.size(); ++j) {
      const double v = coeffs[j];
      if (v == 0.0) continue;
      out += v < 0 ? " - " : (out.empty() ? " " : " + ");
      if (std::abs(v) != 1.0) out += Number(std::abs(v)) + " ";
      out += names[j];
    }
    return out.empty() ? std::string(" 0 ") + names.front() : out;
  };
  std::ostringstream os;
  os << "\\ sequence-form LP, standard form\n";
  for (int k = 0; k < t.ny; ++k) {
    os << "\\ y" << k << " = player 2 sequence " << lp.second.Label(rep, k) << "\n";
  }
  for (int k = 0; k < t.ns; ++k) {
    os << "\\ s" << k << " = surplus of player 1 sequence "
       << lp.first.Label(rep, k) << "\n";
  }
  os << "Minimize\n obj:" << row_text(t.lp.c) << "\n";
  os << "Subject To\n";
  for (size_t r = 0; r < t.lp.a.size(); ++r) {
    os << " c" << r << ":" << row_text(t.lp.a[r]) << " = " << Number(t.lp.b[r])
       << "\n";
  }
  os << "Bounds\n";
  for (const std::string& name : names) os << " " << name << " >= 0\n";
  os << "End\n";
  return os.str();
}

}  // namespace fosg
