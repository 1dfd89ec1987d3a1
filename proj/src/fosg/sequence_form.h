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

#ifndef FOSG_SEQUENCE_FORM_H_
#define FOSG_SEQUENCE_FORM_H_

#include <string>
#include <utility>
#include <vector>

#include "fosg/cfr.h"
#include "fosg/unroller.h"

namespace fosg {

struct Sequence {
  int infoset = -1;  // -1 for the empty sequence.
  int action = -1;
  int parent = -1;
};

struct SequenceSet {
  int player = 0;
  std::vector<Sequence> sequences;  // Index 0 is the empty sequence.
  // First sequence of each acting infoset, -1 for the others.
  std::vector<int> infoset_first;
  // Parent sequence of each acting infoset, -1 for the others.
  std::vector<int> infoset_parent;
  // b_i(h): the player's last sequence before reaching h.
  std::vector<int> node_seq;
  // Acting infosets in sequence order.
  std::vector<int> infoset_order;

  int Size() const { return static_cast<int>(sequences.size()); }
  int Of(int infoset, int action) const {
    return infoset_first[infoset] + action;
  }
  std::string Label(const ExtensiveFormRep& rep, int seq) const;
};

SequenceSet EnumerateSequences(const ExtensiveFormRep& rep, int player);

struct SparseEntry {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<SparseEntry> entries;  // Row-major, no duplicates.

  std::vector<std::vector<double>> Dense() const;
};

SparseMatrix PayoffMatrix(const ExtensiveFormRep& rep, const SequenceSet& first,
                          const SequenceSet& second);

struct ConstraintSystem {
  SparseMatrix matrix;
  std::vector<double> rhs;
};

ConstraintSystem ConstraintMatrices(const ExtensiveFormRep& rep,
                                    const SequenceSet& sequences);

struct SequenceLp {
  SequenceSet first;
  SequenceSet second;
  SparseMatrix payoff;
  ConstraintSystem e;
  ConstraintSystem f;
};

SequenceLp BuildSequenceLp(const ExtensiveFormRep& rep);

struct LpSolution {
  std::vector<double> x;  // Player 1 plan, from the duals.
  std::vector<double> y;  // Player 2 plan.
  std::vector<double> u;
  double value = 0.0;
  std::vector<std::pair<int, int>> pivots;
};

LpSolution SolveZeroSumLp(const SequenceLp& lp, double tolerance = 1e-9);

std::vector<double> PolicyToPlan(const ExtensiveFormRep& rep,
                                 const SequenceSet& sequences,
                                 const TabularPolicy& policy);

// Returns [infoset][action] for the owner of `sequences`; `used_uniform` is
// set when some infoset had zero parent mass.
std::vector<std::vector<double>> RealizationToBehavioral(
    const ExtensiveFormRep& rep, const SequenceSet& sequences,
    const std::vector<double>& plan, bool* used_uniform = nullptr);

TabularPolicy ProfileFromPlans(const ExtensiveFormRep& rep, const SequenceLp& lp,
                               const std::vector<double>& x,
                               const std::vector<double>& y,
                               bool* used_uniform = nullptr);

double BilinearValue(const SparseMatrix& payoff, const std::vector<double>& x,
                     const std::vector<double>& y);

// CPLEX LP format listing of the standard-form transcription.
std::string LpDump(const ExtensiveFormRep& rep, const SequenceLp& lp);

}  // namespace fosg

#endif  // FOSG_SEQUENCE_FORM_H_
