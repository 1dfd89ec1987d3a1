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

#ifndef FOSG_TIMEABILITY_H_
#define FOSG_TIMEABILITY_H_

#include <cstdint>
#include <vector>

#include "fosg/efg.h"

namespace fosg {

struct Timing {
  std::vector<int> labels;  // Indexed by node id.
};

// One step of a constraint cycle. `infoset_link` tells how this node relates
// to the next one (cyclically): false means the next node is its child, true
// means both lie in one infoset.
struct WitnessStep {
  int node = -1;
  bool infoset_link = false;
};

struct TimingResult {
  bool timeable = false;
  Timing timing;
  std::vector<WitnessStep> witness;
};

TimingResult FindExactTiming(const ClassicalEFG& efg);

// Replaces label values by their rank among the distinct values used.
Timing NormalizeTiming(const Timing& timing);

// Throws ErrorCode::kInvalidTiming unless `timing` is an exact deterministic
// integer timing of `efg`.
void ValidateTiming(const ClassicalEFG& efg, const Timing& timing);

bool VerifyWitness(const ClassicalEFG& efg,
                   const std::vector<WitnessStep>& witness);

bool IsOneTimeable(const ClassicalEFG& efg);

struct PadReport {
  int64_t original = 0;
  int64_t added = 0;
  int64_t padded = 0;
  int64_t bound = 0;  // |H|^2.
};

// Inserts single-action chance nodes so that every edge advances the timing
// by exactly one. Original node ids are kept; padding nodes are appended.
ClassicalEFG PadToOneTimeable(const ClassicalEFG& efg, const Timing& timing,
                              PadReport* report = nullptr);

}  // namespace fosg

#endif  // FOSG_TIMEABILITY_H_
