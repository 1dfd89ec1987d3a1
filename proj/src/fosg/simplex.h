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

#ifndef FOSG_SIMPLEX_H_
#define FOSG_SIMPLEX_H_

#include <utility>
#include <vector>

namespace fosg {

// minimize c'x subject to Ax = b, x >= 0.
struct StandardFormLp {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> c;
};

struct SimplexResult {
  std::vector<double> x;
  std::vector<double> duals;  // One per row of A; B'y = c_B.
  double objective = 0.0;
  std::vector<std::pair<int, int>> pivots;  // (row, entering column).
};

// Two-phase dense primal simplex with Bland's rule. Throws kInfeasible or
// kUnbounded.
SimplexResult SolveStandardForm(const StandardFormLp& lp,
                                double tolerance = 1e-9);

}  // namespace fosg

#endif  // FOSG_SIMPLEX_H_
