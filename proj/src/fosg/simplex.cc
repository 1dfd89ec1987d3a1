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

#include "fosg/simplex.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "fosg/status.h"

namespace fosg {
namespace {

class Tableau {
 public:
  Tableau(std::vector<std::vector<double>> rows, int columns)
      : t_(std::move(rows)), columns_(columns) {}

  double& At(int r, int c) { return t_[r][c]; }
  double Rhs(int r) const { return t_[r][columns_]; }
  int rows() const { return static_cast<int>(t_.size()); }

  void Pivot(int r, int c, std::vector<double>& objective) {
    const double p = t_[r][c];
    for (double& v : t_[r]) v /= p;
    t_[r][c] = 1.0;
    for (int i = 0; i < rows(); ++i) {
      if (i == r) continue;
      Eliminate(t_[i], r, c);
    }
    Eliminate(objective, r, c);
  }

  void DropRow(int r) { t_.erase(t_.begin() + r); }

 private:
  void Eliminate(std::vector<double>& row, int r, int c) {
    const double f = row[c];
    if (f == 0.0) return;
    for (int j = 0; j <= columns_; ++j) row[j] -= f * t_[r][j];
    row[c] = 0.0;
  }

  std::vector<std::vector<double>> t_;
  int columns_;
};

}  // namespace

SimplexResult SolveStandardForm(const StandardFormLp& lp, double tolerance) {
  const int m = static_cast<int>(lp.a.size());
  const int n = static_cast<int>(lp.c.size());
  if (static_cast<int>(lp.b.size()) != m) {
    Fail(ErrorCode::kInvalidArgument, "LP right-hand side has the wrong size");
  }
  for (const auto& row : lp.a) {
    if (static_cast<int>(row.size()) != n) {
      Fail(ErrorCode::kInvalidArgument, "LP constraint row has the wrong size");
    }
  }
  // Columns: n structural, m artificial, then the right-hand side. The
  // artificial block keeps B^-1 (up to row signs) for dual recovery.
  const int columns = n + m;
  std::vector<double> sign(m, 1.0);
  std::vector<std::vector<double>> rows(m, std::vector<double>(columns + 1, 0.0));
  for (int i = 0; i < m; ++i) {
    if (lp.b[i] < 0) sign[i] = -1.0;
    for (int j = 0; j < n; ++j) rows[i][j] = sign[i] * lp.a[i][j];
    rows[i][n + i] = 1.0;
    rows[i][columns] = sign[i] * lp.b[i];
  }
  Tableau t(std::move(rows), columns);
  std::vector<int> basis(m);
  std::vector<int> row_id(m);
  for (int i = 0; i < m; ++i) {
    basis[i] = n + i;
    row_id[i] = i;
  }
  SimplexResult result;

  auto run = [&](std::vector<double>& objective, int allowed) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < allowed; ++j) {
        if (objective[j] < -tolerance) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return;
      int leave = -1;
      double best = 0.0;
      for (int i = 0; i < t.rows(); ++i) {
        const double a = t.At(i, enter);
        if (a <= tolerance) continue;
        const double ratio = t.Rhs(i) / a;
        if (leave < 0 || ratio < best - tolerance ||
            (ratio <= best + tolerance && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) Fail(ErrorCode::kUnbounded, "LP objective is unbounded");
      result.pivots.emplace_back(row_id[leave], enter);
      t.Pivot(leave, enter, objective);
      basis[leave] = enter;
    }
  };

  // Phase I: minimize the sum of artificials.
  std::vector<double> phase1(columns + 1, 0.0);
  for (int j = n; j < columns; ++j) phase1[j] = 1.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= columns; ++j) phase1[j] -= t.At(i, j);
  }
  run(phase1, columns);
  double scale = 1.0;
  for (double v : lp.b) scale = std::max(scale, std::abs(v));
  if (-phase1[columns] > tolerance * scale) {
    Fail(ErrorCode::kInfeasible, "LP constraints are infeasible");
  }
  // Drive remaining artificials out of the basis or drop redundant rows.
  for (int i = t.rows() - 1; i >= 0; --i) {
    if (basis[i] < n) continue;
    int enter = -1;
    for (int j = 0; j < n; ++j) {
      if (std::abs(t.At(i, j)) > tolerance) {
        enter = j;
        break;
      }
    }
    if (enter >= 0) {
      result.pivots.emplace_back(row_id[i], enter);
      t.Pivot(i, enter, phase1);
      basis[i] = enter;
    } else {
      t.DropRow(i);
      basis.erase(basis.begin() + i);
      row_id.erase(row_id.begin() + i);
    }
  }

  // Phase II on the structural columns.
  std::vector<double> phase2(columns + 1, 0.0);
  for (int j = 0; j < n; ++j) phase2[j] = lp.c[j];
  for (int i = 0; i < t.rows(); ++i) {
    const double cb = lp.c[basis[i]];
    if (cb == 0.0) continue;
    for (int j = 0; j <= columns; ++j) phase2[j] -= cb * t.At(i, j);
  }
  run(phase2, n);

  result.x.assign(n, 0.0);
  for (int i = 0; i < t.rows(); ++i) result.x[basis[i]] = t.Rhs(i);
  result.objective = 0.0;
  for (int j = 0; j < n; ++j) result.objective += lp.c[j] * result.x[j];
  result.duals.assign(m, 0.0);
  for (int k = 0; k < m; ++k) {
    double y = 0.0;
    for (int i = 0; i < t.rows(); ++i) y += lp.c[basis[i]] * t.At(i, n + k);
    result.duals[k] = sign[k] * y;
  }
  return result;
}

}  // namespace fosg
