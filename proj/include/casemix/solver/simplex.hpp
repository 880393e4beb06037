// Copyright 2026 The Casemix Authors
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

#ifndef CASEMIX_SOLVER_SIMPLEX_HPP_
#define CASEMIX_SOLVER_SIMPLEX_HPP_

#include <cstdint>
#include <vector>

namespace casemix::solver {

// minimize cost'x  s.t.  row_lower <= A x <= row_upper,
//                        col_lower <= x <= col_upper.
// A is stored by columns.
struct LpProblem {
  int num_cols = 0;
  int num_rows = 0;
  std::vector<int> col_start{0};
  std::vector<int> row_index;
  std::vector<double> value;
  std::vector<double> cost;
  std::vector<double> col_lower;
  std::vector<double> col_upper;
  std::vector<double> row_lower;
  std::vector<double> row_upper;
};

struct SimplexOptions {
  double primal_tol = 1e-9;
  double dual_tol = 1e-9;
  double pivot_tol = 1e-9;
  int refactor_interval = 100;
  long iteration_limit = 200000;
  int bland_after = 50;
  bool scale = true;
};

enum class SimplexResult {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kIterationLimit,
  kNumericalFailure,
};

// Bounded revised primal simplex over [A | -I] with an explicit dense basis
// inverse. Every row carries a logical variable s = A x, so the all-logical
// basis is always available. The basis survives bound changes, which makes
// re-solves after branching cheap.
class RevisedSimplex {
 public:
  explicit RevisedSimplex(const LpProblem& problem,
                          SimplexOptions options = {});

  SimplexResult Solve();

  // Bounds in unscaled units. Takes effect on the next Solve().
  void SetColumnBounds(int col, double lower, double upper);
  double column_lower(int col) const;
  double column_upper(int col) const;

  // Unscaled structural values of the last solve.
  std::vector<double> ColumnValues() const;
  double Objective() const;
  long iterations() const { return iterations_; }

 private:
  enum class Status : std::uint8_t { kBasic, kLower, kUpper, kFree };

  void Scale(const LpProblem& problem);
  void InitialBasis();
  bool Reinvert();
  void ComputeBasicValues();
  void Ftran(int col, std::vector<double>& out) const;
  void Btran(const std::vector<double>& cb, std::vector<double>& y) const;
  double ColumnDot(int col, const std::vector<double>& y) const;
  void Pivot(int row, const std::vector<double>& alpha);
  void PlaceNonbasic(int var);

  int m_ = 0;
  int n_ = 0;
  SimplexOptions options_;
  std::vector<int> col_start_;
  std::vector<int> row_index_;
  std::vector<double> value_;
  std::vector<double> cost_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> col_scale_;
  std::vector<double> row_scale_;
  double cost_scale_ = 1.0;
  std::vector<double> x_;
  std::vector<int> head_;
  std::vector<Status> status_;
  // Column-major B^-1: binv_[i * m_ + k] is row k, column i.
  std::vector<double> binv_;
  int pivots_since_refactor_ = 0;
  long iterations_ = 0;
};

}  // namespace casemix::solver

#endif  // CASEMIX_SOLVER_SIMPLEX_HPP_
