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

#include "casemix/solver/branch_and_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace casemix::solver {
namespace {

struct BoundChange {
  int col;
  double lower;
  double upper;
};

struct Node {
  std::vector<BoundChange> changes;
};

double Sign(const Program& p) {
  return p.objective_sense() == ObjectiveSense::kMaximize ? -1.0 : 1.0;
}

double InternalObjective(const Program& p, const std::vector<double>& values) {
  return Sign(p) * (p.objective().Evaluate(values) - p.objective().constant());
}

double ViolationScale(const Program& p) {
  double scale = 1.0;
  for (const Variable& v : p.variables()) {
    if (std::isfinite(v.lower)) scale = std::max(scale, std::abs(v.lower));
    if (std::isfinite(v.upper)) scale = std::max(scale, std::abs(v.upper));
  }
  for (const Constraint& c : p.constraints()) {
    scale = std::max(scale, std::abs(c.rhs));
  }
  return scale;
}

std::string_view Describe(SimplexResult r) {
  switch (r) {
    case SimplexResult::kOptimal:
      return "optimal";
    case SimplexResult::kInfeasible:
      return "infeasible";
    case SimplexResult::kUnbounded:
      return "unbounded";
    case SimplexResult::kIterationLimit:
      return "simplex iteration limit reached";
    case SimplexResult::kNumericalFailure:
      return "numerical failure in simplex";
  }
  return "unknown";
}

}  // namespace

LpProblem ToLpProblem(const Program& program) {
  LpProblem lp;
  lp.num_cols = program.num_variables();
  lp.num_rows = program.num_constraints();
  const double sign = Sign(program);

  lp.cost.assign(lp.num_cols, 0.0);
  for (const Term& t : program.objective().terms()) {
    lp.cost[t.var.index] += sign * t.coef;
  }
  for (const Variable& v : program.variables()) {
    lp.col_lower.push_back(v.lower);
    lp.col_upper.push_back(v.upper);
  }

  std::vector<std::vector<std::pair<int, double>>> cols(lp.num_cols);
  for (int i = 0; i < lp.num_rows; ++i) {
    const Constraint& c = program.constraints()[i];
    for (const Term& t : c.terms) cols[t.var.index].emplace_back(i, t.coef);
    switch (c.sense) {
      case Sense::kLessEqual:
        lp.row_lower.push_back(-kInfinity);
        lp.row_upper.push_back(c.rhs);
        break;
      case Sense::kGreaterEqual:
        lp.row_lower.push_back(c.rhs);
        lp.row_upper.push_back(kInfinity);
        break;
      case Sense::kEqual:
        lp.row_lower.push_back(c.rhs);
        lp.row_upper.push_back(c.rhs);
        break;
    }
  }
  lp.col_start.assign(1, 0);
  for (const auto& col : cols) {
    for (const auto& [row, coef] : col) {
      lp.row_index.push_back(row);
      lp.value.push_back(coef);
    }
    lp.col_start.push_back(static_cast<int>(lp.row_index.size()));
  }
  return lp;
}

SolveStatus SolveBranchAndBound(const Program& program,
                                const SolveOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - started).count();
  };

  SolveStatus status;
  SimplexOptions sopts;
  sopts.iteration_limit = options.iteration_limit;
  RevisedSimplex simplex(ToLpProblem(program), sopts);

  std::vector<int> binaries;
  for (int j = 0; j < program.num_variables(); ++j) {
    if (program.variables()[j].type == VarType::kBinary) binaries.push_back(j);
  }

  auto finish = [&](SolveStatusCode code, std::string message) {
    status.code = code;
    status.message = std::move(message);
    status.stats.iterations = simplex.iterations();
    status.stats.wall_seconds = elapsed();
    if (code != SolveStatusCode::kOptimal) status.values.clear();
    return status;
  };

  auto accept = [&](std::vector<double> values) {
    for (int j : binaries) values[j] = std::round(values[j]);
    status.stats.max_violation = program.MaxViolation(values);
    const double tol =
        std::max(options.feasibility_tol, 1e-9 * ViolationScale(program));
    status.objective = program.objective().Evaluate(values);
    status.values = std::move(values);
    if (status.stats.max_violation > 100.0 * tol) {
      return finish(SolveStatusCode::kError,
                    "solution violates constraints by " +
                        std::to_string(status.stats.max_violation));
    }
    return finish(SolveStatusCode::kOptimal, "optimal");
  };

  if (binaries.empty()) {
    status.stats.nodes = 1;
    const SimplexResult r = simplex.Solve();
    if (r == SimplexResult::kInfeasible) {
      return finish(SolveStatusCode::kInfeasible, "infeasible");
    }
    if (r != SimplexResult::kOptimal) {
      return finish(SolveStatusCode::kError, std::string(Describe(r)));
    }
    return accept(simplex.ColumnValues());
  }

  std::optional<double> incumbent;
  std::vector<double> incumbent_binaries;
  if (const auto& hint = program.hint();
      hint && static_cast<int>(hint->size()) == program.num_variables() &&
      program.MaxViolation(*hint) <= options.feasibility_tol) {
    incumbent = InternalObjective(program, *hint);
    for (int j : binaries) incumbent_binaries.push_back(std::round((*hint)[j]));
  }

  std::vector<double> root_lower, root_upper;
  for (int j : binaries) {
    root_lower.push_back(simplex.column_lower(j));
    root_upper.push_back(simplex.column_upper(j));
  }
  std::vector<int> slot(program.num_variables(), -1);
  for (std::size_t k = 0; k < binaries.size(); ++k) slot[binaries[k]] = static_cast<int>(k);

  std::vector<Node> stack;
  stack.push_back({});
  std::vector<int> touched;
  auto gap = [&](double inc) {
    return std::max(options.mip_gap_abs, options.mip_gap_rel * std::abs(inc));
  };

  while (!stack.empty()) {
    if (status.stats.nodes >= options.node_limit) {
      return finish(SolveStatusCode::kError, "node limit reached");
    }
    if (elapsed() > options.time_limit_seconds) {
      return finish(SolveStatusCode::kError, "time limit reached");
    }
    Node node = std::move(stack.back());
    stack.pop_back();
    ++status.stats.nodes;

    for (int j : touched) {
      simplex.SetColumnBounds(j, root_lower[slot[j]], root_upper[slot[j]]);
    }
    touched.clear();
    for (const BoundChange& c : node.changes) {
      simplex.SetColumnBounds(c.col, c.lower, c.upper);
      touched.push_back(c.col);
    }

    const SimplexResult r = simplex.Solve();
    if (r == SimplexResult::kInfeasible) continue;
    if (r != SimplexResult::kOptimal) {
      return finish(SolveStatusCode::kError, std::string(Describe(r)));
    }
    const double bound = simplex.Objective();
    if (incumbent && bound >= *incumbent - gap(*incumbent)) continue;

    const std::vector<double> x = simplex.ColumnValues();
    int branch = -1;
    double most = options.integrality_tol;
    for (int j : binaries) {
      const double frac = std::abs(x[j] - std::round(x[j]));
      if (frac > most) {
        most = frac;
        branch = j;
      }
    }
    if (branch < 0) {
      // Binaries within tolerance of integral can still carry objective
      // through large coefficients, so score the rounded assignment itself.
      std::vector<double> lo, up;
      for (int j : binaries) {
        lo.push_back(simplex.column_lower(j));
        up.push_back(simplex.column_upper(j));
        simplex.SetColumnBounds(j, std::round(x[j]), std::round(x[j]));
      }
      const SimplexResult fixed = simplex.Solve();
      const double value = fixed == SimplexResult::kOptimal ? simplex.Objective() : kInfinity;
      for (std::size_t k = 0; k < binaries.size(); ++k) {
        simplex.SetColumnBounds(binaries[k], lo[k], up[k]);
      }
      if (value > bound + gap(bound)) {
        double widest = 0.0;
        for (int j : binaries) {
          const double frac = std::abs(x[j] - std::round(x[j]));
          if (frac > widest) {
            widest = frac;
            branch = j;
          }
        }
      }
      if (branch < 0) {
        if (value < kInfinity && (!incumbent || value < *incumbent)) {
          incumbent = value;
          incumbent_binaries.clear();
          for (int j : binaries) incumbent_binaries.push_back(std::round(x[j]));
        }
        continue;
      }
    }

    const double near = std::round(x[branch]);
    Node far_child{node.changes};
    far_child.changes.push_back({branch, 1.0 - near, 1.0 - near});
    node.changes.push_back({branch, near, near});
    stack.push_back(std::move(far_child));
    stack.push_back(std::move(node));
  }

  if (!incumbent) return finish(SolveStatusCode::kInfeasible, "infeasible");

  for (int j : touched) {
    simplex.SetColumnBounds(j, root_lower[slot[j]], root_upper[slot[j]]);
  }
  for (std::size_t k = 0; k < binaries.size(); ++k) {
    simplex.SetColumnBounds(binaries[k], incumbent_binaries[k],
                            incumbent_binaries[k]);
  }
  const SimplexResult r = simplex.Solve();
  if (r != SimplexResult::kOptimal) {
    return finish(SolveStatusCode::kError,
                  "final fixed-binary solve: " + std::string(Describe(r)));
  }
  return accept(simplex.ColumnValues());
}

}  // namespace casemix::solver
