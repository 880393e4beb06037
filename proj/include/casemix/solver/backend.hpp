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

#ifndef CASEMIX_SOLVER_BACKEND_HPP_
#define CASEMIX_SOLVER_BACKEND_HPP_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "casemix/solver/program.hpp"

namespace casemix::solver {

struct SolveOptions {
  double mip_gap_rel = 1e-6;
  double mip_gap_abs = 1e-6;
  // Absolute feasibility tolerance on the unscaled program.
  double feasibility_tol = 1e-7;
  double integrality_tol = 1e-6;
  long node_limit = 200000;
  long iteration_limit = 200000;
  double time_limit_seconds = 600.0;
};

enum class SolveStatusCode { kOptimal, kInfeasible, kError };

struct SolveStats {
  long iterations = 0;
  long nodes = 0;
  double wall_seconds = 0.0;
  // Largest bound, row or integrality violation of the returned values.
  double max_violation = 0.0;
};

struct SolveStatus {
  SolveStatusCode code = SolveStatusCode::kError;
  // Objective in the program's own sense, including the constant term.
  double objective = 0.0;
  // One entry per program variable; empty unless optimal.
  std::vector<double> values;
  SolveStats stats;
  std::string message;

  bool optimal() const { return code == SolveStatusCode::kOptimal; }
  double value(VarId v) const { return values.at(v.index); }
};

std::string_view ToString(SolveStatusCode code);

class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string name() const = 0;
  virtual SolveStatus Solve(const Program& program,
                            const SolveOptions& options) const = 0;
};

// Names accepted by MakeBackend.
std::vector<std::string> BackendNames();

// Throws SolverError for an unknown name.
std::unique_ptr<Backend> MakeBackend(std::string_view name);

// Backend named by the CASEMIX_SOLVER environment variable, "internal" when
// unset.
std::unique_ptr<Backend> DefaultBackend();

// Validates the program and solves it with DefaultBackend().
SolveStatus Solve(const Program& program, const SolveOptions& options = {});

}  // namespace casemix::solver

#endif  // CASEMIX_SOLVER_BACKEND_HPP_
