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

#ifndef CASEMIX_SOLVER_BRANCH_AND_BOUND_HPP_
#define CASEMIX_SOLVER_BRANCH_AND_BOUND_HPP_

#include "casemix/solver/backend.hpp"
#include "casemix/solver/program.hpp"
#include "casemix/solver/simplex.hpp"

namespace casemix::solver {

// Column-wise LP in minimization form. Binary variables keep their [0, 1]
// bounds; integrality is left to the caller.
LpProblem ToLpProblem(const Program& program);

// Depth-first branch and bound over the binaries of `program`, solving each
// node with RevisedSimplex warm-started from the previous node's basis.
// Pure LPs take a single simplex solve.
SolveStatus SolveBranchAndBound(const Program& program,
                                const SolveOptions& options);

}  // namespace casemix::solver

#endif  // CASEMIX_SOLVER_BRANCH_AND_BOUND_HPP_
