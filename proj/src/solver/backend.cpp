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

#include "casemix/solver/backend.hpp"

#include <cstdlib>
#include <memory>
#include <string>

#include "casemix/error.hpp"
#include "casemix/solver/branch_and_bound.hpp"

namespace casemix::solver {
namespace {

class InternalBackend final : public Backend {
 public:
  std::string name() const override { return "internal"; }
  SolveStatus Solve(const Program& program,
                    const SolveOptions& options) const override {
    return SolveBranchAndBound(program, options);
  }
};

}  // namespace

std::string_view ToString(SolveStatusCode code) {
  switch (code) {
    case SolveStatusCode::kOptimal:
      return "optimal";
    case SolveStatusCode::kInfeasible:
      return "infeasible";
    case SolveStatusCode::kError:
      return "error";
  }
  return "error";
}

std::vector<std::string> BackendNames() { return {"internal"}; }

std::unique_ptr<Backend> MakeBackend(std::string_view name) {
  if (name == "internal") return std::make_unique<InternalBackend>();
  throw SolverError("unknown solver backend '" + std::string(name) + "'");
}

std::unique_ptr<Backend> DefaultBackend() {
  const char* env = std::getenv("CASEMIX_SOLVER");
  return MakeBackend(env != nullptr && *env != '\0' ? env : "internal");
}

SolveStatus Solve(const Program& program, const SolveOptions& options) {
  program.Validate();
  return DefaultBackend()->Solve(program, options);
}

}  // namespace casemix::solver
