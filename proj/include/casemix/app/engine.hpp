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

#ifndef CASEMIX_APP_ENGINE_HPP_
#define CASEMIX_APP_ENGINE_HPP_

// Request handling shared by the command line and the HTTP service. Both
// front ends turn their input into the same JSON request and call the same
// functions here, so identical inputs give identical results.

#include <optional>
#include <string>
#include <vector>

#include "casemix/io/json.hpp"
#include "casemix/pareto/pareto.hpp"
#include "casemix/scalarize/scalarize.hpp"
#include "casemix/sensitivity/sweep.hpp"

namespace casemix::app {

enum class Method { kUfm, kGam, kGpm };

std::string_view ToString(Method m);
Method ParseMethod(std::string_view text);

struct SolveRequest {
  Method method = Method::kUfm;
  std::string objective = "mmu";  // mmu, msu or asf
  scalarize::AsfConfig asf = scalarize::AsfConfig::Mmu();
  scalarize::GoalConfig goals;
  scalarize::GpmMode gpm_mode = scalarize::GpmMode::kSum;
  std::optional<scalarize::RepairConfig> repair;
};

// Fields: method, objective, eps1, eps2, weights {group: w}, lexicographic,
// goals ("bounds" or {group: goal}), goal_weights ("relative", "unit" or
// {group: w}), sides, over_weights,
// under_weights, relative, gpm_mode, repair (strategy name or object).
// Per-group maps must name known groups. Weights default to 1 for groups
// left out; an explicit goals object must list every group.
SolveRequest ParseSolveRequest(const io::Json& j, const model::HospitalInstance& instance);

// `specs` is required for the ufm method and ignored otherwise.
scalarize::SolveResult ExecuteSolve(const scalarize::Problem& problem,
                                    const std::vector<utility::UfSpec>& specs,
                                    const SolveRequest& request);

// Result JSON with the request echoed under "request". A repair stage adds
// "base" holding the first-stage result.
io::Json SolveJson(const scalarize::Problem& problem, const std::vector<utility::UfSpec>& specs,
                   const io::Json& request, scalarize::SolveResult* out = nullptr);

// Fields: base (utility spec object) or template/variant at top level,
// parameter, values (array or "a:b:s" / "a,b" string), paired_values,
// objectives, jobs.
sensitivity::SweepSpec ParseSweepRequest(const io::Json& j);

io::Json ParetoJson(const scalarize::Problem& problem, const model::Caseload& base);

// Exit status for a finished solve: 0 when optimal and not zeroed, else 1.
int SolveExitCode(const scalarize::SolveResult& result);

}  // namespace casemix::app

#endif  // CASEMIX_APP_ENGINE_HPP_
