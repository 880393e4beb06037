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

#include "casemix/pareto/pareto.hpp"

#include <string>

#include "casemix/error.hpp"

namespace casemix::pareto {

ParetoReport CheckPareto(const scalarize::Problem& problem, const model::Caseload& base) {
  scalarize::RepairConfig cfg;
  cfg.strategy = scalarize::RepairStrategy::kSumOverachieve;
  const scalarize::SolveResult r = scalarize::Repair(problem, base, cfg);
  if (!r.ok()) {
    throw SolverError("Pareto audit failed (" + std::string(solver::ToString(r.status)) +
                      "): " + r.message);
  }
  ParetoReport rep;
  rep.base_throughput = base.Total();
  rep.corrected = r.caseload;
  rep.corrected_throughput = r.throughput;
  rep.diff = rep.corrected_throughput - rep.base_throughput;
  rep.zeroed = rep.base_throughput <= 0.0;
  rep.diff_pct = rep.zeroed ? 0.0 : 100.0 * rep.diff / rep.base_throughput;
  rep.is_pareto = rep.diff <= 1e-4 * rep.base_throughput;
  rep.stats = r.stats;
  return rep;
}

}  // namespace casemix::pareto
