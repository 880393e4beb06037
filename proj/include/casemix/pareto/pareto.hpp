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

#ifndef CASEMIX_PARETO_PARETO_HPP_
#define CASEMIX_PARETO_PARETO_HPP_

#include "casemix/model/instance.hpp"
#include "casemix/scalarize/scalarize.hpp"

namespace casemix::pareto {

struct ParetoReport {
  bool is_pareto = false;
  model::Caseload corrected;
  double base_throughput = 0.0;
  double corrected_throughput = 0.0;
  double diff = 0.0;       // corrected - base
  double diff_pct = 0.0;   // 100 diff / base, 0 when the base is empty
  bool zeroed = false;     // base treats nobody
  solver::SolveStats stats;
};

// Maximizes N with every group held at or above its base output. The base is
// Pareto optimal when that gains no more than 1e-4 N_base. Throws SolverError
// when the floors are infeasible.
ParetoReport CheckPareto(const scalarize::Problem& problem, const model::Caseload& base);

}  // namespace casemix::pareto

#endif  // CASEMIX_PARETO_PARETO_HPP_
