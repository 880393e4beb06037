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

#ifndef CASEMIX_SCALARIZE_SCALARIZE_HPP_
#define CASEMIX_SCALARIZE_SCALARIZE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "casemix/model/cmp.hpp"
#include "casemix/model/instance.hpp"
#include "casemix/solver/backend.hpp"
#include "casemix/solver/plf_encoding.hpp"
#include "casemix/utility/catalog.hpp"
#include "casemix/utility/plf.hpp"

namespace casemix::scalarize {

// Everything a scalarized solve needs besides its own configuration. The
// bounds are the utility domains and cap every group's output.
struct Problem {
  model::HospitalInstance instance;
  std::vector<double> bounds;
  solver::SolveOptions solve;
  solver::EncodeOptions encode;
};

Problem MakeProblem(model::HospitalInstance instance,
                    model::BoundsSource source = model::BoundsSource::kAuto,
                    const solver::SolveOptions& options = {});

// One utility per group, in instance order. ValidationError paths are
// prefixed with "/groups/<id>".
std::vector<utility::Plf> InstantiateAll(const Problem& problem,
                                         const std::vector<utility::UfSpec>& specs);

struct SolveResult {
  solver::SolveStatusCode status = solver::SolveStatusCode::kError;
  std::string message;
  model::Caseload caseload;
  // ASF: the group utilities. Goal methods: 100 n_g / bound_g.
  std::vector<double> utilities;
  double throughput = 0.0;  // N
  double sum_u = 0.0;
  double min_u = 0.0;
  double objective = 0.0;
  // Nothing is treated and the worst utility is not positive.
  bool zeroed = false;
  // 100 n_g / N; empty when N is zero.
  std::vector<double> case_mix_pct;
  double delta = 0.0;                    // goal attainment
  std::vector<double> over, under;       // goal programming and repair
  solver::SolveStats stats;

  bool ok() const { return status == solver::SolveStatusCode::kOptimal; }
};

// Maximize eps1 * min_g w_g u_g + eps2 * sum_g w_g u_g.
struct AsfConfig {
  double eps1 = 1.0;
  double eps2 = 0.0;
  std::vector<double> weights;  // empty means 1 for every group
  // Second pass maximizing N with the achievement held at its optimum.
  bool lexicographic = false;

  static AsfConfig Mmu() { return {1.0, 0.0, {}, false}; }
  static AsfConfig Msu() { return {0.0, 1.0, {}, false}; }
};

// Throws ValidationError for bad eps, weights or utility count.
SolveResult SolveAsf(const Problem& problem, const std::vector<utility::Plf>& plfs,
                     const AsfConfig& config);

enum class GamSides { kBoth, kUnder, kOver };

struct GoalConfig {
  std::vector<double> goals;  // empty means the bounds
  // Goal attainment weights; empty means relative (w_g = goal_g).
  std::vector<double> weights;
  GamSides sides = GamSides::kBoth;
  // Goal programming weights; empty means 1.
  std::vector<double> over_weights;
  std::vector<double> under_weights;
  // Divide goal-programming deviations by the goal.
  bool relative = true;
};

// Minimize delta with goal_g - w_g delta <= n_g <= goal_g + w_g delta.
SolveResult SolveGam(const Problem& problem, const GoalConfig& config);

enum class GpmMode { kSum, kMinimaxUnder };

std::string_view ToString(GpmMode mode);
GpmMode ParseGpmMode(std::string_view text);

// n_g = goal_g + over_g - under_g with a binary per group keeping one of
// the two deviations at zero.
SolveResult SolveGpm(const Problem& problem, const GoalConfig& config, GpmMode mode);

enum class RepairStrategy { kPreference, kSumOverachieve, kTradeoff };

std::string_view ToString(RepairStrategy s);
RepairStrategy ParseRepairStrategy(std::string_view text);

struct RepairConfig {
  RepairStrategy strategy = RepairStrategy::kSumOverachieve;
  int preferred_group = 0;          // kPreference
  std::vector<double> over_weights;   // empty means 1
  std::vector<double> under_weights;  // empty means 1
  double eps_over = 1.0;              // kTradeoff
  double eps_under = 1000.0;          // kTradeoff; large forbids losses
};

// Second stage from a base caseload. Utilities are 100 n_g / bound_g.
SolveResult Repair(const Problem& problem, const model::Caseload& base,
                   const RepairConfig& config);

}  // namespace casemix::scalarize

#endif  // CASEMIX_SCALARIZE_SCALARIZE_HPP_
