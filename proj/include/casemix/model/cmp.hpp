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

#ifndef CASEMIX_MODEL_CMP_HPP_
#define CASEMIX_MODEL_CMP_HPP_

#include <optional>
#include <string_view>
#include <vector>

#include "casemix/model/instance.hpp"
#include "casemix/solver/backend.hpp"
#include "casemix/solver/program.hpp"

namespace casemix::model {

// Group mix mu^1: n_g >= mu_g * sum_g n_g.
struct CaseMixSpec {
  std::vector<double> group_mix;
};

// Group mix from the instance when every group declares one.
std::optional<CaseMixSpec> InstanceCaseMix(const HospitalInstance& instance);

struct BetaVar {
  int group = 0;
  int subtype = 0;
  int activity = 0;
  int resource = 0;
  solver::VarId var;
};

// The capacity-allocation program: variables n_g, n_{g,p}, beta_{a,r};
// linking rows, resource capacity rows and sub-mix rows. Zero-duration
// activities are dropped. The objective is Maximize N.
struct CmpModel {
  solver::Program program;
  std::vector<solver::VarId> n;
  std::vector<std::vector<solver::VarId>> np;
  std::vector<BetaVar> beta;
  solver::LinearExpr throughput;

  Caseload Extract(const std::vector<double>& values) const;
};

// Throws ValidationError for an invalid instance or case mix.
CmpModel BuildModel(const HospitalInstance& instance,
                    const std::optional<CaseMixSpec>& case_mix = std::nullopt);

// Adds n_g <= bound_g for every group.
void AddOutputCaps(CmpModel& model, const std::vector<double>& bounds);

// Max N with only group g present, for every g. Throws SolverError naming
// the group when a solve fails.
std::vector<double> ComputeUpperBounds(const HospitalInstance& instance,
                                       const solver::SolveOptions& options = {});

enum class BoundsSource {
  kAuto,       // reference when the instance has one for every group
  kReference,
  kComputed,
};

BoundsSource ParseBoundsSource(std::string_view text);
std::string_view ToString(BoundsSource source);

std::vector<double> ResolveBounds(const HospitalInstance& instance,
                                  BoundsSource source,
                                  const solver::SolveOptions& options = {});

}  // namespace casemix::model

#endif  // CASEMIX_MODEL_CMP_HPP_
