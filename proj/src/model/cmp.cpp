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

#include "casemix/model/cmp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "casemix/error.hpp"

namespace casemix::model {

using solver::LinearExpr;
using solver::Sense;
using solver::VarId;

std::optional<CaseMixSpec> InstanceCaseMix(const HospitalInstance& inst) {
  CaseMixSpec spec;
  for (const PatientGroup& g : inst.groups) {
    if (!g.group_mix) return std::nullopt;
    spec.group_mix.push_back(*g.group_mix);
  }
  if (spec.group_mix.empty()) return std::nullopt;
  return spec;
}

Caseload CmpModel::Extract(const std::vector<double>& values) const {
  Caseload c;
  for (VarId v : n) c.group.push_back(std::max(0.0, values.at(v.index)));
  for (const auto& row : np) {
    std::vector<double> sub;
    for (VarId v : row) sub.push_back(std::max(0.0, values.at(v.index)));
    c.subtype.push_back(std::move(sub));
  }
  for (const BetaVar& b : beta) {
    c.allocation.push_back({b.group, b.subtype, b.activity, b.resource,
                            std::max(0.0, values.at(b.var.index))});
  }
  return c;
}

CmpModel BuildModel(const HospitalInstance& inst,
                    const std::optional<CaseMixSpec>& case_mix) {
  Validate(inst);
  if (case_mix) {
    if (case_mix->group_mix.size() != inst.groups.size()) {
      throw ValidationError("expected one group_mix value per group", "/group_mix");
    }
    double sum = 0.0;
    for (std::size_t g = 0; g < case_mix->group_mix.size(); ++g) {
      const double mu = case_mix->group_mix[g];
      if (!std::isfinite(mu) || mu < 0.0 || mu > 1.0) {
        throw ValidationError("must lie in [0, 1]", "/group_mix/" + std::to_string(g));
      }
      sum += mu;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw ValidationError("group_mix sums to " + std::to_string(sum), "/group_mix");
    }
  }

  CmpModel m;
  solver::Program& p = m.program;
  std::vector<LinearExpr> usage(inst.resources.size());
  for (std::size_t g = 0; g < inst.groups.size(); ++g) {
    const PatientGroup& grp = inst.groups[g];
    const VarId ng = p.AddVariable("n[" + grp.id + "]");
    m.n.push_back(ng);
    m.throughput.Add(ng, 1.0);
    LinearExpr total(ng, 1.0);
    std::vector<VarId> subs;
    for (std::size_t s = 0; s < grp.subtypes.size(); ++s) {
      const Subtype& sub = grp.subtypes[s];
      const std::string tag = grp.id + "," + sub.id;
      const VarId ngp = p.AddVariable("n[" + tag + "]");
      subs.push_back(ngp);
      total.Add(ngp, -1.0);
      if (grp.subtypes.size() > 1) {
        p.AddConstraint("submix[" + tag + "]", LinearExpr(ngp).Add(ng, -sub.mix_fraction),
                        Sense::kGreaterEqual, 0.0);
      }
      for (std::size_t a = 0; a < sub.activities.size(); ++a) {
        const Activity& act = sub.activities[a];
        if (act.duration_hours <= 0.0) continue;
        LinearExpr link(ngp, 1.0);
        for (const std::string& rid : act.eligible_resources) {
          const int r = inst.ResourceIndex(rid);
          const VarId b = p.AddVariable("b[" + tag + "," + act.id + "," + rid + "]");
          m.beta.push_back({static_cast<int>(g), static_cast<int>(s), static_cast<int>(a), r, b});
          link.Add(b, -1.0);
          usage[r].Add(b, act.duration_hours);
        }
        p.AddConstraint("link[" + tag + "," + act.id + "]", link, Sense::kEqual, 0.0);
      }
    }
    m.np.push_back(std::move(subs));
    p.AddConstraint("total[" + grp.id + "]", total, Sense::kEqual, 0.0);
  }
  for (std::size_t r = 0; r < inst.resources.size(); ++r) {
    if (usage[r].terms().empty()) continue;
    p.AddConstraint("cap[" + inst.resources[r].id + "]", usage[r], Sense::kLessEqual,
                    inst.Availability(static_cast<int>(r)));
  }
  if (case_mix) {
    for (std::size_t g = 0; g < inst.groups.size(); ++g) {
      LinearExpr row(m.n[g], 1.0);
      row.Add(m.throughput, -case_mix->group_mix[g]);
      p.AddConstraint("mix[" + inst.groups[g].id + "]", row, Sense::kGreaterEqual, 0.0);
    }
  }
  p.SetObjective(solver::ObjectiveSense::kMaximize, m.throughput);
  return m;
}

void AddOutputCaps(CmpModel& model, const std::vector<double>& bounds) {
  for (std::size_t g = 0; g < model.n.size(); ++g) {
    const solver::Variable& v = model.program.variable(model.n[g]);
    model.program.SetVariableBounds(model.n[g], v.lower, std::min(v.upper, bounds.at(g)));
  }
}

std::vector<double> ComputeUpperBounds(const HospitalInstance& inst,
                                       const solver::SolveOptions& options) {
  Validate(inst);
  std::vector<double> bounds;
  for (const PatientGroup& grp : inst.groups) {
    HospitalInstance single = inst;
    single.groups = {grp};
    single.groups.front().group_mix.reset();
    single.reference_bounds.clear();
    const CmpModel m = BuildModel(single);
    const solver::SolveStatus s = solver::Solve(m.program, options);
    if (!s.optimal()) {
      throw SolverError("upper bound for group '" + grp.id + "': " + s.message);
    }
    bounds.push_back(std::max(0.0, s.objective));
  }
  return bounds;
}

BoundsSource ParseBoundsSource(std::string_view text) {
  if (text == "auto") return BoundsSource::kAuto;
  if (text == "reference") return BoundsSource::kReference;
  if (text == "computed") return BoundsSource::kComputed;
  throw ValidationError("unknown bounds source '" + std::string(text) +
                        "' (auto, reference, computed)", "/bounds");
}

std::string_view ToString(BoundsSource source) {
  switch (source) {
    case BoundsSource::kAuto:
      return "auto";
    case BoundsSource::kReference:
      return "reference";
    case BoundsSource::kComputed:
      return "computed";
  }
  return "auto";
}

std::vector<double> ResolveBounds(const HospitalInstance& inst, BoundsSource source,
                                  const solver::SolveOptions& options) {
  bool complete = !inst.groups.empty();
  for (const PatientGroup& g : inst.groups) {
    complete = complete && inst.reference_bounds.count(g.id) > 0;
  }
  if (source == BoundsSource::kReference && !complete) {
    throw ValidationError("instance has no reference bound for every group",
                          "/reference_bounds");
  }
  if (source == BoundsSource::kComputed || !complete) {
    return ComputeUpperBounds(inst, options);
  }
  std::vector<double> out;
  for (const PatientGroup& g : inst.groups) out.push_back(inst.reference_bounds.at(g.id));
  return out;
}

}  // namespace casemix::model
