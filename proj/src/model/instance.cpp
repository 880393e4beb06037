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

#include "casemix/model/instance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>
#include <string>

#include "casemix/error.hpp"

namespace casemix::model {
namespace {

std::string Index(const std::string& base, std::size_t i) {
  return base + "/" + std::to_string(i);
}

}  // namespace

std::string_view ToString(ResourceKind kind) {
  switch (kind) {
    case ResourceKind::kTheatre:
      return "theatre";
    case ResourceKind::kWard:
      return "ward";
    case ResourceKind::kIcu:
      return "icu";
  }
  return "ward";
}

ResourceKind ParseResourceKind(std::string_view text) {
  if (text == "theatre") return ResourceKind::kTheatre;
  if (text == "ward") return ResourceKind::kWard;
  if (text == "icu") return ResourceKind::kIcu;
  throw ValidationError("unknown resource kind '" + std::string(text) +
                        "' (theatre, ward, icu)");
}

int HospitalInstance::GroupIndex(std::string_view id) const {
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].id == id) return static_cast<int>(g);
  }
  return -1;
}

int HospitalInstance::ResourceIndex(std::string_view id) const {
  for (std::size_t r = 0; r < resources.size(); ++r) {
    if (resources[r].id == id) return static_cast<int>(r);
  }
  return -1;
}

double HospitalInstance::Availability(int r) const {
  const Resource& res = resources.at(r);
  return res.bed_count * res.weekly_hours * horizon_weeks;
}

void Validate(const HospitalInstance& inst) {
  if (inst.horizon_weeks <= 0) {
    throw ValidationError("horizon must be a positive number of weeks",
                          "/horizon_weeks");
  }
  std::set<std::string> resource_ids;
  for (std::size_t r = 0; r < inst.resources.size(); ++r) {
    const Resource& res = inst.resources[r];
    const std::string path = Index("/resources", r);
    if (res.id.empty()) throw ValidationError("id must not be empty", path + "/id");
    if (!resource_ids.insert(res.id).second) {
      throw ValidationError("duplicate resource id '" + res.id + "'", path + "/id");
    }
    if (res.bed_count < 1) {
      throw ValidationError("bed_count must be at least 1", path + "/bed_count");
    }
    if (!std::isfinite(res.weekly_hours) || res.weekly_hours <= 0.0) {
      throw ValidationError("weekly_hours must be positive", path + "/weekly_hours");
    }
  }

  std::set<std::string> group_ids;
  int with_mix = 0;
  double mix_sum = 0.0;
  for (std::size_t g = 0; g < inst.groups.size(); ++g) {
    const PatientGroup& grp = inst.groups[g];
    const std::string gpath = Index("/groups", g);
    if (grp.id.empty()) throw ValidationError("id must not be empty", gpath + "/id");
    if (!group_ids.insert(grp.id).second) {
      throw ValidationError("duplicate group id '" + grp.id + "'", gpath + "/id");
    }
    if (grp.group_mix) {
      if (!std::isfinite(*grp.group_mix) || *grp.group_mix < 0.0 || *grp.group_mix > 1.0) {
        throw ValidationError("group_mix must lie in [0, 1]", gpath + "/group_mix");
      }
      ++with_mix;
      mix_sum += *grp.group_mix;
    }
    if (grp.subtypes.empty()) {
      throw ValidationError("group needs at least one subtype", gpath + "/subtypes");
    }
    std::set<std::string> subtype_ids;
    double sub_sum = 0.0;
    for (std::size_t p = 0; p < grp.subtypes.size(); ++p) {
      const Subtype& sub = grp.subtypes[p];
      const std::string spath = Index(gpath + "/subtypes", p);
      if (sub.id.empty()) throw ValidationError("id must not be empty", spath + "/id");
      if (!subtype_ids.insert(sub.id).second) {
        throw ValidationError("duplicate subtype id '" + sub.id + "'", spath + "/id");
      }
      if (!std::isfinite(sub.mix_fraction) || sub.mix_fraction < 0.0 ||
          sub.mix_fraction > 1.0) {
        throw ValidationError("mix_fraction must lie in [0, 1]", spath + "/mix_fraction");
      }
      sub_sum += sub.mix_fraction;
      bool timed = false;
      for (std::size_t a = 0; a < sub.activities.size(); ++a) {
        const Activity& act = sub.activities[a];
        const std::string apath = Index(spath + "/activities", a);
        if (!std::isfinite(act.duration_hours) || act.duration_hours < 0.0) {
          throw ValidationError("duration_hours must be nonnegative",
                                apath + "/duration_hours");
        }
        timed = timed || act.duration_hours > 0.0;
        if (act.eligible_resources.empty()) {
          throw ValidationError("activity needs at least one eligible resource",
                                apath + "/eligible_resources");
        }
        std::optional<ResourceKind> kind;
        for (std::size_t k = 0; k < act.eligible_resources.size(); ++k) {
          const std::string& rid = act.eligible_resources[k];
          const int r = inst.ResourceIndex(rid);
          const std::string rpath = Index(apath + "/eligible_resources", k);
          if (r < 0) throw ValidationError("unknown resource '" + rid + "'", rpath);
          if (kind && *kind != inst.resources[r].kind) {
            throw ValidationError("eligible resources must all be of one kind", rpath);
          }
          kind = inst.resources[r].kind;
        }
      }
      if (!timed) {
        throw ValidationError("subtype needs at least one activity with positive duration",
                              spath + "/activities");
      }
    }
    if (std::abs(sub_sum - 1.0) > 1e-9) {
      throw ValidationError("subtype mix fractions of '" + grp.id + "' sum to " +
                                std::to_string(sub_sum) + ", expected 1",
                            gpath + "/subtypes");
    }
  }
  if (with_mix == static_cast<int>(inst.groups.size()) && with_mix > 0 &&
      std::abs(mix_sum - 1.0) > 1e-9) {
    throw ValidationError("group_mix values sum to " + std::to_string(mix_sum) +
                              ", expected 1",
                          "/groups");
  }
  for (const auto& [id, bound] : inst.reference_bounds) {
    if (!group_ids.count(id)) {
      throw ValidationError("unknown group '" + id + "'", "/reference_bounds/" + id);
    }
    if (!std::isfinite(bound) || bound <= 0.0) {
      throw ValidationError("bound must be positive", "/reference_bounds/" + id);
    }
  }
}

double Caseload::Total() const {
  double sum = 0.0;
  for (double n : group) sum += n;
  return sum;
}

double CaseloadViolation(const HospitalInstance& inst, const Caseload& c) {
  double worst = 0.0;
  for (double n : c.group) worst = std::max(worst, -n);
  if (!c.subtype.empty()) {
    for (std::size_t g = 0; g < c.group.size() && g < c.subtype.size(); ++g) {
      double sum = 0.0;
      for (double n : c.subtype[g]) {
        worst = std::max(worst, -n);
        sum += n;
      }
      worst = std::max(worst, std::abs(sum - c.group[g]));
    }
  }
  if (!c.allocation.empty() && !c.subtype.empty()) {
    std::map<std::tuple<int, int, int>, double> assigned;
    std::vector<double> used(inst.resources.size(), 0.0);
    for (const Allocation& a : c.allocation) {
      worst = std::max(worst, -a.patients);
      assigned[{a.group, a.subtype, a.activity}] += a.patients;
      const Activity& act =
          inst.groups.at(a.group).subtypes.at(a.subtype).activities.at(a.activity);
      used.at(a.resource) += a.patients * act.duration_hours;
    }
    for (std::size_t g = 0; g < inst.groups.size() && g < c.subtype.size(); ++g) {
      const PatientGroup& grp = inst.groups[g];
      for (std::size_t p = 0; p < grp.subtypes.size() && p < c.subtype[g].size(); ++p) {
        const auto& acts = grp.subtypes[p].activities;
        for (std::size_t a = 0; a < acts.size(); ++a) {
          if (acts[a].duration_hours <= 0.0) continue;
          const auto it = assigned.find({static_cast<int>(g), static_cast<int>(p),
                                         static_cast<int>(a)});
          const double got = it == assigned.end() ? 0.0 : it->second;
          worst = std::max(worst, std::abs(got - c.subtype[g][p]));
        }
      }
    }
    for (std::size_t r = 0; r < used.size(); ++r) {
      worst = std::max(worst, used[r] - inst.Availability(static_cast<int>(r)));
    }
  }
  return worst;
}

}  // namespace casemix::model
