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

#ifndef CASEMIX_MODEL_INSTANCE_HPP_
#define CASEMIX_MODEL_INSTANCE_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace casemix::model {

enum class ResourceKind { kTheatre, kWard, kIcu };

std::string_view ToString(ResourceKind kind);
// Throws ValidationError for anything but "theatre", "ward" or "icu".
ResourceKind ParseResourceKind(std::string_view text);

struct Resource {
  std::string id;
  ResourceKind kind = ResourceKind::kWard;
  int bed_count = 1;
  double weekly_hours = 168.0;  // per bed or room
};

struct Activity {
  std::string id;
  double duration_hours = 0.0;
  std::vector<std::string> eligible_resources;
};

struct Subtype {
  std::string id;
  double mix_fraction = 1.0;
  std::vector<Activity> activities;
};

struct PatientGroup {
  std::string id;
  std::string name;  // display only
  std::vector<Subtype> subtypes;
  std::optional<double> group_mix;
};

struct HospitalInstance {
  std::string name;
  int horizon_weeks = 52;
  std::vector<Resource> resources;
  std::vector<PatientGroup> groups;
  // Published per-group bounds, used in place of computed ones on request.
  std::map<std::string, double> reference_bounds;

  int GroupIndex(std::string_view id) const;     // -1 when absent
  int ResourceIndex(std::string_view id) const;  // -1 when absent
  // Total hours of resource r over the horizon.
  double Availability(int r) const;
};

// Throws ValidationError whose path points at the offending field, e.g.
// "/groups/3/subtypes" for a sub-mix that does not sum to one.
void Validate(const HospitalInstance& instance);

struct Allocation {
  int group = 0;
  int subtype = 0;
  int activity = 0;  // index within the subtype's activity list
  int resource = 0;
  double patients = 0.0;
};

// Patients treated over the horizon.
struct Caseload {
  std::vector<double> group;                 // n_g
  std::vector<std::vector<double>> subtype;  // n_{g,p}; may be empty
  std::vector<Allocation> allocation;        // beta_{a,r}; may be empty

  double Total() const;
};

// Largest violation of: nonnegativity, n_g = sum_p n_{g,p}, n_{g,p} =
// sum_r beta_{a,r} for every timed activity, and resource capacity. Parts
// that are absent from the caseload are skipped.
double CaseloadViolation(const HospitalInstance& instance, const Caseload& caseload);

}  // namespace casemix::model

#endif  // CASEMIX_MODEL_INSTANCE_HPP_
