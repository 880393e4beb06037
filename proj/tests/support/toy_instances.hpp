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

#ifndef CASEMIX_TESTS_SUPPORT_TOY_INSTANCES_HPP_
#define CASEMIX_TESTS_SUPPORT_TOY_INSTANCES_HPP_

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "casemix/model/instance.hpp"

namespace casemix::testing {

// Group with one subtype and one activity per (duration, resources) entry.
inline model::PatientGroup SimpleGroup(
    std::string id, std::vector<std::pair<double, std::vector<std::string>>> acts) {
  model::PatientGroup g;
  g.id = std::move(id);
  model::Subtype s;
  s.id = "all";
  for (std::size_t i = 0; i < acts.size(); ++i) {
    s.activities.push_back({"a" + std::to_string(i), acts[i].first, acts[i].second});
  }
  g.subtypes.push_back(std::move(s));
  return g;
}

// One ward with 100 hours; A needs 1 hour, B needs 2. Bounds are (100, 50).
inline model::HospitalInstance ToyTwoGroup() {
  model::HospitalInstance inst;
  inst.name = "toy";
  inst.horizon_weeks = 1;
  inst.resources.push_back({"W", model::ResourceKind::kWard, 1, 100.0});
  inst.groups.push_back(SimpleGroup("A", {{1.0, {"W"}}}));
  inst.groups.push_back(SimpleGroup("B", {{2.0, {"W"}}}));
  return inst;
}

// Theatre of 40 hours and ward of 120 hours shared by three groups.
//   A: 1h theatre + 4h ward   B: 2h theatre + 2h ward   C: 6h ward
// Bounds: A = min(40, 30) = 30, B = min(20, 60) = 20, C = 20.
inline model::HospitalInstance ToyThreeGroup() {
  model::HospitalInstance inst;
  inst.name = "toy3";
  inst.horizon_weeks = 1;
  inst.resources.push_back({"T", model::ResourceKind::kTheatre, 1, 40.0});
  inst.resources.push_back({"W", model::ResourceKind::kWard, 1, 120.0});
  inst.groups.push_back(SimpleGroup("A", {{1.0, {"T"}}, {4.0, {"W"}}}));
  inst.groups.push_back(SimpleGroup("B", {{2.0, {"T"}}, {2.0, {"W"}}}));
  inst.groups.push_back(SimpleGroup("C", {{6.0, {"W"}}}));
  return inst;
}

// Random toy: up to 3 groups and 3 resources, horizon 1, one bed per
// resource with 20-100 hours, integer durations 1-5 on a single resource per
// activity. Every bound is at most 100.
inline model::HospitalInstance RandomToy(std::mt19937& rng) {
  std::uniform_int_distribution<int> count(1, 3), hours(20, 100), dur(1, 5);
  model::HospitalInstance inst;
  inst.name = "random";
  inst.horizon_weeks = 1;
  const int nr = count(rng), ng = count(rng);
  for (int r = 0; r < nr; ++r) {
    inst.resources.push_back({"R" + std::to_string(r), model::ResourceKind::kWard, 1,
                              static_cast<double>(hours(rng))});
  }
  for (int g = 0; g < ng; ++g) {
    std::vector<std::pair<double, std::vector<std::string>>> acts;
    for (int r = 0; r < nr; ++r) {
      if (r == g % nr || rng() % 2) {
        acts.push_back({static_cast<double>(dur(rng)), {"R" + std::to_string(r)}});
      }
    }
    inst.groups.push_back(SimpleGroup("G" + std::to_string(g), acts));
  }
  return inst;
}

}  // namespace casemix::testing

#endif  // CASEMIX_TESTS_SUPPORT_TOY_INSTANCES_HPP_
