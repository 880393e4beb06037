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

#ifndef CASEMIX_IO_JSON_HPP_
#define CASEMIX_IO_JSON_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "casemix/model/instance.hpp"
#include "casemix/pareto/pareto.hpp"
#include "casemix/scalarize/scalarize.hpp"
#include "casemix/sensitivity/sweep.hpp"
#include "casemix/utility/catalog.hpp"
#include <json.hpp>

namespace casemix::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Instances. Parse errors are ValidationError with a JSON pointer to the
// offending field; the parsed instance is also run through model::Validate.
model::HospitalInstance ParseInstance(const Json& j);
Json InstanceToJson(const model::HospitalInstance& instance);
model::HospitalInstance LoadInstance(const std::string& path);

// Utility configuration: an optional "default" entry plus entries keyed by
// group id. A group entry replaces the default as a whole. Output levels
// are given in patients ("aspiration") or as a percentage of the group's
// bound ("aspiration_pct").
struct UfConfig {
  std::optional<utility::UfSpec> fallback;
  std::map<std::string, utility::UfSpec> groups;
};

utility::UfSpec ParseUfSpec(const Json& j, const std::string& path = "");
Json UfSpecToJson(const utility::UfSpec& spec);
UfConfig ParseUfConfig(const Json& j);
Json UfConfigToJson(const UfConfig& config);
UfConfig LoadUfConfig(const std::string& path);

// One checked spec per group in instance order. Rejects unknown group keys,
// groups without an entry and levels above the bound, with paths such as
// "/CARD/aspiration".
std::vector<utility::UfSpec> ResolveUfConfig(const UfConfig& config,
                                             const model::HospitalInstance& instance,
                                             const std::vector<double>& bounds);

// Reports. Numbers are rounded to 6 decimals.
double Round6(double v);
Json BoundsToJson(const model::HospitalInstance& instance, const std::vector<double>& bounds,
                  std::string_view source);
Json CaseloadToJson(const model::HospitalInstance& instance, const model::Caseload& caseload);
// Accepts a caseload object or a solve result carrying one under "groups".
model::Caseload ParseCaseload(const Json& j, const model::HospitalInstance& instance);
Json SolveResultToJson(const model::HospitalInstance& instance,
                       const scalarize::SolveResult& result);
scalarize::SolveResult ParseSolveResult(const Json& j, const model::HospitalInstance& instance);
Json SweepReportToJson(const sensitivity::SweepReport& report);
Json ParetoReportToJson(const model::HospitalInstance& instance,
                        const pareto::ParetoReport& report);

enum class Format { kJson, kCsv };
Format ParseFormat(std::string_view text);

Json ReadJsonFile(const std::string& path);
// Throws IoError when the file cannot be written.
void WriteTextFile(const std::string& path, const std::string& text);
void WriteJsonFile(const std::string& path, const Json& j);

// JSON, or CSV with one row per group (id,n,utility,case_mix_pct).
void WriteResult(const model::HospitalInstance& instance, const scalarize::SolveResult& result,
                 const std::string& path, Format format);
// JSON, or the sweep CSV (value,objective,N,sum_u,min_u,zeroed,status).
void WriteReport(const sensitivity::SweepReport& report, const std::string& path, Format format);

}  // namespace casemix::io

#endif  // CASEMIX_IO_JSON_HPP_
