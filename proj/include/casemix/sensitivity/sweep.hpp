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

#ifndef CASEMIX_SENSITIVITY_SWEEP_HPP_
#define CASEMIX_SENSITIVITY_SWEEP_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "casemix/scalarize/scalarize.hpp"
#include "casemix/utility/catalog.hpp"

namespace casemix::sensitivity {

enum class Objective { kMmu, kMsu };

std::string_view ToString(Objective o);
Objective ParseObjective(std::string_view text);
scalarize::AsfConfig ToAsf(Objective o);

// One ASF solve per (value, objective) with the same utility template on
// every group. Output levels (indifference, aspiration) and the UF7
// reference are percentages of each group's own bound; other parameters are
// taken as given. Parameter "pair" sweeps indifference and aspiration
// together: values are indifference percentages and `paired_values` the
// matching aspirations, zipped in order (100 - value when left empty).
struct SweepSpec {
  utility::UfSpec base;
  std::string parameter;
  std::vector<double> values;
  std::vector<double> paired_values;
  std::vector<Objective> objectives{Objective::kMmu, Objective::kMsu};
  int jobs = 0;  // 0 means one per hardware thread
};

struct SweepRow {
  double value = 0.0;
  std::optional<double> paired;
  Objective objective = Objective::kMmu;
  scalarize::SolveResult result;
  std::string error;  // set when the run could not be set up or solved

  bool ok() const { return error.empty() && result.ok(); }
};

struct SweepReport {
  utility::Template tmpl = utility::Template::kUF1;
  std::string parameter;
  std::vector<std::string> groups;
  std::vector<SweepRow> rows;  // values outer, objectives inner
};

// Throws ValidationError for an empty or unknown parameter or value list;
// failures of single runs are recorded on their rows.
SweepReport RunSweep(const scalarize::Problem& problem, const SweepSpec& spec);

// Parses "10:90:10" (inclusive range) or "10,20,35".
std::vector<double> ParseValues(std::string_view text);

struct CaseMixRange {
  std::string group;
  double min_pct = 0.0;
  double max_pct = 0.0;
  double range = 0.0;
};

// Spread of each group's share 100 n_g / N over the usable runs, optionally
// restricted to one objective. Zeroed and failed runs are skipped; the
// result is empty when no run is usable.
std::vector<CaseMixRange> CaseMixDiff(const SweepReport& report,
                                      std::optional<Objective> objective = std::nullopt);

// Comma separated, LF line ends, 6 decimals.
// value,objective,N,sum_u,min_u,zeroed,status
void WriteSweepCsv(const SweepReport& report, std::ostream& out);
// value,objective,<group>... with case-mix percentages.
void WriteCaseMixCsv(const SweepReport& report, std::ostream& out);
// group,objective,min_pct,max_pct,range
void WriteCaseMixDiffCsv(const SweepReport& report, std::ostream& out);

// Fixed 6-decimal rendering shared by every text emitter.
std::string FormatNumber(double v);

}  // namespace casemix::sensitivity

#endif  // CASEMIX_SENSITIVITY_SWEEP_HPP_
