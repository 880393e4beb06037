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

#include "casemix/sensitivity/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <map>
#include <string>
#include <thread>

#include "casemix/error.hpp"

namespace casemix::sensitivity {

using scalarize::AsfConfig;
using utility::OutputLevel;

std::string_view ToString(Objective o) { return o == Objective::kMmu ? "MMU" : "MSU"; }

Objective ParseObjective(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "mmu") return Objective::kMmu;
  if (s == "msu") return Objective::kMsu;
  throw ValidationError("unknown objective '" + std::string(text) + "' (mmu, msu)", "/objective");
}

AsfConfig ToAsf(Objective o) { return o == Objective::kMmu ? AsfConfig::Mmu() : AsfConfig::Msu(); }

namespace {

// Writes one swept value into a copy of the base spec.
void Apply(utility::UfSpec& s, const std::string& param, double v, std::optional<double> paired) {
  auto& p = s.params;
  if (param == "aspiration") {
    p.aspiration = OutputLevel::Fraction(v / 100.0);
  } else if (param == "indifference" || param == "intercept") {
    p.indifference = OutputLevel::Fraction(v / 100.0);
  } else if (param == "pair") {
    p.indifference = OutputLevel::Fraction(v / 100.0);
    p.aspiration = OutputLevel::Fraction(paired.value_or(100.0 - v) / 100.0);
  } else if (param == "reference") {
    p.reference = v / 100.0;
  } else if (param == "alpha") {
    p.alpha = v;
  } else if (param == "beta") {
    p.beta = v;
  } else if (param == "steepness") {
    p.steepness = v;
  } else if (param == "tier_utility") {
    p.tier_utility = v;
  } else if (param == "income") {
    p.income = v;
  } else if (param == "penalty") {
    p.penalty = v;
  } else if (param == "reward") {
    p.reward = v;
  } else {
    throw ValidationError("unknown sweep parameter '" + param + "'", "/parameter");
  }
}

}  // namespace

SweepReport RunSweep(const scalarize::Problem& problem, const SweepSpec& spec) {
  if (spec.values.empty()) throw ValidationError("no sweep values", "/values");
  if (spec.objectives.empty()) throw ValidationError("no objectives", "/objectives");
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    if (!std::isfinite(spec.values[i])) {
      throw ValidationError("sweep value must be finite", "/values/" + std::to_string(i));
    }
  }
  if (!spec.paired_values.empty() && spec.paired_values.size() != spec.values.size()) {
    throw ValidationError("paired values must match the values one to one", "/paired_values");
  }
  {
    utility::UfSpec probe = spec.base;
    Apply(probe, spec.parameter, spec.values.front(), std::nullopt);
  }

  SweepReport report;
  report.tmpl = spec.base.tmpl;
  report.parameter = spec.parameter;
  for (const auto& g : problem.instance.groups) report.groups.push_back(g.id);
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    for (Objective o : spec.objectives) {
      SweepRow row;
      row.value = spec.values[i];
      if (spec.parameter == "pair") {
        row.paired = spec.paired_values.empty() ? 100.0 - row.value : spec.paired_values[i];
      }
      row.objective = o;
      report.rows.push_back(row);
    }
  }

  auto run = [&](SweepRow& row) {
    try {
      utility::UfSpec s = spec.base;
      Apply(s, spec.parameter, row.value, row.paired);
      const std::vector<utility::UfSpec> specs(problem.instance.groups.size(), s);
      const auto plfs = scalarize::InstantiateAll(problem, specs);
      row.result = scalarize::SolveAsf(problem, plfs, ToAsf(row.objective));
      if (!row.result.ok()) row.error = row.result.message;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const int jobs = std::clamp(spec.jobs > 0 ? spec.jobs : hw, 1,
                              static_cast<int>(report.rows.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < report.rows.size(); i = next++) run(report.rows[i]);
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return report;
}

std::vector<double> ParseValues(std::string_view text) {
  auto number = [&](std::string_view part) {
    const std::string s(part);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
      throw ValidationError("bad number '" + s + "' in value list", "/values");
    }
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto a = text.find(':');
    const auto b = text.find(':', a + 1);
    if (b == std::string_view::npos) {
      throw ValidationError("range must be start:stop:step", "/values");
    }
    const double start = number(text.substr(0, a));
    const double stop = number(text.substr(a + 1, b - a - 1));
    const double step = number(text.substr(b + 1));
    if (step <= 0.0 || stop < start) {
      throw ValidationError("range needs a positive step and stop >= start", "/values");
    }
    const long count = std::lround(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto part = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    out.push_back(number(part));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<CaseMixRange> CaseMixDiff(const SweepReport& report,
                                      std::optional<Objective> objective) {
  std::vector<CaseMixRange> out;
  for (const SweepRow& row : report.rows) {
    if (objective && row.objective != *objective) continue;
    if (!row.ok() || row.result.zeroed || row.result.case_mix_pct.empty()) continue;
    if (out.empty()) {
      for (std::size_t g = 0; g < report.groups.size(); ++g) {
        const double pct = row.result.case_mix_pct[g];
        out.push_back({report.groups[g], pct, pct, 0.0});
      }
      continue;
    }
    for (std::size_t g = 0; g < out.size(); ++g) {
      const double pct = row.result.case_mix_pct[g];
      out[g].min_pct = std::min(out[g].min_pct, pct);
      out[g].max_pct = std::max(out[g].max_pct, pct);
    }
  }
  for (auto& r : out) r.range = r.max_pct - r.min_pct;
  return out;
}

std::string FormatNumber(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

namespace {

std::string Status(const SweepRow& row) {
  // Rows whose utilities could not be built never reached the solver.
  if (!row.error.empty() && row.result.message.empty()) return "invalid";
  return std::string(solver::ToString(row.result.status));
}

std::string ValueCell(const SweepRow& row) {
  std::string v = FormatNumber(row.value);
  if (row.paired) v += "/" + FormatNumber(*row.paired);
  return v;
}

}  // namespace

void WriteSweepCsv(const SweepReport& report, std::ostream& out) {
  out << "value,objective,N,sum_u,min_u,zeroed,status\n";
  for (const SweepRow& row : report.rows) {
    out << ValueCell(row) << ',' << ToString(row.objective) << ',';
    if (row.ok()) {
      out << FormatNumber(row.result.throughput) << ',' << FormatNumber(row.result.sum_u) << ','
          << FormatNumber(row.result.min_u) << ',' << (row.result.zeroed ? "true" : "false");
    } else {
      out << ",,,";
    }
    out << ',' << Status(row) << '\n';
  }
}

void WriteCaseMixCsv(const SweepReport& report, std::ostream& out) {
  out << "value,objective";
  for (const auto& g : report.groups) out << ',' << g;
  out << '\n';
  for (const SweepRow& row : report.rows) {
    out << ValueCell(row) << ',' << ToString(row.objective);
    const bool usable = row.ok() && !row.result.case_mix_pct.empty();
    for (std::size_t g = 0; g < report.groups.size(); ++g) {
      out << ',';
      if (usable) out << FormatNumber(row.result.case_mix_pct[g]);
    }
    out << '\n';
  }
}

void WriteCaseMixDiffCsv(const SweepReport& report, std::ostream& out) {
  out << "group,objective,min_pct,max_pct,range\n";
  for (Objective o : {Objective::kMmu, Objective::kMsu}) {
    for (const CaseMixRange& r : CaseMixDiff(report, o)) {
      out << r.group << ',' << ToString(o) << ',' << FormatNumber(r.min_pct) << ','
          << FormatNumber(r.max_pct) << ',' << FormatNumber(r.range) << '\n';
    }
  }
}

}  // namespace casemix::sensitivity
