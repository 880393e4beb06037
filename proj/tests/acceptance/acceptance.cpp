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

// Acceptance runner. Prints one PASS/FAIL line per criterion, with indented
// detail lines below it, and exits nonzero when any criterion fails.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "casemix/io/json.hpp"
#include "casemix/model/cmp.hpp"
#include "casemix/pareto/pareto.hpp"
#include "casemix/scalarize/scalarize.hpp"
#include "support/oracle_suite.hpp"
#include "support/property_suite.hpp"

namespace {

using namespace casemix;
using scalarize::AsfConfig;
using scalarize::Problem;
using scalarize::SolveResult;
using utility::OutputLevel;
using utility::Template;
using Clock = std::chrono::steady_clock;

double Since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Criterion {
  std::string name;
  bool pass = true;
  std::vector<std::string> details;

  // Records one check; the criterion fails when any check fails.
  void Check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4))) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    details.push_back(std::string(ok ? "  ok    " : "  MISS  ") + buf);
    pass = pass && ok;
  }
};

bool Rel(double got, double want, double tol) { return std::abs(got - want) <= tol * std::abs(want); }

// Published per-group limits and their total.
const std::map<std::string, double> kPublishedBounds = {
    {"CARD", 2427.78}, {"ENDO", 2817.25}, {"ENT", 4884.2},   {"FMAX", 1820.53}, {"GAST", 5301.99},
    {"GYN", 5109.98},  {"HEP", 3261.53},  {"IMMU", 2652.76}, {"NEPH", 4219.99}, {"NEUR", 2470.08},
    {"ONC", 1278.37},  {"OPHT", 6083.21}, {"ORTH", 1999.34}, {"PLAS", 1507.43}, {"PSY", 1012.60},
    {"RESP", 3297.35}, {"TRANS", 235.61}, {"UROL", 3048.02}, {"VASC", 649.9}};
constexpr double kPublishedTotal = 54077.91;

std::vector<utility::UfSpec> Uniform(const Problem& p, const utility::UfSpec& spec) {
  return std::vector<utility::UfSpec>(p.bounds.size(), spec);
}

SolveResult Asf(const Problem& p, const utility::UfSpec& spec, const AsfConfig& config) {
  return scalarize::SolveAsf(p, scalarize::InstantiateAll(p, Uniform(p, spec)), config);
}

utility::UfSpec Spec(Template t) {
  utility::UfSpec s;
  s.tmpl = t;
  return s;
}

Criterion Bounds(const model::HospitalInstance& inst) {
  Criterion c{"Case-study bounds within 1% and runtime <= 30 s"};
  const auto start = Clock::now();
  const auto bounds = model::ComputeUpperBounds(inst);
  const double seconds = Since(start);
  double total = 0.0;
  for (std::size_t g = 0; g < bounds.size(); ++g) {
    const auto& id = inst.groups[g].id;
    const double want = kPublishedBounds.at(id);
    total += bounds[g];
    c.Check(Rel(bounds[g], want, 0.01), "%-5s %10.2f vs %10.2f (%+.2f%%)", id.c_str(), bounds[g],
            want, 100.0 * (bounds[g] / want - 1.0));
  }
  c.Check(Rel(total, kPublishedTotal, 0.01), "TOTAL %10.2f vs %10.2f (%+.2f%%)", total,
          kPublishedTotal, 100.0 * (total / kPublishedTotal - 1.0));
  // Ward 3C alone limits cardiac surgery: 28 beds, 168 h, 52 weeks, 171.35 h
  // per stay, 58.8% of cardiac patients.
  const double card = 28.0 * 168.0 * 52.0 / 171.35 / 0.588;
  const double got = bounds[inst.GroupIndex("CARD")];
  c.Check(Rel(got, card, 1e-6), "CARD hand check %.2f vs %.2f", got, card);
  c.Check(seconds <= 30.0, "runtime %.3f s", seconds);
  return c;
}

Criterion GoalMethods(const Problem& p, SolveResult* gam_out) {
  Criterion c{"Goal attainment and goal programming case study"};
  const auto gam = scalarize::SolveGam(p, {});
  *gam_out = gam;
  c.Check(gam.ok(), "GAM status %s", std::string(solver::ToString(gam.status)).c_str());
  c.Check(Rel(gam.throughput, 22389.66, 0.01), "GAM N %.2f vs 22389.66", gam.throughput);
  c.Check(Rel(gam.sum_u, 513.55, 0.01), "GAM sum u %.2f vs 513.55", gam.sum_u);
  c.Check(std::abs(gam.min_u) <= 1.0, "GAM min u %.2f vs 0", gam.min_u);
  const auto minimax = scalarize::SolveGpm(p, {}, scalarize::GpmMode::kMinimaxUnder);
  c.Check(minimax.ok() && std::abs(minimax.min_u - 36.03) <= 1.0,
          "GPM minimax-under min u %.2f vs 36.03", minimax.min_u);
  const auto sum = scalarize::SolveGpm(p, {}, scalarize::GpmMode::kSum);
  c.Check(sum.ok() && Rel(sum.throughput, 31663.97, 0.01), "GPM sum N %.2f vs 31663.97",
          sum.throughput);
  return c;
}

struct SpotRun {
  std::string label;
  SolveResult result;
  bool msu_should_pass = false;
};

Criterion SpotSuite(const Problem& p, std::vector<SpotRun>* runs) {
  Criterion c{"Utility template spot suite"};
  double bound_total = 0.0;
  for (double b : p.bounds) bound_total += b;
  const double groups = static_cast<double>(p.bounds.size());

  for (int pct : {10, 20, 30}) {
    auto s = Spec(Template::kUF3);
    s.params.aspiration = OutputLevel::Fraction(pct / 100.0);
    const auto r = Asf(p, s, AsfConfig::Mmu());
    const double want = pct / 100.0 * kPublishedTotal;
    c.Check(r.ok() && Rel(r.throughput, want, 0.01) && std::abs(r.sum_u - 100.0 * groups) <= 1e-3 &&
                std::abs(r.min_u - 100.0) <= 1e-3,
            "UF3 ASPT@%d%% MMU: N %.2f vs %.2f, sum u %.2f vs %.0f, min u %.2f vs 100", pct,
            r.throughput, want, r.sum_u, 100.0 * groups, r.min_u);
    runs->push_back({"UF3 ASPT@" + std::to_string(pct) + "% MMU", r});
  }
  {
    const auto r = Asf(p, Spec(Template::kUF1), AsfConfig::Msu());
    c.Check(r.ok() && Rel(r.throughput, 31663.97, 0.01), "UF1 MSU: N %.2f vs 31663.97",
            r.throughput);
    runs->push_back({"UF1 MSU", r, true});
  }
  {
    auto s = Spec(Template::kUF2);
    s.params.indifference = OutputLevel::Fraction(0.4);
    const auto r = Asf(p, s, AsfConfig::Mmu());
    c.Check(r.ok() && r.zeroed, "UF2 PTOI@40%% MMU: zeroed=%d N %.2f", r.zeroed, r.throughput);
    runs->push_back({"UF2 PTOI@40% MMU", r});
  }
  for (int pct : {5, 10, 20, 50}) {
    auto s = Spec(Template::kUF5);
    const double i = pct / 100.0;
    s.params.indifference = OutputLevel::Fraction(i);
    const auto r = Asf(p, s, AsfConfig::Msu());
    const double want = -100.0 * i / (1.0 - i);
    c.Check(r.ok() && std::abs(r.min_u - want) <= 0.5, "UF5 PTOI@%d%% MSU: min u %.2f vs %.2f", pct,
            r.min_u, want);
    runs->push_back({"UF5 PTOI@" + std::to_string(pct) + "% MSU", r, true});
  }
  for (int pct = 40; pct <= 90; pct += 10) {
    auto s = Spec(Template::kUF8);
    s.params.aspiration = OutputLevel::Fraction(pct / 100.0);
    const auto r = Asf(p, s, AsfConfig::Mmu());
    c.Check(r.ok() && r.zeroed, "UF8 ASPT@%d%% MMU: zeroed=%d N %.2f", pct, r.zeroed, r.throughput);
    runs->push_back({"UF8 ASPT@" + std::to_string(pct) + "% MMU", r});
  }
  {
    auto s = Spec(Template::kUF11);
    s.params.indifference = OutputLevel::Fraction(1.0);
    runs->push_back({"UF11@100% MSU", Asf(p, s, AsfConfig::Msu()), true});
  }
  (void)bound_total;
  return c;
}

Criterion ParetoPattern(const Problem& p, const std::vector<SpotRun>& runs, const SolveResult& gam) {
  Criterion c{"Pareto audit pattern"};
  for (const auto& run : runs) {
    if (!run.result.ok()) {
      c.Check(false, "%s: no caseload (%s)", run.label.c_str(), run.result.message.c_str());
      continue;
    }
    const auto report = pareto::CheckPareto(p, run.result.caseload);
    const bool mmu = run.label.find("MMU") != std::string::npos;
    if (mmu) {
      c.Check(!report.is_pareto && report.diff > 0.0, "%s: dominated, diff %.2f", run.label.c_str(),
              report.diff);
    } else if (run.msu_should_pass) {
      c.Check(report.is_pareto && report.diff <= 1e-4 * report.base_throughput,
              "%s: Pareto optimal, diff %.4f", run.label.c_str(), report.diff);
    }
  }
  if (gam.ok()) {
    const auto report = pareto::CheckPareto(p, gam.caseload);
    c.Check(Rel(report.corrected_throughput, 33530.74, 0.01), "GAM corrected N %.2f vs 33530.74",
            report.corrected_throughput);
  } else {
    c.Check(false, "GAM corrected N: GAM failed");
  }
  return c;
}

Criterion Oracles(Clock::time_point program_start) {
  Criterion c{"Oracle equivalence and encoding exactness within 5 min total"};
  const auto grid = testing::RunOracleSuite(60, 2024);
  c.Check(grid.failures == 0 && grid.cases >= 200,
          "grid oracle: 60 random toys, %d cases, %d failures %s", grid.cases, grid.failures,
          grid.first_failure.c_str());
  const auto enc = testing::EncodingExactnessSuite(260, 99);
  c.Check(enc.failures == 0 && enc.cases >= 500,
          "encoding exactness: %d cases over all templates, %d failures %s", enc.cases,
          enc.failures, enc.first_failure.c_str());
  const double seconds = Since(program_start);
  c.Check(seconds <= 300.0, "full suite runtime %.1f s", seconds);
  return c;
}

Criterion Properties() {
  Criterion c{"Property suites"};
  const std::vector<std::pair<std::string, testing::OracleTally>> suites = {
      {"UF2/UF3/UF4 collapse to UF1", testing::CollapseSuite(50, 17)},
      {"monotone evaluate", testing::MonotoneSuite(25, 3)},
      {"GPM complementarity", testing::GpmComplementaritySuite(40, 33)},
      {"repair idempotence", testing::RepairIdempotenceSuite(40, 34)}};
  for (const auto& [name, t] : suites) {
    c.Check(t.failures == 0 && t.cases > 0, "%s: %d cases, %d failures %s", name.c_str(), t.cases,
            t.failures, t.first_failure.c_str());
  }
  return c;
}

}  // namespace

int main() {
  const auto start = Clock::now();
  const auto inst = io::LoadInstance(std::string(CASEMIX_DATA_DIR) + "/princess_alexandra.json");
  // The published limits drive every utility and goal, as in the case study.
  const Problem problem = scalarize::MakeProblem(inst, model::BoundsSource::kReference);

  std::vector<Criterion> criteria;
  criteria.push_back(Bounds(inst));
  SolveResult gam;
  criteria.push_back(GoalMethods(problem, &gam));
  std::vector<SpotRun> runs;
  criteria.push_back(SpotSuite(problem, &runs));
  criteria.push_back(ParetoPattern(problem, runs, gam));
  Criterion properties = Properties();
  criteria.push_back(Oracles(start));
  criteria.push_back(std::move(properties));

  int failed = 0;
  for (const auto& c : criteria) {
    std::printf("%s %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str());
    for (const auto& d : c.details) std::printf("%s\n", d.c_str());
    failed += c.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed (%.1f s)\n", static_cast<int>(criteria.size()) - failed,
              criteria.size(), Since(start));
  return failed == 0 ? 0 : 1;
}
