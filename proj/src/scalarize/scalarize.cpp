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

#include "casemix/scalarize/scalarize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "casemix/error.hpp"

namespace casemix::scalarize {

using model::CmpModel;
using solver::LinearExpr;
using solver::ObjectiveSense;
using solver::Sense;
using solver::SolveStatusCode;
using solver::VarId;

namespace {

constexpr double kFloorSlack = 1e-7;

CmpModel CappedModel(const Problem& p) {
  CmpModel m = model::BuildModel(p.instance);
  model::AddOutputCaps(m, p.bounds);
  return m;
}

std::string Index(std::size_t i) { return std::to_string(i); }

void CheckSize(const std::vector<double>& v, std::size_t n, const char* path) {
  if (!v.empty() && v.size() != n) {
    throw ValidationError("expected " + std::to_string(n) + " values, got " +
                              std::to_string(v.size()),
                          path);
  }
}

double At(const std::vector<double>& v, std::size_t i, double fallback) {
  return v.empty() ? fallback : v[i];
}

// Caseload, N, case mix and summary utilities. Marks the result an error if
// the caseload breaks the model's invariants beyond round-off.
void Fill(SolveResult& r, const Problem& p, const CmpModel& m,
          const solver::SolveStatus& s) {
  r.status = s.code;
  r.message = s.message;
  r.stats = s.stats;
  r.objective = s.objective;
  if (!s.optimal()) return;
  r.caseload = m.Extract(s.values);
  r.throughput = r.caseload.Total();
  const double violation = model::CaseloadViolation(p.instance, r.caseload);
  if (violation > 1e-6 * std::max(1.0, r.throughput)) {
    r.status = SolveStatusCode::kError;
    r.message = "solution violates capacity or linking rows by " + std::to_string(violation);
  }
}

void Summarize(SolveResult& r) {
  r.sum_u = 0.0;
  r.min_u = r.utilities.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (double u : r.utilities) {
    r.sum_u += u;
    r.min_u = std::min(r.min_u, u);
  }
  r.zeroed = r.ok() && r.throughput < 1e-6 && r.min_u <= 0.0;
  r.case_mix_pct.clear();
  if (r.ok() && r.throughput > 1e-9) {
    for (double n : r.caseload.group) r.case_mix_pct.push_back(100.0 * n / r.throughput);
  }
}

void RelativeUtilities(SolveResult& r, const Problem& p) {
  r.utilities.clear();
  if (!r.ok()) return;
  for (std::size_t g = 0; g < r.caseload.group.size(); ++g) {
    const double b = p.bounds[g];
    r.utilities.push_back(b > 0.0 ? 100.0 * std::min(r.caseload.group[g], b) / b : 0.0);
  }
}

std::vector<double> ResolveGoals(const Problem& p, const GoalConfig& c) {
  const std::size_t n = p.instance.groups.size();
  if (c.goals.empty()) return p.bounds;
  CheckSize(c.goals, n, "/goals");
  for (std::size_t g = 0; g < n; ++g) {
    const double goal = c.goals[g];
    if (!std::isfinite(goal) || goal < 0.0 || goal > p.bounds[g] * (1.0 + 1e-9)) {
      throw ValidationError("goal " + std::to_string(goal) + " for group '" +
                                p.instance.groups[g].id + "' is outside [0, " +
                                std::to_string(p.bounds[g]) + "]",
                            "/goals/" + Index(g));
    }
  }
  return c.goals;
}

void CheckNonnegative(const std::vector<double>& w, const char* path) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i]) || w[i] < 0.0) {
      throw ValidationError("weight must be finite and nonnegative",
                            std::string(path) + "/" + Index(i));
    }
  }
}

void Prime(Problem& p) {
  if (p.bounds.size() != p.instance.groups.size()) {
    throw ValidationError("expected one bound per group", "/bounds");
  }
}

}  // namespace

Problem MakeProblem(model::HospitalInstance instance, model::BoundsSource source,
                    const solver::SolveOptions& options) {
  Problem p;
  p.bounds = model::ResolveBounds(instance, source, options);
  p.instance = std::move(instance);
  p.solve = options;
  return p;
}

std::vector<utility::Plf> InstantiateAll(const Problem& problem,
                                         const std::vector<utility::UfSpec>& specs) {
  const auto& groups = problem.instance.groups;
  if (specs.size() != groups.size()) {
    throw ValidationError("expected one utility per group", "/groups");
  }
  std::vector<utility::Plf> out;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    try {
      out.push_back(utility::Instantiate(specs[g], problem.bounds.at(g)));
    } catch (const ValidationError& e) {
      throw ValidationError(e.detail(), "/groups/" + groups[g].id + e.path());
    }
  }
  return out;
}

SolveResult SolveAsf(const Problem& problem, const std::vector<utility::Plf>& plfs,
                     const AsfConfig& config) {
  Problem p = problem;
  Prime(p);
  const std::size_t n = p.instance.groups.size();
  if (!(config.eps1 >= 0.0) || !(config.eps2 >= 0.0) || !std::isfinite(config.eps1) ||
      !std::isfinite(config.eps2)) {
    throw ValidationError("eps1 and eps2 must be finite and nonnegative", "/eps1");
  }
  if (config.eps1 + config.eps2 <= 0.0) {
    throw ValidationError("eps1 + eps2 must be positive", "/eps1");
  }
  if (plfs.size() != n) throw ValidationError("expected one utility per group", "/groups");
  CheckSize(config.weights, n, "/weights");
  for (std::size_t g = 0; g < config.weights.size(); ++g) {
    if (!std::isfinite(config.weights[g]) || config.weights[g] <= 0.0) {
      throw ValidationError("weight must be positive", "/weights/" + Index(g));
    }
  }

  CmpModel m = CappedModel(p);
  std::vector<solver::EncodedUtility> enc;
  for (std::size_t g = 0; g < n; ++g) {
    enc.push_back(solver::EncodePlf(m.program, m.n[g], plfs[g],
                                    "u_" + p.instance.groups[g].id, p.encode));
  }
  LinearExpr asf;
  if (config.eps1 > 0.0 && n > 0) {
    const VarId z = m.program.AddVariable("z", -solver::kInfinity, solver::kInfinity);
    for (std::size_t g = 0; g < n; ++g) {
      m.program.AddConstraint("min_" + p.instance.groups[g].id,
                              LinearExpr(z).Add(enc[g].u, -At(config.weights, g, 1.0)),
                              Sense::kLessEqual, 0.0);
    }
    asf.Add(z, config.eps1);
  }
  if (config.eps2 > 0.0) {
    for (std::size_t g = 0; g < n; ++g) asf.Add(enc[g].u, config.eps2 * At(config.weights, g, 1.0));
  }
  m.program.SetObjective(ObjectiveSense::kMaximize, asf);

  // Achievement of a list of utilities.
  auto achievement = [&](const std::vector<double>& u) {
    double lo = std::numeric_limits<double>::infinity(), sum = 0.0;
    for (std::size_t g = 0; g < n; ++g) {
      const double wu = At(config.weights, g, 1.0) * u[g];
      lo = std::min(lo, wu);
      sum += wu;
    }
    return (n > 0 ? config.eps1 * lo : 0.0) + config.eps2 * sum;
  };

  SolveResult r;
  solver::SolveStatus s = solver::Solve(m.program, p.solve);
  if (s.optimal() && config.lexicographic) {
    const double keep = s.objective - 1e-6;
    solver::Program second = m.program;
    second.AddConstraint("asf_floor", asf, Sense::kGreaterEqual, keep);
    second.SetObjective(ObjectiveSense::kMaximize, m.throughput);
    solver::SolveStatus s2 = solver::Solve(second, p.solve);
    s2.stats.iterations += s.stats.iterations;
    s2.stats.nodes += s.stats.nodes;
    s2.stats.wall_seconds += s.stats.wall_seconds;
    s = std::move(s2);
  }
  Fill(r, p, m, s);
  if (!r.ok()) return r;

  for (std::size_t g = 0; g < n; ++g) {
    const double x = std::clamp(solver::SnappedOutput(enc[g], s.values), 0.0,
                                plfs[g].domain_max());
    r.utilities.push_back(plfs[g].Evaluate(x));
  }
  r.objective = achievement(r.utilities);

  // Treating nobody is preferred among equally good plans, as a planner
  // would read an all-flat optimum.
  if (!config.lexicographic && r.throughput > 0.0) {
    std::vector<double> u0;
    for (const auto& plf : plfs) u0.push_back(plf.Evaluate(0.0));
    const double a0 = achievement(u0);
    if (a0 >= r.objective - 1e-6 * std::max(1.0, std::abs(r.objective))) {
      r.caseload = model::Caseload{};
      r.caseload.group.assign(n, 0.0);
      for (const auto& grp : p.instance.groups) {
        r.caseload.subtype.emplace_back(grp.subtypes.size(), 0.0);
      }
      r.throughput = 0.0;
      r.utilities = u0;
      r.objective = a0;
    }
  }
  Summarize(r);
  return r;
}

SolveResult SolveGam(const Problem& problem, const GoalConfig& config) {
  Problem p = problem;
  Prime(p);
  const std::size_t n = p.instance.groups.size();
  const std::vector<double> goals = ResolveGoals(p, config);
  CheckSize(config.weights, n, "/weights");
  for (std::size_t g = 0; g < config.weights.size(); ++g) {
    if (!std::isfinite(config.weights[g])) {
      throw ValidationError("weight must be finite", "/weights/" + Index(g));
    }
  }

  CmpModel m = CappedModel(p);
  const VarId delta = m.program.AddVariable("delta");
  bool negative = false;
  for (std::size_t g = 0; g < n; ++g) {
    const double w = config.weights.empty() ? goals[g] : config.weights[g];
    negative = negative || w < 0.0;
    const std::string& id = p.instance.groups[g].id;
    if (config.sides != GamSides::kUnder) {
      m.program.AddConstraint("over_" + id, LinearExpr(m.n[g]).Add(delta, -w),
                              Sense::kLessEqual, goals[g]);
    }
    if (config.sides != GamSides::kOver) {
      m.program.AddConstraint("under_" + id, LinearExpr(m.n[g]).Add(delta, w),
                              Sense::kGreaterEqual, goals[g]);
    }
  }
  m.program.SetObjective(ObjectiveSense::kMinimize, LinearExpr(delta));

  SolveResult r;
  const solver::SolveStatus s = solver::Solve(m.program, p.solve);
  Fill(r, p, m, s);
  if (s.code == SolveStatusCode::kInfeasible) {
    r.message = negative
                    ? "goal attainment infeasible: negative weights demand that goals "
                      "be exceeded or never reached"
                    : "goal attainment infeasible";
  }
  if (r.ok()) r.delta = std::max(0.0, s.values[delta.index]);
  RelativeUtilities(r, p);
  Summarize(r);
  return r;
}

std::string_view ToString(GpmMode mode) {
  return mode == GpmMode::kSum ? "sum" : "minimax-under";
}

GpmMode ParseGpmMode(std::string_view text) {
  if (text == "sum") return GpmMode::kSum;
  if (text == "minimax-under" || text == "minimax_under") return GpmMode::kMinimaxUnder;
  throw ValidationError("unknown goal programming mode '" + std::string(text) +
                            "' (sum, minimax-under)",
                        "/mode");
}

namespace {

struct Deviations {
  std::vector<VarId> over, under, lambda;
};

// n_g = target_g + over_g - under_g, over_g <= lambda_g (bound_g - target_g),
// under_g <= (1 - lambda_g) target_g.
Deviations AddDeviations(CmpModel& m, const Problem& p, const std::vector<double>& target) {
  Deviations d;
  for (std::size_t g = 0; g < target.size(); ++g) {
    const std::string& id = p.instance.groups[g].id;
    const double room = std::max(0.0, p.bounds[g] - target[g]);
    const VarId over = m.program.AddVariable("dplus_" + id, 0.0, room);
    const VarId under = m.program.AddVariable("dminus_" + id, 0.0, target[g]);
    const VarId lambda = m.program.AddBinary("lambda_" + id);
    m.program.AddConstraint("dev_" + id, LinearExpr(m.n[g]).Add(over, -1.0).Add(under, 1.0),
                            Sense::kEqual, target[g]);
    m.program.AddConstraint("dplus_cap_" + id, LinearExpr(over).Add(lambda, -room),
                            Sense::kLessEqual, 0.0);
    m.program.AddConstraint("dminus_cap_" + id, LinearExpr(under).Add(lambda, target[g]),
                            Sense::kLessEqual, target[g]);
    d.over.push_back(over);
    d.under.push_back(under);
    d.lambda.push_back(lambda);
  }
  return d;
}

void ReadDeviations(SolveResult& r, const Deviations& d, const std::vector<double>& values) {
  r.over.clear();
  r.under.clear();
  for (std::size_t g = 0; g < d.over.size(); ++g) {
    r.over.push_back(std::max(0.0, values[d.over[g].index]));
    r.under.push_back(std::max(0.0, values[d.under[g].index]));
  }
}

}  // namespace

SolveResult SolveGpm(const Problem& problem, const GoalConfig& config, GpmMode mode) {
  Problem p = problem;
  Prime(p);
  const std::size_t n = p.instance.groups.size();
  const std::vector<double> goals = ResolveGoals(p, config);
  CheckSize(config.over_weights, n, "/over_weights");
  CheckSize(config.under_weights, n, "/under_weights");
  CheckNonnegative(config.over_weights, "/over_weights");
  CheckNonnegative(config.under_weights, "/under_weights");
  std::vector<double> scale(n, 1.0);
  if (config.relative) {
    for (std::size_t g = 0; g < n; ++g) {
      if (goals[g] <= 0.0) {
        throw ValidationError("relative deviations need a positive goal for group '" +
                                  p.instance.groups[g].id + "'",
                              "/goals/" + Index(g));
      }
      scale[g] = goals[g];
    }
  }

  CmpModel m = CappedModel(p);
  const Deviations d = AddDeviations(m, p, goals);
  LinearExpr obj;
  if (mode == GpmMode::kSum) {
    for (std::size_t g = 0; g < n; ++g) {
      obj.Add(d.over[g], At(config.over_weights, g, 1.0) / scale[g]);
      obj.Add(d.under[g], At(config.under_weights, g, 1.0) / scale[g]);
    }
  } else {
    const VarId worst = m.program.AddVariable("worst_under");
    for (std::size_t g = 0; g < n; ++g) {
      m.program.AddConstraint(
          "worst_" + p.instance.groups[g].id,
          LinearExpr(worst).Add(d.under[g], -At(config.under_weights, g, 1.0) / scale[g]),
          Sense::kGreaterEqual, 0.0);
    }
    obj.Add(worst, 1.0);
  }
  m.program.SetObjective(ObjectiveSense::kMinimize, obj);

  SolveResult r;
  const solver::SolveStatus s = solver::Solve(m.program, p.solve);
  Fill(r, p, m, s);
  if (r.ok()) ReadDeviations(r, d, s.values);
  RelativeUtilities(r, p);
  Summarize(r);
  return r;
}

std::string_view ToString(RepairStrategy s) {
  switch (s) {
    case RepairStrategy::kPreference:
      return "preference";
    case RepairStrategy::kSumOverachieve:
      return "sum-overachieve";
    case RepairStrategy::kTradeoff:
      return "tradeoff";
  }
  return "sum-overachieve";
}

RepairStrategy ParseRepairStrategy(std::string_view text) {
  if (text == "preference") return RepairStrategy::kPreference;
  if (text == "sum-overachieve" || text == "sum_overachieve") {
    return RepairStrategy::kSumOverachieve;
  }
  if (text == "tradeoff") return RepairStrategy::kTradeoff;
  throw ValidationError("unknown repair strategy '" + std::string(text) +
                            "' (preference, sum-overachieve, tradeoff)",
                        "/strategy");
}

SolveResult Repair(const Problem& problem, const model::Caseload& base,
                   const RepairConfig& config) {
  Problem p = problem;
  Prime(p);
  const std::size_t n = p.instance.groups.size();
  if (base.group.size() != n) throw ValidationError("expected one output per group", "/base");
  CheckSize(config.over_weights, n, "/over_weights");
  CheckSize(config.under_weights, n, "/under_weights");
  CheckNonnegative(config.over_weights, "/over_weights");
  CheckNonnegative(config.under_weights, "/under_weights");
  std::vector<double> target(n);
  for (std::size_t g = 0; g < n; ++g) {
    if (!std::isfinite(base.group[g]) || base.group[g] < -kFloorSlack) {
      throw ValidationError("base output must be nonnegative", "/base/" + Index(g));
    }
    target[g] = std::clamp(base.group[g], 0.0, p.bounds[g]);
  }

  CmpModel m = CappedModel(p);
  SolveResult r;
  LinearExpr obj;
  Deviations d;
  switch (config.strategy) {
    case RepairStrategy::kPreference: {
      if (config.preferred_group < 0 || static_cast<std::size_t>(config.preferred_group) >= n) {
        throw ValidationError("preferred group out of range", "/preferred_group");
      }
      for (std::size_t g = 0; g < n; ++g) {
        if (static_cast<int>(g) == config.preferred_group) continue;
        m.program.SetVariableBounds(m.n[g], std::max(0.0, target[g] - kFloorSlack),
                                    p.bounds[g]);
      }
      obj.Add(m.n[config.preferred_group], 1.0);
      break;
    }
    case RepairStrategy::kSumOverachieve: {
      for (std::size_t g = 0; g < n; ++g) {
        m.program.SetVariableBounds(m.n[g], std::max(0.0, target[g] - kFloorSlack),
                                    p.bounds[g]);
        obj.Add(m.n[g], At(config.over_weights, g, 1.0));
        obj.AddConstant(-At(config.over_weights, g, 1.0) * target[g]);
      }
      break;
    }
    case RepairStrategy::kTradeoff: {
      if (!std::isfinite(config.eps_over) || !std::isfinite(config.eps_under) ||
          config.eps_over < 0.0 || config.eps_under < 0.0) {
        throw ValidationError("tradeoff eps must be finite and nonnegative", "/eps_over");
      }
      d = AddDeviations(m, p, target);
      for (std::size_t g = 0; g < n; ++g) {
        obj.Add(d.over[g], config.eps_over * At(config.over_weights, g, 1.0));
        obj.Add(d.under[g], -config.eps_under * At(config.under_weights, g, 1.0));
      }
      break;
    }
  }
  m.program.SetObjective(ObjectiveSense::kMaximize, obj);
  const solver::SolveStatus s = solver::Solve(m.program, p.solve);
  Fill(r, p, m, s);
  if (r.ok()) {
    if (config.strategy == RepairStrategy::kTradeoff) {
      ReadDeviations(r, d, s.values);
    } else {
      for (std::size_t g = 0; g < n; ++g) {
        r.over.push_back(std::max(0.0, r.caseload.group[g] - target[g]));
        r.under.push_back(std::max(0.0, target[g] - r.caseload.group[g]));
      }
    }
  }
  RelativeUtilities(r, p);
  Summarize(r);
  return r;
}

}  // namespace casemix::scalarize
