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

#include "casemix/app/engine.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "casemix/error.hpp"

namespace casemix::app {

using io::Json;

namespace {

double Number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ValidationError("expected a number", path);
  return j.get<double>();
}

std::string Text(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ValidationError("expected a string", path);
  return j.get<std::string>();
}

// {group: value} to a vector in instance order; empty when the key is absent.
std::vector<double> PerGroup(const Json& j, const std::string& key,
                             const model::HospitalInstance& inst, const std::vector<double>& fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  const std::string path = "/" + key;
  if (!it->is_object()) throw ValidationError("expected an object keyed by group id", path);
  std::vector<double> out = fallback;
  for (const auto& [id, value] : it->items()) {
    const int g = inst.GroupIndex(id);
    if (g < 0) throw ValidationError("unknown group '" + id + "'", path + "/" + id);
    out[g] = Number(value, path + "/" + id);
  }
  return out;
}

scalarize::RepairConfig ParseRepair(const Json& j, const model::HospitalInstance& inst) {
  scalarize::RepairConfig c;
  const std::size_t n = inst.groups.size();
  if (j.is_string()) {
    c.strategy = scalarize::ParseRepairStrategy(j.get<std::string>());
    return c;
  }
  if (!j.is_object()) throw ValidationError("expected a strategy name or object", "/repair");
  for (const auto& [key, value] : j.items()) {
    const std::string path = "/repair/" + key;
    if (key == "strategy") {
      try {
        c.strategy = scalarize::ParseRepairStrategy(Text(value, path));
      } catch (const ValidationError& e) {
        throw ValidationError(e.detail(), path);
      }
    } else if (key == "preferred_group") {
      const std::string id = Text(value, path);
      c.preferred_group = inst.GroupIndex(id);
      if (c.preferred_group < 0) throw ValidationError("unknown group '" + id + "'", path);
    } else if (key == "eps_over") {
      c.eps_over = Number(value, path);
    } else if (key == "eps_under") {
      c.eps_under = Number(value, path);
    } else if (key == "over_weights" || key == "under_weights") {
      auto w = PerGroup(j, key, inst, std::vector<double>(n, 1.0));
      (key == "over_weights" ? c.over_weights : c.under_weights) = w;
    } else {
      throw ValidationError("unknown field '" + key + "'", path);
    }
  }
  return c;
}

}  // namespace

std::string_view ToString(Method m) {
  switch (m) {
    case Method::kUfm:
      return "ufm";
    case Method::kGam:
      return "gam";
    case Method::kGpm:
      return "gpm";
  }
  return "ufm";
}

Method ParseMethod(std::string_view text) {
  if (text == "ufm") return Method::kUfm;
  if (text == "gam") return Method::kGam;
  if (text == "gpm") return Method::kGpm;
  throw ValidationError("unknown method '" + std::string(text) + "' (ufm, gam, gpm)", "/method");
}

SolveRequest ParseSolveRequest(const Json& j, const model::HospitalInstance& inst) {
  if (!j.is_object()) throw ValidationError("expected an object", "");
  static const std::set<std::string> kKeys = {
      "method",  "objective",   "eps1",         "eps2",          "weights",  "lexicographic",
      "goals",   "goal_weights", "sides",       "over_weights",  "under_weights",
      "relative", "gpm_mode",   "repair"};
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) throw ValidationError("unknown field '" + key + "'", "/" + key);
  }
  const std::size_t n = inst.groups.size();
  SolveRequest r;
  if (auto it = j.find("method"); it != j.end()) r.method = ParseMethod(Text(*it, "/method"));
  if (auto it = j.find("objective"); it != j.end()) r.objective = Text(*it, "/objective");
  if (r.objective == "mmu") {
    r.asf = scalarize::AsfConfig::Mmu();
  } else if (r.objective == "msu") {
    r.asf = scalarize::AsfConfig::Msu();
  } else if (r.objective != "asf") {
    throw ValidationError("unknown objective '" + r.objective + "' (mmu, msu, asf)", "/objective");
  }
  if (auto it = j.find("eps1"); it != j.end()) r.asf.eps1 = Number(*it, "/eps1");
  if (auto it = j.find("eps2"); it != j.end()) r.asf.eps2 = Number(*it, "/eps2");
  if (r.objective == "asf" && !j.contains("eps1") && !j.contains("eps2")) {
    throw ValidationError("objective asf needs eps1 and/or eps2", "/objective");
  }
  if (r.asf.eps1 < 0.0 || r.asf.eps2 < 0.0 || (r.asf.eps1 == 0.0 && r.asf.eps2 == 0.0)) {
    throw ValidationError("eps1 and eps2 must be nonnegative and not both zero",
                          j.contains("eps1") ? "/eps1" : "/eps2");
  }
  r.asf.weights = PerGroup(j, "weights", inst, std::vector<double>(n, 1.0));
  if (auto it = j.find("lexicographic"); it != j.end()) {
    if (!it->is_boolean()) throw ValidationError("expected true or false", "/lexicographic");
    r.asf.lexicographic = it->get<bool>();
  }

  // Goals default to the bounds, which the scalarizer fills in when empty.
  if (auto it = j.find("goals"); it != j.end() && !(it->is_string() && *it == "bounds")) {
    if (!it->is_object()) throw ValidationError("expected \"bounds\" or {group: goal}", "/goals");
    std::vector<double> nan(n, std::numeric_limits<double>::quiet_NaN());
    r.goals.goals = PerGroup(j, "goals", inst, nan);
    for (std::size_t g = 0; g < n; ++g) {
      if (std::isnan(r.goals.goals[g])) {
        throw ValidationError("missing goal for group '" + inst.groups[g].id + "'", "/goals");
      }
    }
  }
  if (auto it = j.find("goal_weights"); it != j.end() && it->is_string()) {
    // "relative" (w = goal) is the default; "unit" sets every weight to 1.
    const std::string w = it->get<std::string>();
    if (w == "unit") {
      r.goals.weights.assign(n, 1.0);
    } else if (w != "relative") {
      throw ValidationError("expected \"relative\", \"unit\" or {group: weight}", "/goal_weights");
    }
  } else {
    r.goals.weights = PerGroup(j, "goal_weights", inst, std::vector<double>(n, 1.0));
  }
  r.goals.over_weights = PerGroup(j, "over_weights", inst, std::vector<double>(n, 1.0));
  r.goals.under_weights = PerGroup(j, "under_weights", inst, std::vector<double>(n, 1.0));
  if (auto it = j.find("sides"); it != j.end()) {
    const std::string s = Text(*it, "/sides");
    if (s == "both") {
      r.goals.sides = scalarize::GamSides::kBoth;
    } else if (s == "under") {
      r.goals.sides = scalarize::GamSides::kUnder;
    } else if (s == "over") {
      r.goals.sides = scalarize::GamSides::kOver;
    } else {
      throw ValidationError("unknown sides '" + s + "' (both, under, over)", "/sides");
    }
  }
  if (auto it = j.find("relative"); it != j.end()) {
    if (!it->is_boolean()) throw ValidationError("expected true or false", "/relative");
    r.goals.relative = it->get<bool>();
  }
  if (auto it = j.find("gpm_mode"); it != j.end()) {
    try {
      r.gpm_mode = scalarize::ParseGpmMode(Text(*it, "/gpm_mode"));
    } catch (const ValidationError& e) {
      throw ValidationError(e.detail(), "/gpm_mode");
    }
  }
  if (auto it = j.find("repair"); it != j.end() && !it->is_null()) {
    try {
      r.repair = ParseRepair(*it, inst);
    } catch (const ValidationError& e) {
      throw ValidationError(e.detail(), e.path().rfind("/repair", 0) == 0 ? e.path() : "/repair");
    }
  }
  return r;
}

namespace {

scalarize::SolveResult FirstStage(const scalarize::Problem& problem,
                                  const std::vector<utility::UfSpec>& specs,
                                  const SolveRequest& request) {
  switch (request.method) {
    case Method::kUfm:
      return scalarize::SolveAsf(problem, scalarize::InstantiateAll(problem, specs), request.asf);
    case Method::kGam:
      return scalarize::SolveGam(problem, request.goals);
    case Method::kGpm:
      return scalarize::SolveGpm(problem, request.goals, request.gpm_mode);
  }
  return {};
}

}  // namespace

scalarize::SolveResult ExecuteSolve(const scalarize::Problem& problem,
                                    const std::vector<utility::UfSpec>& specs,
                                    const SolveRequest& request) {
  auto base = FirstStage(problem, specs, request);
  if (!request.repair || !base.ok()) return base;
  return scalarize::Repair(problem, base.caseload, *request.repair);
}

Json SolveJson(const scalarize::Problem& problem, const std::vector<utility::UfSpec>& specs,
               const Json& request_json, scalarize::SolveResult* out) {
  const SolveRequest request = ParseSolveRequest(request_json, problem.instance);
  auto base = FirstStage(problem, specs, request);
  Json j;
  if (request.repair && base.ok()) {
    auto repaired = scalarize::Repair(problem, base.caseload, *request.repair);
    j = io::SolveResultToJson(problem.instance, repaired);
    j["base"] = io::SolveResultToJson(problem.instance, base);
    if (out) *out = std::move(repaired);
  } else {
    j = io::SolveResultToJson(problem.instance, base);
    if (out) *out = std::move(base);
  }
  j["request"] = request_json;
  return j;
}

sensitivity::SweepSpec ParseSweepRequest(const Json& j) {
  if (!j.is_object()) throw ValidationError("expected an object", "");
  static const std::set<std::string> kKeys = {"base",          "template",   "variant",
                                              "parameter",     "values",     "paired_values",
                                              "objectives",    "jobs"};
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) throw ValidationError("unknown field '" + key + "'", "/" + key);
  }
  sensitivity::SweepSpec s;
  if (auto it = j.find("base"); it != j.end()) {
    s.base = io::ParseUfSpec(*it, "/base");
  } else {
    Json base = {{"template", j.value("template", Json("UF1"))}};
    if (j.contains("variant")) base["variant"] = j["variant"];
    s.base = io::ParseUfSpec(base);
  }
  s.parameter = Text(j.contains("parameter") ? j["parameter"] : Json(), "/parameter");
  auto values = [&](const char* key) {
    std::vector<double> out;
    auto it = j.find(key);
    if (it == j.end()) return out;
    const std::string path = std::string("/") + key;
    if (it->is_string()) {
      try {
        return sensitivity::ParseValues(it->get<std::string>());
      } catch (const ValidationError& e) {
        throw ValidationError(e.detail(), path);
      }
    }
    if (!it->is_array()) throw ValidationError("expected an array or range string", path);
    for (std::size_t i = 0; i < it->size(); ++i) {
      out.push_back(Number((*it)[i], path + "/" + std::to_string(i)));
    }
    return out;
  };
  s.values = values("values");
  s.paired_values = values("paired_values");
  if (auto it = j.find("objectives"); it != j.end()) {
    s.objectives.clear();
    const Json list = it->is_string() ? Json::array({*it}) : *it;
    if (!list.is_array()) throw ValidationError("expected a list of objectives", "/objectives");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "/objectives/" + std::to_string(i);
      const std::string text = Text(list[i], path);
      std::size_t start = 0;
      // "mmu,msu" is accepted as a single entry too.
      while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        try {
          s.objectives.push_back(sensitivity::ParseObjective(text.substr(start, comma - start)));
        } catch (const ValidationError& e) {
          throw ValidationError(e.detail(), path);
        }
        start = comma + 1;
      }
    }
  }
  if (auto it = j.find("jobs"); it != j.end()) {
    const double jobs = Number(*it, "/jobs");
    if (jobs < 0 || jobs != static_cast<int>(jobs)) {
      throw ValidationError("jobs must be a nonnegative integer", "/jobs");
    }
    s.jobs = static_cast<int>(jobs);
  }
  return s;
}

Json ParetoJson(const scalarize::Problem& problem, const model::Caseload& base) {
  return io::ParetoReportToJson(problem.instance, pareto::CheckPareto(problem, base));
}

int SolveExitCode(const scalarize::SolveResult& result) {
  return result.ok() && !result.zeroed ? 0 : 1;
}

}  // namespace casemix::app
