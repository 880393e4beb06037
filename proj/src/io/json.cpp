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

#include "casemix/io/json.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "casemix/error.hpp"

namespace casemix::io {

using model::HospitalInstance;
using utility::OutputLevel;
using utility::UfSpec;

namespace {

std::string Join(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string Join(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

void ExpectObject(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ValidationError("expected an object", path);
}

void ExpectArray(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError("expected an array", path);
}

void RejectUnknown(const Json& j, const std::string& path, std::set<std::string> allowed) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ValidationError("unknown field '" + key + "'", Join(path, key));
  }
}

const Json& Required(const Json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError("missing required field", Join(path, key));
  return *it;
}

double AsNumber(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ValidationError("expected a number", path);
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ValidationError("expected a finite number", path);
  return v;
}

int AsInteger(const Json& j, const std::string& path) {
  const double v = AsNumber(j, path);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ValidationError("expected an integer", path);
  return static_cast<int>(v);
}

std::string AsString(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ValidationError("expected a string", path);
  return j.get<std::string>();
}

std::optional<double> OptNumber(const Json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return AsNumber(*it, Join(path, key));
}

double DefaultHours(model::ResourceKind kind) {
  return kind == model::ResourceKind::kTheatre ? 40.0 : 168.0;
}

// Numbers written with at most 12 significant digits so percentages survive
// a load/write cycle unchanged.
double Tidy(double v) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  std::ostringstream os;
  os.precision(12);
  os << v;
  return std::stod(os.str());
}

}  // namespace

double Round6(double v) {
  if (!std::isfinite(v)) return v;
  const double r = std::round(v * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;
}

model::HospitalInstance ParseInstance(const Json& j) {
  ExpectObject(j, "");
  RejectUnknown(j, "", {"schema_version", "name", "notes", "horizon_weeks", "resources",
                        "groups", "reference_bounds"});
  if (auto it = j.find("schema_version"); it != j.end()) {
    if (AsInteger(*it, "/schema_version") != kSchemaVersion) {
      throw ValidationError("unsupported schema version", "/schema_version");
    }
  }
  HospitalInstance inst;
  if (auto it = j.find("name"); it != j.end()) inst.name = AsString(*it, "/name");
  if (auto it = j.find("horizon_weeks"); it != j.end()) {
    inst.horizon_weeks = AsInteger(*it, "/horizon_weeks");
  }

  const Json& resources = Required(j, "resources", "");
  ExpectArray(resources, "/resources");
  for (std::size_t i = 0; i < resources.size(); ++i) {
    const std::string path = Join("/resources", i);
    const Json& r = resources[i];
    ExpectObject(r, path);
    RejectUnknown(r, path, {"id", "kind", "bed_count", "weekly_hours"});
    model::Resource res;
    res.id = AsString(Required(r, "id", path), Join(path, "id"));
    try {
      res.kind = model::ParseResourceKind(AsString(Required(r, "kind", path), Join(path, "kind")));
    } catch (const ValidationError& e) {
      throw ValidationError(e.detail(), Join(path, "kind"));
    }
    if (auto it = r.find("bed_count"); it != r.end()) {
      res.bed_count = AsInteger(*it, Join(path, "bed_count"));
    }
    res.weekly_hours = OptNumber(r, "weekly_hours", path).value_or(DefaultHours(res.kind));
    inst.resources.push_back(std::move(res));
  }

  const Json& groups = Required(j, "groups", "");
  ExpectArray(groups, "/groups");
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const std::string gpath = Join("/groups", g);
    const Json& gj = groups[g];
    ExpectObject(gj, gpath);
    RejectUnknown(gj, gpath, {"id", "name", "group_mix", "subtypes"});
    model::PatientGroup grp;
    grp.id = AsString(Required(gj, "id", gpath), Join(gpath, "id"));
    if (auto it = gj.find("name"); it != gj.end()) grp.name = AsString(*it, Join(gpath, "name"));
    grp.group_mix = OptNumber(gj, "group_mix", gpath);
    const Json& subs = Required(gj, "subtypes", gpath);
    ExpectArray(subs, Join(gpath, "subtypes"));
    for (std::size_t p = 0; p < subs.size(); ++p) {
      const std::string spath = Join(Join(gpath, "subtypes"), p);
      const Json& sj = subs[p];
      ExpectObject(sj, spath);
      RejectUnknown(sj, spath, {"id", "mix_fraction", "activities"});
      model::Subtype sub;
      sub.id = AsString(Required(sj, "id", spath), Join(spath, "id"));
      sub.mix_fraction = AsNumber(Required(sj, "mix_fraction", spath), Join(spath, "mix_fraction"));
      const Json& acts = Required(sj, "activities", spath);
      ExpectArray(acts, Join(spath, "activities"));
      for (std::size_t a = 0; a < acts.size(); ++a) {
        const std::string apath = Join(Join(spath, "activities"), a);
        const Json& aj = acts[a];
        ExpectObject(aj, apath);
        RejectUnknown(aj, apath, {"id", "duration_hours", "eligible_resources"});
        model::Activity act;
        act.id = AsString(Required(aj, "id", apath), Join(apath, "id"));
        act.duration_hours =
            AsNumber(Required(aj, "duration_hours", apath), Join(apath, "duration_hours"));
        const Json& el = Required(aj, "eligible_resources", apath);
        const std::string epath = Join(apath, "eligible_resources");
        ExpectArray(el, epath);
        for (std::size_t k = 0; k < el.size(); ++k) {
          act.eligible_resources.push_back(AsString(el[k], Join(epath, k)));
        }
        sub.activities.push_back(std::move(act));
      }
      grp.subtypes.push_back(std::move(sub));
    }
    inst.groups.push_back(std::move(grp));
  }

  if (auto it = j.find("reference_bounds"); it != j.end()) {
    ExpectObject(*it, "/reference_bounds");
    for (const auto& [key, value] : it->items()) {
      inst.reference_bounds[key] = AsNumber(value, Join("/reference_bounds", key));
    }
  }
  model::Validate(inst);
  return inst;
}

Json InstanceToJson(const HospitalInstance& inst) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = inst.name;
  j["horizon_weeks"] = inst.horizon_weeks;
  j["resources"] = Json::array();
  for (const auto& r : inst.resources) {
    j["resources"].push_back({{"id", r.id},
                              {"kind", std::string(model::ToString(r.kind))},
                              {"bed_count", r.bed_count},
                              {"weekly_hours", r.weekly_hours}});
  }
  j["groups"] = Json::array();
  for (const auto& g : inst.groups) {
    Json gj = {{"id", g.id}};
    if (!g.name.empty()) gj["name"] = g.name;
    if (g.group_mix) gj["group_mix"] = *g.group_mix;
    gj["subtypes"] = Json::array();
    for (const auto& s : g.subtypes) {
      Json sj = {{"id", s.id}, {"mix_fraction", s.mix_fraction}, {"activities", Json::array()}};
      for (const auto& a : s.activities) {
        sj["activities"].push_back({{"id", a.id},
                                    {"duration_hours", a.duration_hours},
                                    {"eligible_resources", a.eligible_resources}});
      }
      gj["subtypes"].push_back(std::move(sj));
    }
    j["groups"].push_back(std::move(gj));
  }
  if (!inst.reference_bounds.empty()) {
    j["reference_bounds"] = Json::object();
    for (const auto& [id, v] : inst.reference_bounds) j["reference_bounds"][id] = v;
  }
  return j;
}

model::HospitalInstance LoadInstance(const std::string& path) {
  return ParseInstance(ReadJsonFile(path));
}

// ---------------------------------------------------------------- utilities

namespace {

const std::set<std::string> kSpecKeys = {
    "template",   "variant",         "indifference", "indifference_pct", "aspiration",
    "aspiration_pct", "reference",   "reference_pct", "alpha",           "beta",
    "steepness",  "tier_utility",    "income",       "penalty",          "reward",
    "weight",     "samples"};

std::optional<OutputLevel> ParseLevel(const Json& j, const std::string& name,
                                      const std::string& path) {
  const auto abs = OptNumber(j, name, path);
  const auto pct = OptNumber(j, name + "_pct", path);
  if (abs && pct) {
    throw ValidationError("give either " + name + " or " + name + "_pct, not both",
                          Join(path, name + "_pct"));
  }
  if (abs) return OutputLevel::Absolute(*abs);
  if (pct) return OutputLevel::Fraction(*pct / 100.0);
  return std::nullopt;
}

void PutLevel(Json& j, const std::string& name, const std::optional<OutputLevel>& level) {
  if (!level) return;
  if (level->relative) {
    j[name + "_pct"] = Tidy(level->value * 100.0);
  } else {
    j[name] = level->value;
  }
}

// "/params/aspiration" from the catalog becomes "/<key>/aspiration_pct" when
// the level was written as a percentage.
std::string ConfigPath(const std::string& key, const std::string& inner, const UfSpec& spec) {
  const std::string prefix = "/params/";
  if (inner.rfind(prefix, 0) == 0) {
    std::string field = inner.substr(prefix.size());
    const auto& p = spec.params;
    if ((field == "aspiration" && p.aspiration && p.aspiration->relative) ||
        (field == "indifference" && p.indifference && p.indifference->relative)) {
      field += "_pct";
    }
    return "/" + key + "/" + field;
  }
  return "/" + key + inner;
}

}  // namespace

UfSpec ParseUfSpec(const Json& j, const std::string& path) {
  ExpectObject(j, path);
  RejectUnknown(j, path, kSpecKeys);
  UfSpec s;
  const Json& t = Required(j, "template", path);
  try {
    s.tmpl = t.is_number() ? utility::ParseTemplate(std::to_string(AsInteger(t, Join(path, "template"))))
                           : utility::ParseTemplate(AsString(t, Join(path, "template")));
    if (auto it = j.find("variant"); it != j.end()) {
      s.variant = utility::ParseVariant(AsString(*it, Join(path, "variant")));
    }
  } catch (const ValidationError& e) {
    throw ValidationError(e.detail(), path + e.path());
  }
  auto& p = s.params;
  p.indifference = ParseLevel(j, "indifference", path);
  p.aspiration = ParseLevel(j, "aspiration", path);
  const auto ref = OptNumber(j, "reference", path);
  const auto ref_pct = OptNumber(j, "reference_pct", path);
  if (ref && ref_pct) {
    throw ValidationError("give either reference or reference_pct, not both",
                          Join(path, "reference_pct"));
  }
  if (ref) p.reference = *ref;
  if (ref_pct) p.reference = *ref_pct / 100.0;
  p.alpha = OptNumber(j, "alpha", path);
  p.beta = OptNumber(j, "beta", path);
  p.steepness = OptNumber(j, "steepness", path);
  p.tier_utility = OptNumber(j, "tier_utility", path);
  p.income = OptNumber(j, "income", path);
  p.penalty = OptNumber(j, "penalty", path);
  p.reward = OptNumber(j, "reward", path);
  if (auto w = OptNumber(j, "weight", path)) {
    if (*w <= 0.0) throw ValidationError("weight must be positive", Join(path, "weight"));
    s.weight = *w;
  }
  if (auto it = j.find("samples"); it != j.end()) {
    s.samples = AsInteger(*it, Join(path, "samples"));
    if (s.samples < 2) throw ValidationError("need at least 2 samples", Join(path, "samples"));
  }
  return s;
}

Json UfSpecToJson(const UfSpec& s) {
  Json j;
  j["template"] = std::string(utility::ToString(s.tmpl));
  if (s.variant != utility::Variant::kLinear) j["variant"] = std::string(utility::ToString(s.variant));
  const auto& p = s.params;
  PutLevel(j, "indifference", p.indifference);
  PutLevel(j, "aspiration", p.aspiration);
  if (p.reference) j["reference"] = *p.reference;
  if (p.alpha) j["alpha"] = *p.alpha;
  if (p.beta) j["beta"] = *p.beta;
  if (p.steepness) j["steepness"] = *p.steepness;
  if (p.tier_utility) j["tier_utility"] = *p.tier_utility;
  if (p.income) j["income"] = *p.income;
  if (p.penalty) j["penalty"] = *p.penalty;
  if (p.reward) j["reward"] = *p.reward;
  if (s.weight != 1.0) j["weight"] = s.weight;
  if (s.samples != 30) j["samples"] = s.samples;
  return j;
}

UfConfig ParseUfConfig(const Json& j) {
  ExpectObject(j, "");
  UfConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "schema_version") {
      if (AsInteger(value, "/schema_version") != kSchemaVersion) {
        throw ValidationError("unsupported schema version", "/schema_version");
      }
    } else if (key == "default") {
      c.fallback = ParseUfSpec(value, "/default");
    } else {
      c.groups[key] = ParseUfSpec(value, "/" + key);
    }
  }
  return c;
}

Json UfConfigToJson(const UfConfig& c) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  if (c.fallback) j["default"] = UfSpecToJson(*c.fallback);
  for (const auto& [id, spec] : c.groups) j[id] = UfSpecToJson(spec);
  return j;
}

UfConfig LoadUfConfig(const std::string& path) { return ParseUfConfig(ReadJsonFile(path)); }

std::vector<UfSpec> ResolveUfConfig(const UfConfig& config, const HospitalInstance& instance,
                                    const std::vector<double>& bounds) {
  for (const auto& [id, spec] : config.groups) {
    if (instance.GroupIndex(id) < 0) throw ValidationError("unknown group '" + id + "'", "/" + id);
  }
  if (bounds.size() != instance.groups.size()) {
    throw ValidationError("expected one bound per group", "/bounds");
  }
  std::vector<UfSpec> out;
  for (std::size_t g = 0; g < instance.groups.size(); ++g) {
    const std::string& id = instance.groups[g].id;
    auto it = config.groups.find(id);
    const bool own = it != config.groups.end();
    if (!own && !config.fallback) {
      throw ValidationError("no utility for group '" + id + "' and no default", "/" + id);
    }
    const UfSpec& spec = own ? it->second : *config.fallback;
    try {
      utility::Validate(spec, bounds[g]);
    } catch (const ValidationError& e) {
      throw ValidationError("group '" + id + "': " + e.detail(),
                            ConfigPath(own ? id : "default", e.path(), spec));
    }
    out.push_back(spec);
  }
  return out;
}

// ------------------------------------------------------------------ reports

Json BoundsToJson(const HospitalInstance& inst, const std::vector<double>& bounds,
                  std::string_view source) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = inst.name;
  j["horizon_weeks"] = inst.horizon_weeks;
  j["bounds_source"] = std::string(source);
  j["groups"] = Json::array();
  double total = 0.0;
  for (std::size_t g = 0; g < inst.groups.size(); ++g) {
    j["groups"].push_back({{"id", inst.groups[g].id},
                           {"name", inst.groups[g].name},
                           {"subtypes", inst.groups[g].subtypes.size()},
                           {"bound", Round6(bounds.at(g))}});
    total += bounds[g];
  }
  j["total"] = Round6(total);
  Json res = Json::object();
  for (const auto& r : inst.resources) {
    Json& k = res[std::string(model::ToString(r.kind))];
    if (k.is_null()) k = {{"count", 0}, {"beds", 0}};
    k["count"] = k["count"].get<int>() + 1;
    k["beds"] = k["beds"].get<int>() + r.bed_count;
  }
  j["resources"] = res;
  return j;
}

Json CaseloadToJson(const HospitalInstance& inst, const model::Caseload& c) {
  Json j;
  j["N"] = Round6(c.Total());
  j["groups"] = Json::array();
  for (std::size_t g = 0; g < c.group.size(); ++g) {
    Json gj = {{"id", inst.groups.at(g).id}, {"n", Round6(c.group[g])}};
    if (g < c.subtype.size()) {
      gj["subtypes"] = Json::object();
      for (std::size_t p = 0; p < c.subtype[g].size(); ++p) {
        gj["subtypes"][inst.groups[g].subtypes.at(p).id] = Round6(c.subtype[g][p]);
      }
    }
    j["groups"].push_back(std::move(gj));
  }
  j["allocation"] = Json::array();
  for (const auto& a : c.allocation) {
    if (Round6(a.patients) == 0.0) continue;
    const auto& grp = inst.groups.at(a.group);
    const auto& sub = grp.subtypes.at(a.subtype);
    j["allocation"].push_back({{"group", grp.id},
                               {"subtype", sub.id},
                               {"activity", sub.activities.at(a.activity).id},
                               {"resource", inst.resources.at(a.resource).id},
                               {"patients", Round6(a.patients)}});
  }
  return j;
}

model::Caseload ParseCaseload(const Json& j, const HospitalInstance& inst) {
  ExpectObject(j, "");
  const Json& groups = Required(j, "groups", "");
  ExpectArray(groups, "/groups");
  model::Caseload c;
  c.group.assign(inst.groups.size(), 0.0);
  std::vector<bool> seen(inst.groups.size(), false);
  bool subtypes = !groups.empty();
  std::vector<std::vector<double>> sub(inst.groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const std::string path = Join("/groups", i);
    const Json& gj = groups[i];
    ExpectObject(gj, path);
    const std::string id = AsString(Required(gj, "id", path), Join(path, "id"));
    const int g = inst.GroupIndex(id);
    if (g < 0) throw ValidationError("unknown group '" + id + "'", Join(path, "id"));
    if (seen[g]) throw ValidationError("group listed twice", Join(path, "id"));
    seen[g] = true;
    c.group[g] = AsNumber(Required(gj, "n", path), Join(path, "n"));
    if (c.group[g] < 0.0) throw ValidationError("output must be nonnegative", Join(path, "n"));
    auto it = gj.find("subtypes");
    if (it == gj.end()) {
      subtypes = false;
      continue;
    }
    ExpectObject(*it, Join(path, "subtypes"));
    for (const auto& s : inst.groups[g].subtypes) {
      auto v = it->find(s.id);
      if (v == it->end()) throw ValidationError("missing subtype", Join(Join(path, "subtypes"), s.id));
      sub[g].push_back(AsNumber(*v, Join(Join(path, "subtypes"), s.id)));
    }
  }
  for (std::size_t g = 0; g < seen.size(); ++g) {
    if (!seen[g]) throw ValidationError("missing group '" + inst.groups[g].id + "'", "/groups");
  }
  if (subtypes) c.subtype = std::move(sub);
  if (auto it = j.find("allocation"); it != j.end() && subtypes) {
    ExpectArray(*it, "/allocation");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = Join("/allocation", i);
      const Json& aj = (*it)[i];
      ExpectObject(aj, path);
      model::Allocation a;
      a.group = inst.GroupIndex(AsString(Required(aj, "group", path), Join(path, "group")));
      if (a.group < 0) throw ValidationError("unknown group", Join(path, "group"));
      const auto& grp = inst.groups[a.group];
      const std::string sid = AsString(Required(aj, "subtype", path), Join(path, "subtype"));
      a.subtype = -1;
      for (std::size_t p = 0; p < grp.subtypes.size(); ++p) {
        if (grp.subtypes[p].id == sid) a.subtype = static_cast<int>(p);
      }
      if (a.subtype < 0) throw ValidationError("unknown subtype", Join(path, "subtype"));
      const auto& acts = grp.subtypes[a.subtype].activities;
      const std::string aid = AsString(Required(aj, "activity", path), Join(path, "activity"));
      a.activity = -1;
      for (std::size_t k = 0; k < acts.size(); ++k) {
        if (acts[k].id == aid) a.activity = static_cast<int>(k);
      }
      if (a.activity < 0) throw ValidationError("unknown activity", Join(path, "activity"));
      a.resource = inst.ResourceIndex(AsString(Required(aj, "resource", path), Join(path, "resource")));
      if (a.resource < 0) throw ValidationError("unknown resource", Join(path, "resource"));
      a.patients = AsNumber(Required(aj, "patients", path), Join(path, "patients"));
      c.allocation.push_back(a);
    }
  }
  return c;
}

Json SolveResultToJson(const HospitalInstance& inst, const scalarize::SolveResult& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["status"] = std::string(solver::ToString(r.status));
  j["message"] = r.message;
  j["objective"] = Round6(r.objective);
  j["N"] = Round6(r.throughput);
  j["sum_u"] = Round6(r.sum_u);
  j["min_u"] = Round6(r.min_u);
  j["zeroed"] = r.zeroed;
  j["delta"] = Round6(r.delta);
  j["stats"] = {{"iterations", r.stats.iterations}, {"nodes", r.stats.nodes}};
  const Json caseload = r.ok() ? CaseloadToJson(inst, r.caseload) : Json{{"groups", Json::array()},
                                                                          {"allocation", Json::array()}};
  j["groups"] = caseload["groups"];
  for (std::size_t g = 0; g < j["groups"].size(); ++g) {
    Json& gj = j["groups"][g];
    if (g < r.utilities.size()) gj["utility"] = Round6(r.utilities[g]);
    gj["case_mix_pct"] = g < r.case_mix_pct.size() ? Json(Round6(r.case_mix_pct[g])) : Json(nullptr);
    if (g < r.over.size()) gj["over"] = Round6(r.over[g]);
    if (g < r.under.size()) gj["under"] = Round6(r.under[g]);
  }
  j["allocation"] = caseload["allocation"];
  return j;
}

scalarize::SolveResult ParseSolveResult(const Json& j, const HospitalInstance& inst) {
  ExpectObject(j, "");
  scalarize::SolveResult r;
  const std::string status = AsString(Required(j, "status", ""), "/status");
  if (status == "optimal") {
    r.status = solver::SolveStatusCode::kOptimal;
  } else if (status == "infeasible") {
    r.status = solver::SolveStatusCode::kInfeasible;
  } else if (status == "error") {
    r.status = solver::SolveStatusCode::kError;
  } else {
    throw ValidationError("unknown status '" + status + "'", "/status");
  }
  if (auto it = j.find("message"); it != j.end()) r.message = AsString(*it, "/message");
  r.objective = OptNumber(j, "objective", "").value_or(0.0);
  r.throughput = OptNumber(j, "N", "").value_or(0.0);
  r.sum_u = OptNumber(j, "sum_u", "").value_or(0.0);
  r.min_u = OptNumber(j, "min_u", "").value_or(0.0);
  r.delta = OptNumber(j, "delta", "").value_or(0.0);
  if (auto it = j.find("zeroed"); it != j.end()) r.zeroed = it->get<bool>();
  if (auto it = j.find("stats"); it != j.end()) {
    r.stats.iterations = it->value("iterations", 0L);
    r.stats.nodes = it->value("nodes", 0L);
  }
  if (!r.ok()) return r;
  r.caseload = ParseCaseload(j, inst);
  const Json& groups = j["groups"];
  std::vector<double> util(inst.groups.size()), pct(inst.groups.size()), over(inst.groups.size()),
      under(inst.groups.size());
  bool has_u = true, has_pct = true, has_over = true, has_under = true;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const Json& gj = groups[i];
    const int g = inst.GroupIndex(gj["id"].get<std::string>());
    const std::string path = Join("/groups", i);
    auto read = [&](const char* key, std::vector<double>& dst, bool& has) {
      auto it = gj.find(key);
      if (it == gj.end() || it->is_null()) {
        has = false;
      } else {
        dst[g] = AsNumber(*it, Join(path, key));
      }
    };
    read("utility", util, has_u);
    read("case_mix_pct", pct, has_pct);
    read("over", over, has_over);
    read("under", under, has_under);
  }
  if (has_u) r.utilities = util;
  if (has_pct) r.case_mix_pct = pct;
  if (has_over) r.over = over;
  if (has_under) r.under = under;
  return r;
}

Json SweepReportToJson(const sensitivity::SweepReport& report) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["template"] = std::string(utility::ToString(report.tmpl));
  j["parameter"] = report.parameter;
  j["groups"] = report.groups;
  j["rows"] = Json::array();
  for (const auto& row : report.rows) {
    Json rj;
    rj["value"] = Round6(row.value);
    if (row.paired) rj["paired_value"] = Round6(*row.paired);
    rj["objective"] = std::string(sensitivity::ToString(row.objective));
    rj["status"] = row.ok() ? "optimal"
                            : (row.result.message.empty() ? "invalid"
                                                          : std::string(solver::ToString(row.result.status)));
    if (!row.error.empty()) rj["error"] = row.error;
    if (row.ok()) {
      rj["N"] = Round6(row.result.throughput);
      rj["sum_u"] = Round6(row.result.sum_u);
      rj["min_u"] = Round6(row.result.min_u);
      rj["zeroed"] = row.result.zeroed;
      Json n = Json::array(), u = Json::array(), pct = Json::array();
      for (double v : row.result.caseload.group) n.push_back(Round6(v));
      for (double v : row.result.utilities) u.push_back(Round6(v));
      for (double v : row.result.case_mix_pct) pct.push_back(Round6(v));
      rj["n"] = n;
      rj["utilities"] = u;
      rj["case_mix_pct"] = row.result.case_mix_pct.empty() ? Json(nullptr) : pct;
    }
    j["rows"].push_back(std::move(rj));
  }
  j["case_mix_diff"] = Json::object();
  for (auto o : {sensitivity::Objective::kMmu, sensitivity::Objective::kMsu}) {
    Json arr = Json::array();
    for (const auto& d : sensitivity::CaseMixDiff(report, o)) {
      arr.push_back({{"group", d.group},
                     {"min_pct", Round6(d.min_pct)},
                     {"max_pct", Round6(d.max_pct)},
                     {"range", Round6(d.range)}});
    }
    j["case_mix_diff"][std::string(sensitivity::ToString(o))] = arr;
  }
  return j;
}

Json ParetoReportToJson(const HospitalInstance& inst, const pareto::ParetoReport& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["is_pareto"] = r.is_pareto;
  j["base_N"] = Round6(r.base_throughput);
  j["corrected_N"] = Round6(r.corrected_throughput);
  j["diff"] = Round6(r.diff);
  j["diff_pct"] = Round6(r.diff_pct);
  j["zeroed"] = r.zeroed;
  j["corrected"] = CaseloadToJson(inst, r.corrected);
  return j;
}

// -------------------------------------------------------------------- files

Format ParseFormat(std::string_view text) {
  if (text == "json") return Format::kJson;
  if (text == "csv") return Format::kCsv;
  throw ValidationError("unknown format '" + std::string(text) + "' (json, csv)", "/format");
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

void WriteJsonFile(const std::string& path, const Json& j) { WriteTextFile(path, j.dump(2) + "\n"); }

void WriteResult(const HospitalInstance& inst, const scalarize::SolveResult& r,
                 const std::string& path, Format format) {
  if (format == Format::kJson) {
    WriteJsonFile(path, SolveResultToJson(inst, r));
    return;
  }
  std::ostringstream os;
  os << "group,n,utility,case_mix_pct\n";
  for (std::size_t g = 0; r.ok() && g < r.caseload.group.size(); ++g) {
    os << inst.groups[g].id << ',' << sensitivity::FormatNumber(r.caseload.group[g]) << ','
       << (g < r.utilities.size() ? sensitivity::FormatNumber(r.utilities[g]) : "") << ','
       << (g < r.case_mix_pct.size() ? sensitivity::FormatNumber(r.case_mix_pct[g]) : "") << '\n';
  }
  WriteTextFile(path, os.str());
}

void WriteReport(const sensitivity::SweepReport& report, const std::string& path, Format format) {
  if (format == Format::kJson) {
    WriteJsonFile(path, SweepReportToJson(report));
    return;
  }
  std::ostringstream os;
  sensitivity::WriteSweepCsv(report, os);
  WriteTextFile(path, os.str());
}

}  // namespace casemix::io
