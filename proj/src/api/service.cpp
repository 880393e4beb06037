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

#include "casemix/api/service.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <utility>

#include "casemix/app/engine.hpp"
#include "casemix/error.hpp"
#include "casemix/model/cmp.hpp"
#include "casemix/utility/catalog.hpp"

namespace casemix::api {

using io::Json;

struct Service::Session {
  struct Entry {
    Json request;
    Json uf_config;
    Json result;
    model::Caseload caseload;
    bool ok = false;
  };

  std::string id;
  std::mutex mutex;  // config and history
  std::atomic<bool> busy{false};
  io::UfConfig config;
  std::vector<Entry> history;
};

namespace {

Response Error(int status, const std::string& type, const std::string& message,
               const std::string& path = {}) {
  Json e = {{"type", type}, {"message", message}};
  if (!path.empty()) e["path"] = path;
  return {status, {{"error", e}}};
}

// Claims the session for one engine call at a time.
class BusyGuard {
 public:
  explicit BusyGuard(std::atomic<bool>& flag) : flag_(flag), owned_(!flag.exchange(true)) {}
  ~BusyGuard() {
    if (owned_) flag_ = false;
  }
  bool owned() const { return owned_; }

 private:
  std::atomic<bool>& flag_;
  bool owned_;
};

Response Busy() { return Error(409, "conflict", "another request is running in this session"); }

std::vector<std::string> Split(const std::string& path) {
  std::vector<std::string> out;
  std::stringstream ss(path);
  for (std::string part; std::getline(ss, part, '/');) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

}  // namespace

Service::Service(scalarize::Problem problem, io::UfConfig default_config)
    : problem_(std::move(problem)), default_config_(std::move(default_config)) {
  io::ResolveUfConfig(default_config_, problem_.instance, problem_.bounds);
  FindOrCreate("default");
}

Service::~Service() = default;

std::shared_ptr<Service::Session> Service::Find(const std::string& id) {
  std::lock_guard lock(mutex_);
  for (const auto& s : sessions_) {
    if (s->id == id) return s;
  }
  return nullptr;
}

std::shared_ptr<Service::Session> Service::FindOrCreate(const std::string& id) {
  std::lock_guard lock(mutex_);
  for (const auto& s : sessions_) {
    if (s->id == id) return s;
  }
  auto s = std::make_shared<Session>();
  s->id = id;
  s->config = default_config_;
  sessions_.push_back(s);
  return s;
}

Response Service::Handle(const std::string& method, const std::string& path,
                         const std::string& body) {
  try {
    Json j = Json::object();
    if (!body.empty()) {
      try {
        j = Json::parse(body);
      } catch (const Json::parse_error& e) {
        return Error(400, "validation", std::string("request body is not valid JSON: ") + e.what());
      }
    }
    const auto parts = Split(path);
    if (parts.empty() || parts[0] != "api") return Error(404, "not_found", "no route " + path);
    const std::size_t n = parts.size();
    if (n == 2 && parts[1] == "health" && method == "GET") return {200, {{"status", "ok"}}};
    if (n == 2 && parts[1] == "instance" && method == "GET") return Instance();
    if (n == 2 && parts[1] == "plf-preview" && method == "POST") return PlfPreview(j);
    if (n == 2 && parts[1] == "sessions") {
      if (method == "GET") return Sessions();
      if (method == "POST") return CreateSession(j);
    }
    if (n >= 3 && parts[1] == "sessions") {
      const std::string& id = parts[2];
      if (n == 3 && method == "DELETE") return DeleteSession(id);
      if (n == 4 && parts[3] == "uf-config" && method == "PUT") return PutConfig(*FindOrCreate(id), j);
      auto s = Find(id);
      if (!s) return Error(404, "not_found", "no session '" + id + "'");
      if (n == 4) {
        if (parts[3] == "uf-config" && method == "GET") return GetConfig(*s);
        if (parts[3] == "solve" && method == "POST") return Solve(*s, j);
        if (parts[3] == "sweep" && method == "POST") return Sweep(*s, j);
        if (parts[3] == "pareto-check" && method == "POST") return ParetoCheck(*s, j);
        if (parts[3] == "history" && method == "GET") return History(*s);
      }
    }
    return Error(404, "not_found", "no route " + method + " " + path);
  } catch (const ValidationError& e) {
    return Error(400, "validation", e.detail(), e.path());
  } catch (const DomainError& e) {
    return Error(400, "validation", e.what());
  } catch (const SolverError& e) {
    return Error(500, "solver", e.what());
  } catch (const std::exception& e) {
    return Error(500, "internal", e.what());
  }
}

Response Service::Instance() const {
  Json j = io::BoundsToJson(problem_.instance, problem_.bounds,
                            problem_.instance.reference_bounds.size() == problem_.instance.groups.size()
                                ? "reference"
                                : "computed");
  return {200, j};
}

Response Service::Sessions() {
  std::lock_guard lock(mutex_);
  Json ids = Json::array();
  for (const auto& s : sessions_) ids.push_back(s->id);
  return {200, {{"sessions", ids}}};
}

Response Service::CreateSession(const Json& body) {
  std::string id;
  if (auto it = body.find("id"); it != body.end()) {
    if (!it->is_string() || it->get<std::string>().empty() ||
        it->get<std::string>().find('/') != std::string::npos) {
      return Error(400, "validation", "session id must be a nonempty string without '/'", "/id");
    }
    id = it->get<std::string>();
    if (Find(id)) return Error(409, "conflict", "session '" + id + "' exists");
  } else {
    std::lock_guard lock(mutex_);
    id = "s" + std::to_string(next_id_++);
  }
  auto s = FindOrCreate(id);
  return {201, {{"id", s->id}, {"uf_config", io::UfConfigToJson(s->config)}}};
}

Response Service::DeleteSession(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = std::find_if(sessions_.begin(), sessions_.end(),
                         [&](const auto& s) { return s->id == id; });
  if (it == sessions_.end()) return Error(404, "not_found", "no session '" + id + "'");
  if ((*it)->busy) return Busy();
  sessions_.erase(it);
  return {200, {{"deleted", id}}};
}

Response Service::GetConfig(Session& s) {
  std::lock_guard lock(s.mutex);
  return {200, {{"id", s.id}, {"uf_config", io::UfConfigToJson(s.config)}}};
}

Response Service::PutConfig(Session& s, const Json& body) {
  BusyGuard guard(s.busy);
  if (!guard.owned()) return Busy();
  io::UfConfig config = io::ParseUfConfig(body);
  io::ResolveUfConfig(config, problem_.instance, problem_.bounds);
  std::lock_guard lock(s.mutex);
  s.config = std::move(config);
  return {200, {{"id", s.id}, {"uf_config", io::UfConfigToJson(s.config)}}};
}

Response Service::Solve(Session& s, const Json& body) {
  BusyGuard guard(s.busy);
  if (!guard.owned()) return Busy();
  io::UfConfig config;
  {
    std::lock_guard lock(s.mutex);
    config = s.config;
  }
  const auto request = app::ParseSolveRequest(body, problem_.instance);
  std::vector<utility::UfSpec> specs;
  if (request.method == app::Method::kUfm) {
    specs = io::ResolveUfConfig(config, problem_.instance, problem_.bounds);
  }
  scalarize::SolveResult result;
  Json j = app::SolveJson(problem_, specs, body, &result);
  const Json config_json = io::UfConfigToJson(config);
  {
    std::lock_guard lock(s.mutex);
    j["index"] = s.history.size();
    s.history.push_back({body, config_json, j, result.caseload, result.ok()});
  }
  return {app::SolveExitCode(result) == 0 ? 200 : 422, j};
}

Response Service::Sweep(Session& s, const Json& body) {
  BusyGuard guard(s.busy);
  if (!guard.owned()) return Busy();
  const auto spec = app::ParseSweepRequest(body);
  return {200, io::SweepReportToJson(sensitivity::RunSweep(problem_, spec))};
}

Response Service::ParetoCheck(Session& s, const Json& body) {
  BusyGuard guard(s.busy);
  if (!guard.owned()) return Busy();
  Session::Entry entry;
  std::size_t index = 0;
  {
    std::lock_guard lock(s.mutex);
    if (s.history.empty()) return Error(404, "not_found", "session has no solve to check");
    const Json which = body.value("which", Json("latest"));
    if (which.is_string() && which == "latest") {
      index = s.history.size() - 1;
    } else if (which.is_number_integer() && which.get<long>() >= 0 &&
               which.get<std::size_t>() < s.history.size()) {
      index = which.get<std::size_t>();
    } else {
      throw ValidationError("expected \"latest\" or a history index below " +
                                std::to_string(s.history.size()),
                            "/which");
    }
    entry = s.history[index];
  }
  if (!entry.ok) {
    return Error(422, "infeasible", "history entry " + std::to_string(index) + " has no caseload");
  }
  Json j = app::ParetoJson(problem_, entry.caseload);
  j["index"] = index;
  return {200, j};
}

Response Service::History(Session& s) {
  std::lock_guard lock(s.mutex);
  Json entries = Json::array();
  for (std::size_t i = 0; i < s.history.size(); ++i) {
    const auto& e = s.history[i];
    entries.push_back(
        {{"index", i}, {"request", e.request}, {"uf_config", e.uf_config}, {"result", e.result}});
  }
  return {200, {{"id", s.id}, {"entries", entries}}};
}

Response Service::PlfPreview(const Json& body) const {
  const auto& inst = problem_.instance;
  if (!body.contains("group") || !body["group"].is_string()) {
    throw ValidationError("expected a group id", "/group");
  }
  const int g = inst.GroupIndex(body["group"].get<std::string>());
  if (g < 0) throw ValidationError("unknown group", "/group");
  if (!body.contains("spec")) throw ValidationError("missing required field", "/spec");
  const auto spec = io::ParseUfSpec(body["spec"], "/spec");
  int points = 101;
  if (auto it = body.find("points"); it != body.end()) {
    if (!it->is_number_integer() || it->get<int>() < 2 || it->get<int>() > 10000) {
      throw ValidationError("points must be an integer in [2, 10000]", "/points");
    }
    points = it->get<int>();
  }
  const double bound = problem_.bounds[g];
  utility::Plf plf;
  try {
    plf = utility::Instantiate(spec, bound);
  } catch (const ValidationError& e) {
    throw ValidationError(e.detail(), "/spec" + e.path());
  }
  Json samples = Json::array();
  for (int i = 0; i < points; ++i) {
    const double n = bound * i / (points - 1);
    samples.push_back({{"n", n}, {"u", plf.Evaluate(n)}});
  }
  return {200,
          {{"group", inst.groups[g].id},
           {"bound", bound},
           {"anchor", plf.anchor()},
           {"breakpoints", plf.breakpoints()},
           {"slopes", plf.slopes()},
           {"samples", samples}}};
}

}  // namespace casemix::api
