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

#ifndef CASEMIX_API_SERVICE_HPP_
#define CASEMIX_API_SERVICE_HPP_

// HTTP/JSON front end. Service routes requests and owns the session store;
// Server binds it to a socket.
//
//   GET    /api/health
//   GET    /api/instance                       summary and bounds
//   GET    /api/sessions                       session ids
//   POST   /api/sessions                       {id?} -> new session
//   DELETE /api/sessions/{id}
//   GET    /api/sessions/{id}/uf-config
//   PUT    /api/sessions/{id}/uf-config        creates the session if needed
//   POST   /api/sessions/{id}/solve            solve request -> result
//   POST   /api/sessions/{id}/sweep            sweep request -> report
//   POST   /api/sessions/{id}/pareto-check     {which: "latest" | index}
//   GET    /api/sessions/{id}/history
//   POST   /api/plf-preview                    {group, spec, points?}
//
// Status codes: 400 invalid input (body names the JSON path), 404 unknown
// route or session, 409 another solve is running in the session, 422 the
// solve was infeasible or zeroed (body is the full result), 500 solver
// failure.

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "casemix/io/json.hpp"
#include "casemix/scalarize/scalarize.hpp"

namespace casemix::api {

struct Response {
  int status = 200;
  io::Json body;
};

class Service {
 public:
  // Every session starts from `default_config`; the "default" session exists
  // from the start.
  Service(scalarize::Problem problem, io::UfConfig default_config);
  ~Service();

  Response Handle(const std::string& method, const std::string& path, const std::string& body);

  const scalarize::Problem& problem() const { return problem_; }

 private:
  struct Session;
  std::shared_ptr<Session> Find(const std::string& id);
  std::shared_ptr<Session> FindOrCreate(const std::string& id);

  Response Instance() const;
  Response Sessions();
  Response CreateSession(const io::Json& body);
  Response DeleteSession(const std::string& id);
  Response GetConfig(Session& s);
  Response PutConfig(Session& s, const io::Json& body);
  Response Solve(Session& s, const io::Json& body);
  Response Sweep(Session& s, const io::Json& body);
  Response ParetoCheck(Session& s, const io::Json& body);
  Response History(Session& s);
  Response PlfPreview(const io::Json& body) const;

  scalarize::Problem problem_;
  io::UfConfig default_config_;
  std::mutex mutex_;
  std::vector<std::shared_ptr<Session>> sessions_;
  int next_id_ = 1;
};

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  int workers = 4;
  std::string cors_origin = "*";
};

class Server {
 public:
  Server(Service& service, ServerOptions options);
  ~Server();

  // Binds the socket and returns the port. Throws IoError on failure.
  int Bind();
  // Serves until Stop(); returns false when the socket failed.
  bool Listen();
  void Stop();
  void WaitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace casemix::api

#endif  // CASEMIX_API_SERVICE_HPP_
