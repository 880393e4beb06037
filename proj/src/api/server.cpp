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

#include <httplib.h>

#include "casemix/api/service.hpp"
#include "casemix/error.hpp"

namespace casemix::api {

struct Server::Impl {
  Service& service;
  ServerOptions options;
  httplib::Server http;
  int port = -1;

  Impl(Service& s, ServerOptions o) : service(s), options(std::move(o)) {}
};

Server::Server(Service& service, ServerOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {
  auto& http = impl_->http;
  const int workers = std::max(1, impl_->options.workers);
  http.new_task_queue = [workers] { return new httplib::ThreadPool(workers); };
  http.set_default_headers({{"Access-Control-Allow-Origin", impl_->options.cors_origin},
                            {"Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS"},
                            {"Access-Control-Allow-Headers", "Content-Type"}});
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    const Response r = impl_->service.Handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  const std::string any = R"(/.*)";
  http.Get(any, handler);
  http.Post(any, handler);
  http.Put(any, handler);
  http.Delete(any, handler);
  http.Options(any, [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

Server::~Server() { Stop(); }

int Server::Bind() {
  auto& o = impl_->options;
  if (o.port == 0) {
    impl_->port = impl_->http.bind_to_any_port(o.host);
  } else {
    impl_->port = impl_->http.bind_to_port(o.host, o.port) ? o.port : -1;
  }
  if (impl_->port < 0) {
    throw IoError("cannot bind " + o.host + ":" + std::to_string(o.port));
  }
  return impl_->port;
}

bool Server::Listen() {
  if (impl_->port < 0) Bind();
  return impl_->http.listen_after_bind();
}

void Server::Stop() {
  if (impl_->http.is_running()) impl_->http.stop();
}

void Server::WaitUntilReady() const { impl_->http.wait_until_ready(); }

}  // namespace casemix::api
