// Copyright 2026 The krklab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <httplib.h>

#include "krk/service.hpp"

namespace krk {

struct HttpServer::Impl {
  const ServiceApi& api;
  httplib::Server server;

  explicit Impl(const ServiceApi& a) : api(a) {}
};

namespace {

void reply(httplib::Response& res, const HttpResponse& r) {
  res.status = r.status;
  res.set_content(r.body, r.content_type);
}

std::map<std::string, std::string> flatten(const httplib::Params& params) {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : params) out.emplace(k, v);  // first value wins
  return out;
}

}  // namespace

HttpServer::HttpServer(const ServiceApi& api, std::string ui_dir)
    : impl_(std::make_unique<Impl>(api)) {
  auto& srv = impl_->server;
  auto route = [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, impl_->api.handle(req.method, req.path, flatten(req.params), req.body));
  };
  srv.Get("/api/.*", route);
  srv.Post("/api/.*", route);
  srv.set_exception_handler([](const httplib::Request&, httplib::Response& res,
                               std::exception_ptr ep) {
    std::string what = "unexpected error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    reply(res, error_response(500, "internal_error", what));
  });
  if (!ui_dir.empty()) srv.set_mount_point("/ui", ui_dir);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
  auto& srv = impl_->server;
  int bound = port;
  if (port == 0) {
    bound = srv.bind_to_any_port(host);
  } else if (!srv.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
  thread_ = std::thread([&srv] { srv.listen_after_bind(); });
  srv.wait_until_ready();
  return bound;
}

void HttpServer::listen(const std::string& host, int port) {
  if (!impl_->server.listen(host, port)) {
    throw Error("cannot listen on " + host + ":" + std::to_string(port));
  }
}

void HttpServer::stop() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace krk
