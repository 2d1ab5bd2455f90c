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

#pragma once

// HTTP/JSON prediction and dataset API. ServiceApi holds the request
// handlers and can be driven without sockets; HttpServer binds it to a port.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "krk/data.hpp"
#include "krk/models.hpp"
#include "krk/oracle.hpp"

namespace krk {

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";

  nlohmann::json json() const { return nlohmann::json::parse(body); }
};

struct RegisteredModel {
  std::string id;
  std::shared_ptr<const TrainedModel> model;
  nlohmann::json manifest;
};

/// Immutable set of served models.
using ModelRegistry = std::vector<RegisteredModel>;

/// Loads a single artifact file (id: file stem), a run directory holding
/// model.json (id: directory name), or a directory of either. Throws on
/// unreadable artifacts.
ModelRegistry load_registry(const std::string& path);

class ServiceApi {
 public:
  ServiceApi(std::shared_ptr<const Tablebase> tablebase, std::vector<Record> dataset,
             ModelRegistry models = {});

  /// Atomically replaces the served models.
  void replace_models(ModelRegistry models);
  std::shared_ptr<const ModelRegistry> models_snapshot() const;

  HttpResponse health() const;
  HttpResponse list_models() const;
  HttpResponse predict(const std::string& body) const;
  HttpResponse dataset_stats() const;
  HttpResponse dataset_samples(const std::map<std::string, std::string>& query) const;
  HttpResponse oracle_classify(const std::map<std::string, std::string>& query) const;

  /// Routes a request the way the server does; unknown routes give 404.
  HttpResponse handle(const std::string& method, const std::string& path,
                      const std::map<std::string, std::string>& query,
                      const std::string& body) const;

 private:
  std::shared_ptr<const Tablebase> tablebase_;
  std::vector<Record> dataset_;
  nlohmann::json stats_;
  mutable std::mutex mu_;
  std::shared_ptr<const ModelRegistry> models_;
};

HttpResponse error_response(int status, const std::string& code, const std::string& message);

class HttpServer {
 public:
  /// `ui_dir`, when nonempty, is served under /ui.
  explicit HttpServer(const ServiceApi& api, std::string ui_dir = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds and serves on a background thread; port 0 picks a free port.
  /// Returns the bound port.
  int start(const std::string& host, int port);
  /// Binds and serves on the calling thread until stop().
  void listen(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
};

}  // namespace krk
