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

#include "krk/service.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>

#include "krk/artifact.hpp"
#include "krk/version.hpp"

namespace krk {

using nlohmann::json;
namespace fs = std::filesystem;

ModelRegistry load_registry(const std::string& path) {
  ModelRegistry out;
  auto add = [&](const std::string& id, const fs::path& file) {
    ModelArtifact a = load_model_file(file.string());
    out.push_back({id, std::make_shared<const TrainedModel>(std::move(a.model)),
                   std::move(a.manifest)});
  };
  auto run_model = [](const fs::path& dir) { return dir / "model.json"; };
  const fs::path root(path);
  if (!fs::is_directory(root)) {
    add(root.stem().string(), root);
  } else if (fs::is_regular_file(run_model(root))) {
    // A run directory; "runs/deep/" is named "deep".
    fs::path name = root.lexically_normal();
    if (!name.has_filename()) name = name.parent_path();
    add(name.filename().string(), run_model(root));
  } else {
    std::vector<std::pair<std::string, fs::path>> found;
    for (const auto& entry : fs::directory_iterator(root)) {
      const fs::path& p = entry.path();
      if (entry.is_regular_file() && p.extension() == ".json") {
        found.emplace_back(p.stem().string(), p);
      } else if (entry.is_directory() && fs::is_regular_file(run_model(p))) {
        found.emplace_back(p.filename().string(), run_model(p));
      }
    }
    std::sort(found.begin(), found.end());
    for (const auto& [id, f] : found) add(id, f);
  }
  return out;
}

HttpResponse error_response(int status, const std::string& code, const std::string& message) {
  return {status, json{{"code", code}, {"message", message}}.dump()};
}

namespace {

HttpResponse ok(const json& j) { return {200, j.dump()}; }

json position_json(const Position& p) {
  return {{"wk", p.wk.str()}, {"wr", p.wr.str()}, {"bk", p.bk.str()}};
}

// Parses and validates the three squares; on failure fills `err`.
bool read_position(const json& wk, const json& wr, const json& bk, Position& p,
                   HttpResponse& err) {
  const std::pair<const char*, const json*> fields[] = {{"wk", &wk}, {"wr", &wr}, {"bk", &bk}};
  Square sq[3];
  for (int i = 0; i < 3; ++i) {
    const auto& [name, value] = fields[i];
    if (value->is_null()) {
      err = error_response(400, "missing_field", std::string("field '") + name + "' is required");
      return false;
    }
    if (!value->is_string()) {
      err = error_response(400, "malformed_square", std::string("field '") + name +
                                                        "' must be a square such as \"e4\"");
      return false;
    }
    try {
      sq[i] = Square::parse(value->get<std::string>());
    } catch (const FormatError& e) {
      err = error_response(400, "malformed_square", std::string(name) + ": " + e.what());
      return false;
    }
  }
  p = Position{sq[0], sq[1], sq[2], Side::kBlack};
  if (const auto why = illegality(p)) {
    std::string rule = to_string(*why);
    std::replace(rule.begin(), rule.end(), '_', ' ');
    err = error_response(400, "illegal_position", "illegal position: " + rule);
    return false;
  }
  return true;
}

json canonical_json(const Canonical& c) {
  json j = position_json(c.position);
  j["transform"] = c.transform.name();
  return j;
}

bool parse_size(const std::string& text, std::size_t& out) {
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  const auto r = std::from_chars(text.data(), end, out);
  return r.ec == std::errc() && r.ptr == end;
}

json query_value(const std::map<std::string, std::string>& q, const char* key) {
  const auto it = q.find(key);
  return it == q.end() ? json() : json(it->second);
}

}  // namespace

ServiceApi::ServiceApi(std::shared_ptr<const Tablebase> tablebase, std::vector<Record> dataset,
                       ModelRegistry models)
    : tablebase_(std::move(tablebase)),
      dataset_(std::move(dataset)),
      models_(std::make_shared<const ModelRegistry>(std::move(models))) {
  if (!tablebase_) throw ConfigError("the service needs a solved tablebase");
  const auto stats = statistics(dataset_);
  stats_ = statistics_json(stats);
}

void ServiceApi::replace_models(ModelRegistry models) {
  auto next = std::make_shared<const ModelRegistry>(std::move(models));
  std::lock_guard lock(mu_);
  models_ = std::move(next);
}

std::shared_ptr<const ModelRegistry> ServiceApi::models_snapshot() const {
  std::lock_guard lock(mu_);
  return models_;
}

HttpResponse ServiceApi::health() const {
  return ok({{"status", "ok"},
             {"version", kVersionString},
             {"models", models_snapshot()->size()},
             {"dataset_records", dataset_.size()}});
}

HttpResponse ServiceApi::list_models() const {
  json arr = json::array();
  for (const auto& m : *models_snapshot()) {
    json entry = {{"id", m.id},
                  {"kind", to_string(m.model->kind())},
                  {"encoding", m.model->encoder().fingerprint()}};
    entry["metrics"] = m.manifest.value("metrics", json());
    arr.push_back(std::move(entry));
  }
  return ok({{"models", std::move(arr)}});
}

HttpResponse ServiceApi::predict(const std::string& body) const {
  json req;
  try {
    req = json::parse(body);
  } catch (const json::parse_error&) {
    return error_response(400, "malformed_json", "request body is not valid JSON");
  }
  if (!req.is_object()) return error_response(400, "malformed_json", "request body must be an object");
  if (!req.contains("model_id") || !req["model_id"].is_string()) {
    return error_response(400, "missing_field", "field 'model_id' is required");
  }
  HttpResponse err;
  Position p;
  if (!read_position(req.value("wk", json()), req.value("wr", json()), req.value("bk", json()), p,
                     err)) {
    return err;
  }
  const std::string id = req["model_id"].get<std::string>();
  const auto models = models_snapshot();
  const auto it = std::find_if(models->begin(), models->end(),
                               [&](const RegisteredModel& m) { return m.id == id; });
  if (it == models->end()) return error_response(404, "unknown_model", "no model '" + id + "'");

  const Canonical canon = canonicalize(p);
  const ClassLabel truth = classify(*tablebase_, canon.position);
  const Prediction pred = it->model->predict(canon.position);
  const auto order = it->model->class_order();
  json scores = json::array();
  for (std::size_t k = 0; k < pred.scores.size(); ++k) {
    scores.push_back({{"label", order[k]}, {"score", pred.scores[k]}});
  }
  const std::string predicted = order[static_cast<std::size_t>(pred.label)];
  return ok({{"model_id", id},
             {"position", position_json(p)},
             {"canonical", canonical_json(canon)},
             {"predicted_class", predicted},
             {"scores", std::move(scores)},
             {"oracle_class", truth.name()},
             {"agreement", predicted == truth.name()}});
}

HttpResponse ServiceApi::dataset_stats() const {
  return ok(stats_);
}

HttpResponse ServiceApi::dataset_samples(const std::map<std::string, std::string>& query) const {
  std::size_t offset = 0, limit = 50;
  if (const auto it = query.find("offset"); it != query.end() && !parse_size(it->second, offset)) {
    return error_response(400, "bad_parameter", "offset must be a nonnegative integer");
  }
  if (const auto it = query.find("limit"); it != query.end()) {
    if (!parse_size(it->second, limit) || limit == 0 || limit > 1000) {
      return error_response(400, "bad_parameter", "limit must be an integer in 1..1000");
    }
  }
  if (offset > dataset_.size()) {
    return error_response(400, "bad_parameter",
                          "offset exceeds the dataset size " + std::to_string(dataset_.size()));
  }
  const std::size_t stop = std::min(dataset_.size(), offset + limit);
  json records = json::array();
  for (std::size_t i = offset; i < stop; ++i) {
    json r = position_json(dataset_[i].position);
    r["index"] = i;
    r["label"] = dataset_[i].label.name();
    records.push_back(std::move(r));
  }
  return ok({{"offset", offset},
             {"limit", limit},
             {"total", dataset_.size()},
             {"records", std::move(records)}});
}

HttpResponse ServiceApi::oracle_classify(const std::map<std::string, std::string>& query) const {
  HttpResponse err;
  Position p;
  if (!read_position(query_value(query, "wk"), query_value(query, "wr"), query_value(query, "bk"),
                     p, err)) {
    return err;
  }
  const Canonical canon = canonicalize(p);
  const ClassLabel label = classify(*tablebase_, p);
  json moves = json::array();
  const MoveSet ms = legal_black_moves(p);
  for (const auto& s : ms.destinations) moves.push_back(s.str());
  return ok({{"position", position_json(p)},
             {"canonical", canonical_json(canon)},
             {"oracle_class", label.name()},
             {"status", to_string(status(p))},
             {"black_moves", std::move(moves)},
             {"captures_rook", ms.captures_rook}});
}

HttpResponse ServiceApi::handle(const std::string& method, const std::string& path,
                                const std::map<std::string, std::string>& query,
                                const std::string& body) const {
  const bool get = method == "GET";
  if (path == "/api/health" && get) return health();
  if (path == "/api/models" && get) return list_models();
  if (path == "/api/predict" && method == "POST") return predict(body);
  if (path == "/api/dataset/stats" && get) return dataset_stats();
  if (path == "/api/dataset/samples" && get) return dataset_samples(query);
  if (path == "/api/oracle/classify" && get) return oracle_classify(query);
  return error_response(404, "not_found", method + " " + path + " is not an API route");
}

}  // namespace krk
