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

#include "krk/artifact.hpp"

#include <fstream>
#include <sstream>

namespace krk {

using nlohmann::json;

json save_model(const TrainedModel& model, const json& manifest) {
  return {{"schema_version", kArtifactSchemaVersion},
          {"model_kind", to_string(model.kind())},
          {"encoding", model.encoder().to_json()},
          {"encoding_fingerprint", model.encoder().fingerprint()},
          {"class_order", model.class_order()},
          {"num_classes", model.num_classes()},
          {"num_features", model.num_features()},
          {"parameters", model.parameters_json()},
          {"manifest", manifest.is_null() ? json::object() : manifest}};
}

void save_model_file(const std::string& path, const TrainedModel& model, const json& manifest) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write model file '" + path + "'");
  out << save_model(model, manifest).dump(1) << '\n';
  if (!out) throw Error("failed writing model file '" + path + "'");
}

ModelArtifact load_model(const json& doc) {
  if (!doc.is_object()) throw CorruptPayload("model artifact is not a JSON object");
  if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer()) {
    throw CorruptPayload("model artifact has no integer schema_version");
  }
  const int version = doc["schema_version"].get<int>();
  if (version != kArtifactSchemaVersion) {
    throw SchemaVersionError("model artifact schema_version " + std::to_string(version) +
                             " is not supported (expected " +
                             std::to_string(kArtifactSchemaVersion) + ")");
  }
  try {
    const ModelKind kind = parse_model_kind(doc.at("model_kind").get<std::string>());
    FeatureEncoder encoder = FeatureEncoder::from_json(doc.at("encoding"));
    if (encoder.fingerprint() != doc.at("encoding_fingerprint").get<std::string>()) {
      throw CorruptPayload("encoding fingerprint does not match the stored encoder");
    }
    const int nc = doc.at("num_classes").get<int>();
    const int nf = doc.at("num_features").get<int>();
    if (nf != encoder.width()) throw CorruptPayload("feature width disagrees with the encoder");
    TrainedModel model =
        TrainedModel::from_parameters_json(kind, doc.at("parameters"), nc, nf, std::move(encoder));
    if (doc.at("class_order").get<std::vector<std::string>>() != model.class_order()) {
      throw CorruptPayload("class order does not match this build");
    }
    return {std::move(model), doc.value("manifest", json::object())};
  } catch (const json::exception& e) {
    throw CorruptPayload(std::string("malformed model artifact: ") + e.what());
  } catch (const ConfigError& e) {
    throw CorruptPayload(std::string("malformed model artifact: ") + e.what());
  }
}

ModelArtifact load_model_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CorruptPayload(std::string("model artifact is not valid JSON: ") + e.what());
  }
  return load_model(doc);
}

ModelArtifact load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_model_text(ss.str());
}

}  // namespace krk
