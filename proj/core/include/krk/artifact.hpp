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

// On-disk model artifacts: a versioned JSON document holding the encoder,
// class order, parameters and the training manifest.

#include <string>

#include <nlohmann/json.hpp>

#include "krk/models.hpp"

namespace krk {

inline constexpr int kArtifactSchemaVersion = 1;

struct ModelArtifact {
  TrainedModel model;
  nlohmann::json manifest;
};

nlohmann::json save_model(const TrainedModel& model, const nlohmann::json& manifest = {});
void save_model_file(const std::string& path, const TrainedModel& model,
                     const nlohmann::json& manifest = {});

/// Throws SchemaVersionError for an unsupported version and CorruptPayload
/// for anything malformed or inconsistent.
ModelArtifact load_model(const nlohmann::json& doc);
ModelArtifact load_model_text(const std::string& text);
ModelArtifact load_model_file(const std::string& path);

}  // namespace krk
