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

// Experiment runner, parameter sweeps and comparison against the bundled
// reference results.

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "krk/data.hpp"
#include "krk/eval.hpp"
#include "krk/models.hpp"

namespace krk {

/// "oracle:generate" or a dataset file path.
inline constexpr const char* kOracleSource = "oracle:generate";

std::vector<Record> load_records(const std::string& source);

/// Default encodings: one-hot for logistic regression, mixed for neural
/// networks, ordinal for trees; min-max throughout.
EncodingScheme default_encoding(ModelKind kind) noexcept;

/// Desk-scale limits applied by --fast.
inline constexpr int kFastMaxWidth = 200;
inline constexpr int kFastMaxIterations = 100;

struct ExperimentConfig {
  std::string name = "experiment";
  std::string reference_key;  // optional key into the reference table
  std::string dataset = kOracleSource;
  std::optional<EncodingScheme> encoding;  // unset: default_encoding(model)
  SplitSpec split;
  ModelKind model = ModelKind::kLogisticRegression;
  nlohmann::json model_config = nlohmann::json::object();
  std::string netscript_path;  // network models only
  std::string output_dir;      // empty: nothing written
  bool fast = false;

  EncodingScheme effective_encoding() const {
    return encoding ? *encoding : default_encoding(model);
  }
};

nlohmann::json to_json(const ExperimentConfig& c);
/// Unknown keys are rejected with ConfigError.
ExperimentConfig experiment_from_json(const nlohmann::json& j);
ExperimentConfig load_experiment_file(const std::string& path);

/// Builds the network config for `c`. The topology comes from, in order,
/// model_config["netscript"], netscript_path, or model_config["hidden"]
/// (default one hidden layer of 100).
MlpConfig resolve_mlp_config(const ExperimentConfig& c, int input_width, int num_classes);

/// Clamps hidden widths and iterations to the --fast limits; returns true
/// when anything changed.
bool apply_fast_caps(MlpConfig& cfg);

struct ResultRow {
  std::string name;
  std::string reference_key;
  ModelKind model = ModelKind::kLogisticRegression;
  nlohmann::json params = nlohmann::json::object();  // sweep cell parameters
  double overall_accuracy = 0.0;
  double average_accuracy = 0.0;
  double train_seconds = 0.0;
  std::uint64_t seed = 0;
  std::string error;  // nonempty when the run failed

  bool ok() const noexcept { return error.empty(); }
};

nlohmann::json to_json(const ResultRow& r);
ResultRow result_row_from_json(const nlohmann::json& j);
std::string rows_csv(std::span<const ResultRow> rows);

struct ExperimentResult {
  ResultRow row;
  Evaluation evaluation;
  std::optional<TrainedModel> model;
  nlohmann::json manifest;
};

/// A failure in one pipeline stage ("ingest", "encode", "split", "train",
/// "evaluate", "write").
class ExperimentError : public Error {
 public:
  ExperimentError(std::string stage, std::string error_type, const std::string& message)
      : Error(stage + ": " + message), stage_(std::move(stage)), type_(std::move(error_type)) {}
  const std::string& stage() const noexcept { return stage_; }
  const std::string& error_type() const noexcept { return type_; }

 private:
  std::string stage_;
  std::string type_;
};

/// ingest -> encode -> split -> train -> evaluate, writing manifest.json,
/// model.json and report.json when an output directory is set.
ExperimentResult run_experiment(const ExperimentConfig& cfg);
/// Same, on records already in memory.
ExperimentResult run_experiment(const ExperimentConfig& cfg, std::span<const Record> records);

struct SweepAxis {
  /// "nodes" sets a single hidden layer width; other names are model
  /// config keys.
  std::string name;
  std::vector<nlohmann::json> values;
};

struct SweepCell {
  std::size_t index = 0;
  nlohmann::json params = nlohmann::json::object();
  ExperimentConfig config;
};

struct SweepGrid {
  ExperimentConfig base;
  std::vector<SweepAxis> axes;

  /// Cartesian product, last axis fastest. Each cell's seed is derived from
  /// the base seed and the cell parameters, so results do not depend on the
  /// order cells run in.
  std::vector<SweepCell> cells() const;

  /// Nodes x rate x iterations with the given axis values.
  static SweepGrid nn_grid(std::vector<int> nodes, std::vector<double> rates,
                           std::vector<int> iterations);
  /// The 27-cell grid with nodes {100,1000,10000}, rates {0.1,0.01,0.001},
  /// iterations {100,1000,10000}.
  static SweepGrid table4();
};

/// Reference key of a Table-4-style cell, e.g.
/// "table4/nodes=100,rate=0.1,iterations=100".
std::string table4_key(int nodes, double rate, int iterations);
/// table4_key for a sweep row carrying nodes, learning_rate and iterations
/// params; empty when any is missing.
std::string table4_key(const nlohmann::json& params);

nlohmann::json to_json(const SweepGrid& g);
SweepGrid sweep_from_json(const nlohmann::json& j);

struct SweepOptions {
  std::string output_dir;  // cell-NNN subdirectories; empty disables resume
  bool resume = true;
  std::function<void(const ResultRow&, bool resumed)> on_row;
};

/// One row per cell in grid order. Failed cells carry an error and do not
/// stop the sweep; with an output directory, completed cells are skipped on
/// a rerun.
std::vector<ResultRow> run_sweep(const SweepGrid& grid, const SweepOptions& opts = {});
std::vector<ResultRow> run_sweep(const SweepGrid& grid, std::span<const Record> records,
                                 const SweepOptions& opts = {});

// ------------------------------------------------------------- reference

struct Tolerance {
  enum class Kind { kBand, kLowerBound };
  Kind kind = Kind::kBand;
  double half_width = 0.0;
  double minimum = 0.0;

  double lower(double reference) const noexcept {
    return kind == Kind::kBand ? reference - half_width : minimum;
  }
  double upper(double reference) const noexcept {
    return kind == Kind::kBand ? reference + half_width : 1.0;
  }
};

struct ReferenceRow {
  std::string key;
  std::string tolerance_class;  // e.g. "decision_forest", "deep_neural_network"
  double overall_accuracy = 0.0;
  double average_accuracy = 0.0;
  nlohmann::json extra = nlohmann::json::object();  // params, netscript, macro values
};

struct ReferenceTable {
  std::map<std::string, Tolerance> tolerances;
  std::vector<ReferenceRow> rows;

  /// Throws MissingReferenceRow.
  const ReferenceRow& find(const std::string& key) const;
  const Tolerance& tolerance_for(const ReferenceRow& row) const;
  std::vector<const ReferenceRow*> with_prefix(const std::string& prefix) const;

  static ReferenceTable from_json(const nlohmann::json& j);
  /// The table compiled into the library.
  static const ReferenceTable& bundled();
};

const std::string& bundled_reference_json();

struct ComparisonEntry {
  std::string key;
  std::string name;
  double measured = 0.0;
  double reference = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  /// Distance to the nearest bound; negative outside the band.
  double margin = 0.0;
  bool pass = false;
  std::string error;  // the run failed before producing a value
};

struct ComparisonReport {
  std::vector<ComparisonEntry> entries;
  bool pass() const noexcept;
  std::string text() const;
  nlohmann::json to_json() const;
};

/// Rows without a reference_key are ignored; a key absent from the table
/// throws MissingReferenceRow.
ComparisonReport compare_to_reference(std::span<const ResultRow> rows,
                                      const ReferenceTable& reference = ReferenceTable::bundled());

/// The four baseline configurations behind the early and final result
/// tables: logistic regression, forest, jungle, MLP(100, 0.1, 100).
std::vector<ExperimentConfig> baseline_experiments(bool fast);

}  // namespace krk
