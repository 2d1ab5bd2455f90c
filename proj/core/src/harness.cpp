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

#include "krk/harness.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "krk/artifact.hpp"
#include "krk/netscript.hpp"
#include "krk/oracle.hpp"
#include "krk/rng.hpp"
#include "krk/version.hpp"

namespace krk {

using nlohmann::json;
namespace fs = std::filesystem;

namespace detail {
extern const char* const kReferenceJson;
}

std::vector<Record> load_records(const std::string& source) {
  if (source == kOracleSource) return export_dataset(solve());
  return load_dataset_file(source);
}

EncodingScheme default_encoding(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::kLogisticRegression: return {Encoding::kOneHot, Normalization::kNone};
    case ModelKind::kNeuralNetwork: return {Encoding::kMixed, Normalization::kMinMax};
    default: return {Encoding::kOrdinal, Normalization::kMinMax};
  }
}

// ---------------------------------------------------------------- config

json to_json(const ExperimentConfig& c) {
  json j = {{"name", c.name},
            {"dataset", c.dataset},
            {"split",
             {{"train_fraction", c.split.train_fraction},
              {"seed", c.split.seed},
              {"stratified", c.split.stratified}}},
            {"model", to_string(c.model)},
            {"model_config", c.model_config},
            {"fast", c.fast}};
  if (c.encoding) j["encoding"] = c.encoding->name();
  if (!c.reference_key.empty()) j["reference_key"] = c.reference_key;
  if (!c.netscript_path.empty()) j["netscript_path"] = c.netscript_path;
  if (!c.output_dir.empty()) j["output_dir"] = c.output_dir;
  return j;
}

ExperimentConfig experiment_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  static const std::vector<std::string> known = {
      "name",  "reference_key",  "dataset",    "encoding", "split",
      "model", "model_config",   "netscript_path", "output_dir", "fast"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("experiment config: unknown field '" + key + "'");
    }
  }
  ExperimentConfig c;
  try {
    c.name = j.value("name", c.name);
    c.reference_key = j.value("reference_key", c.reference_key);
    c.dataset = j.value("dataset", c.dataset);
    if (j.contains("encoding")) c.encoding = EncodingScheme::parse(j["encoding"].get<std::string>());
    if (j.contains("split")) {
      const json& s = j["split"];
      c.split.train_fraction = s.value("train_fraction", c.split.train_fraction);
      c.split.seed = s.value("seed", c.split.seed);
      c.split.stratified = s.value("stratified", c.split.stratified);
    }
    if (!j.contains("model")) throw ConfigError("experiment config: 'model' is required");
    c.model = parse_model_kind(j["model"].get<std::string>());
    c.model_config = j.value("model_config", json::object());
    c.netscript_path = j.value("netscript_path", std::string());
    c.output_dir = j.value("output_dir", std::string());
    c.fast = j.value("fast", false);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }
  if (!(c.split.train_fraction > 0 && c.split.train_fraction < 1)) {
    throw ConfigError("experiment config: train_fraction must lie in (0, 1)");
  }
  if (!c.model_config.is_object()) throw ConfigError("experiment config: model_config must be an object");
  return c;
}

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << j.dump(1) << '\n';
}

std::uint64_t model_seed(const json& model_config) {
  return model_config.contains("seed") ? model_config["seed"].get<std::uint64_t>() : 1;
}

}  // namespace

ExperimentConfig load_experiment_file(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
  ExperimentConfig c = experiment_from_json(j);
  // Relative netscript paths resolve against the config file.
  if (!c.netscript_path.empty() && fs::path(c.netscript_path).is_relative()) {
    c.netscript_path = (fs::path(path).parent_path() / c.netscript_path).string();
  }
  return c;
}

MlpConfig resolve_mlp_config(const ExperimentConfig& c, int input_width, int num_classes) {
  MlpConfig cfg;
  from_json(c.model_config, cfg);
  std::string script;
  if (c.model_config.contains("netscript")) {
    script = c.model_config["netscript"].get<std::string>();
  } else if (!c.netscript_path.empty()) {
    script = read_text(c.netscript_path);
  }
  if (!script.empty()) {
    cfg.topology = netscript::elaborate(netscript::parse(script), input_width, num_classes);
  } else {
    std::vector<int> hidden = {100};
    if (c.model_config.contains("hidden")) {
      try {
        hidden = c.model_config["hidden"].get<std::vector<int>>();
      } catch (const json::exception&) {
        throw ConfigError("model_config.hidden must be a list of layer widths");
      }
    }
    cfg.topology = netscript::dense_topology(input_width, hidden, num_classes);
  }
  return cfg;
}

bool apply_fast_caps(MlpConfig& cfg) {
  bool changed = false;
  auto& sizes = cfg.topology.sizes;
  for (std::size_t i = 1; i + 1 < sizes.size(); ++i) {
    if (sizes[i] > kFastMaxWidth) {
      sizes[i] = kFastMaxWidth;
      changed = true;
    }
  }
  if (cfg.iterations > kFastMaxIterations) {
    cfg.iterations = kFastMaxIterations;
    changed = true;
  }
  return changed;
}

// ------------------------------------------------------------------ rows

json to_json(const ResultRow& r) {
  json j = {{"name", r.name},
            {"model", to_string(r.model)},
            {"params", r.params},
            {"overall_accuracy", r.overall_accuracy},
            {"average_accuracy", r.average_accuracy},
            {"train_seconds", r.train_seconds},
            {"seed", r.seed}};
  if (!r.reference_key.empty()) j["reference_key"] = r.reference_key;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

ResultRow result_row_from_json(const json& j) {
  ResultRow r;
  r.name = j.at("name").get<std::string>();
  r.model = parse_model_kind(j.at("model").get<std::string>());
  r.params = j.value("params", json::object());
  r.overall_accuracy = j.at("overall_accuracy").get<double>();
  r.average_accuracy = j.at("average_accuracy").get<double>();
  r.train_seconds = j.value("train_seconds", 0.0);
  r.seed = j.value("seed", std::uint64_t{0});
  r.reference_key = j.value("reference_key", std::string());
  r.error = j.value("error", std::string());
  return r;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

std::string rows_csv(std::span<const ResultRow> rows) {
  std::string out =
      "name,model,params,overall_accuracy,average_accuracy,train_seconds,seed,error\n";
  for (const auto& r : rows) {
    char acc[96];
    std::snprintf(acc, sizeof acc, "%.6f,%.6f,%.3f", r.overall_accuracy, r.average_accuracy,
                  r.train_seconds);
    out += csv_field(r.name) + ',' + std::string(to_string(r.model)) + ',' +
           csv_field(r.params.dump()) + ',' + acc + ',' + std::to_string(r.seed) + ',' +
           csv_field(r.error) + '\n';
  }
  return out;
}

// ------------------------------------------------------------ experiment

namespace {

std::string error_type(const std::exception& e) {
  if (dynamic_cast<const NonFiniteLoss*>(&e)) return "NonFiniteLoss";
  if (dynamic_cast<const ShapeError*>(&e)) return "ShapeError";
  if (dynamic_cast<const DegenerateSplit*>(&e)) return "DegenerateSplit";
  if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
  if (dynamic_cast<const FormatError*>(&e)) return "FormatError";
  if (dynamic_cast<const IllegalPositionError*>(&e)) return "IllegalPositionError";
  if (dynamic_cast<const netscript::SyntaxError*>(&e)) return "SyntaxError";
  if (dynamic_cast<const netscript::SemanticError*>(&e)) return "SemanticError";
  if (dynamic_cast<const EmptyMatrix*>(&e)) return "EmptyMatrix";
  return "Error";
}

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ExperimentError&) {
    throw;
  } catch (const std::exception& e) {
    throw ExperimentError(name, error_type(e), e.what());
  }
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const auto records = stage("ingest", [&] { return load_records(cfg.dataset); });
  return run_experiment(cfg, records);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, std::span<const Record> records) {
  const EncodingScheme scheme = cfg.effective_encoding();
  const EncodedMatrix all = stage("encode", [&] { return encode(records, scheme); });
  auto [train, test] = stage("split", [&] { return split(all, cfg.split); });

  json resolved;
  bool capped = false;
  const auto t0 = std::chrono::steady_clock::now();
  TrainedModel model = stage("train", [&]() -> TrainedModel {
    switch (cfg.model) {
      case ModelKind::kLogisticRegression: {
        LogisticRegressionConfig c;
        from_json(cfg.model_config, c);
        resolved = to_json(c);
        return train_logistic_regression(train, c);
      }
      case ModelKind::kDecisionForest: {
        DecisionForestConfig c;
        from_json(cfg.model_config, c);
        resolved = to_json(c);
        return train_decision_forest(train, c);
      }
      case ModelKind::kDecisionJungle: {
        DecisionJungleConfig c;
        from_json(cfg.model_config, c);
        resolved = to_json(c);
        return train_decision_jungle(train, c);
      }
      case ModelKind::kNeuralNetwork: {
        MlpConfig c = resolve_mlp_config(cfg, static_cast<int>(train.cols), train.num_classes);
        if (cfg.fast) capped = apply_fast_caps(c);
        resolved = to_json(c);
        return train_mlp(train, c);
      }
    }
    throw ConfigError("unknown model kind");
  });
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  ExperimentResult result{{}, stage("evaluate", [&] { return evaluate(model, test); }), {}, {}};
  ResultRow& row = result.row;
  row.name = cfg.name;
  row.reference_key = cfg.reference_key;
  row.model = cfg.model;
  row.overall_accuracy = result.evaluation.metrics.overall_accuracy;
  row.average_accuracy = result.evaluation.metrics.average_accuracy;
  row.train_seconds = seconds;
  row.seed = resolved.value("seed", std::uint64_t{1});

  result.manifest = {
      {"krklab_version", kVersionString},
      {"name", cfg.name},
      {"model", to_string(cfg.model)},
      {"config", resolved},
      {"seed", row.seed},
      {"encoding", model.encoder().fingerprint()},
      {"dataset",
       {{"source", cfg.dataset},
        {"records", records.size()},
        {"fingerprint", hex64(all.fingerprint())}}},
      {"split",
       {{"train_fraction", cfg.split.train_fraction},
        {"seed", cfg.split.seed},
        {"stratified", cfg.split.stratified},
        {"train_rows", train.rows},
        {"test_rows", test.rows},
        {"train_fingerprint", hex64(train.fingerprint())}}},
      {"fast", cfg.fast},
      {"fast_capped", capped},
      {"train_seconds", seconds},
      {"metrics", to_json(result.evaluation.metrics)}};

  if (!cfg.output_dir.empty()) {
    stage("write", [&] {
      const fs::path dir(cfg.output_dir);
      fs::create_directories(dir);
      write_json(dir / "manifest.json", result.manifest);
      save_model_file((dir / "model.json").string(), model, result.manifest);
      write_json(dir / "report.json", {{"row", to_json(row)},
                                       {"metrics", to_json(result.evaluation.metrics)},
                                       {"confusion", to_json(result.evaluation.confusion)}});
      std::ofstream txt(dir / "metrics.txt");
      txt << metrics_table(result.evaluation.metrics);
      return 0;
    });
  }
  result.model = std::move(model);
  return result;
}

// ----------------------------------------------------------------- sweep

std::vector<SweepCell> SweepGrid::cells() const {
  std::vector<SweepCell> out;
  std::size_t total = 1;
  for (const auto& a : axes) {
    if (a.values.empty()) throw ConfigError("sweep axis '" + a.name + "' has no values");
    total *= a.values.size();
  }
  const std::uint64_t base_seed = model_seed(base.model_config);
  for (std::size_t index = 0; index < total; ++index) {
    SweepCell cell;
    cell.index = index;
    cell.config = base;
    std::size_t rest = index;
    std::vector<std::size_t> pick(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
      pick[a] = rest % axes[a].values.size();
      rest /= axes[a].values.size();
    }
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const auto& axis = axes[a];
      const json& v = axis.values[pick[a]];
      cell.params[axis.name] = v;
      if (axis.name == "nodes") {
        cell.config.model_config["hidden"] = json::array({v});
      } else {
        cell.config.model_config[axis.name] = v;
      }
    }
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : cell.params.dump()) h = (h ^ ch) * 1099511628211ULL;
    cell.config.model_config["seed"] = derive_seed(base_seed, h);
    std::string label;
    for (const auto& [k, v] : cell.params.items()) {
      if (!label.empty()) label += ',';
      label += k + '=' + v.dump();
    }
    cell.config.name = base.name + "[" + label + "]";
    cell.config.output_dir.clear();
    out.push_back(std::move(cell));
  }
  return out;
}

SweepGrid SweepGrid::nn_grid(std::vector<int> nodes, std::vector<double> rates,
                             std::vector<int> iterations) {
  SweepGrid g;
  g.base.name = "nn_sweep";
  g.base.model = ModelKind::kNeuralNetwork;
  g.axes.push_back({"nodes", {nodes.begin(), nodes.end()}});
  g.axes.push_back({"learning_rate", {rates.begin(), rates.end()}});
  g.axes.push_back({"iterations", {iterations.begin(), iterations.end()}});
  return g;
}

SweepGrid SweepGrid::table4() {
  // Row order of the reference table: rate outermost, then nodes, then
  // iterations.
  SweepGrid g;
  g.base.name = "table4";
  g.base.model = ModelKind::kNeuralNetwork;
  g.axes.push_back({"learning_rate", {0.1, 0.01, 0.001}});
  g.axes.push_back({"nodes", {100, 1000, 10000}});
  g.axes.push_back({"iterations", {100, 1000, 10000}});
  return g;
}

std::string table4_key(int nodes, double rate, int iterations) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "table4/nodes=%d,rate=%g,iterations=%d", nodes, rate, iterations);
  return buf;
}

std::string table4_key(const json& params) {
  if (!params.contains("nodes") || !params.contains("learning_rate") ||
      !params.contains("iterations")) {
    return {};
  }
  return table4_key(params["nodes"].get<int>(), params["learning_rate"].get<double>(),
                    params["iterations"].get<int>());
}

json to_json(const SweepGrid& g) {
  json axes = json::array();
  for (const auto& a : g.axes) axes.push_back({{"name", a.name}, {"values", a.values}});
  return {{"base", to_json(g.base)}, {"axes", std::move(axes)}};
}

SweepGrid sweep_from_json(const json& j) {
  if (!j.is_object() || !j.contains("base") || !j.contains("axes")) {
    throw ConfigError("sweep config needs 'base' and 'axes'");
  }
  SweepGrid g;
  g.base = experiment_from_json(j["base"]);
  try {
    for (const auto& a : j["axes"]) {
      g.axes.push_back({a.at("name").get<std::string>(), a.at("values").get<std::vector<json>>()});
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("sweep axes: ") + e.what());
  }
  return g;
}

std::vector<ResultRow> run_sweep(const SweepGrid& grid, const SweepOptions& opts) {
  const auto records = stage("ingest", [&] { return load_records(grid.base.dataset); });
  return run_sweep(grid, records, opts);
}

std::vector<ResultRow> run_sweep(const SweepGrid& grid, std::span<const Record> records,
                                 const SweepOptions& opts) {
  std::vector<ResultRow> rows;
  for (const auto& cell : grid.cells()) {
    fs::path cell_dir;
    if (!opts.output_dir.empty()) {
      char name[32];
      std::snprintf(name, sizeof name, "cell-%03zu", cell.index);
      cell_dir = fs::path(opts.output_dir) / name;
      const fs::path done = cell_dir / "row.json";
      if (opts.resume && fs::exists(done)) {
        try {
          const json saved = json::parse(read_text(done.string()));
          if (saved.at("params") == cell.params && saved.at("config") == to_json(cell.config)) {
            ResultRow row = result_row_from_json(saved.at("row"));
            if (opts.on_row) opts.on_row(row, true);
            rows.push_back(std::move(row));
            continue;
          }
        } catch (const std::exception&) {
          // Unreadable marker: rerun the cell.
        }
      }
    }
    ResultRow row;
    json manifest;
    try {
      ExperimentResult r = run_experiment(cell.config, records);
      row = std::move(r.row);
      manifest = std::move(r.manifest);
    } catch (const std::exception& e) {
      row.name = cell.config.name;
      row.model = cell.config.model;
      row.seed = model_seed(cell.config.model_config);
      row.error = e.what();
    }
    row.params = cell.params;
    if (!cell_dir.empty()) {
      fs::create_directories(cell_dir);
      if (!manifest.is_null()) write_json(cell_dir / "manifest.json", manifest);
      if (row.ok()) {
        write_json(cell_dir / "row.json",
                   {{"params", cell.params}, {"config", to_json(cell.config)}, {"row", to_json(row)}});
      }
    }
    if (opts.on_row) opts.on_row(row, false);
    rows.push_back(std::move(row));
  }
  return rows;
}

// ------------------------------------------------------------- reference

const ReferenceRow& ReferenceTable::find(const std::string& key) const {
  for (const auto& r : rows) {
    if (r.key == key) return r;
  }
  throw MissingReferenceRow("no reference row '" + key + "'");
}

const Tolerance& ReferenceTable::tolerance_for(const ReferenceRow& row) const {
  const auto it = tolerances.find(row.tolerance_class);
  if (it == tolerances.end()) {
    throw MissingReferenceRow("no tolerance for class '" + row.tolerance_class + "'");
  }
  return it->second;
}

std::vector<const ReferenceRow*> ReferenceTable::with_prefix(const std::string& prefix) const {
  std::vector<const ReferenceRow*> out;
  for (const auto& r : rows) {
    if (r.key.rfind(prefix, 0) == 0) out.push_back(&r);
  }
  return out;
}

ReferenceTable ReferenceTable::from_json(const json& j) {
  ReferenceTable t;
  try {
    for (const auto& [name, tj] : j.at("tolerances").items()) {
      Tolerance tol;
      const auto kind = tj.at("kind").get<std::string>();
      if (kind == "band") {
        tol.kind = Tolerance::Kind::kBand;
        tol.half_width = tj.at("half_width").get<double>();
      } else if (kind == "lower_bound") {
        tol.kind = Tolerance::Kind::kLowerBound;
        tol.minimum = tj.at("minimum").get<double>();
      } else {
        throw ConfigError("unknown tolerance kind '" + kind + "'");
      }
      t.tolerances[name] = tol;
    }
    for (const auto& rj : j.at("rows")) {
      ReferenceRow r;
      r.key = rj.at("key").get<std::string>();
      r.tolerance_class = rj.at("kind").get<std::string>();
      r.overall_accuracy = rj.at("overall_accuracy").get<double>();
      r.average_accuracy = rj.at("average_accuracy").get<double>();
      for (const auto& [k, v] : rj.items()) {
        if (k != "key" && k != "kind" && k != "overall_accuracy" && k != "average_accuracy") {
          r.extra[k] = v;
        }
      }
      t.rows.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("reference table: ") + e.what());
  }
  return t;
}

const std::string& bundled_reference_json() {
  static const std::string text = detail::kReferenceJson;
  return text;
}

const ReferenceTable& ReferenceTable::bundled() {
  static const ReferenceTable table = from_json(json::parse(bundled_reference_json()));
  return table;
}

bool ComparisonReport::pass() const noexcept {
  for (const auto& e : entries) {
    if (!e.pass) return false;
  }
  return true;
}

std::string ComparisonReport::text() const {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-44s %9s %9s %17s %8s  %s\n", "reference", "measured",
                "expected", "band", "margin", "result");
  out += buf;
  for (const auto& e : entries) {
    if (!e.error.empty()) {
      std::snprintf(buf, sizeof buf, "%-44s %9s %9.4f %17s %8s  FAIL (%s)\n", e.key.c_str(), "-",
                    e.reference, "-", "-", e.error.c_str());
    } else {
      char band[40];
      std::snprintf(band, sizeof band, "[%.4f, %.4f]", e.lower, e.upper);
      std::snprintf(buf, sizeof buf, "%-44s %9.4f %9.4f %17s %+8.4f  %s\n", e.key.c_str(),
                    e.measured, e.reference, band, e.margin, e.pass ? "PASS" : "FAIL");
    }
    out += buf;
  }
  return out;
}

json ComparisonReport::to_json() const {
  json rows = json::array();
  for (const auto& e : entries) {
    json r = {{"key", e.key},           {"name", e.name},   {"measured", e.measured},
              {"reference", e.reference}, {"lower", e.lower}, {"upper", e.upper},
              {"margin", e.margin},     {"pass", e.pass}};
    if (!e.error.empty()) r["error"] = e.error;
    rows.push_back(std::move(r));
  }
  return {{"pass", pass()}, {"entries", std::move(rows)}};
}

ComparisonReport compare_to_reference(std::span<const ResultRow> rows,
                                      const ReferenceTable& reference) {
  ComparisonReport report;
  for (const auto& row : rows) {
    if (row.reference_key.empty()) continue;
    const ReferenceRow& ref = reference.find(row.reference_key);
    const Tolerance& tol = reference.tolerance_for(ref);
    ComparisonEntry e;
    e.key = ref.key;
    e.name = row.name;
    e.reference = ref.overall_accuracy;
    e.lower = tol.lower(ref.overall_accuracy);
    e.upper = tol.upper(ref.overall_accuracy);
    if (!row.ok()) {
      e.error = row.error;
      e.pass = false;
    } else {
      e.measured = row.overall_accuracy;
      e.margin = std::min(e.measured - e.lower, e.upper - e.measured);
      e.pass = e.margin >= 0.0;
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

std::vector<ExperimentConfig> baseline_experiments(bool fast) {
  std::vector<ExperimentConfig> out(4);
  out[0].name = "logistic_regression";
  out[0].model = ModelKind::kLogisticRegression;
  out[0].reference_key = "fig9/logistic_regression";
  out[1].name = "decision_forest";
  out[1].model = ModelKind::kDecisionForest;
  out[1].reference_key = "fig13/decision_forest";
  out[2].name = "decision_jungle";
  out[2].model = ModelKind::kDecisionJungle;
  out[2].reference_key = "fig11/decision_jungle";
  out[3].name = "neural_network";
  out[3].model = ModelKind::kNeuralNetwork;
  out[3].reference_key = "fig15/neural_network";
  out[3].model_config = {{"hidden", json::array({100})}, {"learning_rate", 0.1}, {"iterations", 100}};
  for (auto& c : out) c.fast = fast;
  return out;
}

}  // namespace krk
