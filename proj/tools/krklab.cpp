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

// krklab: command-line front end for the KRK lab.
//
// Exit codes: 0 success, 1 a tolerance or agreement check failed, 2 the
// command could not run.

#include <chrono>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "krk/artifact.hpp"
#include "krk/eval.hpp"
#include "krk/harness.hpp"
#include "krk/netscript.hpp"
#include "krk/oracle.hpp"
#include "krk/service.hpp"
#include "krk/version.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitTolerance = 1;
constexpr int kExitError = 2;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  if (const auto parent = fs::path(path).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw krk::Error("cannot write '" + path + "'");
  out << text;
}

// Parses "key=value" overrides; values are read as JSON when possible.
json parse_overrides(const std::vector<std::string>& sets) {
  json out = json::object();
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw krk::ConfigError("--set expects key=value, got '" + s + "'");
    }
    const std::string key = s.substr(0, eq), text = s.substr(eq + 1);
    try {
      out[key] = json::parse(text);
    } catch (const json::parse_error&) {
      out[key] = text;
    }
  }
  return out;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string out = "krkopt.data";
};

int cmd_generate(const GenerateArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const krk::Tablebase tb = krk::solve();
  const auto records = krk::export_dataset(tb);
  std::ostringstream ss;
  krk::write_dataset(ss, records);
  write_text(a.out, ss.str());
  std::fprintf(stderr, "generated %zu records in %.2f s (max depth %d)\n", records.size(),
               seconds_since(t0), tb.max_black_depth());
  return kExitOk;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  std::string dataset;
  bool json_out = false;
  int show = 10;
};

int cmd_verify(const VerifyArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto records = krk::load_dataset_file(a.dataset);
  const krk::Tablebase tb = krk::solve();
  const auto report = krk::verify_against_dataset(tb, records);
  const double secs = seconds_since(t0);
  if (a.json_out) {
    json dis = json::array();
    for (const auto& d : report.disagreements) {
      dis.push_back({{"position", d.position.str()},
                     {"dataset", d.dataset_label.name()},
                     {"oracle", d.oracle_label.name()}});
    }
    std::cout << json{{"compared", report.compared},
                      {"agreed", report.agreed},
                      {"agreement", report.agreement()},
                      {"non_canonical", report.non_canonical},
                      {"histogram_delta", report.histogram_delta()},
                      {"disagreements", dis},
                      {"seconds", secs}}
                     .dump(1)
              << '\n';
  } else {
    std::printf("compared      %zu\n", report.compared);
    std::printf("agreed        %zu (%.4f%%)\n", report.agreed, 100.0 * report.agreement());
    std::printf("non-canonical %zu\n", report.non_canonical);
    std::printf("seconds       %.2f\n", secs);
    int shown = 0;
    for (const auto& d : report.disagreements) {
      if (shown++ >= a.show) break;
      std::printf("  %s: file says %s, oracle says %s\n", d.position.str().c_str(),
                  std::string(d.dataset_label.name()).c_str(),
                  std::string(d.oracle_label.name()).c_str());
    }
  }
  return report.success() ? kExitOk : kExitTolerance;
}

// ------------------------------------------------------------------- stats

struct StatsArgs {
  std::string dataset = krk::kOracleSource;
  std::string format = "table";
};

int cmd_stats(const StatsArgs& a) {
  const auto records = krk::load_records(a.dataset);
  const auto stats = krk::statistics(records);
  if (a.format == "csv") {
    std::cout << krk::statistics_csv(stats);
  } else if (a.format == "json") {
    std::cout << krk::statistics_json(stats).dump(1) << '\n';
  } else {
    std::printf("%-10s %7s %8s\n", "result", "count", "percent");
    for (const auto& c : stats) {
      std::printf("%-10s %7zu %7.2f%%\n", std::string(c.label.name()).c_str(), c.count, c.percent);
    }
    std::printf("%-10s %7zu\n", "total", records.size());
  }
  return kExitOk;
}

// ------------------------------------------------------------------- train

struct TrainArgs {
  std::string config;
  std::string model;
  std::string dataset;
  std::string encoding;
  std::string netscript;
  std::string out;
  std::string reference;
  std::vector<std::string> sets;
  double train_fraction = 0.0;
  std::int64_t split_seed = -1;
  bool fast = false;
  bool json_out = false;
};

krk::ExperimentConfig experiment_from_args(const TrainArgs& a) {
  krk::ExperimentConfig c;
  if (!a.config.empty()) {
    c = krk::load_experiment_file(a.config);
  } else if (a.model.empty()) {
    throw krk::ConfigError("give --config or --model");
  }
  if (!a.model.empty()) {
    c.model = krk::parse_model_kind(a.model);
    c.name = std::string(krk::to_string(c.model));
  }
  if (!a.dataset.empty()) c.dataset = a.dataset;
  if (!a.encoding.empty()) c.encoding = krk::EncodingScheme::parse(a.encoding);
  if (!a.netscript.empty()) c.netscript_path = a.netscript;
  if (!a.out.empty()) c.output_dir = a.out;
  if (!a.reference.empty()) c.reference_key = a.reference;
  if (a.train_fraction > 0) c.split.train_fraction = a.train_fraction;
  if (a.split_seed >= 0) c.split.seed = static_cast<std::uint64_t>(a.split_seed);
  if (a.fast) c.fast = true;
  const json overrides = parse_overrides(a.sets);
  for (const auto& [k, v] : overrides.items()) c.model_config[k] = v;
  return c;
}

int cmd_train(const TrainArgs& a) {
  const krk::ExperimentConfig cfg = experiment_from_args(a);
  const krk::ExperimentResult r = krk::run_experiment(cfg);
  int code = kExitOk;
  json comparison;
  if (!cfg.reference_key.empty()) {
    const auto report = krk::compare_to_reference(std::span(&r.row, 1));
    comparison = report.to_json();
    if (!report.pass()) code = kExitTolerance;
    if (!a.json_out) std::cout << report.text();
  }
  if (a.json_out) {
    json out = {{"row", krk::to_json(r.row)}, {"metrics", krk::to_json(r.evaluation.metrics)}};
    if (!comparison.is_null()) out["comparison"] = comparison;
    std::cout << out.dump(1) << '\n';
  } else {
    std::printf("%s (%s), trained in %.2f s\n", cfg.name.c_str(),
                std::string(krk::to_string(cfg.model)).c_str(), r.row.train_seconds);
    std::cout << krk::metrics_table(r.evaluation.metrics);
    if (!cfg.output_dir.empty()) std::printf("artifacts written to %s\n", cfg.output_dir.c_str());
  }
  return code;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string model;
  std::string dataset;
  bool all_rows = false;
  bool json_out = false;
  bool confusion = false;
};

int cmd_evaluate(const EvaluateArgs& a) {
  const krk::ModelArtifact art = krk::load_model_file(a.model);
  const json& m = art.manifest;
  std::string source = a.dataset;
  if (source.empty()) {
    source = m.contains("dataset") ? m["dataset"].value("source", std::string(krk::kOracleSource))
                                   : std::string(krk::kOracleSource);
  }
  const auto records = krk::load_records(source);
  std::vector<krk::Record> rows(records.begin(), records.end());
  krk::EncodedMatrix all = krk::encode(rows, art.model.encoder().scheme());
  // Re-encode with the artifact's fitted encoder so ranges match training.
  for (std::size_t i = 0; i < rows.size(); ++i) art.model.encoder().encode(rows[i].position, all.row(i));
  all.encoder = art.model.encoder();
  krk::EncodedMatrix test;
  if (a.all_rows || !m.contains("split")) {
    test = std::move(all);
  } else {
    krk::SplitSpec spec;
    spec.train_fraction = m["split"].value("train_fraction", spec.train_fraction);
    spec.seed = m["split"].value("seed", spec.seed);
    spec.stratified = m["split"].value("stratified", spec.stratified);
    test = krk::split(all, spec).second;
  }
  const krk::Evaluation e = krk::evaluate(art.model, test);
  if (a.json_out) {
    json out = {{"rows", test.rows}, {"metrics", krk::to_json(e.metrics)}};
    if (a.confusion) out["confusion"] = krk::to_json(e.confusion);
    std::cout << out.dump(1) << '\n';
  } else {
    std::printf("evaluated %zu rows (%s)\n", test.rows, a.all_rows ? "all" : "test split");
    std::cout << krk::metrics_table(e.metrics);
  }
  return kExitOk;
}

// ------------------------------------------------------------------- sweep

struct SweepArgs {
  std::string grid = "table4";
  std::string out;
  std::string csv;
  std::string dataset;
  bool fast = false;
  bool no_resume = false;
  bool compare = false;
};

int cmd_sweep(const SweepArgs& a) {
  krk::SweepGrid grid;
  if (a.grid == "table4") {
    grid = krk::SweepGrid::table4();
  } else {
    std::ifstream in(a.grid);
    if (!in) throw krk::ConfigError("cannot open sweep file '" + a.grid + "'");
    grid = krk::sweep_from_json(json::parse(in));
  }
  if (!a.dataset.empty()) grid.base.dataset = a.dataset;
  if (a.fast) grid.base.fast = true;
  krk::SweepOptions opts;
  opts.output_dir = a.out;
  opts.resume = !a.no_resume;
  opts.on_row = [](const krk::ResultRow& r, bool resumed) {
    if (r.ok()) {
      std::fprintf(stderr, "%-60s %.4f %8.1fs%s\n", r.name.c_str(), r.overall_accuracy,
                   r.train_seconds, resumed ? " (resumed)" : "");
    } else {
      std::fprintf(stderr, "%-60s FAILED: %s\n", r.name.c_str(), r.error.c_str());
    }
  };
  auto rows = krk::run_sweep(grid, opts);
  int code = kExitOk;
  for (const auto& r : rows) {
    if (!r.ok()) code = kExitTolerance;
  }
  write_text(a.csv.empty() && !a.out.empty() ? (fs::path(a.out) / "results.csv").string() : a.csv,
             krk::rows_csv(rows));
  if (a.compare) {
    for (auto& r : rows) r.reference_key = krk::table4_key(r.params);
    const auto report = krk::compare_to_reference(rows);
    std::cout << report.text();
    if (!report.pass()) code = kExitTolerance;
  }
  return code;
}

// ----------------------------------------------------------------- compare

struct CompareArgs {
  std::vector<std::string> results;
  std::string reference;
  bool fast = false;
  bool json_out = false;
  std::string out;
};

// Accepts result-row JSON files, report.json files or run directories.
std::vector<krk::ResultRow> read_rows(const std::string& path) {
  fs::path p(path);
  if (fs::is_directory(p)) p /= "report.json";
  std::ifstream in(p);
  if (!in) throw krk::ConfigError("cannot open '" + p.string() + "'");
  const json j = json::parse(in);
  std::vector<krk::ResultRow> out;
  auto one = [&](const json& r) { out.push_back(krk::result_row_from_json(r.contains("row") ? r["row"] : r)); };
  if (j.is_array()) {
    for (const auto& r : j) one(r);
  } else {
    one(j);
  }
  return out;
}

int cmd_compare(const CompareArgs& a) {
  std::vector<krk::ResultRow> rows;
  if (a.results.empty()) {
    // Run the four baselines on one shared split.
    const auto records = krk::load_records(krk::kOracleSource);
    for (auto cfg : krk::baseline_experiments(a.fast)) {
      if (!a.out.empty()) cfg.output_dir = (fs::path(a.out) / cfg.name).string();
      std::fprintf(stderr, "training %s...\n", cfg.name.c_str());
      try {
        rows.push_back(krk::run_experiment(cfg, records).row);
      } catch (const std::exception& e) {
        krk::ResultRow r;
        r.name = cfg.name;
        r.model = cfg.model;
        r.reference_key = cfg.reference_key;
        r.error = e.what();
        rows.push_back(std::move(r));
      }
    }
  } else {
    for (const auto& path : a.results) {
      auto more = read_rows(path);
      rows.insert(rows.end(), more.begin(), more.end());
    }
  }
  krk::ReferenceTable table = krk::ReferenceTable::bundled();
  if (!a.reference.empty()) {
    std::ifstream in(a.reference);
    if (!in) throw krk::ConfigError("cannot open reference '" + a.reference + "'");
    table = krk::ReferenceTable::from_json(json::parse(in));
  }
  const auto report = krk::compare_to_reference(rows, table);
  if (a.json_out) {
    std::cout << report.to_json().dump(1) << '\n';
  } else {
    std::cout << report.text();
  }
  return report.pass() ? kExitOk : kExitTolerance;
}

// ------------------------------------------------------------------- serve

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::vector<std::string> models;
  std::string dataset = krk::kOracleSource;
  std::string ui;
};

krk::HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

int cmd_serve(const ServeArgs& a) {
  auto tb = std::make_shared<const krk::Tablebase>(krk::solve());
  std::vector<krk::Record> records =
      a.dataset == krk::kOracleSource ? krk::export_dataset(*tb) : krk::load_dataset_file(a.dataset);
  krk::ModelRegistry registry;
  for (const auto& path : a.models) {
    for (auto& m : krk::load_registry(path)) {
      const bool taken = std::any_of(registry.begin(), registry.end(),
                                     [&](const krk::RegisteredModel& r) { return r.id == m.id; });
      if (taken) throw krk::ConfigError("two models are named '" + m.id + "'");
      registry.push_back(std::move(m));
    }
  }
  krk::ServiceApi api(tb, std::move(records), std::move(registry));
  krk::HttpServer server(api, a.ui);
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::fprintf(stderr, "serving %zu model(s) on http://%s:%d\n", api.models_snapshot()->size(),
               a.host.c_str(), a.port);
  server.listen(a.host, a.port);
  g_server = nullptr;
  return kExitOk;
}

// ------------------------------------------------------------------- probe

struct ProbeArgs {
  std::string wk, wr, bk;
  std::string model;
  std::string netscript;
  bool json_out = false;
};

int cmd_probe(const ProbeArgs& a) {
  if (!a.netscript.empty()) {
    std::ifstream in(a.netscript);
    if (!in) throw krk::ConfigError("cannot open '" + a.netscript + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const auto ast = krk::netscript::parse(ss.str());
    std::printf("ok: %zu layers, %d hidden nodes\n", ast.layers.size(),
                krk::netscript::total_hidden_nodes(ast));
    std::cout << krk::netscript::unparse(ast) << '\n';
    return kExitOk;
  }
  if (a.wk.empty() || a.wr.empty() || a.bk.empty()) {
    throw krk::ConfigError("probe needs --wk, --wr and --bk (or --netscript)");
  }
  auto tb = std::make_shared<const krk::Tablebase>(krk::solve());
  krk::ModelRegistry registry;
  if (!a.model.empty()) registry = krk::load_registry(a.model);
  const std::string model_id = registry.empty() ? std::string() : registry.front().id;
  krk::ServiceApi api(tb, {}, std::move(registry));
  const std::map<std::string, std::string> q = {{"wk", a.wk}, {"wr", a.wr}, {"bk", a.bk}};
  krk::HttpResponse r = api.oracle_classify(q);
  json out = r.json();
  if (r.status != 200) {
    std::cerr << out.value("message", "error") << '\n';
    return kExitError;
  }
  if (!model_id.empty()) {
    const json body = {{"wk", a.wk}, {"wr", a.wr}, {"bk", a.bk}, {"model_id", model_id}};
    out["prediction"] = api.predict(body.dump()).json();
  }
  if (a.json_out) {
    std::cout << out.dump(1) << '\n';
    return kExitOk;
  }
  std::printf("position   wk %s wr %s bk %s, black to move\n", a.wk.c_str(), a.wr.c_str(),
              a.bk.c_str());
  std::printf("canonical  wk %s wr %s bk %s (%s)\n",
              out["canonical"]["wk"].get<std::string>().c_str(),
              out["canonical"]["wr"].get<std::string>().c_str(),
              out["canonical"]["bk"].get<std::string>().c_str(),
              out["canonical"]["transform"].get<std::string>().c_str());
  std::printf("status     %s\n", out["status"].get<std::string>().c_str());
  std::printf("oracle     %s\n", out["oracle_class"].get<std::string>().c_str());
  std::string moves;
  for (const auto& m : out["black_moves"]) moves += (moves.empty() ? "" : " ") + m.get<std::string>();
  std::printf("black can  %s\n", moves.empty() ? "(no moves)" : moves.c_str());
  if (out.contains("prediction")) {
    const auto& p = out["prediction"];
    std::printf("model      %s predicts %s (%s)\n", model_id.c_str(),
                p["predicted_class"].get<std::string>().c_str(),
                p["agreement"].get<bool>() ? "agrees" : "disagrees");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"KRK endgame lab: oracle, dataset, classifiers and prediction service"};
  app.set_version_flag("--version", std::string(krk::kVersionString));
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Solve KRK and write the labelled dataset");
  g->add_option("-o,--out", gen.out, "Output file, '-' for stdout")->capture_default_str();

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Compare a dataset file against the oracle");
  v->add_option("dataset", ver.dataset, "Dataset file")->required();
  v->add_flag("--json", ver.json_out, "JSON output");
  v->add_option("--show", ver.show, "Disagreements to list")->capture_default_str();

  StatsArgs st;
  auto* s = app.add_subcommand("stats", "Per-class counts and percentages");
  s->add_option("-d,--dataset", st.dataset, "Dataset file or oracle:generate")->capture_default_str();
  s->add_option("-f,--format", st.format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();

  TrainArgs tr;
  auto* t = app.add_subcommand("train", "Train and evaluate one model");
  t->add_option("-c,--config", tr.config, "Experiment config JSON");
  t->add_option("-m,--model", tr.model, "lr, df, dj or nn");
  t->add_option("-d,--dataset", tr.dataset, "Dataset file or oracle:generate");
  t->add_option("-e,--encoding", tr.encoding, "ordinal, onehot or mixed, optionally +minmax");
  t->add_option("--netscript", tr.netscript, "Network definition file");
  t->add_option("-o,--out", tr.out, "Directory for manifest, model and report");
  t->add_option("--reference", tr.reference, "Reference key to check against");
  t->add_option("--set", tr.sets, "Model config override key=value (repeatable)");
  t->add_option("--train-fraction", tr.train_fraction, "Training share of the split");
  t->add_option("--split-seed", tr.split_seed, "Split seed");
  t->add_flag("--fast", tr.fast, "Cap network width and iterations");
  t->add_flag("--json", tr.json_out, "JSON output");

  EvaluateArgs ev;
  auto* e = app.add_subcommand("evaluate", "Evaluate a saved model");
  e->add_option("model", ev.model, "Model artifact")->required();
  e->add_option("-d,--dataset", ev.dataset, "Dataset (default: the one it was trained on)");
  e->add_flag("--all", ev.all_rows, "Use every row instead of the held-out split");
  e->add_flag("--json", ev.json_out, "JSON output");
  e->add_flag("--confusion", ev.confusion, "Include the confusion matrix (JSON)");

  SweepArgs sw;
  auto* w = app.add_subcommand("sweep", "Run a parameter grid");
  w->add_option("-g,--grid", sw.grid, "'table4' or a sweep JSON file")->capture_default_str();
  w->add_option("-o,--out", sw.out, "Directory for per-cell results (enables resume)");
  w->add_option("--csv", sw.csv, "CSV output path ('-' for stdout)");
  w->add_option("-d,--dataset", sw.dataset, "Dataset file or oracle:generate");
  w->add_flag("--fast", sw.fast, "Cap network width and iterations");
  w->add_flag("--no-resume", sw.no_resume, "Rerun completed cells");
  w->add_flag("--compare", sw.compare, "Compare cells with the reference table");

  CompareArgs cp;
  auto* c = app.add_subcommand("compare", "Check results against the reference tables");
  c->add_option("results", cp.results, "Result files or run directories (default: run baselines)");
  c->add_option("--reference", cp.reference, "Reference table JSON (default: bundled)");
  c->add_option("-o,--out", cp.out, "Directory for baseline run artifacts");
  c->add_flag("--fast", cp.fast, "Cap network width and iterations");
  c->add_flag("--json", cp.json_out, "JSON output");

  ServeArgs sv;
  auto* r = app.add_subcommand("serve", "Serve the prediction and dataset API");
  r->add_option("--host", sv.host, "Listen address")->capture_default_str();
  r->add_option("-p,--port", sv.port, "Listen port")->capture_default_str();
  r->add_option("-m,--models", sv.models, "Model artifact, run directory, or directory of either (repeatable)");
  r->add_option("-d,--dataset", sv.dataset, "Dataset file or oracle:generate")->capture_default_str();
  r->add_option("--ui", sv.ui, "Static web UI directory served under /ui");

  ProbeArgs pr;
  auto* p = app.add_subcommand("probe", "Inspect one position, or check a network script");
  p->add_option("--wk", pr.wk, "White king square");
  p->add_option("--wr", pr.wr, "White rook square");
  p->add_option("--bk", pr.bk, "Black king square");
  p->add_option("-m,--model", pr.model, "Model artifact to query as well");
  p->add_option("--netscript", pr.netscript, "Parse this network script instead");
  p->add_flag("--json", pr.json_out, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? kExitOk : kExitError;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*v) return cmd_verify(ver);
    if (*s) return cmd_stats(st);
    if (*t) return cmd_train(tr);
    if (*e) return cmd_evaluate(ev);
    if (*w) return cmd_sweep(sw);
    if (*c) return cmd_compare(cp);
    if (*r) return cmd_serve(sv);
    if (*p) return cmd_probe(pr);
  } catch (const krk::netscript::SyntaxError& err) {
    std::cerr << "krklab: syntax error: " << err.what() << '\n';
  } catch (const krk::netscript::SemanticError& err) {
    std::cerr << "krklab: " << err.what() << '\n';
  } catch (const std::exception& err) {
    std::cerr << "krklab: " << err.what() << '\n';
  }
  return kExitError;
}
