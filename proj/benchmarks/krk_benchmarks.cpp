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

#include <benchmark/benchmark.h>

#include "krk/artifact.hpp"
#include "krk/oracle.hpp"

namespace {

const std::vector<krk::Record>& records() {
  static const std::vector<krk::Record> r = krk::export_dataset(krk::solve());
  return r;
}

krk::EncodedMatrix encoded(const char* scheme) {
  return krk::encode(records(), krk::EncodingScheme::parse(scheme));
}

void BM_Solve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(krk::solve());
}
BENCHMARK(BM_Solve)->Unit(benchmark::kMillisecond);

void BM_Export(benchmark::State& state) {
  const krk::Tablebase tb = krk::solve();
  for (auto _ : state) benchmark::DoNotOptimize(krk::export_dataset(tb));
}
BENCHMARK(BM_Export)->Unit(benchmark::kMillisecond);

void BM_Encode(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(encoded("mixed+minmax"));
}
BENCHMARK(BM_Encode)->Unit(benchmark::kMillisecond);

// One pass over the full dataset with a single hidden layer.
void BM_MlpEpoch(benchmark::State& state) {
  const auto data = encoded("mixed+minmax");
  krk::MlpConfig cfg;
  cfg.topology = krk::netscript::dense_topology(27, {static_cast<int>(state.range(0))}, 18);
  cfg.iterations = 1;
  for (auto _ : state) benchmark::DoNotOptimize(krk::train_mlp(data, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(data.rows));
}
BENCHMARK(BM_MlpEpoch)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ForestTrain(benchmark::State& state) {
  const auto data = encoded("ordinal+minmax");
  krk::DecisionForestConfig cfg;
  cfg.n_trees = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(krk::train_decision_forest(data, cfg));
}
BENCHMARK(BM_ForestTrain)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ForestPredict(benchmark::State& state) {
  const auto data = encoded("ordinal+minmax");
  const auto model = krk::train_decision_forest(data, krk::DecisionForestConfig{});
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.predict(records()[i].position));
    i = (i + 1) % records().size();
  }
}
BENCHMARK(BM_ForestPredict);

}  // namespace

BENCHMARK_MAIN();
