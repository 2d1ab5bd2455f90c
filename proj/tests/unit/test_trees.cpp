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

#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "krk/eval.hpp"
#include "krk/models.hpp"

namespace krk {
namespace {

// Distinct integer points on a grid with labels from an arbitrary rule.
EncodedMatrix grid_problem(int side, int k, unsigned seed) {
  std::mt19937 gen(seed);
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (int a = 0; a < side; ++a) {
    for (int b = 0; b < side; ++b) {
      rows.push_back({static_cast<double>(a), static_cast<double>(b),
                      static_cast<double>((a * 7 + b * 3) % 5)});
      labels.push_back(static_cast<int>(gen() % static_cast<unsigned>(k)));
    }
  }
  return EncodedMatrix::from_rows(rows, labels, k);
}

double entropy_mass(const std::vector<double>& h) {
  double n = 0, s = 0;
  for (double c : h) n += c;
  for (double c : h) {
    if (c > 0) s -= c * std::log(c / n);
  }
  return s;
}

TEST(Forest, SingleTreeMemorizes) {
  const auto data = grid_problem(12, 4, 1);
  DecisionForestConfig cfg;
  cfg.n_trees = 1;
  cfg.bootstrap = false;
  cfg.max_depth = 64;
  const TrainedModel m = train_decision_forest(data, cfg);
  EXPECT_EQ(evaluate(m, data).metrics.overall_accuracy, 1.0);
}

TEST(Forest, RootPicksBestGiniSplit) {
  // Feature 1 determines the class; features 0 and 2 are noise.
  std::mt19937 gen(2);
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (int i = 0; i < 200; ++i) {
    const int c = i % 2;
    rows.push_back({static_cast<double>(gen() % 10), c + 0.25 * (gen() % 3),
                    static_cast<double>(gen() % 10)});
    labels.push_back(c);
  }
  const auto data = EncodedMatrix::from_rows(rows, labels, 2);
  std::vector<std::size_t> all(data.rows);
  std::iota(all.begin(), all.end(), 0);
  // Enumerate every midpoint threshold on every feature.
  double best = -1.0;
  int best_feature = -1;
  for (int f = 0; f < 3; ++f) {
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(r[static_cast<std::size_t>(f)]);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      const double g = gini_gain(data, all, f, 0.5 * (v[i] + v[i + 1]));
      if (g > best) {
        best = g;
        best_feature = f;
      }
    }
  }
  EXPECT_EQ(best_feature, 1);
  DecisionForestConfig cfg;
  cfg.n_trees = 1;
  cfg.bootstrap = false;
  const ForestModel fm = fit_decision_forest(data, cfg);
  EXPECT_EQ(fm.trees[0].nodes[0].feature, 1);
  EXPECT_NEAR(gini_gain(data, all, 1, fm.trees[0].nodes[0].threshold), best, 1e-12);
}

TEST(Forest, NodeCountsPartition) {
  const auto data = grid_problem(10, 3, 4);
  DecisionForestConfig cfg;
  cfg.n_trees = 3;
  const ForestModel fm = fit_decision_forest(data, cfg);
  for (const auto& t : fm.trees) {
    for (const auto& n : t.nodes) {
      if (n.feature < 0) {
        std::uint32_t s = 0;
        for (auto c : n.histogram) s += c;
        EXPECT_EQ(s, n.count);
      } else {
        EXPECT_EQ(n.count, t.nodes[n.left].count + t.nodes[n.right].count);
      }
    }
  }
  std::vector<double> scores(3);
  fm.scores(data.row(0), scores);
  EXPECT_NEAR(scores[0] + scores[1] + scores[2], 1.0, 1e-12);
}

TEST(Forest, Deterministic) {
  const auto data = grid_problem(9, 3, 5);
  DecisionForestConfig cfg;
  const auto a = train_decision_forest(data, cfg).parameters_json();
  const auto b = train_decision_forest(data, cfg).parameters_json();
  EXPECT_EQ(a, b);
}

// Routes every training row through the DAG and checks node counts and the
// stored leaf histograms against what actually arrives.
void check_dag_flow(const DecisionDag& dag, const EncodedMatrix& data,
                    const std::vector<std::size_t>& rows) {
  std::vector<std::vector<std::vector<double>>> arrived(dag.levels.size());
  for (std::size_t l = 0; l < dag.levels.size(); ++l) {
    arrived[l].assign(dag.levels[l].size(), std::vector<double>(data.num_classes, 0.0));
  }
  for (auto r : rows) {
    std::size_t l = 0, i = 0;
    for (;;) {
      ++arrived[l][i][static_cast<std::size_t>(data.labels[r])];
      const DagNode& n = dag.levels[l][i];
      if (n.feature < 0) break;
      i = static_cast<std::size_t>(data.row(r)[static_cast<std::size_t>(n.feature)] <= n.threshold
                                       ? n.left
                                       : n.right);
      ++l;
    }
  }
  for (std::size_t l = 0; l < dag.levels.size(); ++l) {
    for (std::size_t i = 0; i < dag.levels[l].size(); ++i) {
      const DagNode& n = dag.levels[l][i];
      double total = 0;
      for (double c : arrived[l][i]) total += c;
      ASSERT_EQ(n.count, total) << "level " << l << " node " << i;
      if (n.feature < 0) {
        for (int c = 0; c < data.num_classes; ++c) ASSERT_EQ(n.histogram[c], arrived[l][i][c]);
      }
    }
  }
}

TEST(Jungle, ObjectiveNonIncreasingPerPass) {
  const auto data = grid_problem(16, 5, 6);
  DecisionJungleConfig cfg;
  cfg.n_dags = 3;
  cfg.max_width = 8;
  cfg.optimization_passes = 4;
  JungleTrace trace;
  fit_decision_jungle(data, cfg, &trace);
  ASSERT_FALSE(trace.levels.empty());
  for (const auto& lvl : trace.levels) {
    ASSERT_EQ(lvl.objective.size(), 5u);
    for (std::size_t p = 1; p < lvl.objective.size(); ++p) {
      EXPECT_LE(lvl.objective[p], lvl.objective[p - 1] + 1e-9)
          << "dag " << lvl.dag << " depth " << lvl.depth;
    }
  }
}

TEST(Jungle, WidthCapAndFlow) {
  const auto data = grid_problem(16, 5, 7);
  DecisionJungleConfig cfg;
  cfg.n_dags = 2;
  cfg.max_width = 4;
  cfg.bootstrap = false;
  const JungleModel jm = fit_decision_jungle(data, cfg);
  std::vector<std::size_t> all(data.rows);
  std::iota(all.begin(), all.end(), 0);
  for (const auto& dag : jm.dags) {
    for (std::size_t l = 0; l < dag.levels.size(); ++l) {
      EXPECT_LE(dag.levels[l].size(), std::min<std::size_t>(std::size_t{1} << l, 4));
    }
    check_dag_flow(dag, data, all);
  }
}

TEST(Jungle, MergedChildHoldsBothParents) {
  const auto data = grid_problem(8, 3, 9);
  DecisionJungleConfig cfg;
  cfg.n_dags = 1;
  cfg.max_width = 2;
  cfg.bootstrap = false;
  const JungleModel jm = fit_decision_jungle(data, cfg);
  const DecisionDag& dag = jm.dags[0];
  bool merged = false;
  for (std::size_t l = 0; l + 1 < dag.levels.size(); ++l) {
    std::vector<int> parents(dag.levels[l + 1].size(), 0);
    for (const auto& n : dag.levels[l]) {
      if (n.feature < 0) continue;
      ++parents[static_cast<std::size_t>(n.left)];
      ++parents[static_cast<std::size_t>(n.right)];
    }
    for (int p : parents) merged = merged || p > 1;
  }
  EXPECT_TRUE(merged);
  std::vector<std::size_t> all(data.rows);
  std::iota(all.begin(), all.end(), 0);
  check_dag_flow(dag, data, all);
}

TEST(Jungle, UncappedWidthIsAGreedyEntropyTree) {
  const auto data = grid_problem(8, 3, 8);
  DecisionJungleConfig cfg;
  cfg.n_dags = 1;
  cfg.max_width = 1 << 20;
  cfg.bootstrap = false;
  cfg.split_candidates = 0;
  const JungleModel jm = fit_decision_jungle(data, cfg);
  const DecisionDag& dag = jm.dags[0];
  // No node has two parents.
  for (std::size_t l = 0; l + 1 < dag.levels.size(); ++l) {
    std::vector<int> parents(dag.levels[l + 1].size(), 0);
    for (const auto& n : dag.levels[l]) {
      if (n.feature < 0) continue;
      ++parents[static_cast<std::size_t>(n.left)];
      ++parents[static_cast<std::size_t>(n.right)];
    }
    for (int p : parents) EXPECT_EQ(p, 1);
  }
  // The root split minimises weighted entropy over every threshold.
  double best = 1e300;
  for (int f = 0; f < 3; ++f) {
    for (double t = 0.5; t < 8; t += 1.0) {
      std::vector<double> left(3, 0), right(3, 0);
      for (std::size_t r = 0; r < data.rows; ++r) {
        (data.row(r)[f] <= t ? left : right)[static_cast<std::size_t>(data.labels[r])] += 1;
      }
      double nl = left[0] + left[1] + left[2], nr = right[0] + right[1] + right[2];
      if (nl == 0 || nr == 0) continue;
      best = std::min(best, entropy_mass(left) + entropy_mass(right));
    }
  }
  const DagNode& root = dag.levels[0][0];
  std::vector<double> left(3, 0), right(3, 0);
  for (std::size_t r = 0; r < data.rows; ++r) {
    (data.row(r)[root.feature] <= root.threshold ? left : right)[data.labels[r]] += 1;
  }
  EXPECT_NEAR(entropy_mass(left) + entropy_mass(right), best, 1e-9);
  EXPECT_EQ(evaluate(TrainedModel(jm, 3, 3, FeatureEncoder{}), data).metrics.overall_accuracy, 1.0);
}

}  // namespace
}  // namespace krk
