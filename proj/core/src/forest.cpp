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

#include <algorithm>
#include <numeric>

#include "krk/models.hpp"
#include "krk/rng.hpp"

namespace krk {

void DecisionForestConfig::validate() const {
  if (n_trees <= 0) throw ConfigError("decision forest: n_trees must be > 0");
  if (max_depth <= 0) throw ConfigError("decision forest: max_depth must be > 0");
  if (n_random_splits_per_node <= 0) {
    throw ConfigError("decision forest: n_random_splits_per_node must be > 0");
  }
  if (!(bagging_fraction > 0 && bagging_fraction <= 1)) {
    throw ConfigError("decision forest: bagging_fraction must lie in (0, 1]");
  }
  if (min_samples_split < 2) throw ConfigError("decision forest: min_samples_split must be >= 2");
}

const TreeNode& DecisionTree::leaf_for(std::span<const double> x) const {
  const TreeNode* n = &nodes.front();
  while (n->feature >= 0) {
    n = &nodes[static_cast<std::size_t>(x[static_cast<std::size_t>(n->feature)] <= n->threshold
                                            ? n->left
                                            : n->right)];
  }
  return *n;
}

void ForestModel::scores(std::span<const double> x, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& tree : trees) {
    const TreeNode& leaf = tree.leaf_for(x);
    if (leaf.count == 0) continue;
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] += static_cast<double>(leaf.histogram[k]) / leaf.count;
    }
  }
  for (double& s : out) s /= static_cast<double>(trees.size());
}

namespace {

double gini_mass(std::span<const std::uint32_t> hist, std::uint32_t n) {
  if (n == 0) return 0.0;
  double sq = 0.0;
  for (auto c : hist) sq += static_cast<double>(c) * c;
  // n * (1 - sum p^2)
  return static_cast<double>(n) - sq / n;
}

std::vector<std::uint32_t> histogram_of(const EncodedMatrix& data,
                                        std::span<const std::size_t> rows) {
  std::vector<std::uint32_t> h(static_cast<std::size_t>(data.num_classes), 0);
  for (auto r : rows) ++h[static_cast<std::size_t>(data.labels[r])];
  return h;
}

class TreeBuilder {
 public:
  TreeBuilder(const EncodedMatrix& data, const DecisionForestConfig& cfg, std::uint64_t seed)
      : data_(data), cfg_(cfg), rng_(seed), left_(static_cast<std::size_t>(data.num_classes)) {}

  DecisionTree build(std::vector<std::size_t> rows) {
    DecisionTree tree;
    struct Job {
      int node;
      int depth;
      std::vector<std::size_t> rows;
    };
    std::vector<Job> stack;
    tree.nodes.emplace_back();
    stack.push_back({0, 0, std::move(rows)});
    while (!stack.empty()) {
      Job job = std::move(stack.back());
      stack.pop_back();
      auto hist = histogram_of(data_, job.rows);
      TreeNode& node = tree.nodes[static_cast<std::size_t>(job.node)];
      node.count = static_cast<std::uint32_t>(job.rows.size());
      const bool pure = std::count_if(hist.begin(), hist.end(), [](auto c) { return c > 0; }) <= 1;
      int feature = -1;
      double threshold = 0.0;
      if (!pure && job.depth < cfg_.max_depth &&
          static_cast<int>(job.rows.size()) >= cfg_.min_samples_split) {
        std::tie(feature, threshold) = best_split(job.rows, hist);
      }
      if (feature < 0) {
        node.histogram = std::move(hist);
        continue;
      }
      std::vector<std::size_t> left, right;
      for (auto r : job.rows) {
        (data_.row(r)[static_cast<std::size_t>(feature)] <= threshold ? left : right).push_back(r);
      }
      const int li = static_cast<int>(tree.nodes.size());
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      TreeNode& parent = tree.nodes[static_cast<std::size_t>(job.node)];
      parent.feature = feature;
      parent.threshold = threshold;
      parent.left = li;
      parent.right = li + 1;
      stack.push_back({li + 1, job.depth + 1, std::move(right)});
      stack.push_back({li, job.depth + 1, std::move(left)});
    }
    return tree;
  }

 private:
  std::pair<int, double> best_split(const std::vector<std::size_t>& rows,
                                    const std::vector<std::uint32_t>& hist) {
    const std::size_t d = data_.cols;
    std::vector<double> lo(d, 0.0), hi(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
      lo[j] = hi[j] = data_.row(rows.front())[j];
    }
    for (auto r : rows) {
      const auto x = data_.row(r);
      for (std::size_t j = 0; j < d; ++j) {
        lo[j] = std::min(lo[j], x[j]);
        hi[j] = std::max(hi[j], x[j]);
      }
    }
    std::vector<int> varying;
    for (std::size_t j = 0; j < d; ++j) {
      if (lo[j] < hi[j]) varying.push_back(static_cast<int>(j));
    }
    if (varying.empty()) return {-1, 0.0};

    const auto n = static_cast<std::uint32_t>(rows.size());
    const double parent = gini_mass(hist, n);
    int best_f = -1;
    double best_t = 0.0;
    double best_gain = -1.0;
    for (int c = 0; c < cfg_.n_random_splits_per_node; ++c) {
      const int f = varying[rng_.index(varying.size())];
      const auto fj = static_cast<std::size_t>(f);
      const double t = rng_.uniform(lo[fj], hi[fj]);
      std::fill(left_.begin(), left_.end(), 0u);
      std::uint32_t nl = 0;
      for (auto r : rows) {
        if (data_.row(r)[fj] <= t) {
          ++left_[static_cast<std::size_t>(data_.labels[r])];
          ++nl;
        }
      }
      double right_mass;
      {
        double sq = 0.0;
        for (std::size_t k = 0; k < left_.size(); ++k) {
          const double rc = static_cast<double>(hist[k]) - left_[k];
          sq += rc * rc;
        }
        const double nr = static_cast<double>(n - nl);
        right_mass = nr > 0 ? nr - sq / nr : 0.0;
      }
      const double gain = parent - gini_mass(left_, nl) - right_mass;
      if (gain > best_gain) {
        best_gain = gain;
        best_f = f;
        best_t = t;
      }
    }
    return {best_f, best_t};
  }

  const EncodedMatrix& data_;
  const DecisionForestConfig& cfg_;
  Rng rng_;
  std::vector<std::uint32_t> left_;
};

}  // namespace

double gini_gain(const EncodedMatrix& data, std::span<const std::size_t> rows, int feature,
                 double threshold) {
  std::vector<std::size_t> left, right;
  for (auto r : rows) {
    (data.row(r)[static_cast<std::size_t>(feature)] <= threshold ? left : right).push_back(r);
  }
  const auto all = histogram_of(data, rows);
  return gini_mass(all, static_cast<std::uint32_t>(rows.size())) -
         gini_mass(histogram_of(data, left), static_cast<std::uint32_t>(left.size())) -
         gini_mass(histogram_of(data, right), static_cast<std::uint32_t>(right.size()));
}

ForestModel fit_decision_forest(const EncodedMatrix& train, const DecisionForestConfig& cfg) {
  cfg.validate();
  if (train.rows == 0) throw ShapeError("empty training matrix");
  ForestModel model;
  model.num_classes = train.num_classes;
  model.num_features = static_cast<int>(train.cols);
  for (int t = 0; t < cfg.n_trees; ++t) {
    const std::uint64_t tree_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
    Rng bag_rng(derive_seed(tree_seed, 0xba66));
    std::vector<std::size_t> rows;
    if (cfg.bootstrap) {
      const auto n_bag = std::max<std::size_t>(
          1, static_cast<std::size_t>(cfg.bagging_fraction * static_cast<double>(train.rows)));
      rows.reserve(n_bag);
      for (std::size_t i = 0; i < n_bag; ++i) rows.push_back(bag_rng.index(train.rows));
      std::sort(rows.begin(), rows.end());
    } else {
      rows.resize(train.rows);
      std::iota(rows.begin(), rows.end(), std::size_t{0});
    }
    model.trees.push_back(TreeBuilder(train, cfg, tree_seed).build(std::move(rows)));
  }
  return model;
}

}  // namespace krk
