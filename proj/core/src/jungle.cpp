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
#include <cmath>
#include <numeric>

#include "krk/models.hpp"
#include "krk/rng.hpp"

namespace krk {

void DecisionJungleConfig::validate() const {
  if (n_dags <= 0) throw ConfigError("decision jungle: n_dags must be > 0");
  if (max_width < 2) throw ConfigError("decision jungle: max_width must be >= 2");
  if (max_depth <= 0) throw ConfigError("decision jungle: max_depth must be > 0");
  if (optimization_passes < 1) throw ConfigError("decision jungle: optimization_passes must be >= 1");
  if (split_candidates < 0) throw ConfigError("decision jungle: split_candidates must be >= 0");
}

const DagNode& DecisionDag::leaf_for(std::span<const double> x) const {
  std::size_t level = 0;
  const DagNode* n = &levels.front().front();
  while (n->feature >= 0) {
    const int next =
        x[static_cast<std::size_t>(n->feature)] <= n->threshold ? n->left : n->right;
    n = &levels[++level][static_cast<std::size_t>(next)];
  }
  return *n;
}

void JungleModel::scores(std::span<const double> x, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& dag : dags) {
    const DagNode& leaf = dag.leaf_for(x);
    if (leaf.count == 0) continue;
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] += static_cast<double>(leaf.histogram[k]) / leaf.count;
    }
  }
  for (double& s : out) s /= static_cast<double>(dags.size());
}

double weighted_entropy(std::span<const std::uint32_t> histogram) noexcept {
  double n = 0.0, acc = 0.0;
  for (auto c : histogram) {
    if (c == 0) continue;
    const double cd = c;
    n += cd;
    acc += cd * std::log(cd);
  }
  return n > 0 ? n * std::log(n) - acc : 0.0;
}

namespace {

using Hist = std::vector<std::uint32_t>;

/// c * ln(c) for integer counts, tabulated.
class XLogX {
 public:
  explicit XLogX(std::size_t max_count) : table_(max_count + 1, 0.0) {
    for (std::size_t c = 2; c <= max_count; ++c) {
      table_[c] = static_cast<double>(c) * std::log(static_cast<double>(c));
    }
  }
  double operator()(std::uint32_t c) const { return table_[c]; }

  double entropy_mass(const Hist& h) const {
    std::uint32_t n = 0;
    double acc = 0.0;
    for (auto c : h) {
      n += c;
      acc += table_[c];
    }
    return table_[n] - acc;
  }
  // entropy_mass(a + b) without materialising the sum.
  double entropy_mass_sum(const Hist& a, const Hist& b) const {
    std::uint32_t n = 0;
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const std::uint32_t c = a[k] + b[k];
      n += c;
      acc += table_[c];
    }
    return table_[n] - acc;
  }

 private:
  std::vector<double> table_;
};

void add(Hist& into, const Hist& h) {
  for (std::size_t k = 0; k < h.size(); ++k) into[k] += h[k];
}
void sub(Hist& from, const Hist& h) {
  for (std::size_t k = 0; k < h.size(); ++k) from[k] -= h[k];
}

struct Candidate {
  int feature;
  double threshold;
  Hist left;
  Hist right;
};

struct ParentState {
  std::vector<std::size_t> rows;
  Hist hist;
  std::vector<Candidate> candidates;
  std::size_t chosen = 0;
  int child[2] = {0, 0};  // child slot for left / right branch
};

class DagBuilder {
 public:
  DagBuilder(const EncodedMatrix& data, const DecisionJungleConfig& cfg, std::uint64_t seed,
             int dag_index, JungleTrace* trace)
      : data_(data),
        cfg_(cfg),
        rng_(seed),
        dag_index_(dag_index),
        trace_(trace),
        xlogx_(data.rows + 1),
        k_(static_cast<std::size_t>(data.num_classes)) {}

  DecisionDag build(std::vector<std::size_t> rows) {
    DecisionDag dag;
    struct Pending {
      std::vector<std::size_t> rows;
      Hist hist;
    };
    std::vector<Pending> level(1);
    level[0].rows = std::move(rows);
    level[0].hist = histogram(level[0].rows);

    for (int depth = 0;; ++depth) {
      std::vector<DagNode> nodes(level.size());
      std::vector<std::size_t> splittable;
      for (std::size_t i = 0; i < level.size(); ++i) {
        nodes[i].count = static_cast<std::uint32_t>(level[i].rows.size());
        const bool pure =
            std::count_if(level[i].hist.begin(), level[i].hist.end(), [](auto c) { return c > 0; }) <= 1;
        if (!pure && depth < cfg_.max_depth && level[i].rows.size() >= 2 &&
            has_variation(level[i].rows)) {
          splittable.push_back(i);
        } else {
          nodes[i].histogram = level[i].hist;
        }
      }
      if (splittable.empty()) {
        dag.levels.push_back(std::move(nodes));
        break;
      }

      std::vector<ParentState> parents;
      parents.reserve(splittable.size());
      for (auto i : splittable) {
        ParentState p;
        p.rows = std::move(level[i].rows);
        p.hist = std::move(level[i].hist);
        p.candidates = make_candidates(p.rows, p.hist);
        parents.push_back(std::move(p));
      }
      const std::size_t width =
          std::min<std::size_t>(2 * parents.size(), static_cast<std::size_t>(cfg_.max_width));
      optimize_level(parents, width, depth);

      // Compact away children that received no samples.
      std::vector<Hist> child_hist(width, Hist(k_, 0));
      for (const auto& p : parents) {
        const auto& c = p.candidates[p.chosen];
        add(child_hist[static_cast<std::size_t>(p.child[0])], c.left);
        add(child_hist[static_cast<std::size_t>(p.child[1])], c.right);
      }
      std::vector<int> remap(width, -1);
      int next_count = 0;
      for (std::size_t j = 0; j < width; ++j) {
        if (std::accumulate(child_hist[j].begin(), child_hist[j].end(), 0u) > 0) {
          remap[j] = next_count++;
        }
      }
      std::vector<Pending> next(static_cast<std::size_t>(next_count));
      for (std::size_t j = 0; j < width; ++j) {
        if (remap[j] >= 0) next[static_cast<std::size_t>(remap[j])].hist = child_hist[j];
      }
      for (std::size_t pi = 0; pi < parents.size(); ++pi) {
        auto& p = parents[pi];
        const auto& c = p.candidates[p.chosen];
        DagNode& node = nodes[splittable[pi]];
        node.feature = c.feature;
        node.threshold = c.threshold;
        node.left = remap[static_cast<std::size_t>(p.child[0])];
        node.right = remap[static_cast<std::size_t>(p.child[1])];
        for (auto r : p.rows) {
          const bool go_left = data_.row(r)[static_cast<std::size_t>(c.feature)] <= c.threshold;
          next[static_cast<std::size_t>(go_left ? node.left : node.right)].rows.push_back(r);
        }
      }
      dag.levels.push_back(std::move(nodes));
      level = std::move(next);
    }
    return dag;
  }

 private:
  Hist histogram(const std::vector<std::size_t>& rows) const {
    Hist h(k_, 0);
    for (auto r : rows) ++h[static_cast<std::size_t>(data_.labels[r])];
    return h;
  }

  bool has_variation(const std::vector<std::size_t>& rows) const {
    const auto first = data_.row(rows.front());
    for (auto r : rows) {
      const auto x = data_.row(r);
      for (std::size_t j = 0; j < data_.cols; ++j) {
        if (x[j] != first[j]) return true;
      }
    }
    return false;
  }

  Candidate evaluate(const std::vector<std::size_t>& rows, const Hist& hist, int feature,
                     double threshold) const {
    Candidate c{feature, threshold, Hist(k_, 0), hist};
    for (auto r : rows) {
      if (data_.row(r)[static_cast<std::size_t>(feature)] <= threshold) {
        ++c.left[static_cast<std::size_t>(data_.labels[r])];
      }
    }
    sub(c.right, c.left);
    return c;
  }

  std::vector<Candidate> make_candidates(const std::vector<std::size_t>& rows, const Hist& hist) {
    const std::size_t d = data_.cols;
    std::vector<double> lo(d), hi(d);
    for (std::size_t j = 0; j < d; ++j) lo[j] = hi[j] = data_.row(rows.front())[j];
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
    std::vector<Candidate> out;
    if (cfg_.split_candidates == 0) {
      for (int f : varying) {
        std::vector<double> values;
        values.reserve(rows.size());
        for (auto r : rows) values.push_back(data_.row(r)[static_cast<std::size_t>(f)]);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (std::size_t v = 0; v + 1 < values.size(); ++v) {
          out.push_back(evaluate(rows, hist, f, 0.5 * (values[v] + values[v + 1])));
        }
      }
    } else {
      out.reserve(static_cast<std::size_t>(cfg_.split_candidates));
      for (int c = 0; c < cfg_.split_candidates; ++c) {
        const int f = varying[rng_.index(varying.size())];
        const auto fj = static_cast<std::size_t>(f);
        out.push_back(evaluate(rows, hist, f, rng_.uniform(lo[fj], hi[fj])));
      }
    }
    return out;
  }

  // Alternating optimisation of one level: split choice per parent given the
  // child assignment, then child assignment per branch given the splits.
  void optimize_level(std::vector<ParentState>& parents, std::size_t width, int depth) {
    // Initial splits: best for the parent on its own.
    for (auto& p : parents) {
      double best = 0.0;
      for (std::size_t c = 0; c < p.candidates.size(); ++c) {
        const double v = xlogx_.entropy_mass(p.candidates[c].left) +
                         xlogx_.entropy_mass(p.candidates[c].right);
        if (c == 0 || v < best - 1e-9) {
          best = v;
          p.chosen = c;
        }
      }
    }

    std::vector<Hist> child(width, Hist(k_, 0));
    if (2 * parents.size() <= width) {
      for (std::size_t i = 0; i < parents.size(); ++i) {
        parents[i].child[0] = static_cast<int>(2 * i);
        parents[i].child[1] = static_cast<int>(2 * i + 1);
      }
    } else {
      // Largest branches open their own child; the rest join the child whose
      // objective grows least.
      struct BranchRef {
        std::size_t parent;
        int side;
        std::uint32_t size;
      };
      std::vector<BranchRef> branches;
      for (std::size_t i = 0; i < parents.size(); ++i) {
        const auto& c = parents[i].candidates[parents[i].chosen];
        branches.push_back({i, 0, std::accumulate(c.left.begin(), c.left.end(), 0u)});
        branches.push_back({i, 1, std::accumulate(c.right.begin(), c.right.end(), 0u)});
      }
      std::stable_sort(branches.begin(), branches.end(),
                       [](const BranchRef& a, const BranchRef& b) { return a.size > b.size; });
      std::size_t opened = 0;
      for (const auto& b : branches) {
        const auto& c = parents[b.parent].candidates[parents[b.parent].chosen];
        const Hist& h = b.side == 0 ? c.left : c.right;
        std::size_t target = 0;
        if (opened < width) {
          target = opened++;
        } else {
          double best = 0.0;
          for (std::size_t j = 0; j < width; ++j) {
            const double cost = xlogx_.entropy_mass_sum(child[j], h) - xlogx_.entropy_mass(child[j]);
            if (j == 0 || cost < best - 1e-9) {
              best = cost;
              target = j;
            }
          }
        }
        add(child[target], h);
        parents[b.parent].child[b.side] = static_cast<int>(target);
      }
    }
    child.assign(width, Hist(k_, 0));
    for (const auto& p : parents) {
      add(child[static_cast<std::size_t>(p.child[0])], p.candidates[p.chosen].left);
      add(child[static_cast<std::size_t>(p.child[1])], p.candidates[p.chosen].right);
    }

    auto objective = [&] {
      double total = 0.0;
      for (const auto& h : child) total += xlogx_.entropy_mass(h);
      return total;
    };
    JungleTrace::Level* record = nullptr;
    if (trace_) {
      trace_->levels.push_back({dag_index_, depth, {objective()}});
      record = &trace_->levels.back();
    }

    for (int pass = 0; pass < cfg_.optimization_passes; ++pass) {
      // (a) splits given assignments
      for (auto& p : parents) {
        Hist& hl = child[static_cast<std::size_t>(p.child[0])];
        Hist& hr = child[static_cast<std::size_t>(p.child[1])];
        sub(hl, p.candidates[p.chosen].left);
        sub(hr, p.candidates[p.chosen].right);
        if (p.child[0] != p.child[1]) {
          auto cost = [&](const Candidate& c) {
            return xlogx_.entropy_mass_sum(hl, c.left) + xlogx_.entropy_mass_sum(hr, c.right);
          };
          double best = cost(p.candidates[p.chosen]);
          for (std::size_t c = 0; c < p.candidates.size(); ++c) {
            const double v = cost(p.candidates[c]);
            if (v < best - 1e-9) {
              best = v;
              p.chosen = c;
            }
          }
        }
        add(hl, p.candidates[p.chosen].left);
        add(hr, p.candidates[p.chosen].right);
      }
      // (b) assignments given splits
      for (auto& p : parents) {
        for (int side = 0; side < 2; ++side) {
          const Candidate& c = p.candidates[p.chosen];
          const Hist& h = side == 0 ? c.left : c.right;
          const auto current = static_cast<std::size_t>(p.child[side]);
          sub(child[current], h);
          auto cost = [&](std::size_t j) {
            return xlogx_.entropy_mass_sum(child[j], h) - xlogx_.entropy_mass(child[j]);
          };
          std::size_t target = current;
          double best = cost(current);
          for (std::size_t j = 0; j < width; ++j) {
            const double v = cost(j);
            if (v < best - 1e-9) {
              best = v;
              target = j;
            }
          }
          add(child[target], h);
          p.child[side] = static_cast<int>(target);
        }
      }
      if (record) record->objective.push_back(objective());
    }
  }

  const EncodedMatrix& data_;
  const DecisionJungleConfig& cfg_;
  Rng rng_;
  int dag_index_;
  JungleTrace* trace_;
  XLogX xlogx_;
  std::size_t k_;
};

}  // namespace

JungleModel fit_decision_jungle(const EncodedMatrix& train, const DecisionJungleConfig& cfg,
                                JungleTrace* trace) {
  cfg.validate();
  if (train.rows == 0) throw ShapeError("empty training matrix");
  JungleModel model;
  model.num_classes = train.num_classes;
  model.num_features = static_cast<int>(train.cols);
  for (int t = 0; t < cfg.n_dags; ++t) {
    const std::uint64_t dag_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
    std::vector<std::size_t> rows;
    if (cfg.bootstrap) {
      Rng bag_rng(derive_seed(dag_seed, 0xba66));
      rows.reserve(train.rows);
      for (std::size_t i = 0; i < train.rows; ++i) rows.push_back(bag_rng.index(train.rows));
      std::sort(rows.begin(), rows.end());
    } else {
      rows.resize(train.rows);
      std::iota(rows.begin(), rows.end(), std::size_t{0});
    }
    model.dags.push_back(DagBuilder(train, cfg, dag_seed, t, trace).build(std::move(rows)));
  }
  return model;
}

}  // namespace krk
