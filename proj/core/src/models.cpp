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

#include <nlohmann/json.hpp>

#include "krk/labels.hpp"
#include "krk/models.hpp"

namespace krk {

using nlohmann::json;

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::kLogisticRegression: return "logistic_regression";
    case ModelKind::kDecisionForest: return "decision_forest";
    case ModelKind::kDecisionJungle: return "decision_jungle";
    case ModelKind::kNeuralNetwork: return "neural_network";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view text) {
  if (text == "logistic_regression" || text == "lr") return ModelKind::kLogisticRegression;
  if (text == "decision_forest" || text == "df") return ModelKind::kDecisionForest;
  if (text == "decision_jungle" || text == "dj") return ModelKind::kDecisionJungle;
  if (text == "neural_network" || text == "nn" || text == "mlp") return ModelKind::kNeuralNetwork;
  throw ConfigError("unknown model kind '" + std::string(text) + "'");
}

TrainedModel::TrainedModel(Params params, int num_classes, int num_features,
                           FeatureEncoder encoder)
    : params_(std::move(params)),
      num_classes_(num_classes),
      num_features_(num_features),
      encoder_(std::move(encoder)) {}

ModelKind TrainedModel::kind() const noexcept {
  return static_cast<ModelKind>(params_.index());
}

std::vector<std::string> TrainedModel::class_order() const {
  std::vector<std::string> out;
  for (int k = 0; k < num_classes_; ++k) {
    out.emplace_back(k < kNumClasses ? std::string(ClassLabel::from_index(k).name())
                                     : std::to_string(k));
  }
  return out;
}

int argmax(std::span<const double> scores) noexcept {
  int best = 0;
  for (std::size_t k = 1; k < scores.size(); ++k) {
    if (scores[k] > scores[static_cast<std::size_t>(best)]) best = static_cast<int>(k);
  }
  return best;
}

Prediction TrainedModel::predict(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != num_features_) {
    throw ShapeError("feature vector has width " + std::to_string(x.size()) + ", model expects " +
                     std::to_string(num_features_));
  }
  Prediction p;
  p.scores.assign(static_cast<std::size_t>(num_classes_), 0.0);
  std::visit([&](const auto& m) { m.scores(x, p.scores); }, params_);
  p.label = argmax(p.scores);
  return p;
}

// ------------------------------------------------------------ parameters

namespace {

json tree_node_json(const auto& n) {
  json j = {{"feature", n.feature}, {"count", n.count}};
  if (n.feature >= 0) {
    j["threshold"] = n.threshold;
    j["left"] = n.left;
    j["right"] = n.right;
  } else {
    j["histogram"] = n.histogram;
  }
  return j;
}

template <class Node>
Node tree_node_from(const json& j, int num_classes) {
  Node n;
  n.feature = j.at("feature").get<int>();
  n.count = j.at("count").get<std::uint32_t>();
  if (n.feature >= 0) {
    n.threshold = j.at("threshold").get<double>();
    n.left = j.at("left").get<int>();
    n.right = j.at("right").get<int>();
  } else {
    n.histogram = j.at("histogram").get<std::vector<std::uint32_t>>();
    if (static_cast<int>(n.histogram.size()) != num_classes) {
      throw CorruptPayload("leaf histogram has the wrong number of classes");
    }
  }
  return n;
}

std::string_view activation_name(netscript::Activation a) {
  return a == netscript::Activation::kSigmoid ? "sigmoid" : "linear";
}

netscript::Activation parse_activation(const std::string& s) {
  if (s == "sigmoid") return netscript::Activation::kSigmoid;
  if (s == "linear") return netscript::Activation::kNone;
  throw CorruptPayload("unknown activation '" + s + "'");
}

std::string_view loss_name(OutputLoss l) {
  return l == OutputLoss::kSoftmaxCrossEntropy ? "softmax_cross_entropy" : "sigmoid_cross_entropy";
}

OutputLoss parse_loss(const std::string& s) {
  if (s == "softmax_cross_entropy" || s == "softmax") return OutputLoss::kSoftmaxCrossEntropy;
  if (s == "sigmoid_cross_entropy" || s == "sigmoid") return OutputLoss::kSigmoidCrossEntropy;
  throw ConfigError("unknown loss '" + s + "'");
}

void check_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) throw CorruptPayload(std::string(what) + " has the wrong size");
}

void check_child(int child, std::size_t limit) {
  if (child < 0 || static_cast<std::size_t>(child) >= limit) {
    throw CorruptPayload("child index out of range");
  }
}

}  // namespace

json TrainedModel::parameters_json() const {
  return std::visit(
      [](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LogisticModel>) {
          return {{"weights", m.weights}, {"bias", m.bias}};
        } else if constexpr (std::is_same_v<T, ForestModel>) {
          json trees = json::array();
          for (const auto& t : m.trees) {
            json nodes = json::array();
            for (const auto& n : t.nodes) nodes.push_back(tree_node_json(n));
            trees.push_back({{"nodes", std::move(nodes)}});
          }
          return {{"trees", std::move(trees)}};
        } else if constexpr (std::is_same_v<T, JungleModel>) {
          json dags = json::array();
          for (const auto& d : m.dags) {
            json levels = json::array();
            for (const auto& level : d.levels) {
              json nodes = json::array();
              for (const auto& n : level) nodes.push_back(tree_node_json(n));
              levels.push_back(std::move(nodes));
            }
            dags.push_back({{"levels", std::move(levels)}});
          }
          return {{"dags", std::move(dags)}};
        } else {
          json layers = json::array();
          for (const auto& l : m.layers) {
            layers.push_back({{"inputs", l.inputs},
                              {"outputs", l.outputs},
                              {"activation", activation_name(l.activation)},
                              {"weights", l.weights},
                              {"bias", l.bias}});
          }
          return {{"loss", loss_name(m.loss)}, {"layers", std::move(layers)}};
        }
      },
      params_);
}

TrainedModel TrainedModel::from_parameters_json(ModelKind kind, const json& j, int num_classes,
                                                int num_features, FeatureEncoder encoder) {
  if (num_classes <= 0 || num_features <= 0) throw CorruptPayload("nonpositive model shape");
  const auto k = static_cast<std::size_t>(num_classes);
  const auto d = static_cast<std::size_t>(num_features);
  try {
    switch (kind) {
      case ModelKind::kLogisticRegression: {
        LogisticModel m;
        m.num_classes = num_classes;
        m.num_features = num_features;
        m.weights = j.at("weights").get<std::vector<double>>();
        m.bias = j.at("bias").get<std::vector<double>>();
        check_size(m.weights.size(), k * d, "weights");
        check_size(m.bias.size(), k, "bias");
        return TrainedModel(std::move(m), num_classes, num_features, std::move(encoder));
      }
      case ModelKind::kDecisionForest: {
        ForestModel m;
        m.num_classes = num_classes;
        m.num_features = num_features;
        for (const auto& t : j.at("trees")) {
          DecisionTree tree;
          for (const auto& n : t.at("nodes")) tree.nodes.push_back(tree_node_from<TreeNode>(n, num_classes));
          if (tree.nodes.empty()) throw CorruptPayload("empty tree");
          for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
            const auto& n = tree.nodes[i];
            if (n.feature < 0) continue;
            if (n.feature >= num_features) throw CorruptPayload("split feature out of range");
            check_child(n.left, tree.nodes.size());
            check_child(n.right, tree.nodes.size());
            if (static_cast<std::size_t>(n.left) <= i || static_cast<std::size_t>(n.right) <= i) {
              throw CorruptPayload("tree child precedes its parent");
            }
          }
          m.trees.push_back(std::move(tree));
        }
        if (m.trees.empty()) throw CorruptPayload("forest without trees");
        return TrainedModel(std::move(m), num_classes, num_features, std::move(encoder));
      }
      case ModelKind::kDecisionJungle: {
        JungleModel m;
        m.num_classes = num_classes;
        m.num_features = num_features;
        for (const auto& jd : j.at("dags")) {
          DecisionDag dag;
          for (const auto& jl : jd.at("levels")) {
            std::vector<DagNode> level;
            for (const auto& n : jl) level.push_back(tree_node_from<DagNode>(n, num_classes));
            if (level.empty()) throw CorruptPayload("empty DAG level");
            dag.levels.push_back(std::move(level));
          }
          if (dag.levels.empty()) throw CorruptPayload("empty DAG");
          for (std::size_t l = 0; l < dag.levels.size(); ++l) {
            const std::size_t next = l + 1 < dag.levels.size() ? dag.levels[l + 1].size() : 0;
            for (const auto& n : dag.levels[l]) {
              if (n.feature < 0) continue;
              if (n.feature >= num_features) throw CorruptPayload("split feature out of range");
              check_child(n.left, next);
              check_child(n.right, next);
            }
          }
          m.dags.push_back(std::move(dag));
        }
        if (m.dags.empty()) throw CorruptPayload("jungle without DAGs");
        return TrainedModel(std::move(m), num_classes, num_features, std::move(encoder));
      }
      case ModelKind::kNeuralNetwork: {
        MlpModel m;
        m.loss = parse_loss(j.at("loss").get<std::string>());
        int width = num_features;
        for (const auto& jl : j.at("layers")) {
          DenseLayer l;
          l.inputs = jl.at("inputs").get<int>();
          l.outputs = jl.at("outputs").get<int>();
          l.activation = parse_activation(jl.at("activation").get<std::string>());
          l.weights = jl.at("weights").get<std::vector<double>>();
          l.bias = jl.at("bias").get<std::vector<double>>();
          if (l.inputs != width || l.outputs <= 0) throw CorruptPayload("layer widths do not chain");
          check_size(l.weights.size(),
                     static_cast<std::size_t>(l.inputs) * static_cast<std::size_t>(l.outputs),
                     "layer weights");
          check_size(l.bias.size(), static_cast<std::size_t>(l.outputs), "layer bias");
          width = l.outputs;
          m.layers.push_back(std::move(l));
        }
        if (m.layers.empty() || width != num_classes) {
          throw CorruptPayload("network output width does not match the class count");
        }
        return TrainedModel(std::move(m), num_classes, num_features, std::move(encoder));
      }
    }
  } catch (const json::exception& e) {
    throw CorruptPayload(std::string("malformed model parameters: ") + e.what());
  }
  throw CorruptPayload("unknown model kind");
}

// -------------------------------------------------------------- training

namespace {

void require_shape(const EncodedMatrix& train) {
  if (train.rows == 0) throw ShapeError("empty training matrix");
}

}  // namespace

TrainedModel train_logistic_regression(const EncodedMatrix& train,
                                       const LogisticRegressionConfig& cfg) {
  require_shape(train);
  return TrainedModel(fit_logistic_regression(train, cfg), train.num_classes,
                      static_cast<int>(train.cols), train.encoder);
}

TrainedModel train_decision_forest(const EncodedMatrix& train, const DecisionForestConfig& cfg) {
  require_shape(train);
  return TrainedModel(fit_decision_forest(train, cfg), train.num_classes,
                      static_cast<int>(train.cols), train.encoder);
}

TrainedModel train_decision_jungle(const EncodedMatrix& train, const DecisionJungleConfig& cfg) {
  require_shape(train);
  return TrainedModel(fit_decision_jungle(train, cfg), train.num_classes,
                      static_cast<int>(train.cols), train.encoder);
}

TrainedModel train_mlp(const EncodedMatrix& train, const MlpConfig& cfg) {
  require_shape(train);
  return TrainedModel(fit_mlp(train, cfg), train.num_classes, static_cast<int>(train.cols),
                      train.encoder);
}

// --------------------------------------------------------- config JSON

json to_json(const LogisticRegressionConfig& c) {
  return {{"learning_rate", c.learning_rate},
          {"iterations", c.iterations},
          {"l2_weight", c.l2_weight},
          {"seed", c.seed}};
}

json to_json(const DecisionForestConfig& c) {
  return {{"n_trees", c.n_trees},
          {"max_depth", c.max_depth},
          {"n_random_splits_per_node", c.n_random_splits_per_node},
          {"bagging_fraction", c.bagging_fraction},
          {"bootstrap", c.bootstrap},
          {"min_samples_split", c.min_samples_split},
          {"seed", c.seed}};
}

json to_json(const DecisionJungleConfig& c) {
  return {{"n_dags", c.n_dags},
          {"max_width", c.max_width},
          {"max_depth", c.max_depth},
          {"optimization_passes", c.optimization_passes},
          {"split_candidates", c.split_candidates},
          {"bootstrap", c.bootstrap},
          {"seed", c.seed}};
}

json to_json(const MlpConfig& c) {
  return {{"topology", c.topology.sizes},
          {"learning_rate", c.learning_rate},
          {"iterations", c.iterations},
          {"init_scale", c.init_scale},
          {"momentum", c.momentum},
          {"shuffle", c.shuffle},
          {"loss", loss_name(c.loss)},
          {"batch_size", c.batch_size},
          {"seed", c.seed}};
}

namespace {

template <class T>
void read_opt(const json& j, const char* key, T& into) {
  if (!j.contains(key)) return;
  try {
    into = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field '") + key + "' has the wrong type");
  }
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> known,
                    const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + " config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError(std::string(what) + ": unknown field '" + key + "'");
    }
  }
}

}  // namespace

void from_json(const json& j, LogisticRegressionConfig& c) {
  reject_unknown(j, {"learning_rate", "iterations", "l2_weight", "seed"}, "logistic regression");
  read_opt(j, "learning_rate", c.learning_rate);
  read_opt(j, "iterations", c.iterations);
  read_opt(j, "l2_weight", c.l2_weight);
  read_opt(j, "seed", c.seed);
}

void from_json(const json& j, DecisionForestConfig& c) {
  reject_unknown(j,
                 {"n_trees", "max_depth", "n_random_splits_per_node", "bagging_fraction",
                  "bootstrap", "min_samples_split", "seed"},
                 "decision forest");
  read_opt(j, "n_trees", c.n_trees);
  read_opt(j, "max_depth", c.max_depth);
  read_opt(j, "n_random_splits_per_node", c.n_random_splits_per_node);
  read_opt(j, "bagging_fraction", c.bagging_fraction);
  read_opt(j, "bootstrap", c.bootstrap);
  read_opt(j, "min_samples_split", c.min_samples_split);
  read_opt(j, "seed", c.seed);
}

void from_json(const json& j, DecisionJungleConfig& c) {
  reject_unknown(j,
                 {"n_dags", "max_width", "max_depth", "optimization_passes", "split_candidates",
                  "bootstrap", "seed"},
                 "decision jungle");
  read_opt(j, "n_dags", c.n_dags);
  read_opt(j, "max_width", c.max_width);
  read_opt(j, "max_depth", c.max_depth);
  read_opt(j, "optimization_passes", c.optimization_passes);
  read_opt(j, "split_candidates", c.split_candidates);
  read_opt(j, "bootstrap", c.bootstrap);
  read_opt(j, "seed", c.seed);
}

void from_json(const json& j, MlpConfig& c) {
  reject_unknown(j,
                 {"topology", "netscript", "hidden", "learning_rate", "iterations", "init_scale",
                  "momentum", "shuffle", "loss", "batch_size", "seed"},
                 "neural network");
  read_opt(j, "learning_rate", c.learning_rate);
  read_opt(j, "iterations", c.iterations);
  read_opt(j, "init_scale", c.init_scale);
  read_opt(j, "momentum", c.momentum);
  read_opt(j, "shuffle", c.shuffle);
  read_opt(j, "batch_size", c.batch_size);
  read_opt(j, "seed", c.seed);
  if (j.contains("loss")) {
    if (!j["loss"].is_string()) throw ConfigError("config field 'loss' has the wrong type");
    c.loss = parse_loss(j["loss"].get<std::string>());
  }
}

}  // namespace krk
