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

// The four multiclass classifiers, trained from scratch with seeded,
// reproducible procedures.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "krk/data.hpp"
#include "krk/netscript.hpp"

namespace krk {

enum class ModelKind { kLogisticRegression, kDecisionForest, kDecisionJungle, kNeuralNetwork };

std::string_view to_string(ModelKind kind) noexcept;
/// Accepts "logistic_regression", "decision_forest", "decision_jungle",
/// "neural_network" and the short forms lr, df, dj, nn.
ModelKind parse_model_kind(std::string_view text);

// ---------------------------------------------------------------- logistic

struct LogisticRegressionConfig {
  double learning_rate = 0.5;
  int iterations = 500;
  double l2_weight = 1e-3;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Multinomial softmax regression; weights are classes x features.
struct LogisticModel {
  int num_classes = 0;
  int num_features = 0;
  std::vector<double> weights;
  std::vector<double> bias;

  static LogisticModel zeros(int num_classes, int num_features);
  /// Softmax probabilities.
  void scores(std::span<const double> x, std::span<double> out) const;
};

struct LogisticGradient {
  double loss = 0.0;  // mean cross-entropy + l2/2 * |W|^2
  std::vector<double> weights;
  std::vector<double> bias;
};

LogisticGradient logistic_loss_and_gradient(const LogisticModel& model, const EncodedMatrix& data,
                                            double l2_weight);

/// Full-batch gradient descent. `loss_history`, when given, receives the
/// objective before every step and after the last one.
LogisticModel fit_logistic_regression(const EncodedMatrix& train,
                                      const LogisticRegressionConfig& cfg,
                                      std::vector<double>* loss_history = nullptr);

// ------------------------------------------------------------------ forest

struct DecisionForestConfig {
  int n_trees = 8;
  int max_depth = 32;
  int n_random_splits_per_node = 128;
  double bagging_fraction = 1.0;  // bootstrap sample size relative to n
  bool bootstrap = true;          // false trains every tree on all rows
  int min_samples_split = 2;
  std::uint64_t seed = 1;

  void validate() const;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;  // x[feature] <= threshold goes left
  int left = -1;
  int right = -1;
  std::uint32_t count = 0;
  std::vector<std::uint32_t> histogram;  // leaves only
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  const TreeNode& leaf_for(std::span<const double> x) const;
};

struct ForestModel {
  int num_classes = 0;
  int num_features = 0;
  std::vector<DecisionTree> trees;

  /// Mean of the normalised leaf histograms.
  void scores(std::span<const double> x, std::span<double> out) const;
};

/// Gini impurity decrease of splitting `rows` on x[feature] <= threshold,
/// weighted by the node size.
double gini_gain(const EncodedMatrix& data, std::span<const std::size_t> rows, int feature,
                 double threshold);

ForestModel fit_decision_forest(const EncodedMatrix& train, const DecisionForestConfig& cfg);

// ------------------------------------------------------------------ jungle

struct DecisionJungleConfig {
  int n_dags = 8;
  int max_width = 128;
  int max_depth = 32;
  int optimization_passes = 2;
  /// Random (feature, threshold) candidates per node; 0 enumerates every
  /// threshold between distinct feature values.
  int split_candidates = 64;
  bool bootstrap = true;
  std::uint64_t seed = 1;

  void validate() const;
};

/// A DAG node. Internal nodes route to child indices on the next level;
/// children may be shared between parents.
struct DagNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::uint32_t count = 0;
  std::vector<std::uint32_t> histogram;
};

struct DecisionDag {
  std::vector<std::vector<DagNode>> levels;  // levels[0] holds the root
  const DagNode& leaf_for(std::span<const double> x) const;
};

/// Sum over nodes of |S| * entropy(S) (natural log).
double weighted_entropy(std::span<const std::uint32_t> histogram) noexcept;

/// Objective value of one level after each optimisation pass.
struct JungleTrace {
  struct Level {
    int dag = 0;
    int depth = 0;
    std::vector<double> objective;  // initial value, then one entry per pass
  };
  std::vector<Level> levels;
};

struct JungleModel {
  int num_classes = 0;
  int num_features = 0;
  std::vector<DecisionDag> dags;

  void scores(std::span<const double> x, std::span<double> out) const;
};

JungleModel fit_decision_jungle(const EncodedMatrix& train, const DecisionJungleConfig& cfg,
                                JungleTrace* trace = nullptr);

// --------------------------------------------------------------------- mlp

enum class OutputLoss { kSigmoidCrossEntropy, kSoftmaxCrossEntropy };

struct MlpConfig {
  netscript::NetworkTopology topology;
  double learning_rate = 0.1;
  int iterations = 100;
  double init_scale = 0.1;
  double momentum = 0.0;
  bool shuffle = true;
  OutputLoss loss = OutputLoss::kSigmoidCrossEntropy;
  /// Samples per update; gradients are summed over the batch.
  int batch_size = 1;
  std::uint64_t seed = 1;

  void validate() const;
};

struct DenseLayer {
  int inputs = 0;
  int outputs = 0;
  std::vector<double> weights;  // outputs x inputs
  std::vector<double> bias;
  netscript::Activation activation = netscript::Activation::kSigmoid;
};

struct MlpModel {
  std::vector<DenseLayer> layers;
  OutputLoss loss = OutputLoss::kSigmoidCrossEntropy;

  int input_width() const noexcept { return layers.empty() ? 0 : layers.front().inputs; }
  int output_width() const noexcept { return layers.empty() ? 0 : layers.back().outputs; }

  static MlpModel initialize(const netscript::NetworkTopology& topology, OutputLoss loss,
                             double init_scale, std::uint64_t seed);
  /// Sigmoid outputs, or softmax probabilities for the softmax loss.
  void scores(std::span<const double> x, std::span<double> out) const;
};

struct MlpGradient {
  double loss = 0.0;  // summed over the given rows
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> bias;
};

MlpGradient mlp_loss_and_gradient(const MlpModel& model, const EncodedMatrix& data,
                                  std::span<const std::size_t> rows);

/// Mean per-sample loss over the whole matrix.
double mlp_loss(const MlpModel& model, const EncodedMatrix& data);

/// One iteration is one pass over the (optionally shuffled) training rows.
MlpModel fit_mlp(const EncodedMatrix& train, const MlpConfig& cfg,
                 std::vector<double>* epoch_losses = nullptr);

// ----------------------------------------------------------- shared model

struct Prediction {
  int label = 0;
  std::vector<double> scores;
};

/// A trained classifier of any kind plus the metadata needed to apply it.
class TrainedModel {
 public:
  using Params = std::variant<LogisticModel, ForestModel, JungleModel, MlpModel>;

  TrainedModel(Params params, int num_classes, int num_features, FeatureEncoder encoder);

  ModelKind kind() const noexcept;
  int num_classes() const noexcept { return num_classes_; }
  int num_features() const noexcept { return num_features_; }
  const FeatureEncoder& encoder() const noexcept { return encoder_; }
  const Params& params() const noexcept { return params_; }
  std::vector<std::string> class_order() const;

  /// Throws ShapeError when x has the wrong width.
  Prediction predict(std::span<const double> x) const;
  Prediction predict(const Position& p) const { return predict(encoder_.encode(p)); }

  nlohmann::json parameters_json() const;
  static TrainedModel from_parameters_json(ModelKind kind, const nlohmann::json& params,
                                           int num_classes, int num_features,
                                           FeatureEncoder encoder);

 private:
  Params params_;
  int num_classes_;
  int num_features_;
  FeatureEncoder encoder_;
};

/// Index of the largest score, lowest index on ties.
int argmax(std::span<const double> scores) noexcept;

TrainedModel train_logistic_regression(const EncodedMatrix& train,
                                       const LogisticRegressionConfig& cfg);
TrainedModel train_decision_forest(const EncodedMatrix& train, const DecisionForestConfig& cfg);
TrainedModel train_decision_jungle(const EncodedMatrix& train, const DecisionJungleConfig& cfg);
TrainedModel train_mlp(const EncodedMatrix& train, const MlpConfig& cfg);

// JSON forms of the configs (used by the CLI and run manifests).
nlohmann::json to_json(const LogisticRegressionConfig& c);
nlohmann::json to_json(const DecisionForestConfig& c);
nlohmann::json to_json(const DecisionJungleConfig& c);
nlohmann::json to_json(const MlpConfig& c);
void from_json(const nlohmann::json& j, LogisticRegressionConfig& c);
void from_json(const nlohmann::json& j, DecisionForestConfig& c);
void from_json(const nlohmann::json& j, DecisionJungleConfig& c);
/// The topology is not read from JSON; callers elaborate it separately.
void from_json(const nlohmann::json& j, MlpConfig& c);

}  // namespace krk
