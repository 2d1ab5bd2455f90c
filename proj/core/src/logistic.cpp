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

#include "krk/models.hpp"

namespace krk {

void LogisticRegressionConfig::validate() const {
  if (!(learning_rate > 0)) throw ConfigError("logistic regression: learning_rate must be > 0");
  if (iterations <= 0) throw ConfigError("logistic regression: iterations must be > 0");
  if (!(l2_weight >= 0)) throw ConfigError("logistic regression: l2_weight must be >= 0");
}

LogisticModel LogisticModel::zeros(int num_classes, int num_features) {
  LogisticModel m;
  m.num_classes = num_classes;
  m.num_features = num_features;
  m.weights.assign(static_cast<std::size_t>(num_classes * num_features), 0.0);
  m.bias.assign(static_cast<std::size_t>(num_classes), 0.0);
  return m;
}

namespace {

// Nonzero coordinates of a feature row; one-hot rows are mostly zeros.
void gather_nonzero(std::span<const double> x, std::vector<std::size_t>& nz) {
  nz.clear();
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] != 0.0) nz.push_back(j);
  }
}

// Logits into `out`, then softmax in place.
void softmax_logits(const LogisticModel& m, std::span<const double> x,
                    const std::vector<std::size_t>& nz, std::span<double> out) {
  const std::size_t d = static_cast<std::size_t>(m.num_features);
  for (std::size_t k = 0; k < static_cast<std::size_t>(m.num_classes); ++k) {
    const double* w = m.weights.data() + k * d;
    double z = m.bias[k];
    for (auto j : nz) z += w[j] * x[j];
    out[k] = z;
  }
  const double peak = *std::max_element(out.begin(), out.end());
  double sum = 0.0;
  for (double& z : out) {
    z = std::exp(z - peak);
    sum += z;
  }
  for (double& z : out) z /= sum;
}

}  // namespace

void LogisticModel::scores(std::span<const double> x, std::span<double> out) const {
  std::vector<std::size_t> nz;
  gather_nonzero(x, nz);
  softmax_logits(*this, x, nz, out);
}

LogisticGradient logistic_loss_and_gradient(const LogisticModel& model, const EncodedMatrix& data,
                                            double l2_weight) {
  if (data.rows == 0) throw ShapeError("empty training matrix");
  if (static_cast<int>(data.cols) != model.num_features) {
    throw ShapeError("feature width does not match the model");
  }
  const std::size_t k_count = static_cast<std::size_t>(model.num_classes);
  const std::size_t d = data.cols;
  LogisticGradient g;
  g.weights.assign(model.weights.size(), 0.0);
  g.bias.assign(k_count, 0.0);
  std::vector<double> p(k_count);
  std::vector<std::size_t> nz;
  double loss = 0.0;
  for (std::size_t i = 0; i < data.rows; ++i) {
    const auto x = data.row(i);
    gather_nonzero(x, nz);
    softmax_logits(model, x, nz, p);
    const auto y = static_cast<std::size_t>(data.labels[i]);
    loss -= std::log(std::max(p[y], 1e-300));
    for (std::size_t k = 0; k < k_count; ++k) {
      const double delta = p[k] - (k == y ? 1.0 : 0.0);
      g.bias[k] += delta;
      double* gw = g.weights.data() + k * d;
      for (auto j : nz) gw[j] += delta * x[j];
    }
  }
  const double inv_n = 1.0 / static_cast<double>(data.rows);
  double sq = 0.0;
  for (std::size_t t = 0; t < g.weights.size(); ++t) {
    g.weights[t] = g.weights[t] * inv_n + l2_weight * model.weights[t];
    sq += model.weights[t] * model.weights[t];
  }
  for (double& b : g.bias) b *= inv_n;
  g.loss = loss * inv_n + 0.5 * l2_weight * sq;
  return g;
}

LogisticModel fit_logistic_regression(const EncodedMatrix& train,
                                      const LogisticRegressionConfig& cfg,
                                      std::vector<double>* loss_history) {
  cfg.validate();
  if (train.rows == 0) throw ShapeError("empty training matrix");
  // Zero initialisation; the objective is convex so the seed is unused.
  LogisticModel model = LogisticModel::zeros(train.num_classes, static_cast<int>(train.cols));
  for (int it = 0; it <= cfg.iterations; ++it) {
    const LogisticGradient g = logistic_loss_and_gradient(model, train, cfg.l2_weight);
    if (!std::isfinite(g.loss)) {
      throw NonFiniteLoss("logistic regression diverged at iteration " + std::to_string(it) +
                          " (learning rate too high?)");
    }
    if (loss_history) loss_history->push_back(g.loss);
    if (it == cfg.iterations) break;
    for (std::size_t t = 0; t < model.weights.size(); ++t) {
      model.weights[t] -= cfg.learning_rate * g.weights[t];
    }
    for (std::size_t k = 0; k < model.bias.size(); ++k) {
      model.bias[k] -= cfg.learning_rate * g.bias[k];
    }
  }
  return model;
}

}  // namespace krk
