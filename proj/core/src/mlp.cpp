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

using netscript::Activation;

void MlpConfig::validate() const {
  if (topology.sizes.size() < 2 || topology.activations.size() + 1 != topology.sizes.size()) {
    throw ConfigError("neural network: topology needs at least an input and an output layer");
  }
  for (int s : topology.sizes) {
    if (s <= 0) throw ConfigError("neural network: layer sizes must be positive");
  }
  if (!(learning_rate > 0)) throw ConfigError("neural network: learning_rate must be > 0");
  if (iterations <= 0) throw ConfigError("neural network: iterations must be > 0");
  if (!(init_scale > 0)) throw ConfigError("neural network: init_scale must be > 0");
  if (!(momentum >= 0)) throw ConfigError("neural network: momentum must be >= 0");
  if (batch_size <= 0) throw ConfigError("neural network: batch_size must be > 0");
}

MlpModel MlpModel::initialize(const netscript::NetworkTopology& topology, OutputLoss loss,
                              double init_scale, std::uint64_t seed) {
  MlpModel m;
  m.loss = loss;
  Rng rng(seed);
  const double half = init_scale / 2.0;
  for (std::size_t l = 0; l + 1 < topology.sizes.size(); ++l) {
    DenseLayer layer;
    layer.inputs = topology.sizes[l];
    layer.outputs = topology.sizes[l + 1];
    layer.activation = topology.activations[l];
    layer.weights.resize(static_cast<std::size_t>(layer.inputs) * layer.outputs);
    layer.bias.resize(static_cast<std::size_t>(layer.outputs));
    for (double& w : layer.weights) w = rng.uniform(-half, half);
    for (double& b : layer.bias) b = rng.uniform(-half, half);
    m.layers.push_back(std::move(layer));
  }
  return m;
}

namespace {

constexpr double kProbFloor = 1e-12;

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Fixed-order blocked sum so the compiler can vectorise without reassociating.
inline double dot(const double* a, const double* b, std::size_t n) {
  double acc[8] = {};
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    for (std::size_t k = 0; k < 8; ++k) acc[k] += a[i + k] * b[i + k];
  }
  for (; i < n; ++i) acc[0] += a[i] * b[i];
  return ((acc[0] + acc[4]) + (acc[1] + acc[5])) + ((acc[2] + acc[6]) + (acc[3] + acc[7]));
}

// Activations for every layer; acts[0] is the input copy.
struct Workspace {
  std::vector<std::vector<double>> acts;
  std::vector<std::vector<double>> deltas;

  explicit Workspace(const MlpModel& m) {
    acts.emplace_back(static_cast<std::size_t>(m.input_width()));
    for (const auto& l : m.layers) {
      acts.emplace_back(static_cast<std::size_t>(l.outputs));
      deltas.emplace_back(static_cast<std::size_t>(l.outputs));
    }
  }
};

void forward(const MlpModel& m, std::span<const double> x, Workspace& ws) {
  std::copy(x.begin(), x.end(), ws.acts[0].begin());
  const std::size_t last = m.layers.size() - 1;
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    const DenseLayer& layer = m.layers[l];
    const double* in = ws.acts[l].data();
    double* out = ws.acts[l + 1].data();
    const auto n_in = static_cast<std::size_t>(layer.inputs);
    for (std::size_t o = 0; o < static_cast<std::size_t>(layer.outputs); ++o) {
      out[o] = layer.bias[o] + dot(layer.weights.data() + o * n_in, in, n_in);
    }
    const bool softmax_out = l == last && m.loss == OutputLoss::kSoftmaxCrossEntropy;
    auto& a = ws.acts[l + 1];
    if (softmax_out) {
      const double peak = *std::max_element(a.begin(), a.end());
      double sum = 0.0;
      for (double& v : a) {
        v = std::exp(v - peak);
        sum += v;
      }
      for (double& v : a) v /= sum;
    } else if (layer.activation == Activation::kSigmoid) {
      for (double& v : a) v = sigmoid(v);
    }
  }
}

// Output delta (dLoss/dz for the last layer) and the sample loss.
double output_delta(const MlpModel& m, int label, Workspace& ws) {
  const auto& p = ws.acts.back();
  auto& delta = ws.deltas.back();
  const auto y = static_cast<std::size_t>(label);
  double loss = 0.0;
  if (m.loss == OutputLoss::kSoftmaxCrossEntropy) {
    loss = -std::log(std::max(p[y], kProbFloor));
    for (std::size_t k = 0; k < p.size(); ++k) delta[k] = p[k] - (k == y ? 1.0 : 0.0);
    return loss;
  }
  const bool sigmoid_out = m.layers.back().activation == Activation::kSigmoid;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double t = k == y ? 1.0 : 0.0;
    if (sigmoid_out) {
      const double pk = std::clamp(p[k], kProbFloor, 1.0 - kProbFloor);
      loss -= t * std::log(pk) + (1.0 - t) * std::log(1.0 - pk);
      delta[k] = p[k] - t;
    } else {
      // Linear output: squared error.
      loss += 0.5 * (p[k] - t) * (p[k] - t);
      delta[k] = p[k] - t;
    }
  }
  return loss;
}

// Propagates deltas[l] back to deltas[l-1] through layer l's weights.
void backpropagate_delta(const MlpModel& m, std::size_t l, Workspace& ws) {
  const DenseLayer& layer = m.layers[l];
  const auto n_in = static_cast<std::size_t>(layer.inputs);
  auto& prev = ws.deltas[l - 1];
  std::fill(prev.begin(), prev.end(), 0.0);
  const double* delta = ws.deltas[l].data();
  for (std::size_t o = 0; o < static_cast<std::size_t>(layer.outputs); ++o) {
    const double d = delta[o];
    const double* w = layer.weights.data() + o * n_in;
    for (std::size_t i = 0; i < n_in; ++i) prev[i] += w[i] * d;
  }
  if (m.layers[l - 1].activation == Activation::kSigmoid) {
    const auto& a = ws.acts[l];
    for (std::size_t i = 0; i < n_in; ++i) prev[i] *= a[i] * (1.0 - a[i]);
  }
}

struct Velocity {
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> bias;
};

// Forward + backward on one sample. Each weight row is read once to push the
// delta back and updated in the same sweep.
double sgd_step(MlpModel& m, std::span<const double> x, int label, double rate, double momentum,
                Workspace& ws, Velocity* vel) {
  forward(m, x, ws);
  const double loss = output_delta(m, label, ws);
  for (std::size_t l = m.layers.size(); l-- > 0;) {
    DenseLayer& layer = m.layers[l];
    const auto n_in = static_cast<std::size_t>(layer.inputs);
    const double* in = ws.acts[l].data();
    const double* delta = ws.deltas[l].data();
    double* prev = l > 0 ? ws.deltas[l - 1].data() : nullptr;
    if (prev) std::fill(prev, prev + n_in, 0.0);
    for (std::size_t o = 0; o < static_cast<std::size_t>(layer.outputs); ++o) {
      const double d = delta[o];
      double* w = layer.weights.data() + o * n_in;
      if (vel) {
        double* v = vel->weights[l].data() + o * n_in;
        for (std::size_t i = 0; i < n_in; ++i) {
          if (prev) prev[i] += w[i] * d;
          v[i] = momentum * v[i] - rate * d * in[i];
          w[i] += v[i];
        }
        double& vb = vel->bias[l][o];
        vb = momentum * vb - rate * d;
        layer.bias[o] += vb;
      } else {
        if (d == 0.0) continue;
        const double step = rate * d;
        if (prev) {
          for (std::size_t i = 0; i < n_in; ++i) {
            prev[i] += w[i] * d;
            w[i] -= step * in[i];
          }
        } else {
          for (std::size_t i = 0; i < n_in; ++i) w[i] -= step * in[i];
        }
        layer.bias[o] -= step;
      }
    }
    if (prev && m.layers[l - 1].activation == Activation::kSigmoid) {
      for (std::size_t i = 0; i < n_in; ++i) prev[i] *= in[i] * (1.0 - in[i]);
    }
  }
  return loss;
}

void accumulate_gradient(const MlpModel& m, std::span<const double> x, int label, Workspace& ws,
                         MlpGradient& g) {
  forward(m, x, ws);
  g.loss += output_delta(m, label, ws);
  for (std::size_t l = m.layers.size(); l-- > 0;) {
    if (l > 0) backpropagate_delta(m, l, ws);
    const DenseLayer& layer = m.layers[l];
    const auto n_in = static_cast<std::size_t>(layer.inputs);
    const double* in = ws.acts[l].data();
    for (std::size_t o = 0; o < static_cast<std::size_t>(layer.outputs); ++o) {
      const double d = ws.deltas[l][o];
      double* gw = g.weights[l].data() + o * n_in;
      for (std::size_t i = 0; i < n_in; ++i) gw[i] += d * in[i];
      g.bias[l][o] += d;
    }
  }
}

MlpGradient zero_gradient(const MlpModel& m) {
  MlpGradient g;
  for (const auto& l : m.layers) {
    g.weights.emplace_back(l.weights.size(), 0.0);
    g.bias.emplace_back(l.bias.size(), 0.0);
  }
  return g;
}

}  // namespace

void MlpModel::scores(std::span<const double> x, std::span<double> out) const {
  Workspace ws(*this);
  forward(*this, x, ws);
  std::copy(ws.acts.back().begin(), ws.acts.back().end(), out.begin());
}

MlpGradient mlp_loss_and_gradient(const MlpModel& model, const EncodedMatrix& data,
                                  std::span<const std::size_t> rows) {
  if (static_cast<int>(data.cols) != model.input_width()) {
    throw ShapeError("feature width does not match the network input");
  }
  MlpGradient g = zero_gradient(model);
  Workspace ws(model);
  for (auto r : rows) accumulate_gradient(model, data.row(r), data.labels[r], ws, g);
  return g;
}

double mlp_loss(const MlpModel& model, const EncodedMatrix& data) {
  std::vector<std::size_t> rows(data.rows);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  Workspace ws(model);
  double total = 0.0;
  for (auto r : rows) {
    forward(model, data.row(r), ws);
    total += output_delta(model, data.labels[r], ws);
  }
  return data.rows ? total / static_cast<double>(data.rows) : 0.0;
}

MlpModel fit_mlp(const EncodedMatrix& train, const MlpConfig& cfg,
                 std::vector<double>* epoch_losses) {
  cfg.validate();
  if (train.rows == 0) throw ShapeError("empty training matrix");
  if (cfg.topology.sizes.front() != static_cast<int>(train.cols)) {
    throw ShapeError("topology input width " + std::to_string(cfg.topology.sizes.front()) +
                     " != feature width " + std::to_string(train.cols));
  }
  if (cfg.topology.sizes.back() != train.num_classes) {
    throw ShapeError("topology output width " + std::to_string(cfg.topology.sizes.back()) +
                     " != number of classes " + std::to_string(train.num_classes));
  }
  MlpModel model =
      MlpModel::initialize(cfg.topology, cfg.loss, cfg.init_scale, derive_seed(cfg.seed, 1));
  Rng order_rng(derive_seed(cfg.seed, 2));
  std::vector<std::size_t> order(train.rows);
  std::iota(order.begin(), order.end(), std::size_t{0});

  Workspace ws(model);
  Velocity vel;
  const bool use_velocity = cfg.momentum > 0.0;
  if (use_velocity) {
    for (const auto& l : model.layers) {
      vel.weights.emplace_back(l.weights.size(), 0.0);
      vel.bias.emplace_back(l.bias.size(), 0.0);
    }
  }

  for (int epoch = 0; epoch < cfg.iterations; ++epoch) {
    if (cfg.shuffle) order_rng.shuffle(std::span<std::size_t>(order));
    double total = 0.0;
    if (cfg.batch_size == 1) {
      for (auto r : order) {
        total += sgd_step(model, train.row(r), train.labels[r], cfg.learning_rate, cfg.momentum,
                          ws, use_velocity ? &vel : nullptr);
      }
    } else {
      const auto batch = static_cast<std::size_t>(cfg.batch_size);
      for (std::size_t start = 0; start < order.size(); start += batch) {
        const std::size_t stop = std::min(order.size(), start + batch);
        MlpGradient g = mlp_loss_and_gradient(
            model, train, std::span<const std::size_t>(order.data() + start, stop - start));
        total += g.loss;
        for (std::size_t l = 0; l < model.layers.size(); ++l) {
          auto& layer = model.layers[l];
          for (std::size_t t = 0; t < layer.weights.size(); ++t) {
            double step = -cfg.learning_rate * g.weights[l][t];
            if (use_velocity) step = vel.weights[l][t] = cfg.momentum * vel.weights[l][t] + step;
            layer.weights[t] += step;
          }
          for (std::size_t t = 0; t < layer.bias.size(); ++t) {
            double step = -cfg.learning_rate * g.bias[l][t];
            if (use_velocity) step = vel.bias[l][t] = cfg.momentum * vel.bias[l][t] + step;
            layer.bias[t] += step;
          }
        }
      }
    }
    const double mean = total / static_cast<double>(train.rows);
    // A saturated sigmoid keeps the clamped loss finite even after the
    // weights have overflowed, so check both.
    const auto finite = [](const std::vector<double>& v) {
      return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    };
    const bool params_finite = std::all_of(model.layers.begin(), model.layers.end(),
                                           [&](const DenseLayer& l) {
                                             return finite(l.weights) && finite(l.bias);
                                           });
    if (!std::isfinite(mean) || !params_finite) {
      throw NonFiniteLoss("neural network diverged in iteration " + std::to_string(epoch + 1) +
                          " (learning rate too high?)");
    }
    if (epoch_losses) epoch_losses->push_back(mean);
  }
  return model;
}

}  // namespace krk
