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

#include "krk/eval.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace krk {

std::uint64_t ConfusionMatrix::total() const noexcept {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

std::uint64_t ConfusionMatrix::trace() const noexcept {
  std::uint64_t t = 0;
  for (int k = 0; k < num_classes; ++k) t += at(k, k);
  return t;
}

ConfusionMatrix ConfusionMatrix::permuted(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != num_classes) {
    throw ShapeError("permutation length must equal the class count");
  }
  ConfusionMatrix out(num_classes);
  for (int i = 0; i < num_classes; ++i) {
    for (int j = 0; j < num_classes; ++j) {
      out.at(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) = at(i, j);
    }
  }
  return out;
}

ConfusionMatrix confusion(std::span<const int> truth, std::span<const int> predicted,
                          int num_classes) {
  if (truth.size() != predicted.size()) {
    throw LengthMismatch("truth has " + std::to_string(truth.size()) + " labels, predictions " +
                         std::to_string(predicted.size()));
  }
  if (truth.empty()) throw ShapeError("no labels to compare");
  ConfusionMatrix cm(num_classes);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const int t = truth[i], p = predicted[i];
    if (t < 0 || t >= num_classes || p < 0 || p >= num_classes) {
      throw ShapeError("label out of range at position " + std::to_string(i));
    }
    ++cm.at(t, p);
  }
  return cm;
}

MetricsReport metrics(const ConfusionMatrix& cm) {
  const std::uint64_t n = cm.total();
  if (n == 0) throw EmptyMatrix("confusion matrix has no samples");
  const int k = cm.num_classes;
  const std::uint64_t tp_sum = cm.trace();
  const double total = static_cast<double>(n);

  MetricsReport r;
  r.overall_accuracy = static_cast<double>(tp_sum) / total;
  // Every misclassification is one FP and one FN, so sum_k (TP_k + TN_k) =
  // K*n - 2*(n - trace).
  const std::uint64_t correct_cells =
      static_cast<std::uint64_t>(k) * n - 2 * (n - tp_sum);
  r.average_accuracy = static_cast<double>(correct_cells) / (total * k);
  // Each sample is predicted exactly once: sum FP = sum FN = n - trace.
  r.micro_precision = static_cast<double>(tp_sum) / total;
  r.micro_recall = r.micro_precision;

  double prec = 0.0, rec = 0.0;
  bool prec_ok = true, rec_ok = true;
  for (int c = 0; c < k; ++c) {
    std::uint64_t predicted = 0, actual = 0;
    for (int o = 0; o < k; ++o) {
      predicted += cm.at(o, c);
      actual += cm.at(c, o);
    }
    const auto tp = static_cast<double>(cm.at(c, c));
    if (predicted == 0) prec_ok = false;
    else prec += tp / static_cast<double>(predicted);
    if (actual == 0) rec_ok = false;
    else rec += tp / static_cast<double>(actual);
  }
  if (prec_ok) r.macro_precision = prec / k;
  if (rec_ok) r.macro_recall = rec / k;
  return r;
}

double average_accuracy_from_overall(double overall, int num_classes) noexcept {
  return 1.0 - 2.0 * (1.0 - overall) / num_classes;
}

std::string format_metric(std::optional<double> value) {
  if (!value) return "NaN";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", *value);
  return buf;
}

std::string metrics_table(const MetricsReport& r) {
  const std::pair<const char*, std::optional<double>> rows[] = {
      {"Overall accuracy", r.overall_accuracy},
      {"Average accuracy", r.average_accuracy},
      {"Micro-averaged precision", r.micro_precision},
      {"Macro-averaged precision", r.macro_precision},
      {"Micro-averaged recall", r.micro_recall},
      {"Macro-averaged recall", r.macro_recall},
  };
  std::string out;
  for (const auto& [name, v] : rows) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%-26s%s\n", name, format_metric(v).c_str());
    out += buf;
  }
  return out;
}

namespace {
nlohmann::json metric_json(std::optional<double> v) {
  if (v) return *v;
  return "NaN";
}
}  // namespace

nlohmann::json to_json(const MetricsReport& r) {
  return {{"overall_accuracy", r.overall_accuracy},
          {"average_accuracy", r.average_accuracy},
          {"micro_precision", r.micro_precision},
          {"macro_precision", metric_json(r.macro_precision)},
          {"micro_recall", r.micro_recall},
          {"macro_recall", metric_json(r.macro_recall)}};
}

nlohmann::json to_json(const ConfusionMatrix& cm) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < cm.num_classes; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < cm.num_classes; ++j) row.push_back(cm.at(i, j));
    rows.push_back(std::move(row));
  }
  nlohmann::json labels = nlohmann::json::array();
  for (int k = 0; k < cm.num_classes; ++k) {
    labels.push_back(k < kNumClasses ? std::string(ClassLabel::from_index(k).name())
                                     : std::to_string(k));
  }
  return {{"class_order", std::move(labels)}, {"counts", std::move(rows)}};
}

Evaluation evaluate(const TrainedModel& model, const EncodedMatrix& test) {
  if (test.rows == 0) throw EmptyMatrix("test matrix has no rows");
  Evaluation e{ConfusionMatrix(model.num_classes()), {}, {}};
  e.predictions.reserve(test.rows);
  for (std::size_t i = 0; i < test.rows; ++i) {
    e.predictions.push_back(model.predict(test.row(i)).label);
  }
  e.confusion = confusion(test.labels, e.predictions, model.num_classes());
  e.metrics = metrics(e.confusion);
  return e;
}

}  // namespace krk
