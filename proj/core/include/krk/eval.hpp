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

// Confusion matrices and the six multiclass summary metrics.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "krk/data.hpp"
#include "krk/models.hpp"

namespace krk {

/// Rows are true classes, columns predicted classes.
struct ConfusionMatrix {
  int num_classes = kNumClasses;
  std::vector<std::uint64_t> counts;  // num_classes x num_classes

  explicit ConfusionMatrix(int k = kNumClasses)
      : num_classes(k), counts(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), 0) {}

  std::uint64_t& at(int truth, int predicted) {
    return counts[static_cast<std::size_t>(truth * num_classes + predicted)];
  }
  std::uint64_t at(int truth, int predicted) const {
    return counts[static_cast<std::size_t>(truth * num_classes + predicted)];
  }
  std::uint64_t total() const noexcept;
  std::uint64_t trace() const noexcept;

  /// Relabels class k as perm[k] in both axes.
  ConfusionMatrix permuted(std::span<const int> perm) const;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

/// Throws LengthMismatch for unequal lengths, ShapeError for empty input or
/// labels outside [0, num_classes).
ConfusionMatrix confusion(std::span<const int> truth, std::span<const int> predicted,
                          int num_classes = kNumClasses);

/// Macro metrics are nullopt when some class has an empty denominator.
struct MetricsReport {
  double overall_accuracy = 0.0;
  double average_accuracy = 0.0;
  double micro_precision = 0.0;
  std::optional<double> macro_precision;
  double micro_recall = 0.0;
  std::optional<double> macro_recall;
};

/// Throws EmptyMatrix when the matrix has no samples.
MetricsReport metrics(const ConfusionMatrix& cm);

/// Six decimals, or "NaN" for an undefined value.
std::string format_metric(std::optional<double> value);

/// Two columns, one row per metric, labelled as in the reference reports.
std::string metrics_table(const MetricsReport& r);
nlohmann::json to_json(const MetricsReport& r);
nlohmann::json to_json(const ConfusionMatrix& cm);

/// 1 - 2 (1 - overall) / K.
double average_accuracy_from_overall(double overall, int num_classes = kNumClasses) noexcept;

struct Evaluation {
  ConfusionMatrix confusion;
  MetricsReport metrics;
  std::vector<int> predictions;
};

Evaluation evaluate(const TrainedModel& model, const EncodedMatrix& test);

}  // namespace krk
