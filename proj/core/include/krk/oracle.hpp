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

// Retrograde solver for KRK: exact depth-to-mate for every position.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "krk/chess.hpp"
#include "krk/data.hpp"
#include "krk/labels.hpp"

namespace krk {

/// Solved values for both sides to move, indexed densely by
/// (wk, wr, bk) square indices. Immutable once built.
class Tablebase {
 public:
  static constexpr std::size_t kSlots = 64 * 64 * 64;
  static constexpr std::int8_t kIllegal = -3;
  static constexpr std::int8_t kDraw = -1;

  static constexpr std::size_t slot(Square wk, Square wr, Square bk) noexcept {
    return static_cast<std::size_t>(wk.index()) * 4096 +
           static_cast<std::size_t>(wr.index()) * 64 + static_cast<std::size_t>(bk.index());
  }
  static Position position_at(std::size_t slot, Side to_move) noexcept;

  /// nullopt for illegal positions. For white to move, a win depth counts
  /// white moves until mate, so it is always at least 1.
  std::optional<GameValue> value(const Position& p) const noexcept;

  std::span<const std::int8_t> raw(Side to_move) const noexcept {
    return to_move == Side::kBlack ? std::span<const std::int8_t>(black_)
                                   : std::span<const std::int8_t>(white_);
  }

  int max_black_depth() const noexcept;
  int min_black_depth() const noexcept;

 private:
  friend struct TablebaseBuilder;
  std::vector<std::int8_t> black_;
  std::vector<std::int8_t> white_;
};

/// Order in which the solver finalised black-to-move wins.
struct SolveTrace {
  std::vector<std::int8_t> black_win_discovery;  // depth of each win, in order
  std::vector<std::size_t> layer_sizes;          // black wins found per depth
};

Tablebase solve(SolveTrace* trace = nullptr);

/// Label of a black-to-move position; throws IllegalPositionError.
ClassLabel classify(const Tablebase& tb, const Position& p);

/// One record per canonical legal black-to-move position, ordered by class
/// and then by (wk, wr, bk) file/rank, which is the published file's order.
std::vector<Record> export_dataset(const Tablebase& tb);

struct Disagreement {
  Position position;
  ClassLabel dataset_label;
  ClassLabel oracle_label;
};

struct VerificationReport {
  std::size_t compared = 0;
  std::size_t agreed = 0;
  std::size_t non_canonical = 0;  // records not stored as their orbit representative
  std::vector<Disagreement> disagreements;
  std::array<std::size_t, kNumClasses> dataset_histogram{};
  std::array<std::size_t, kNumClasses> oracle_histogram{};

  /// 1.0 for an empty comparison.
  double agreement() const noexcept {
    return compared == 0 ? 1.0 : static_cast<double>(agreed) / static_cast<double>(compared);
  }
  bool success() const noexcept { return agreed == compared; }
  std::array<long long, kNumClasses> histogram_delta() const noexcept;
};

/// Throws UnknownPosition when a record is illegal under the move rules.
VerificationReport verify_against_dataset(const Tablebase& tb, std::span<const Record> records);

}  // namespace krk
