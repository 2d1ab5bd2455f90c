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

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace krk {

inline constexpr int kNumClasses = 18;
inline constexpr int kMaxWinDepth = 16;

/// Game-theoretic value with black to move: a draw, or a white win in
/// `depth` more white moves (0 = black is already checkmated).
struct GameValue {
  enum class Kind { kDraw, kWin };
  Kind kind = Kind::kDraw;
  int depth = 0;

  static constexpr GameValue draw() noexcept { return {}; }
  static constexpr GameValue win(int d) noexcept { return {Kind::kWin, d}; }
  constexpr bool is_win() const noexcept { return kind == Kind::kWin; }
  friend constexpr bool operator==(const GameValue&, const GameValue&) = default;
};

/// One of the 18 dataset classes, ordered draw, zero, one, ..., sixteen.
class ClassLabel {
 public:
  constexpr ClassLabel() = default;
  static constexpr ClassLabel from_index(int i) noexcept { return ClassLabel(i); }
  static constexpr ClassLabel from_value(GameValue v) noexcept {
    return ClassLabel(v.is_win() ? v.depth + 1 : 0);
  }
  /// Parses "draw", "zero", ..., "sixteen".
  static std::optional<ClassLabel> parse(std::string_view name) noexcept;

  constexpr int index() const noexcept { return index_; }
  constexpr GameValue value() const noexcept {
    return index_ == 0 ? GameValue::draw() : GameValue::win(index_ - 1);
  }
  std::string_view name() const noexcept;

  friend constexpr auto operator<=>(ClassLabel, ClassLabel) = default;

 private:
  constexpr explicit ClassLabel(int i) : index_(i) {}
  int index_ = 0;
};

/// Canonical class names in index order.
const std::array<std::string_view, kNumClasses>& class_names() noexcept;

}  // namespace krk
