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

#include "krk/labels.hpp"

namespace krk {

const std::array<std::string_view, kNumClasses>& class_names() noexcept {
  static constexpr std::array<std::string_view, kNumClasses> kNames{
      "draw", "zero",  "one",    "two",      "three",    "four",     "five",
      "six",  "seven", "eight",  "nine",     "ten",      "eleven",   "twelve",
      "thirteen", "fourteen", "fifteen", "sixteen"};
  return kNames;
}

std::optional<ClassLabel> ClassLabel::parse(std::string_view name) noexcept {
  const auto& names = class_names();
  for (int i = 0; i < kNumClasses; ++i) {
    if (names[static_cast<std::size_t>(i)] == name) return ClassLabel(i);
  }
  return std::nullopt;
}

std::string_view ClassLabel::name() const noexcept {
  return class_names()[static_cast<std::size_t>(index_)];
}

}  // namespace krk
