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

// Dataset records, feature encodings, splits and class statistics.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "krk/chess.hpp"
#include "krk/labels.hpp"

namespace krk {

/// One dataset row: a black-to-move position and its class.
struct Record {
  Position position;
  ClassLabel label;
  friend bool operator==(const Record&, const Record&) = default;
};

/// Parses "F,R,F,R,F,R,LABEL" (white king, white rook, black king). Spaces
/// and a trailing CR are tolerated. Throws FormatError or
/// IllegalPositionError.
Record parse_record(std::string_view line);
std::string format_record(const Record& r);

/// Reads every non-blank line; errors carry the 1-based line number.
std::vector<Record> load_dataset(std::istream& in);
std::vector<Record> load_dataset_file(const std::string& path);
void write_dataset(std::ostream& out, std::span<const Record> records);

/// kMixed one-hot encodes the three file letters and keeps the three ranks
/// numeric.
enum class Encoding : std::uint8_t { kOrdinal, kOneHot, kMixed };
enum class Normalization : std::uint8_t { kNone, kMinMax };

struct EncodingScheme {
  Encoding kind = Encoding::kOrdinal;
  Normalization normalize = Normalization::kMinMax;

  /// 6 for ordinal, 48 for one-hot, 27 for mixed.
  int width() const noexcept {
    switch (kind) {
      case Encoding::kOrdinal: return 6;
      case Encoding::kOneHot: return 48;
      case Encoding::kMixed: return 27;
    }
    return 0;
  }
  std::string name() const;
  static EncodingScheme parse(std::string_view name);
  friend bool operator==(const EncodingScheme&, const EncodingScheme&) = default;
};

inline constexpr int kNumAttributes = 6;

/// Raw attribute values 1..8 in file order: wk file, wk rank, wr file,
/// wr rank, bk file, bk rank.
std::array<int, kNumAttributes> attributes(const Position& p) noexcept;

/// An encoding scheme together with the per-column ranges fitted for
/// min-max scaling; applying it to a position gives one feature row.
class FeatureEncoder {
 public:
  FeatureEncoder() = default;
  explicit FeatureEncoder(EncodingScheme scheme);

  /// Fits min-max ranges over `records` (no-op for other schemes).
  static FeatureEncoder fit(EncodingScheme scheme, std::span<const Record> records);

  const EncodingScheme& scheme() const noexcept { return scheme_; }
  int width() const noexcept { return scheme_.width(); }

  void encode(const Position& p, std::span<double> out) const;
  std::vector<double> encode(const Position& p) const;
  /// Inverse of the ordinal encoding (rounded to the nearest integer).
  std::array<int, kNumAttributes> decode_ordinal(std::span<const double> row) const;

  /// Stable text identity of the scheme plus fitted ranges.
  std::string fingerprint() const;

  /// True when min-max ranges are fitted and applied.
  bool uses_ranges() const noexcept {
    return scheme_.kind != Encoding::kOneHot && scheme_.normalize == Normalization::kMinMax;
  }

  nlohmann::json to_json() const;
  static FeatureEncoder from_json(const nlohmann::json& j);

  friend bool operator==(const FeatureEncoder&, const FeatureEncoder&) = default;

 private:
  EncodingScheme scheme_;
  std::array<int, kNumAttributes> min_{1, 1, 1, 1, 1, 1};
  std::array<int, kNumAttributes> max_{8, 8, 8, 8, 8, 8};
};

/// Row-major feature matrix plus class indices.
struct EncodedMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> features;
  std::vector<int> labels;
  int num_classes = kNumClasses;
  FeatureEncoder encoder;

  std::span<const double> row(std::size_t i) const noexcept {
    return {features.data() + i * cols, cols};
  }
  std::span<double> row(std::size_t i) noexcept { return {features.data() + i * cols, cols}; }

  /// Builds a matrix from raw rows; used for synthetic problems.
  static EncodedMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                 const std::vector<int>& labels, int num_classes);
  EncodedMatrix subset(std::span<const std::size_t> indices) const;
  /// FNV-1a hash over features and labels.
  std::uint64_t fingerprint() const noexcept;
};

/// Fits the encoder on `records` and encodes all of them. Requires a
/// nonempty input.
EncodedMatrix encode(std::span<const Record> records, EncodingScheme scheme);

struct SplitSpec {
  double train_fraction = 0.7;
  std::uint64_t seed = 20210306;
  bool stratified = true;
};

/// Deterministic partition. The train side receives floor(n * fraction)
/// rows; under stratification the per-class quotas are floors with the
/// remainder handed to the largest fractional parts.
std::pair<EncodedMatrix, EncodedMatrix> split(const EncodedMatrix& matrix, const SplitSpec& spec);

/// Index form of `split`: {train indices, test indices}.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::span<const int> labels, int num_classes, const SplitSpec& spec);

struct ClassCount {
  ClassLabel label;
  std::size_t count = 0;
  double percent = 0.0;
};

/// One entry per class in canonical order; percent = count / N * 100.
std::vector<ClassCount> statistics(std::span<const Record> records);
std::string statistics_csv(std::span<const ClassCount> stats);
nlohmann::json statistics_json(std::span<const ClassCount> stats);

}  // namespace krk
