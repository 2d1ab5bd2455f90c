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

// Board geometry and move rules for the King+Rook vs King endgame.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "krk/errors.hpp"

namespace krk {

/// A board square; file and rank are both 1-based (a1 = {1, 1}).
struct Square {
  int file = 1;
  int rank = 1;

  constexpr bool valid() const noexcept {
    return file >= 1 && file <= 8 && rank >= 1 && rank <= 8;
  }
  /// Rank-major index in 0..63 (a1 = 0, h1 = 7, a2 = 8).
  constexpr int index() const noexcept { return (rank - 1) * 8 + (file - 1); }
  static constexpr Square from_index(int idx) noexcept {
    return Square{idx % 8 + 1, idx / 8 + 1};
  }

  /// Parses "a1".."h8"; throws FormatError otherwise.
  static Square parse(std::string_view text);
  std::string str() const;

  friend constexpr bool operator==(Square, Square) = default;
  friend constexpr auto operator<=>(Square, Square) = default;
};

enum class Side : std::uint8_t { kWhite, kBlack };

struct Position {
  Square wk;
  Square wr;
  Square bk;
  Side to_move = Side::kBlack;

  friend constexpr bool operator==(const Position&, const Position&) = default;
  std::string str() const;
};

enum class Piece : std::uint8_t { kKing, kRook };

struct WhiteMove {
  Piece piece;
  Square to;
  friend constexpr bool operator==(const WhiteMove&, const WhiteMove&) = default;
};

/// Black king destinations. A capture of an undefended rook appears both in
/// `destinations` and as `captures_rook`.
struct MoveSet {
  std::vector<Square> destinations;
  bool captures_rook = false;
};

enum class Status { kCheckmate, kStalemate, kRookCapturable, kOngoing };

const char* to_string(Status s) noexcept;

constexpr bool is_adjacent(Square a, Square b) noexcept {
  const int df = a.file > b.file ? a.file - b.file : b.file - a.file;
  const int dr = a.rank > b.rank ? a.rank - b.rank : b.rank - a.rank;
  return (df > dr ? df : dr) == 1;
}

/// True iff the rook on `wr` attacks `target` along a file or rank; only the
/// white king can block. The black king is transparent, so squares behind it
/// on the rook's line still count as attacked.
bool rook_attacks(Square wr, Square wk, Square target) noexcept;

bool black_in_check(const Position& p) noexcept;

/// Reason the position violates the placement rules, or nullopt when legal.
std::optional<Illegality> illegality(const Position& p) noexcept;
inline bool is_legal(const Position& p) noexcept { return !illegality(p).has_value(); }
/// Throws IllegalPositionError naming the violated rule.
void require_legal(const Position& p);

MoveSet legal_black_moves(const Position& p);
std::vector<WhiteMove> legal_white_moves(const Position& p);

/// Classifies a black-to-move position.
Status status(const Position& p);

/// One element of the dihedral group of the square board. Applied as:
/// optional transpose (swap file and rank), then optional file mirror, then
/// optional rank mirror.
class SymmetryTransform {
 public:
  static constexpr int kCount = 8;

  constexpr SymmetryTransform() = default;
  static constexpr SymmetryTransform from_id(int id) noexcept {
    SymmetryTransform t;
    t.id_ = static_cast<std::uint8_t>(id & 7);
    return t;
  }
  static constexpr SymmetryTransform identity() noexcept { return {}; }
  static std::array<SymmetryTransform, kCount> all() noexcept;

  constexpr int id() const noexcept { return id_; }
  constexpr bool transposes() const noexcept { return (id_ & 4) != 0; }
  constexpr bool mirrors_files() const noexcept { return (id_ & 1) != 0; }
  constexpr bool mirrors_ranks() const noexcept { return (id_ & 2) != 0; }

  constexpr Square apply(Square s) const noexcept {
    if (transposes()) s = Square{s.rank, s.file};
    if (mirrors_files()) s.file = 9 - s.file;
    if (mirrors_ranks()) s.rank = 9 - s.rank;
    return s;
  }
  Position apply(const Position& p) const noexcept {
    return Position{apply(p.wk), apply(p.wr), apply(p.bk), p.to_move};
  }
  SymmetryTransform inverse() const noexcept;
  /// (a.then(b)).apply(s) == b.apply(a.apply(s)).
  SymmetryTransform then(SymmetryTransform next) const noexcept;
  std::string name() const;

  friend constexpr bool operator==(SymmetryTransform, SymmetryTransform) = default;

 private:
  std::uint8_t id_ = 0;
};

struct Canonical {
  Position position;
  SymmetryTransform transform;  // transform.apply(input) == position
};

/// Orbit representative: the image minimising (wk, bk, wr) by square index,
/// which confines the white king to the a1-d1-d4 triangle.
Canonical canonicalize(const Position& p) noexcept;

inline bool is_canonical(const Position& p) noexcept {
  return canonicalize(p).position == p;
}

}  // namespace krk
