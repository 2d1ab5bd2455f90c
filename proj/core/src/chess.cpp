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

#include "krk/chess.hpp"

#include <algorithm>
#include <tuple>

namespace krk {

const char* to_string(Illegality reason) noexcept {
  switch (reason) {
    case Illegality::kOverlap:
      return "squares_overlap";
    case Illegality::kKingsAdjacent:
      return "kings_adjacent";
    case Illegality::kSideNotToMoveInCheck:
      return "side_not_to_move_in_check";
  }
  return "unknown";
}

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::kCheckmate:
      return "checkmate";
    case Status::kStalemate:
      return "stalemate";
    case Status::kRookCapturable:
      return "rook_capturable";
    case Status::kOngoing:
      return "ongoing";
  }
  return "unknown";
}

Square Square::parse(std::string_view text) {
  if (text.size() != 2 || text[0] < 'a' || text[0] > 'h' || text[1] < '1' || text[1] > '8') {
    throw FormatError("invalid square '" + std::string(text) + "' (expected a1..h8)");
  }
  return Square{text[0] - 'a' + 1, text[1] - '0'};
}

std::string Square::str() const {
  return std::string{static_cast<char>('a' + file - 1), static_cast<char>('0' + rank)};
}

std::string Position::str() const {
  return "wk=" + wk.str() + " wr=" + wr.str() + " bk=" + bk.str() +
         (to_move == Side::kBlack ? " black" : " white");
}

bool rook_attacks(Square wr, Square wk, Square target) noexcept {
  if (wr == target) return false;
  if (wr.file == target.file) {
    const auto [lo, hi] = std::minmax(wr.rank, target.rank);
    return !(wk.file == wr.file && wk.rank > lo && wk.rank < hi);
  }
  if (wr.rank == target.rank) {
    const auto [lo, hi] = std::minmax(wr.file, target.file);
    return !(wk.rank == wr.rank && wk.file > lo && wk.file < hi);
  }
  return false;
}

bool black_in_check(const Position& p) noexcept { return rook_attacks(p.wr, p.wk, p.bk); }

std::optional<Illegality> illegality(const Position& p) noexcept {
  if (p.wk == p.wr || p.wk == p.bk || p.wr == p.bk) return Illegality::kOverlap;
  if (is_adjacent(p.wk, p.bk)) return Illegality::kKingsAdjacent;
  if (p.to_move == Side::kWhite && black_in_check(p)) return Illegality::kSideNotToMoveInCheck;
  return std::nullopt;
}

void require_legal(const Position& p) {
  if (!p.wk.valid() || !p.wr.valid() || !p.bk.valid()) {
    throw FormatError("square out of range in " + p.str());
  }
  if (auto why = illegality(p)) {
    throw IllegalPositionError(*why, std::string("illegal position (") + to_string(*why) +
                                         "): " + p.str());
  }
}

namespace {

constexpr std::array<std::pair<int, int>, 8> kKingSteps{{
    {-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}}};

constexpr std::array<std::pair<int, int>, 4> kRookRays{{{0, -1}, {-1, 0}, {1, 0}, {0, 1}}};

}  // namespace

MoveSet legal_black_moves(const Position& p) {
  MoveSet out;
  for (auto [df, dr] : kKingSteps) {
    const Square to{p.bk.file + df, p.bk.rank + dr};
    if (!to.valid() || is_adjacent(to, p.wk)) continue;
    if (to == p.wr) {
      out.destinations.push_back(to);
      out.captures_rook = true;
      continue;
    }
    if (rook_attacks(p.wr, p.wk, to)) continue;
    out.destinations.push_back(to);
  }
  return out;
}

std::vector<WhiteMove> legal_white_moves(const Position& p) {
  std::vector<WhiteMove> out;
  for (auto [df, dr] : kKingSteps) {
    const Square to{p.wk.file + df, p.wk.rank + dr};
    if (!to.valid() || to == p.wr || to == p.bk || is_adjacent(to, p.bk)) continue;
    out.push_back({Piece::kKing, to});
  }
  for (auto [df, dr] : kRookRays) {
    for (Square to{p.wr.file + df, p.wr.rank + dr}; to.valid();
         to = Square{to.file + df, to.rank + dr}) {
      if (to == p.wk || to == p.bk) break;
      out.push_back({Piece::kRook, to});
    }
  }
  return out;
}

Status status(const Position& p) {
  const MoveSet moves = legal_black_moves(p);
  if (moves.destinations.empty()) {
    return black_in_check(p) ? Status::kCheckmate : Status::kStalemate;
  }
  return moves.captures_rook ? Status::kRookCapturable : Status::kOngoing;
}

std::array<SymmetryTransform, SymmetryTransform::kCount> SymmetryTransform::all() noexcept {
  std::array<SymmetryTransform, kCount> out;
  for (int i = 0; i < kCount; ++i) out[static_cast<std::size_t>(i)] = from_id(i);
  return out;
}

namespace {

// b1 has eight distinct images, so its image identifies the transform.
constexpr Square kProbe{2, 1};

SymmetryTransform find_by_probe_image(Square image) noexcept {
  for (auto t : SymmetryTransform::all()) {
    if (t.apply(kProbe) == image) return t;
  }
  return SymmetryTransform::identity();
}

}  // namespace

SymmetryTransform SymmetryTransform::inverse() const noexcept {
  for (auto t : all()) {
    if (t.apply(apply(kProbe)) == kProbe) return t;
  }
  return identity();
}

SymmetryTransform SymmetryTransform::then(SymmetryTransform next) const noexcept {
  return find_by_probe_image(next.apply(apply(kProbe)));
}

std::string SymmetryTransform::name() const {
  static constexpr std::array<const char*, kCount> kNames{
      "identity",  "mirror_files", "mirror_ranks", "rotate_180",
      "transpose", "rotate_ccw",   "rotate_cw",    "anti_transpose"};
  return kNames[id_];
}

Canonical canonicalize(const Position& p) noexcept {
  Canonical best{p, SymmetryTransform::identity()};
  auto key = [](const Position& q) {
    return std::tuple{q.wk.index(), q.bk.index(), q.wr.index()};
  };
  auto best_key = key(p);
  for (auto t : SymmetryTransform::all()) {
    const Position img = t.apply(p);
    const auto k = key(img);
    if (k < best_key) {
      best = {img, t};
      best_key = k;
    }
  }
  return best;
}

}  // namespace krk
