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
#include <set>

#include <gtest/gtest.h>

#include "krk/chess.hpp"
#include "krk/errors.hpp"

namespace krk {
namespace {

Position pos(const char* wk, const char* wr, const char* bk) {
  return {Square::parse(wk), Square::parse(wr), Square::parse(bk), Side::kBlack};
}

std::vector<std::string> sorted_moves(const Position& p) {
  std::vector<std::string> out;
  for (auto s : legal_black_moves(p).destinations) out.push_back(s.str());
  std::sort(out.begin(), out.end());
  return out;
}

template <typename F>
void for_each_legal(F&& f) {
  for (int a = 0; a < 64; ++a)
    for (int b = 0; b < 64; ++b)
      for (int c = 0; c < 64; ++c) {
        Position p{Square::from_index(a), Square::from_index(b), Square::from_index(c), Side::kBlack};
        if (is_legal(p)) f(p);
      }
}

TEST(Square, ParseAndFormat) {
  EXPECT_EQ(Square::parse("a1").index(), 0);
  EXPECT_EQ(Square::parse("h8").index(), 63);
  EXPECT_EQ(Square::parse("e4").str(), "e4");
  EXPECT_THROW(Square::parse("i1"), FormatError);
  EXPECT_THROW(Square::parse("a9"), FormatError);
  EXPECT_THROW(Square::parse(""), FormatError);
  for (int i = 0; i < 64; ++i) EXPECT_EQ(Square::parse(Square::from_index(i).str()).index(), i);
}

TEST(Legality, Rules) {
  EXPECT_EQ(illegality(pos("a1", "a1", "c3")), Illegality::kOverlap);
  EXPECT_EQ(illegality(pos("a1", "h8", "a2")), Illegality::kKingsAdjacent);
  EXPECT_TRUE(is_legal(pos("a1", "b3", "c2")));
  Position white = pos("a1", "c8", "c3");
  white.to_move = Side::kWhite;
  EXPECT_EQ(illegality(white), Illegality::kSideNotToMoveInCheck);
  EXPECT_THROW(require_legal(pos("a1", "h8", "b2")), IllegalPositionError);
}

TEST(Moves, OnlyMoveToA1) {
  EXPECT_EQ(sorted_moves(pos("c1", "c3", "a2")), std::vector<std::string>{"a1"});
  EXPECT_EQ(status(pos("c1", "c3", "a2")), Status::kOngoing);
}

TEST(Moves, Checkmate) {
  EXPECT_EQ(status(pos("c1", "a3", "a1")), Status::kCheckmate);
  EXPECT_TRUE(legal_black_moves(pos("c1", "a3", "a1")).destinations.empty());
}

TEST(Moves, StalemateAndCapture) {
  // a7 and b7 touch the white king, b7 and b8 are on the rook's file.
  EXPECT_EQ(status(pos("a6", "b1", "a8")), Status::kStalemate);
  // Undefended adjacent rook can be taken.
  const MoveSet ms = legal_black_moves(pos("h1", "b2", "a1"));
  EXPECT_TRUE(ms.captures_rook);
  EXPECT_EQ(status(pos("h1", "b2", "a1")), Status::kRookCapturable);
  // Defended rook cannot.
  EXPECT_FALSE(legal_black_moves(pos("c3", "b2", "a1")).captures_rook);
}

TEST(Moves, KingBlocksRook) {
  // Rook on a1, white king on a4: a5 and above are not attacked along the file.
  EXPECT_FALSE(rook_attacks(Square::parse("a1"), Square::parse("a4"), Square::parse("a6")));
  EXPECT_TRUE(rook_attacks(Square::parse("a1"), Square::parse("a4"), Square::parse("a3")));
  // The black king does not shield squares behind it.
  EXPECT_TRUE(rook_attacks(Square::parse("a1"), Square::parse("h8"), Square::parse("a8")));
}

TEST(Moves, WhiteMovesAreLegal) {
  for_each_legal([](const Position& p) {
    if (p.wk.index() % 9 != 0 || black_in_check(p)) return;  // sample
    Position w = p;
    w.to_move = Side::kWhite;
    for (const auto& m : legal_white_moves(w)) {
      Position next = w;
      (m.piece == Piece::kKing ? next.wk : next.wr) = m.to;
      next.to_move = Side::kBlack;
      ASSERT_TRUE(is_legal(next)) << w.str();
    }
  });
}

TEST(Symmetry, GroupLaws) {
  const auto all = SymmetryTransform::all();
  std::set<int> ids;
  for (auto t : all) ids.insert(t.id());
  EXPECT_EQ(ids.size(), 8u);
  for (auto a : all) {
    for (int i = 0; i < 64; ++i) {
      const Square s = Square::from_index(i);
      EXPECT_EQ(a.inverse().apply(a.apply(s)), s);
      for (auto b : all) EXPECT_EQ(a.then(b).apply(s), b.apply(a.apply(s)));
    }
  }
}

// Independent orbit minimum: smallest (wk, bk, wr) index triple over the
// eight images.
Position brute_canonical(const Position& p) {
  Position best = p;
  auto key = [](const Position& q) {
    return std::tuple(q.wk.index(), q.bk.index(), q.wr.index());
  };
  for (int id = 0; id < 8; ++id) {
    const Position q = SymmetryTransform::from_id(id).apply(p);
    if (key(q) < key(best)) best = q;
  }
  return best;
}

TEST(Symmetry, CanonicalizeProperties) {
  std::size_t canonical_count = 0;
  for_each_legal([&](const Position& p) {
    const Canonical c = canonicalize(p);
    ASSERT_EQ(c.position, brute_canonical(p)) << p.str();
    ASSERT_EQ(c.transform.apply(p), c.position);
    ASSERT_EQ(canonicalize(c.position).position, c.position);  // idempotent
    ASSERT_TRUE(is_legal(c.position));
    ASSERT_EQ(legal_black_moves(c.position).destinations.size(),
              legal_black_moves(p).destinations.size());
    ASSERT_EQ(status(c.position), status(p));
    if (c.position == p) ++canonical_count;
  });
  EXPECT_EQ(canonical_count, 28056u);
}

TEST(Symmetry, ImagesShareRepresentative) {
  const Position p = pos("b1", "h7", "e5");
  const Position rep = canonicalize(p).position;
  for (auto t : SymmetryTransform::all()) EXPECT_EQ(canonicalize(t.apply(p)).position, rep);
  const Position c = canonicalize(p).position;
  EXPECT_LE(c.wk.file, 4);
  EXPECT_LE(c.wk.rank, c.wk.file);
}

}  // namespace
}  // namespace krk
