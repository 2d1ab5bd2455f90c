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

#include "krk/oracle.hpp"

#include <algorithm>
#include <tuple>

namespace krk {

namespace {

constexpr std::int8_t kUnknown = -2;

constexpr std::array<std::pair<int, int>, 8> kSteps{{
    {-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}}};
constexpr std::array<std::pair<int, int>, 4> kRays{{{0, -1}, {-1, 0}, {1, 0}, {0, 1}}};

}  // namespace

Position Tablebase::position_at(std::size_t slot, Side to_move) noexcept {
  const int bk = static_cast<int>(slot % 64);
  const int wr = static_cast<int>((slot / 64) % 64);
  const int wk = static_cast<int>(slot / 4096);
  return Position{Square::from_index(wk), Square::from_index(wr), Square::from_index(bk), to_move};
}

std::optional<GameValue> Tablebase::value(const Position& p) const noexcept {
  if (!p.wk.valid() || !p.wr.valid() || !p.bk.valid()) return std::nullopt;
  const auto v = raw(p.to_move)[slot(p.wk, p.wr, p.bk)];
  if (v == kIllegal) return std::nullopt;
  if (v == kDraw) return GameValue::draw();
  return GameValue::win(v);
}

int Tablebase::max_black_depth() const noexcept {
  return *std::max_element(black_.begin(), black_.end());
}

int Tablebase::min_black_depth() const noexcept {
  int best = 127;
  for (auto v : black_) {
    if (v >= 0) best = std::min<int>(best, v);
  }
  return best;
}

struct TablebaseBuilder {
  Tablebase tb;
  std::vector<std::uint8_t> pending;  // unresolved black moves per slot

  void run(SolveTrace* trace) {
    tb.black_.assign(Tablebase::kSlots, kUnknown);
    tb.white_.assign(Tablebase::kSlots, kUnknown);
    pending.assign(Tablebase::kSlots, 0);

    std::vector<std::size_t> black_frontier;
    for (std::size_t s = 0; s < Tablebase::kSlots; ++s) {
      const Position b = Tablebase::position_at(s, Side::kBlack);
      if (!is_legal(b)) {
        tb.black_[s] = Tablebase::kIllegal;
      } else {
        const MoveSet moves = legal_black_moves(b);
        if (moves.destinations.empty()) {
          if (black_in_check(b)) {
            tb.black_[s] = 0;
            black_frontier.push_back(s);
          } else {
            tb.black_[s] = Tablebase::kDraw;
          }
        } else if (moves.captures_rook) {
          // The capture leaves bare kings.
          tb.black_[s] = Tablebase::kDraw;
        } else {
          pending[s] = static_cast<std::uint8_t>(moves.destinations.size());
        }
      }
      if (!is_legal(Tablebase::position_at(s, Side::kWhite))) tb.white_[s] = Tablebase::kIllegal;
    }

    if (trace) {
      trace->layer_sizes.push_back(black_frontier.size());
      trace->black_win_discovery.assign(black_frontier.size(), 0);
    }

    std::vector<std::size_t> white_frontier;
    for (int depth = 1; !black_frontier.empty(); ++depth) {
      white_frontier.clear();
      for (std::size_t s : black_frontier) expand_white_predecessors(s, depth, white_frontier);
      // Deterministic layer order regardless of discovery order.
      std::sort(white_frontier.begin(), white_frontier.end());

      black_frontier.clear();
      for (std::size_t s : white_frontier) release_black_predecessors(s, depth, black_frontier);
      std::sort(black_frontier.begin(), black_frontier.end());
      if (trace && !black_frontier.empty()) {
        trace->layer_sizes.push_back(black_frontier.size());
        trace->black_win_discovery.insert(trace->black_win_discovery.end(), black_frontier.size(),
                                          static_cast<std::int8_t>(depth));
      }
    }

    for (std::size_t s = 0; s < Tablebase::kSlots; ++s) {
      if (tb.black_[s] == kUnknown) tb.black_[s] = Tablebase::kDraw;
      if (tb.white_[s] == kUnknown) tb.white_[s] = Tablebase::kDraw;
    }
  }

  // White-to-move positions one white move before the black-to-move win at
  // `s`; the first one reached is the shortest mate.
  void expand_white_predecessors(std::size_t s, int depth, std::vector<std::size_t>& out) {
    const Position p = Tablebase::position_at(s, Side::kBlack);
    auto visit = [&](Square wk, Square wr) {
      const std::size_t prev = Tablebase::slot(wk, wr, p.bk);
      if (tb.white_[prev] == kUnknown) {
        tb.white_[prev] = static_cast<std::int8_t>(depth);
        out.push_back(prev);
      }
    };
    for (auto [df, dr] : kSteps) {
      const Square from{p.wk.file + df, p.wk.rank + dr};
      if (!from.valid() || from == p.wr || from == p.bk || is_adjacent(from, p.bk)) continue;
      visit(from, p.wr);  // illegal slots are never kUnknown
    }
    for (auto [df, dr] : kRays) {
      for (Square from{p.wr.file + df, p.wr.rank + dr}; from.valid();
           from = Square{from.file + df, from.rank + dr}) {
        if (from == p.wk || from == p.bk) break;
        visit(p.wk, from);
      }
    }
  }

  // Black-to-move positions one king step before the white-to-move win at
  // `s`; each loses a pending move and becomes a win once none remain.
  void release_black_predecessors(std::size_t s, int depth, std::vector<std::size_t>& out) {
    const Position p = Tablebase::position_at(s, Side::kWhite);
    for (auto [df, dr] : kSteps) {
      const Square from{p.bk.file + df, p.bk.rank + dr};
      if (!from.valid() || from == p.wk || from == p.wr || is_adjacent(from, p.wk)) continue;
      const std::size_t prev = Tablebase::slot(p.wk, p.wr, from);
      if (tb.black_[prev] != kUnknown) continue;
      if (--pending[prev] == 0) {
        tb.black_[prev] = static_cast<std::int8_t>(depth);
        out.push_back(prev);
      }
    }
  }
};

Tablebase solve(SolveTrace* trace) {
  TablebaseBuilder builder;
  builder.run(trace);
  return std::move(builder.tb);
}

ClassLabel classify(const Tablebase& tb, const Position& p) {
  Position q = p;
  q.to_move = Side::kBlack;
  require_legal(q);
  const auto v = tb.value(canonicalize(q).position);
  return ClassLabel::from_value(*v);
}

std::vector<Record> export_dataset(const Tablebase& tb) {
  std::vector<Record> out;
  const auto black = tb.raw(Side::kBlack);
  for (std::size_t s = 0; s < Tablebase::kSlots; ++s) {
    if (black[s] == Tablebase::kIllegal) continue;
    const Position p = Tablebase::position_at(s, Side::kBlack);
    if (!is_canonical(p)) continue;
    out.push_back({p, ClassLabel::from_value(*tb.value(p))});
  }
  auto key = [](const Record& r) {
    const Position& p = r.position;
    return std::tuple{r.label.index(), p.wk.file, p.wk.rank, p.wr.file, p.wr.rank, p.bk.file,
                      p.bk.rank};
  };
  std::sort(out.begin(), out.end(), [&](const Record& a, const Record& b) { return key(a) < key(b); });
  return out;
}

std::array<long long, kNumClasses> VerificationReport::histogram_delta() const noexcept {
  std::array<long long, kNumClasses> d{};
  for (std::size_t c = 0; c < d.size(); ++c) {
    d[c] = static_cast<long long>(oracle_histogram[c]) - static_cast<long long>(dataset_histogram[c]);
  }
  return d;
}

VerificationReport verify_against_dataset(const Tablebase& tb, std::span<const Record> records) {
  VerificationReport report;
  for (const auto& r : records) {
    Position p = r.position;
    p.to_move = Side::kBlack;
    if (!p.wk.valid() || !p.wr.valid() || !p.bk.valid() || !is_legal(p)) {
      throw UnknownPosition("record names an illegal position: " + p.str());
    }
    const ClassLabel oracle = classify(tb, p);
    ++report.compared;
    ++report.dataset_histogram[static_cast<std::size_t>(r.label.index())];
    ++report.oracle_histogram[static_cast<std::size_t>(oracle.index())];
    if (!is_canonical(p)) ++report.non_canonical;
    if (oracle == r.label) {
      ++report.agreed;
    } else {
      report.disagreements.push_back({p, r.label, oracle});
    }
  }
  return report;
}

}  // namespace krk
