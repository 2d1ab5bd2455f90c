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

#include "krk/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "krk/rng.hpp"

namespace krk {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' ||
                        s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

int parse_file_letter(std::string_view f) {
  if (f.size() != 1 || f[0] < 'a' || f[0] > 'h') {
    throw FormatError("bad file letter '" + std::string(f) + "' (expected a..h)");
  }
  return f[0] - 'a' + 1;
}

int parse_rank_digit(std::string_view r) {
  if (r.size() != 1 || r[0] < '1' || r[0] > '8') {
    throw FormatError("bad rank '" + std::string(r) + "' (expected 1..8)");
  }
  return r[0] - '0';
}

}  // namespace

Record parse_record(std::string_view line) {
  std::array<std::string_view, 7> fields;
  std::size_t n = 0;
  std::string_view rest = line;
  while (true) {
    const auto comma = rest.find(',');
    if (n == fields.size()) throw FormatError("too many fields (expected 7)");
    fields[n++] = trim(rest.substr(0, comma));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (n != fields.size()) {
    throw FormatError("expected 7 comma-separated fields, got " + std::to_string(n));
  }
  Record r;
  r.position.wk = Square{parse_file_letter(fields[0]), parse_rank_digit(fields[1])};
  r.position.wr = Square{parse_file_letter(fields[2]), parse_rank_digit(fields[3])};
  r.position.bk = Square{parse_file_letter(fields[4]), parse_rank_digit(fields[5])};
  r.position.to_move = Side::kBlack;
  const auto label = ClassLabel::parse(fields[6]);
  if (!label) throw FormatError("unknown label '" + std::string(fields[6]) + "'");
  r.label = *label;
  require_legal(r.position);
  return r;
}

std::string format_record(const Record& r) {
  std::string out;
  out.reserve(24);
  for (Square s : {r.position.wk, r.position.wr, r.position.bk}) {
    out += static_cast<char>('a' + s.file - 1);
    out += ',';
    out += static_cast<char>('0' + s.rank);
    out += ',';
  }
  out += r.label.name();
  return out;
}

std::vector<Record> load_dataset(std::istream& in) {
  std::vector<Record> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(parse_record(line));
    } catch (const IllegalPositionError& e) {
      throw IllegalPositionError(e.reason(), "line " + std::to_string(line_no) + ": " + e.what());
    } catch (const FormatError& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Record> load_dataset_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open dataset file '" + path + "'");
  return load_dataset(in);
}

void write_dataset(std::ostream& out, std::span<const Record> records) {
  for (const auto& r : records) out << format_record(r) << '\n';
}

std::string EncodingScheme::name() const {
  std::string n = kind == Encoding::kOrdinal ? "ordinal"
                  : kind == Encoding::kOneHot ? "onehot"
                                              : "mixed";
  if (normalize == Normalization::kMinMax) n += "+minmax";
  return n;
}

EncodingScheme EncodingScheme::parse(std::string_view name) {
  EncodingScheme s;
  std::string_view base = name;
  s.normalize = Normalization::kNone;
  if (const auto plus = name.find('+'); plus != std::string_view::npos) {
    if (name.substr(plus + 1) != "minmax") {
      throw ConfigError("unknown normalization in '" + std::string(name) + "'");
    }
    s.normalize = Normalization::kMinMax;
    base = name.substr(0, plus);
  }
  if (base == "ordinal") {
    s.kind = Encoding::kOrdinal;
  } else if (base == "onehot") {
    s.kind = Encoding::kOneHot;
  } else if (base == "mixed") {
    s.kind = Encoding::kMixed;
  } else {
    throw ConfigError("unknown encoding '" + std::string(name) + "'");
  }
  return s;
}

std::array<int, kNumAttributes> attributes(const Position& p) noexcept {
  return {p.wk.file, p.wk.rank, p.wr.file, p.wr.rank, p.bk.file, p.bk.rank};
}

FeatureEncoder::FeatureEncoder(EncodingScheme scheme) : scheme_(scheme) {}

FeatureEncoder FeatureEncoder::fit(EncodingScheme scheme, std::span<const Record> records) {
  FeatureEncoder enc(scheme);
  if (enc.uses_ranges() && !records.empty()) {
    enc.min_.fill(8);
    enc.max_.fill(1);
    for (const auto& r : records) {
      const auto a = attributes(r.position);
      for (int c = 0; c < kNumAttributes; ++c) {
        enc.min_[c] = std::min(enc.min_[c], a[c]);
        enc.max_[c] = std::max(enc.max_[c], a[c]);
      }
    }
  }
  return enc;
}

void FeatureEncoder::encode(const Position& p, std::span<double> out) const {
  if (out.size() != static_cast<std::size_t>(width())) {
    throw ShapeError("feature row width " + std::to_string(out.size()) + " != " +
                     std::to_string(width()));
  }
  const auto a = attributes(p);
  if (scheme_.kind == Encoding::kOneHot) {
    std::fill(out.begin(), out.end(), 0.0);
    for (int c = 0; c < kNumAttributes; ++c) out[static_cast<std::size_t>(c * 8 + a[c] - 1)] = 1.0;
    return;
  }
  auto scaled = [&](int c) {
    if (scheme_.normalize != Normalization::kMinMax) return static_cast<double>(a[c]);
    const int span = max_[c] - min_[c];
    return span > 0 ? static_cast<double>(a[c] - min_[c]) / span : 0.0;
  };
  if (scheme_.kind == Encoding::kMixed) {
    // [file one-hot (8), rank] per piece
    std::fill(out.begin(), out.end(), 0.0);
    for (int piece = 0; piece < 3; ++piece) {
      const auto base = static_cast<std::size_t>(piece * 9);
      out[base + static_cast<std::size_t>(a[2 * piece] - 1)] = 1.0;
      out[base + 8] = scaled(2 * piece + 1);
    }
    return;
  }
  for (int c = 0; c < kNumAttributes; ++c) out[static_cast<std::size_t>(c)] = scaled(c);
}

std::vector<double> FeatureEncoder::encode(const Position& p) const {
  std::vector<double> row(static_cast<std::size_t>(width()));
  encode(p, row);
  return row;
}

std::array<int, kNumAttributes> FeatureEncoder::decode_ordinal(std::span<const double> row) const {
  if (scheme_.kind != Encoding::kOrdinal || row.size() != kNumAttributes) {
    throw ShapeError("decode_ordinal needs a 6-wide ordinal row");
  }
  std::array<int, kNumAttributes> out{};
  for (int c = 0; c < kNumAttributes; ++c) {
    double v = row[static_cast<std::size_t>(c)];
    if (scheme_.normalize == Normalization::kMinMax) v = min_[c] + v * (max_[c] - min_[c]);
    out[c] = static_cast<int>(std::lround(v));
  }
  return out;
}

std::string FeatureEncoder::fingerprint() const {
  std::string fp = scheme_.name();
  if (uses_ranges()) {
    fp += '[';
    for (int c = 0; c < kNumAttributes; ++c) {
      if (c) fp += ';';
      fp += std::to_string(min_[c]) + ':' + std::to_string(max_[c]);
    }
    fp += ']';
  }
  return fp;
}

nlohmann::json FeatureEncoder::to_json() const {
  return {{"scheme", scheme_.name()}, {"min", min_}, {"max", max_}};
}

FeatureEncoder FeatureEncoder::from_json(const nlohmann::json& j) {
  FeatureEncoder enc(EncodingScheme::parse(j.at("scheme").get<std::string>()));
  enc.min_ = j.at("min").get<std::array<int, kNumAttributes>>();
  enc.max_ = j.at("max").get<std::array<int, kNumAttributes>>();
  return enc;
}

EncodedMatrix EncodedMatrix::from_rows(const std::vector<std::vector<double>>& rows,
                                       const std::vector<int>& labels, int num_classes) {
  if (rows.size() != labels.size()) throw LengthMismatch("rows and labels differ in length");
  EncodedMatrix m;
  m.rows = rows.size();
  m.cols = rows.empty() ? 0 : rows.front().size();
  m.num_classes = num_classes;
  m.features.reserve(m.rows * m.cols);
  for (const auto& r : rows) {
    if (r.size() != m.cols) throw ShapeError("ragged feature rows");
    m.features.insert(m.features.end(), r.begin(), r.end());
  }
  m.labels = labels;
  return m;
}

EncodedMatrix EncodedMatrix::subset(std::span<const std::size_t> indices) const {
  EncodedMatrix m;
  m.rows = indices.size();
  m.cols = cols;
  m.num_classes = num_classes;
  m.encoder = encoder;
  m.features.reserve(m.rows * cols);
  m.labels.reserve(m.rows);
  for (std::size_t i : indices) {
    const auto r = row(i);
    m.features.insert(m.features.end(), r.begin(), r.end());
    m.labels.push_back(labels[i]);
  }
  return m;
}

std::uint64_t EncodedMatrix::fingerprint() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const void* data, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  feed(&rows, sizeof rows);
  feed(&cols, sizeof cols);
  feed(features.data(), features.size() * sizeof(double));
  feed(labels.data(), labels.size() * sizeof(int));
  return h;
}

EncodedMatrix encode(std::span<const Record> records, EncodingScheme scheme) {
  if (records.empty()) throw ShapeError("cannot encode an empty record list");
  EncodedMatrix m;
  m.encoder = FeatureEncoder::fit(scheme, records);
  m.rows = records.size();
  m.cols = static_cast<std::size_t>(scheme.width());
  m.features.resize(m.rows * m.cols);
  m.labels.reserve(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) {
    m.encoder.encode(records[i].position, m.row(i));
    m.labels.push_back(records[i].label.index());
  }
  return m;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::span<const int> labels, int num_classes, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw ConfigError("train_fraction must lie in (0, 1)");
  }
  const std::size_t n = labels.size();
  const auto train_total = static_cast<std::size_t>(std::floor(static_cast<double>(n) * spec.train_fraction));
  Rng rng(spec.seed);
  std::vector<std::size_t> train, test;

  if (!spec.stratified) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(order));
    train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(train_total));
    test.assign(order.begin() + static_cast<std::ptrdiff_t>(train_total), order.end());
  } else {
    std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(num_classes));
    for (std::size_t i = 0; i < n; ++i) {
      const int c = labels[i];
      if (c < 0 || c >= num_classes) throw ShapeError("label out of range in split");
      by_class[static_cast<std::size_t>(c)].push_back(i);
    }
    // Largest-remainder apportionment of the train quota.
    std::vector<std::size_t> quota(by_class.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < by_class.size(); ++c) {
      const double exact = static_cast<double>(by_class[c].size()) * spec.train_fraction;
      quota[c] = static_cast<std::size_t>(std::floor(exact));
      assigned += quota[c];
      remainders.emplace_back(exact - std::floor(exact), c);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t k = 0; assigned < train_total && k < remainders.size(); ++k) {
      const std::size_t c = remainders[k].second;
      if (quota[c] < by_class[c].size()) {
        ++quota[c];
        ++assigned;
      }
    }
    for (std::size_t c = 0; c < by_class.size(); ++c) {
      if (!by_class[c].empty() && quota[c] == 0) {
        throw DegenerateSplit("class " + std::to_string(c) + " gets no training rows");
      }
      rng.shuffle(std::span<std::size_t>(by_class[c]));
      train.insert(train.end(), by_class[c].begin(),
                   by_class[c].begin() + static_cast<std::ptrdiff_t>(quota[c]));
      test.insert(test.end(), by_class[c].begin() + static_cast<std::ptrdiff_t>(quota[c]),
                  by_class[c].end());
    }
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
  }
  return {std::move(train), std::move(test)};
}

std::pair<EncodedMatrix, EncodedMatrix> split(const EncodedMatrix& matrix, const SplitSpec& spec) {
  auto [train, test] = split_indices(matrix.labels, matrix.num_classes, spec);
  return {matrix.subset(train), matrix.subset(test)};
}

std::vector<ClassCount> statistics(std::span<const Record> records) {
  std::vector<ClassCount> out;
  out.reserve(kNumClasses);
  for (int c = 0; c < kNumClasses; ++c) out.push_back({ClassLabel::from_index(c), 0, 0.0});
  for (const auto& r : records) ++out[static_cast<std::size_t>(r.label.index())].count;
  const double n = static_cast<double>(records.size());
  if (n > 0) {
    for (auto& c : out) c.percent = static_cast<double>(c.count) / n * 100.0;
  }
  return out;
}

std::string statistics_csv(std::span<const ClassCount> stats) {
  std::ostringstream out;
  out << "label,count,percent\n";
  out.setf(std::ios::fixed);
  out.precision(2);
  for (const auto& s : stats) out << s.label.name() << ',' << s.count << ',' << s.percent << '\n';
  return out.str();
}

nlohmann::json statistics_json(std::span<const ClassCount> stats) {
  auto rows = nlohmann::json::array();
  std::size_t total = 0;
  for (const auto& s : stats) {
    // Two decimals, as displayed in the statistics table.
    const double pct = std::round(s.percent * 100.0) / 100.0;
    rows.push_back({{"label", std::string(s.label.name())}, {"count", s.count}, {"percent", pct}});
    total += s.count;
  }
  return {{"total", total}, {"classes", rows}};
}

}  // namespace krk
