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

#include <numeric>
#include <set>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "krk/data.hpp"
#include "krk/errors.hpp"
#include "krk/oracle.hpp"

namespace krk {
namespace {

const std::vector<Record>& records() {
  static const std::vector<Record> r = export_dataset(solve());
  return r;
}

TEST(Records, ParseFormatRoundTrip) {
  const Record r = parse_record("a,1,b,3,c,2,draw");
  EXPECT_EQ(r.position.wk.str(), "a1");
  EXPECT_EQ(r.position.wr.str(), "b3");
  EXPECT_EQ(r.position.bk.str(), "c2");
  EXPECT_EQ(r.label.name(), "draw");
  EXPECT_EQ(format_record(r), "a,1,b,3,c,2,draw");
  EXPECT_EQ(format_record(parse_record(" d, 1, f, 5, e, 3 , fourteen\r")), "d,1,f,5,e,3,fourteen");
}

TEST(Records, Errors) {
  EXPECT_THROW(parse_record("a,1,b,3,c,2"), FormatError);
  EXPECT_THROW(parse_record("a,1,b,3,c,2,draw,x"), FormatError);
  EXPECT_THROW(parse_record("z,1,b,3,c,2,draw"), FormatError);
  EXPECT_THROW(parse_record("a,9,b,3,c,2,draw"), FormatError);
  EXPECT_THROW(parse_record("a,1,b,3,c,2,seventeen"), FormatError);
  EXPECT_THROW(parse_record("a,1,b,3,a,2,draw"), IllegalPositionError);
  std::istringstream in("a,1,b,3,c,2,draw\n\na,1,b,3,c,2,nope\n");
  try {
    load_dataset(in);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Records, WriteLoadRoundTrip) {
  std::ostringstream out;
  write_dataset(out, records());
  std::istringstream in(out.str());
  EXPECT_EQ(load_dataset(in), records());
}

TEST(Encoding, NamesAndWidths) {
  EXPECT_EQ(EncodingScheme::parse("ordinal").width(), 6);
  EXPECT_EQ(EncodingScheme::parse("onehot").width(), 48);
  EXPECT_EQ(EncodingScheme::parse("mixed+minmax").width(), 27);
  for (const char* n : {"ordinal", "ordinal+minmax", "onehot", "mixed", "mixed+minmax"}) {
    EXPECT_EQ(EncodingScheme::parse(EncodingScheme::parse(n).name()), EncodingScheme::parse(n));
  }
  EXPECT_THROW(EncodingScheme::parse("binary"), ConfigError);
}

TEST(Encoding, OneHotHasSixOnes) {
  const FeatureEncoder enc(EncodingScheme::parse("onehot"));
  for (std::size_t i = 0; i < records().size(); i += 97) {
    const auto x = enc.encode(records()[i].position);
    const auto attrs = attributes(records()[i].position);
    ASSERT_EQ(std::accumulate(x.begin(), x.end(), 0.0), 6.0);
    for (int a = 0; a < kNumAttributes; ++a) ASSERT_EQ(x[a * 8 + attrs[a] - 1], 1.0);
  }
}

TEST(Encoding, MixedLayout) {
  const FeatureEncoder enc(EncodingScheme::parse("mixed"));
  const auto x = enc.encode(parse_record("b,1,h,7,e,5,draw").position);
  ASSERT_EQ(x.size(), 27u);
  EXPECT_EQ(x[1], 1.0);   // wk file b
  EXPECT_EQ(x[8], 1.0);   // wk rank
  EXPECT_EQ(x[9 + 7], 1.0);
  EXPECT_EQ(x[17], 7.0);
  EXPECT_EQ(x[18 + 4], 1.0);
  EXPECT_EQ(x[26], 5.0);
}

TEST(Encoding, MinMaxInverse) {
  const auto enc = FeatureEncoder::fit(EncodingScheme::parse("ordinal+minmax"), records());
  for (std::size_t i = 0; i < records().size(); i += 13) {
    const auto x = enc.encode(records()[i].position);
    for (double v : x) ASSERT_TRUE(v >= 0.0 && v <= 1.0);
    ASSERT_EQ(enc.decode_ordinal(x), attributes(records()[i].position));
  }
}

TEST(Encoding, FitAndFingerprint) {
  // Canonical rows keep the white king in files a..d.
  const auto enc = FeatureEncoder::fit(EncodingScheme::parse("ordinal+minmax"), records());
  const auto raw = FeatureEncoder(EncodingScheme::parse("ordinal+minmax"));
  EXPECT_NE(enc.fingerprint(), raw.fingerprint());
  EXPECT_EQ(FeatureEncoder::from_json(enc.to_json()), enc);
  EXPECT_EQ(FeatureEncoder::from_json(enc.to_json()).fingerprint(), enc.fingerprint());
  std::vector<double> narrow(5);
  EXPECT_THROW(enc.encode(records()[0].position, std::span<double>(narrow)), ShapeError);
}

TEST(Encoding, MatrixFingerprintStable) {
  const auto a = encode(records(), EncodingScheme::parse("onehot"));
  const auto b = encode(records(), EncodingScheme::parse("onehot"));
  EXPECT_EQ(a.fingerprint(), b.fingerprint());
  EXPECT_EQ(a.rows, 28056u);
  EXPECT_EQ(a.cols, 48u);
  EXPECT_THROW(encode({}, EncodingScheme{}), ShapeError);
}

TEST(Split, Invariants) {
  const auto m = encode(records(), EncodingScheme::parse("ordinal"));
  for (std::uint64_t seed : {1u, 2u, 20210306u}) {
    SplitSpec spec;
    spec.seed = seed;
    const auto [train, test] = split_indices(m.labels, m.num_classes, spec);
    EXPECT_EQ(train.size(), static_cast<std::size_t>(28056 * 0.7));
    EXPECT_EQ(train.size() + test.size(), m.rows);
    std::set<std::size_t> all(train.begin(), train.end());
    all.insert(test.begin(), test.end());
    EXPECT_EQ(all.size(), m.rows);
    // Stratified: per-class train share within one row of the exact quota.
    std::vector<double> total(kNumClasses), in_train(kNumClasses);
    for (auto l : m.labels) ++total[l];
    for (auto i : train) ++in_train[m.labels[i]];
    for (int c = 0; c < kNumClasses; ++c) {
      EXPECT_LE(std::abs(in_train[c] - total[c] * 0.7), 1.0) << c;
    }
  }
  SplitSpec spec;
  EXPECT_EQ(split_indices(m.labels, m.num_classes, spec), split_indices(m.labels, m.num_classes, spec));
  spec.train_fraction = 1.0;
  EXPECT_THROW(split_indices(m.labels, m.num_classes, spec), ConfigError);
}

TEST(Split, DegenerateClass) {
  const std::vector<int> labels = {0, 0, 0, 0, 1};
  SplitSpec spec;
  spec.train_fraction = 0.5;
  EXPECT_THROW(split_indices(labels, 2, spec), DegenerateSplit);
}

TEST(Stats, DrawRowAndTotals) {
  const auto s = statistics(records());
  EXPECT_EQ(s[0].label.name(), "draw");
  EXPECT_EQ(s[0].count, 2796u);
  EXPECT_NEAR(s[0].percent, 9.97, 0.005);
  double sum = 0.0;
  for (const auto& c : s) sum += c.percent;
  EXPECT_NEAR(sum, 100.0, 1e-9);
  const auto j = statistics_json(s);
  EXPECT_EQ(j["total"], 28056);
  EXPECT_EQ(j["classes"].size(), 18u);
  EXPECT_EQ(j["classes"][0]["percent"], 9.97);
  EXPECT_EQ(statistics_csv(s).substr(0, 35), "label,count,percent\ndraw,2796,9.97\n");
}

}  // namespace
}  // namespace krk
