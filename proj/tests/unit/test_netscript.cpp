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

#include <random>

#include <gtest/gtest.h>

#include "krk/harness.hpp"
#include "krk/netscript.hpp"

namespace krk::netscript {
namespace {

TEST(NetScript, ReferenceScriptsNodeTotals) {
  const int expected[] = {200, 400, 600, 800, 3000, 9000, 600, 3000, 600, 600};
  const auto rows = ReferenceTable::bundled().with_prefix("table5/");
  ASSERT_EQ(rows.size(), 10u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto ast = parse(rows[i]->extra["netscript"].get<std::string>());
    EXPECT_EQ(total_hidden_nodes(ast), expected[i]) << rows[i]->key;
    const auto topo = elaborate(ast, 27, 18);
    EXPECT_EQ(topo.sizes.front(), 27);
    EXPECT_EQ(topo.sizes.back(), 18);
  }
}

TEST(NetScript, ParsesCommentsAndLayout) {
  const auto ast = parse(
      "// three layers\n"
      "input Data auto;\n"
      "/* first */ hidden H1 [1000] from Data all;\n"
      "hidden H2 [1000] from H1 all;\n"
      "hidden H3 [1000] from H2 all;\n"
      "output Result [18] sigmoid from H3 all;\n");
  ASSERT_EQ(ast.layers.size(), 5u);
  EXPECT_EQ(ast.layers[1].line, 3);
  EXPECT_EQ(ast.layers[1].column, 13);
  const auto topo = elaborate(ast, 48, 18);
  EXPECT_EQ(topo.sizes, (std::vector<int>{48, 1000, 1000, 1000, 18}));
  EXPECT_EQ(topo.num_layers(), 4u);
  EXPECT_EQ(topo.activations.back(), Activation::kSigmoid);
}

struct BadCase {
  const char* text;
  int line;
  int column;
  bool syntax;
};

TEST(NetScript, PositionedDiagnostics) {
  const BadCase cases[] = {
      {"input Data auto;\nhidden H [100 from Data all;\noutput O [18] sigmoid from H all;", 2, 15, true},
      {"input Data auto;\nhidden H [100] from Data all\noutput O [18] sigmoid from H all;", 3, 1, true},
      {"input Data auto;\nhidden H [100] from Data all;\noutput O [18] softmax from H all;", 3, 15, true},
      {"input Data auto;\nconst X = 3;", 2, 1, true},
      {"input Data auto;\nhidden H [100] from Missing all;\noutput O [18] sigmoid from H all;", 2, 1,
       false},
      {"input Data auto;\nhidden H [0] from Data all;\noutput O [18] sigmoid from H all;", 2, 1, false},
      {"input Data auto;\nhidden H [10] from Data all;\nhidden H [10] from H all;\n"
       "output O [18] sigmoid from H all;",
       3, 1, false},
      {"/* open", 1, 1, true},
  };
  for (const auto& c : cases) {
    try {
      parse(c.text);
      ADD_FAILURE() << "accepted: " << c.text;
    } catch (const SyntaxError& e) {
      EXPECT_TRUE(c.syntax) << e.what();
      EXPECT_EQ(e.line(), c.line) << e.what();
      EXPECT_EQ(e.column(), c.column) << e.what();
      EXPECT_EQ(std::string(e.what()).rfind(std::to_string(c.line) + ":", 0), 0u);
    } catch (const SemanticError& e) {
      EXPECT_FALSE(c.syntax) << e.what();
      EXPECT_EQ(e.line(), c.line) << e.what();
      EXPECT_EQ(e.column(), c.column) << e.what();
    }
  }
}

TEST(NetScript, OutputWidthMismatch) {
  const auto ast = parse("input D auto; hidden H [5] from D all; output O [10] sigmoid from H all;");
  EXPECT_THROW(elaborate(ast, 6, 18), ShapeError);
}

TEST(NetScript, RoundTripRandomScripts) {
  std::mt19937 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int depth = 1 + static_cast<int>(gen() % 5);
    std::string text = "input In auto;\n";
    std::string prev = "In";
    for (int h = 0; h < depth; ++h) {
      const std::string name = "L" + std::to_string(h);
      text += "hidden " + name + " [" + std::to_string(1 + gen() % 4000) + "] from " + prev +
              " all;\n";
      prev = name;
    }
    text += "output Out [18] sigmoid from " + prev + " all;";
    const auto ast = parse(text);
    EXPECT_EQ(parse(unparse(ast)), ast);
    EXPECT_EQ(unparse(parse(unparse(ast))), unparse(ast));
  }
}

TEST(NetScript, DenseTopology) {
  const auto t = dense_topology(27, {100}, 18);
  EXPECT_EQ(t.sizes, (std::vector<int>{27, 100, 18}));
  EXPECT_EQ(t.activations.size(), 2u);
}

}  // namespace
}  // namespace krk::netscript
