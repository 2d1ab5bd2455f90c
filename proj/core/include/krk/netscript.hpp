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

// Parser and elaborator for the subset of the Net# topology language used to
// describe fully connected multi-layer networks:
//
//   script     := decl+
//   decl       := ( "input" NAME "auto"
//                 | "hidden" NAME "[" INT "]" "from" NAME "all"
//                 | "output" NAME "[" INT "]" activation "from" NAME "all" ) ";"
//   activation := "sigmoid"
//
// Keywords are case-sensitive; whitespace, newlines and // or /* */ comments
// are ignored. Other Net# constructs are rejected as unsupported.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "krk/errors.hpp"

namespace krk::netscript {

/// Parse failure at a 1-based line/column.
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& message);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

/// Well-formed script that does not describe a usable network.
class SemanticError : public Error {
 public:
  SemanticError(int line, int column, const std::string& message);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

enum class LayerKind { kInput, kHidden, kOutput };
enum class Activation { kNone, kSigmoid };

const char* to_string(Activation a) noexcept;

struct LayerDecl {
  LayerKind kind = LayerKind::kHidden;
  std::string name;
  std::optional<int> size;  // nullopt means "auto" (input only)
  Activation activation = Activation::kNone;
  std::optional<std::string> source;
  int line = 1;
  int column = 1;

  friend bool operator==(const LayerDecl& a, const LayerDecl& b) {
    return a.kind == b.kind && a.name == b.name && a.size == b.size &&
           a.activation == b.activation && a.source == b.source;
  }
};

struct NetScriptAst {
  std::vector<LayerDecl> layers;
  friend bool operator==(const NetScriptAst&, const NetScriptAst&) = default;
};

NetScriptAst parse(std::string_view text);

/// Canonical text form; parse(unparse(ast)) == ast.
std::string unparse(const NetScriptAst& ast);

/// Sum of the hidden layer sizes.
int total_hidden_nodes(const NetScriptAst& ast);

struct NetworkTopology {
  std::vector<int> sizes;                // input width first, classes last
  std::vector<Activation> activations;   // one per non-input layer

  std::size_t num_layers() const noexcept { return activations.size(); }
  friend bool operator==(const NetworkTopology&, const NetworkTopology&) = default;
};

/// Resolves "auto" to `input_width` and orders layers along the source
/// chain. Throws ShapeError when the output size is not `n_classes`.
NetworkTopology elaborate(const NetScriptAst& ast, int input_width, int n_classes,
                          Activation hidden_activation = Activation::kSigmoid);

/// Dense topology with the given hidden widths and sigmoid activations.
NetworkTopology dense_topology(int input_width, const std::vector<int>& hidden, int n_classes);

}  // namespace krk::netscript
