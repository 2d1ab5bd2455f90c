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

#include "krk/netscript.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>
#include <map>

namespace krk::netscript {

namespace {

std::string positioned(int line, int column, const std::string& message) {
  return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

// Net# words that exist in the full language but not in this subset.
constexpr std::array<std::string_view, 24> kUnsupportedWords{
    "const",   "preprocess", "convolve", "pool",    "response", "norm",
    "bundle",  "sharing",    "share",    "random",  "sparse",   "where",
    "tanh",    "linear",     "softmax",  "rlinear", "brlinear", "sqrt",
    "abs",     "max",        "avg",      "filter",  "map",      "stride"};

bool is_unsupported_word(std::string_view w) {
  return std::find(kUnsupportedWords.begin(), kUnsupportedWords.end(), w) !=
         kUnsupportedWords.end();
}

enum class Tok { kIdent, kInt, kLBracket, kRBracket, kSemicolon, kOther, kEnd };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blank();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::kEnd, "", line_, col_});
        return out;
      }
      const int line = line_, col = col_;
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string word;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '_')) {
          word += advance();
        }
        out.push_back({Tok::kIdent, word, line, col});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string digits;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          digits += advance();
        }
        out.push_back({Tok::kInt, digits, line, col});
      } else {
        advance();
        const Tok kind = c == '[' ? Tok::kLBracket
                         : c == ']' ? Tok::kRBracket
                         : c == ';' ? Tok::kSemicolon
                                    : Tok::kOther;
        out.push_back({kind, std::string(1, c), line, col});
      }
    }
  }

 private:
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
        const int line = line_, col = col_;
        advance();
        advance();
        while (pos_ + 1 < src_.size() && !(src_[pos_] == '*' && src_[pos_ + 1] == '/')) advance();
        if (pos_ + 1 >= src_.size()) throw SyntaxError(line, col, "unterminated comment");
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::kEnd:
      return "end of script";
    case Tok::kIdent:
      return "'" + t.text + "'";
    case Tok::kInt:
      return "number " + t.text;
    default:
      return "'" + t.text + "'";
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  NetScriptAst run() {
    NetScriptAst ast;
    while (peek().kind != Tok::kEnd) ast.layers.push_back(declaration());
    if (ast.layers.empty()) throw SyntaxError(peek().line, peek().column, "empty script");
    return ast;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const Token& t, const std::string& expected) {
    if (t.kind == Tok::kIdent && is_unsupported_word(t.text)) {
      throw SyntaxError(t.line, t.column, "unsupported construct '" + t.text + "'");
    }
    throw SyntaxError(t.line, t.column, "expected " + expected + ", found " + describe(t));
  }

  void keyword(std::string_view word) {
    const Token& t = peek();
    if (t.kind != Tok::kIdent || t.text != word) fail(t, "'" + std::string(word) + "'");
    take();
  }

  void punct(Tok kind, std::string_view text) {
    const Token& t = peek();
    if (t.kind != kind) fail(t, "'" + std::string(text) + "'");
    take();
  }

  std::string name() {
    const Token& t = peek();
    if (t.kind != Tok::kIdent) fail(t, "a layer name");
    return take().text;
  }

  int bracketed_size() {
    punct(Tok::kLBracket, "[");
    const Token& t = peek();
    if (t.kind != Tok::kInt) fail(t, "a layer size");
    if (t.text.size() > 9) throw SyntaxError(t.line, t.column, "layer size too large");
    const int size = std::stoi(take().text);
    punct(Tok::kRBracket, "]");
    return size;
  }

  std::string source() {
    keyword("from");
    std::string src = name();
    const Token& t = peek();
    if (t.kind == Tok::kIdent && t.text == "all") {
      take();
    } else if (t.kind == Tok::kIdent &&
               (t.text == "convolve" || t.text == "pool" || t.text == "response" ||
                t.text == "random" || t.text == "sparse" || t.text == "where")) {
      throw SyntaxError(t.line, t.column, "unsupported construct '" + t.text +
                                              "' (only 'all' connectivity is supported)");
    } else {
      fail(t, "'all'");
    }
    return src;
  }

  LayerDecl declaration() {
    const Token head = peek();
    LayerDecl d;
    d.line = head.line;
    d.column = head.column;
    if (head.kind != Tok::kIdent) fail(head, "'input', 'hidden' or 'output'");
    if (head.text == "input") {
      take();
      d.kind = LayerKind::kInput;
      d.name = name();
      const Token& t = peek();
      if (t.kind == Tok::kLBracket) {
        throw SyntaxError(t.line, t.column,
                          "unsupported construct: explicit input size (use 'auto')");
      }
      keyword("auto");
    } else if (head.text == "hidden") {
      take();
      d.kind = LayerKind::kHidden;
      d.name = name();
      d.size = bracketed_size();
      d.source = source();
    } else if (head.text == "output") {
      take();
      d.kind = LayerKind::kOutput;
      d.name = name();
      d.size = bracketed_size();
      const Token& t = peek();
      if (t.kind == Tok::kIdent && t.text == "sigmoid") {
        take();
        d.activation = Activation::kSigmoid;
      } else if (t.kind == Tok::kIdent && is_unsupported_word(t.text)) {
        throw SyntaxError(t.line, t.column,
                          "unsupported construct '" + t.text + "' (only 'sigmoid' output)");
      } else {
        fail(t, "'sigmoid'");
      }
      d.source = source();
    } else {
      fail(head, "'input', 'hidden' or 'output'");
    }
    punct(Tok::kSemicolon, ";");
    return d;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void check_semantics(const NetScriptAst& ast) {
  std::map<std::string, const LayerDecl*> seen;
  const LayerDecl* input = nullptr;
  const LayerDecl* output = nullptr;
  std::map<std::string, int> consumers;
  for (const auto& d : ast.layers) {
    if (seen.count(d.name)) {
      throw SemanticError(d.line, d.column, "duplicate layer name '" + d.name + "'");
    }
    if (d.size && *d.size <= 0) {
      throw SemanticError(d.line, d.column, "layer '" + d.name + "' has size 0");
    }
    if (d.kind == LayerKind::kInput) {
      if (input) throw SemanticError(d.line, d.column, "more than one input layer");
      input = &d;
    }
    if (d.kind == LayerKind::kOutput) {
      if (output) throw SemanticError(d.line, d.column, "more than one output layer");
      output = &d;
    }
    if (d.source) {
      auto it = seen.find(*d.source);
      if (it == seen.end()) {
        throw SemanticError(d.line, d.column,
                            "layer '" + d.name + "' reads from unknown layer '" + *d.source + "'");
      }
      if (it->second->kind == LayerKind::kOutput) {
        throw SemanticError(d.line, d.column, "layer '" + d.name + "' reads from the output layer");
      }
      if (++consumers[*d.source] > 1) {
        throw SemanticError(d.line, d.column, "unsupported topology: layer '" + *d.source +
                                                  "' feeds more than one layer");
      }
    }
    seen.emplace(d.name, &d);
  }
  if (!input) throw SemanticError(1, 1, "missing input layer");
  if (!output) throw SemanticError(1, 1, "missing output layer");
  for (const auto& d : ast.layers) {
    if (d.kind != LayerKind::kOutput && consumers[d.name] == 0) {
      throw SemanticError(d.line, d.column,
                          "layer '" + d.name + "' does not lead to the output layer");
    }
  }
}

}  // namespace

SyntaxError::SyntaxError(int line, int column, const std::string& message)
    : Error(positioned(line, column, message)), line_(line), column_(column), message_(message) {}

SemanticError::SemanticError(int line, int column, const std::string& message)
    : Error(positioned(line, column, message)), line_(line), column_(column) {}

const char* to_string(Activation a) noexcept {
  return a == Activation::kSigmoid ? "sigmoid" : "none";
}

NetScriptAst parse(std::string_view text) {
  NetScriptAst ast = Parser(Lexer(text).run()).run();
  check_semantics(ast);
  return ast;
}

std::string unparse(const NetScriptAst& ast) {
  std::string out;
  for (const auto& d : ast.layers) {
    if (!out.empty()) out += ' ';
    switch (d.kind) {
      case LayerKind::kInput:
        out += "input " + d.name + " auto;";
        break;
      case LayerKind::kHidden:
        out += "hidden " + d.name + " [" + std::to_string(d.size.value_or(0)) + "] from " +
               d.source.value_or("") + " all;";
        break;
      case LayerKind::kOutput:
        out += "output " + d.name + " [" + std::to_string(d.size.value_or(0)) + "] " +
               to_string(d.activation) + " from " + d.source.value_or("") + " all;";
        break;
    }
  }
  return out;
}

int total_hidden_nodes(const NetScriptAst& ast) {
  int total = 0;
  for (const auto& d : ast.layers) {
    if (d.kind == LayerKind::kHidden) total += d.size.value_or(0);
  }
  return total;
}

NetworkTopology elaborate(const NetScriptAst& ast, int input_width, int n_classes,
                          Activation hidden_activation) {
  if (input_width <= 0) throw ShapeError("input width must be positive");
  std::map<std::string, const LayerDecl*> by_source;
  const LayerDecl* current = nullptr;
  for (const auto& d : ast.layers) {
    if (d.kind == LayerKind::kInput) current = &d;
    if (d.source) by_source[*d.source] = &d;
  }
  if (!current) throw SemanticError(1, 1, "missing input layer");

  NetworkTopology topo;
  topo.sizes.push_back(input_width);
  while (current->kind != LayerKind::kOutput) {
    auto it = by_source.find(current->name);
    if (it == by_source.end()) {
      throw SemanticError(current->line, current->column,
                          "layer '" + current->name + "' does not lead to the output layer");
    }
    current = it->second;
    topo.sizes.push_back(current->size.value_or(0));
    topo.activations.push_back(current->kind == LayerKind::kOutput ? current->activation
                                                                   : hidden_activation);
  }
  if (topo.sizes.back() != n_classes) {
    throw ShapeError("output layer declares " + std::to_string(topo.sizes.back()) +
                     " units but the data has " + std::to_string(n_classes) + " classes");
  }
  return topo;
}

NetworkTopology dense_topology(int input_width, const std::vector<int>& hidden, int n_classes) {
  NetworkTopology topo;
  topo.sizes.push_back(input_width);
  for (int h : hidden) {
    topo.sizes.push_back(h);
    topo.activations.push_back(Activation::kSigmoid);
  }
  topo.sizes.push_back(n_classes);
  topo.activations.push_back(Activation::kSigmoid);
  for (int s : topo.sizes) {
    if (s <= 0) throw ShapeError("topology sizes must be positive");
  }
  return topo;
}

}  // namespace krk::netscript
