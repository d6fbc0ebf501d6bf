// Copyright 2026 The finslerkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "finsler/expr.hpp"

namespace finsler::expr {
namespace {

enum class Tok { kNumber, kIdent, kPlus, kMinus, kStar, kSlash, kCaret, kLParen, kRParen, kComma, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        t.kind = Tok::kNumber;
        t.text = lex_number(t);
        out.push_back(t);
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::kIdent;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          t.text += advance();
        }
        out.push_back(t);
        continue;
      }
      switch (c) {
        case '+': t.kind = Tok::kPlus; break;
        case '-': t.kind = Tok::kMinus; break;
        case '*': t.kind = Tok::kStar; break;
        case '/': t.kind = Tok::kSlash; break;
        case '^': t.kind = Tok::kCaret; break;
        case '(': t.kind = Tok::kLParen; break;
        case ')': t.kind = Tok::kRParen; break;
        case ',': t.kind = Tok::kComma; break;
        default: {
          std::string shown(1, c);
          if (static_cast<unsigned char>(c) >= 0x80) shown = "non-ASCII byte";
          throw ParseError("unexpected character '" + shown + "'", line_, column_);
        }
      }
      t.text = std::string(1, advance());
      out.push_back(t);
    }
  }

 private:
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0U) != 0x80U) {
      ++column_;  // count code points, not continuation bytes
    }
    return c;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string lex_number(Token& t) {
    std::string text;
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) text += advance();
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      text += advance();
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        text += advance();
        if (src_[pos_] == '+' || src_[pos_] == '-') text += advance();
        digits();
      }
    }
    if (text == ".") throw ParseError("malformed number", t.line, t.column);
    char* end = nullptr;
    t.number = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) throw ParseError("malformed number '" + text + "'", t.line, t.column);
    return text;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

using NodePtr = std::shared_ptr<const Node>;

class Parser {
 public:
  Parser(std::vector<Token> tokens, int dimension) : toks_(std::move(tokens)), dim_(dimension) {}

  NodePtr parse_all() {
    NodePtr e = expr();
    if (peek().kind != Tok::kEnd) fail("unexpected '" + peek().text + "'", peek());
    return e;
  }

  bool uses_abs() const { return uses_abs_; }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  [[noreturn]] static void fail(const std::string& msg, const Token& at) {
    throw ParseError(msg, at.line, at.column);
  }

  static NodePtr make(NodeKind kind, const Token& at, std::vector<NodePtr> args = {}) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->line = at.line;
    n->column = at.column;
    n->args = std::move(args);
    return n;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
      const Token& op = take();
      NodePtr rhs = term();
      lhs = make(op.kind == Tok::kPlus ? NodeKind::kAdd : NodeKind::kSub, op, {lhs, rhs});
    }
    return lhs;
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (peek().kind == Tok::kStar || peek().kind == Tok::kSlash) {
      const Token& op = take();
      NodePtr rhs = unary();
      lhs = make(op.kind == Tok::kStar ? NodeKind::kMul : NodeKind::kDiv, op, {lhs, rhs});
    }
    return lhs;
  }

  NodePtr unary() {
    if (peek().kind == Tok::kMinus) {
      const Token& op = take();
      return make(NodeKind::kNeg, op, {unary()});
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (peek().kind == Tok::kCaret) {
      const Token& op = take();
      NodePtr exponent = unary();
      return make(NodeKind::kPow, op, {base, exponent});
    }
    return base;
  }

  NodePtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kNumber: {
        take();
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::kLiteral;
        n->value = t.number;
        n->line = t.line;
        n->column = t.column;
        return n;
      }
      case Tok::kLParen: {
        take();
        NodePtr inner = expr();
        if (peek().kind != Tok::kRParen) fail("expected ')'", peek());
        take();
        return inner;
      }
      case Tok::kIdent:
        return identifier();
      case Tok::kEnd:
        fail("unexpected end of input", t);
      default:
        fail("unexpected '" + t.text + "'", t);
    }
  }

  NodePtr identifier() {
    const Token& t = take();
    const std::string& name = t.text;
    if (peek().kind == Tok::kLParen) {
      Function fn;
      std::size_t arity = 1;
      if (name == "sqrt") {
        fn = Function::kSqrt;
      } else if (name == "exp") {
        fn = Function::kExp;
      } else if (name == "log") {
        fn = Function::kLog;
      } else if (name == "abs") {
        fn = Function::kAbs;
        uses_abs_ = true;
      } else if (name == "pow") {
        fn = Function::kPow;
        arity = 2;
      } else {
        fail("unknown function `" + name + "`", t);
      }
      take();
      std::vector<NodePtr> args;
      if (peek().kind != Tok::kRParen) {
        args.push_back(expr());
        while (peek().kind == Tok::kComma) {
          take();
          args.push_back(expr());
        }
      }
      if (peek().kind != Tok::kRParen) fail("expected ')' or ','", peek());
      take();
      if (args.size() != arity) {
        fail("function `" + name + "` takes " + std::to_string(arity) + " argument" +
                 (arity == 1 ? "" : "s") + ", got " + std::to_string(args.size()),
             t);
      }
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::kCall;
      n->function = fn;
      n->args = std::move(args);
      n->line = t.line;
      n->column = t.column;
      return n;
    }
    if (name.size() >= 2 && (name[0] == 'x' || name[0] == 'y')) {
      const char* first = name.data() + 1;
      const char* last = name.data() + name.size();
      int k = 0;
      auto [ptr, ec] = std::from_chars(first, last, k);
      if (ec == std::errc() && ptr == last && name[1] != '0') {
        if (k < 1 || k > dim_) {
          fail("variable `" + name + "` index out of range 1.." + std::to_string(dim_), t);
        }
        auto n = std::make_shared<Node>();
        n->kind = name[0] == 'x' ? NodeKind::kVarX : NodeKind::kVarY;
        n->index = k - 1;
        n->line = t.line;
        n->column = t.column;
        return n;
      }
    }
    fail("unknown identifier `" + name + "`", t);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int dim_;
  bool uses_abs_ = false;
};

void print(const Node& n, std::string& out) {
  char buf[40];
  switch (n.kind) {
    case NodeKind::kLiteral:
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      out += buf;
      return;
    case NodeKind::kVarX:
    case NodeKind::kVarY:
      out += n.kind == NodeKind::kVarX ? 'x' : 'y';
      out += std::to_string(n.index + 1);
      return;
    case NodeKind::kNeg:
      out += "(-";
      print(*n.args[0], out);
      out += ")";
      return;
    case NodeKind::kCall: {
      static constexpr const char* names[] = {"sqrt", "exp", "log", "abs", "pow"};
      out += names[static_cast<int>(n.function)];
      out += "(";
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i > 0) out += ", ";
        print(*n.args[i], out);
      }
      out += ")";
      return;
    }
    default: {
      const char* op = n.kind == NodeKind::kAdd   ? " + "
                       : n.kind == NodeKind::kSub ? " - "
                       : n.kind == NodeKind::kMul ? " * "
                       : n.kind == NodeKind::kDiv ? " / "
                                                  : " ^ ";
      out += "(";
      print(*n.args[0], out);
      out += op;
      print(*n.args[1], out);
      out += ")";
    }
  }
}

}  // namespace

bool structurally_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  if (a.kind == NodeKind::kLiteral && a.value != b.value) return false;
  if ((a.kind == NodeKind::kVarX || a.kind == NodeKind::kVarY) && a.index != b.index) return false;
  if (a.kind == NodeKind::kCall && a.function != b.function) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!structurally_equal(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

EnergyExpr EnergyExpr::parse(std::string_view source, int dimension) {
  if (dimension < 1) throw ConfigError("dimension must be at least 1");
  Parser parser(Lexer(source).run(), dimension);
  NodePtr root = parser.parse_all();
  return EnergyExpr(std::move(root), dimension, parser.uses_abs());
}

std::string EnergyExpr::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

}  // namespace finsler::expr
