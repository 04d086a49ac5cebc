// Copyright 2026 The Everett Simulator Authors
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
#include <cmath>
#include <optional>
#include <utility>

#include "everett/logic.hpp"

namespace everett {

struct Proposition::Node {
  Kind kind = Kind::atom;
  std::string label;
  double time = 0.0;
  std::optional<Proposition> a;
  std::optional<Proposition> b;
};

Proposition Proposition::atom(std::string label, double time) {
  if (label.empty()) {
    throw ValidationError("proposition", "atom labels must be nonempty");
  }
  if (!std::isfinite(time)) {
    throw ValidationError("proposition", "atom times must be finite");
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::atom;
  node->label = std::move(label);
  node->time = time;
  return Proposition(std::move(node));
}

Proposition Proposition::negation(Proposition p) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::negation;
  node->a = std::move(p);
  return Proposition(std::move(node));
}

Proposition Proposition::conjunction(Proposition lhs, Proposition rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::conjunction;
  node->a = std::move(lhs);
  node->b = std::move(rhs);
  return Proposition(std::move(node));
}

Proposition Proposition::disjunction(Proposition lhs, Proposition rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::disjunction;
  node->a = std::move(lhs);
  node->b = std::move(rhs);
  return Proposition(std::move(node));
}

Proposition::Kind Proposition::kind() const { return node_->kind; }

const std::string& Proposition::label() const {
  if (node_->kind != Kind::atom) throw Error("label() is only valid on atoms");
  return node_->label;
}

double Proposition::time() const {
  if (node_->kind != Kind::atom) throw Error("time() is only valid on atoms");
  return node_->time;
}

const Proposition& Proposition::child() const {
  if (node_->kind != Kind::negation) throw Error("child() is only valid on negations");
  return *node_->a;
}

const Proposition& Proposition::left() const {
  if (node_->kind != Kind::conjunction && node_->kind != Kind::disjunction) {
    throw Error("left() is only valid on connectives");
  }
  return *node_->a;
}

const Proposition& Proposition::right() const {
  if (node_->kind != Kind::conjunction && node_->kind != Kind::disjunction) {
    throw Error("right() is only valid on connectives");
  }
  return *node_->b;
}

bool operator==(const Proposition& a, const Proposition& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Proposition::Kind::atom:
      return a.label() == b.label() && a.time() == b.time();
    case Proposition::Kind::negation:
      return a.child() == b.child();
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

namespace {

enum class TokenKind { kw_not, kw_and, kw_or, kw_x, lparen, rparen, comma, ident, text, number, end };

struct Token {
  TokenKind kind = TokenKind::end;
  std::size_t column = 0;  // 1-based
  std::string text;
  double number = 0.0;
};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '@';
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    const std::size_t column = pos_ + 1;
    if (pos_ >= text_.size()) {
      return {TokenKind::end, column, "", 0.0};
    }
    const char c = text_[pos_];
    if (c == '(') { ++pos_; return {TokenKind::lparen, column, "(", 0.0}; }
    if (c == ')') { ++pos_; return {TokenKind::rparen, column, ")", 0.0}; }
    if (c == ',') { ++pos_; return {TokenKind::comma, column, ",", 0.0}; }
    if (c == '"') return quoted(column);
    if (is_ident_start(c)) return word(column);
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.') {
      return number(column);
    }
    throw SyntaxError(column, std::string("unexpected character '") + c + "'");
  }

 private:
  Token quoted(std::size_t column) {
    ++pos_;  // opening quote
    std::string value;
    while (pos_ < text_.size()) {
      const char c = text_[pos_++];
      if (c == '"') {
        return {TokenKind::text, column, std::move(value), 0.0};
      }
      if (c == '\\' && pos_ < text_.size() && (text_[pos_] == '"' || text_[pos_] == '\\')) {
        value.push_back(text_[pos_++]);
      } else {
        value.push_back(c);
      }
    }
    throw SyntaxError(column, "unterminated string literal");
  }

  Token word(std::size_t column) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    std::string value = text_.substr(start, pos_ - start);
    if (value == "NOT") return {TokenKind::kw_not, column, std::move(value), 0.0};
    if (value == "AND") return {TokenKind::kw_and, column, std::move(value), 0.0};
    if (value == "OR") return {TokenKind::kw_or, column, std::move(value), 0.0};
    if (value == "X") return {TokenKind::kw_x, column, std::move(value), 0.0};
    return {TokenKind::ident, column, std::move(value), 0.0};
  }

  Token number(std::size_t column) {
    const std::size_t start = pos_;
    if (text_[pos_] == '-') ++pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t whole = digits();
    std::size_t frac = 0;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      frac = digits();
    }
    if (whole + frac == 0) {
      throw SyntaxError(column, "malformed number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) {
        throw SyntaxError(column, "malformed exponent");
      }
    }
    const std::string slice = text_.substr(start, pos_ - start);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(slice.data(), slice.data() + slice.size(), value);
    if (ec != std::errc{} || ptr != slice.data() + slice.size() || !std::isfinite(value)) {
      throw SyntaxError(column, "malformed number '" + slice + "'");
    }
    return {TokenKind::number, column, slice, value};
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lexer_(text) { advance(); }

  Proposition parse() {
    if (current_.kind == TokenKind::end) {
      throw SyntaxError(current_.column, "empty input");
    }
    Proposition p = parse_or();
    if (current_.kind != TokenKind::end) {
      throw SyntaxError(current_.column, "unexpected trailing input '" + current_.text + "'");
    }
    return p;
  }

 private:
  void advance() { current_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& expected) {
    if (current_.kind == TokenKind::end) {
      throw SyntaxError(current_.column, "expected " + expected + " at end of input");
    }
    throw SyntaxError(current_.column, "expected " + expected + ", found '" + current_.text + "'");
  }

  Proposition parse_or() {
    Proposition lhs = parse_and();
    while (current_.kind == TokenKind::kw_or) {
      advance();
      lhs = Proposition::disjunction(std::move(lhs), parse_and());
    }
    return lhs;
  }

  Proposition parse_and() {
    Proposition lhs = parse_unary();
    while (current_.kind == TokenKind::kw_and) {
      advance();
      lhs = Proposition::conjunction(std::move(lhs), parse_unary());
    }
    return lhs;
  }

  Proposition parse_unary() {
    switch (current_.kind) {
      case TokenKind::kw_not: {
        advance();
        return Proposition::negation(parse_unary());
      }
      case TokenKind::lparen: {
        advance();
        Proposition p = parse_or();
        if (current_.kind != TokenKind::rparen) fail("')'");
        advance();
        return p;
      }
      case TokenKind::kw_x:
        return parse_atom();
      default:
        fail("a proposition");
    }
  }

  Proposition parse_atom() {
    advance();  // X
    if (current_.kind != TokenKind::lparen) fail("'(' after X");
    advance();
    std::string label;
    if (current_.kind == TokenKind::ident || current_.kind == TokenKind::text) {
      label = current_.text;
      if (label.empty()) {
        throw SyntaxError(current_.column, "atom labels must be nonempty");
      }
      advance();
    } else {
      fail("an experience label");
    }
    if (current_.kind != TokenKind::comma) fail("','");
    advance();
    if (current_.kind != TokenKind::number) fail("a time literal");
    const double time = current_.number;
    advance();
    if (current_.kind != TokenKind::rparen) fail("')'");
    advance();
    return Proposition::atom(std::move(label), time);
  }

  Lexer lexer_;
  Token current_;
};

int precedence(Proposition::Kind kind) {
  switch (kind) {
    case Proposition::Kind::disjunction: return 0;
    case Proposition::Kind::conjunction: return 1;
    case Proposition::Kind::negation: return 2;
    default: return 3;
  }
}

bool needs_quoting(const std::string& label) {
  if (!is_ident_start(label[0])) return true;
  for (char c : label) {
    if (!is_ident_char(c)) return true;
  }
  return label == "NOT" || label == "AND" || label == "OR" || label == "X";
}

void print_label(std::string& out, const std::string& label) {
  if (!needs_quoting(label)) {
    out += label;
    return;
  }
  out += '"';
  for (char c : label) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
}

void print_time(std::string& out, double time) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), time);
  out.append(buf, ptr);
}

void print_node(std::string& out, const Proposition& p, int parent_precedence) {
  const int prec = precedence(p.kind());
  const bool wrap = prec < parent_precedence;
  if (wrap) out += '(';
  switch (p.kind()) {
    case Proposition::Kind::atom:
      out += "X(";
      print_label(out, p.label());
      out += ", ";
      print_time(out, p.time());
      out += ')';
      break;
    case Proposition::Kind::negation:
      out += "NOT ";
      print_node(out, p.child(), prec);
      break;
    case Proposition::Kind::conjunction:
      print_node(out, p.left(), prec);
      out += " AND ";
      print_node(out, p.right(), prec + 1);
      break;
    case Proposition::Kind::disjunction:
      print_node(out, p.left(), prec);
      out += " OR ";
      print_node(out, p.right(), prec + 1);
      break;
  }
  if (wrap) out += ')';
}

}  // namespace

Proposition parse_proposition(const std::string& text) {
  return Parser(text).parse();
}

std::string to_string(const Proposition& p) {
  std::string out;
  print_node(out, p, 0);
  return out;
}

}  // namespace everett
