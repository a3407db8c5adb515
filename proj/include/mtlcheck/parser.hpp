// Copyright 2026 The mtlcheck Authors. All Rights Reserved.
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

#pragma once

// Grammar, loosest binding first:
//
//   imp     := or ('->' imp)?
//   or      := and ('|' and)*
//   and     := until ('&' until)*
//   until   := unary ('U' interval? until)?
//   unary   := '!' unary | ('F'|'G'|'X') interval? unary | primary
//   primary := atom | 'true' | 'false' | '(' imp ')'
//   interval:= ('['|'(') nat ',' (nat|'inf') (']'|')') | '=' nat
//
// An omitted interval means [0,inf). X_I f is sugar for false U_{I-{0}} f.

#include <cctype>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mtlcheck/formula.hpp"
#include "mtlcheck/interval.hpp"

namespace mtlcheck {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error("parse error at offset " + std::to_string(position) + ": " + what),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct ParseOptions {
  /// Accept the internal `@act` token printed for position-existence nodes.
  bool allow_internal = false;
};

namespace detail {

class FormulaParser {
 public:
  FormulaParser(std::string_view text, ParseOptions opts) : text_(text), opts_(opts) {}

  Formula parse() {
    skip_ws();
    if (pos_ == text_.size()) fail("empty formula");
    Formula f = implication();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    throw ParseError(msg, at);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(std::string_view tok) {
    skip_ws();
    return text_.substr(pos_, tok.size()) == tok;
  }
  bool accept(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  // Identifier at the cursor without consuming it.
  std::string_view peek_ident() {
    skip_ws();
    std::size_t end = pos_;
    if (end < text_.size() && ident_start(text_[end])) {
      while (end < text_.size() && ident_char(text_[end])) ++end;
    }
    return text_.substr(pos_, end - pos_);
  }

  Formula implication() {
    Formula lhs = disjunction_level();
    if (accept("->")) {
      Formula rhs = implication();
      return disjunction(negation(lhs), rhs);
    }
    return lhs;
  }

  Formula disjunction_level() {
    Formula f = conjunction_level();
    while (peek("|")) {
      ++pos_;
      f = disjunction(f, conjunction_level());
    }
    return f;
  }

  Formula conjunction_level() {
    Formula f = until_level();
    while (peek("&")) {
      ++pos_;
      f = conjunction(f, until_level());
    }
    return f;
  }

  Formula until_level() {
    Formula lhs = unary();
    if (peek_ident() == "U") {
      ++pos_;
      Interval i = optional_interval();
      Formula rhs = until_level();
      return until(i, lhs, rhs);
    }
    return lhs;
  }

  Formula unary() {
    skip_ws();
    if (accept("!")) return negation(unary());
    std::string_view id = peek_ident();
    if (id == "F" || id == "G" || id == "X") {
      pos_ += 1;
      std::size_t at = pos_;
      Interval i = optional_interval();
      Formula operand = unary();
      if (id == "F") return eventually(i, operand);
      if (id == "G") return globally(i, operand);
      return until(next_interval(i, at), constant(false), operand);
    }
    return primary();
  }

  Interval next_interval(const Interval& i, std::size_t at) const {
    // I - {0}
    if (i.min_member() > 0) return i;
    try {
      return Interval::make(0, i.upper(), false, i.upper_closed());
    } catch (const IntervalError&) {
      fail_at("empty interval for X", at);
    }
  }

  Formula primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept("(")) {
      Formula f = implication();
      expect(")");
      return f;
    }
    if (text_[pos_] == '@') {
      std::size_t at = pos_;
      ++pos_;
      std::string_view id = peek_ident();
      if (id != "act") fail_at("unknown internal token", at);
      if (!opts_.allow_internal) fail_at("'@act' is reserved", at);
      pos_ += id.size();
      return act();
    }
    std::string_view id = peek_ident();
    if (id.empty()) fail("expected atom or '('");
    if (id == "U") fail("unexpected 'U'");
    pos_ += id.size();
    if (id == "true") return constant(true);
    if (id == "false") return constant(false);
    return atom(std::string(id));
  }

  // Interval suffixes start with '[', '=' or '(' followed by a number.
  bool interval_ahead() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    if (c == '[' || c == '=') return true;
    if (c != '(') return false;
    std::size_t p = pos_ + 1;
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    return p < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[p])) || text_[p] == '-');
  }

  Interval optional_interval() {
    if (!interval_ahead()) return Interval();
    std::size_t start = pos_;
    if (accept("=")) {
      Timestamp c = natural();
      return Interval::exactly(c);
    }
    bool lower_closed = text_[pos_] == '[';
    ++pos_;
    Timestamp lo = natural();
    expect(",");
    std::optional<Timestamp> hi;
    skip_ws();
    if (accept("inf") || accept("\xE2\x88\x9E")) {
      hi = std::nullopt;
    } else {
      hi = natural();
    }
    skip_ws();
    if (pos_ >= text_.size() || (text_[pos_] != ']' && text_[pos_] != ')'))
      fail("expected ']' or ')'");
    bool upper_closed = text_[pos_] == ']';
    ++pos_;
    if (!hi && upper_closed) fail_at("unbounded interval must be right-open", start);
    try {
      return Interval::make(lo, hi, lower_closed, upper_closed);
    } catch (const IntervalError& e) {
      fail_at(e.what(), start);
    }
  }

  Timestamp natural() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') fail("negative interval bound");
    Timestamp v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (INT64_MAX - 9) / 10) fail_at("interval bound too large", start);
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) fail("expected a natural number");
    return v;
  }

  std::string_view text_;
  ParseOptions opts_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse_formula(std::string_view text, ParseOptions opts = {}) {
  return detail::FormulaParser(text, opts).parse();
}

}  // namespace mtlcheck
