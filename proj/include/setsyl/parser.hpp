// Copyright 2026 The setsyl Authors
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

/// @file
/// S-expression front end for `.syl` scripts.
///
///   script  := form*
///   form    := (assert formula) | (set-option :key value)
///   formula := atom | (not f) | (and f+) | (or f+) | (=> f f)
///   atom    := (in t t) | (= t t) | (subset t t) | (<= t t) | (atom t)
///   term    := identifier | empty | integer | p/q | (op term+)
///
/// Comments run from `;` to the end of the line. The parser keeps no global
/// state and is reentrant.

#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "setsyl/error.hpp"
#include "setsyl/formula.hpp"

namespace setsyl {

namespace detail {

struct Token {
  enum Kind { LParen, RParen, Symbol, End } kind = End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= text_.size()) return t;
    const char c = text_[pos_];
    if (c == '(' || c == ')') {
      t.kind = c == '(' ? Token::LParen : Token::RParen;
      t.text = std::string(1, c);
      advance();
      return t;
    }
    t.kind = Token::Symbol;
    while (pos_ < text_.size()) {
      const char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d))) break;
      t.text += d;
      advance();
    }
    return t;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

inline bool parse_rational(std::string_view s, Rational& out) {
  auto digits = [](std::string_view d) {
    return !d.empty() && std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) return false;
  boost::multiprecision::cpp_int n{std::string(num)};
  boost::multiprecision::cpp_int d{std::string(den)};
  if (d == 0) return false;
  out = Rational(n, d);
  if (negative) out = -out;
  return true;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { look_ = lexer_.next(); }

  Script script() {
    Script s;
    while (look_.kind != Token::End) {
      expect(Token::LParen, {"("});
      const Token head = take();
      if (head.kind == Token::Symbol && head.text == "assert") {
        s.asserts.push_back(formula());
        expect(Token::RParen, {")"});
      } else if (head.kind == Token::Symbol && head.text == "set-option") {
        const Token key = take();
        if (key.kind != Token::Symbol || key.text.size() < 2 || key.text.front() != ':')
          fail(key, {":key"});
        const Token value = take();
        if (value.kind != Token::Symbol) fail(value, {"option value"});
        s.options.emplace_back(key.text.substr(1), value.text);
        expect(Token::RParen, {")"});
      } else {
        fail(head, {"assert", "set-option"});
      }
    }
    return s;
  }

  Formula formula() {
    const Token open = take();
    if (open.kind != Token::LParen) fail(open, {"("});
    const Token head = take();
    if (head.kind != Token::Symbol)
      fail(head, {"not", "and", "or", "=>", "in", "=", "subset", "<=", "atom"});

    if (head.text == "not") {
      Formula f = Formula::negation(formula());
      expect(Token::RParen, {")"});
      return f;
    }
    if (head.text == "and" || head.text == "or") {
      std::vector<Formula> kids;
      while (look_.kind == Token::LParen) kids.push_back(formula());
      if (kids.empty()) fail(look_, {"("});
      expect(Token::RParen, {"(", ")"});
      return head.text == "and" ? Formula::conjunction(std::move(kids))
                                : Formula::disjunction(std::move(kids));
    }
    if (head.text == "=>" || head.text == "implies") {
      Formula a = formula();
      Formula b = formula();
      expect(Token::RParen, {")"});
      return Formula::implies(std::move(a), std::move(b));
    }
    Pred pred;
    if (!pred_from_keyword(head.text, pred))
      fail(head, {"not", "and", "or", "=>", "in", "=", "subset", "<=", "atom"});
    std::vector<Term> args;
    while (look_.kind != Token::RParen && look_.kind != Token::End) args.push_back(term());
    expect(Token::RParen, {"term", ")"});
    return Formula::atom(Atom::make(pred, std::move(args)));
  }

  Term term() {
    const Token t = take();
    if (t.kind == Token::Symbol) {
      if (t.text == "empty") return Term::empty();
      Rational r;
      if (parse_rational(t.text, r)) return Term::constant(r);
      if (!is_identifier(t.text)) fail(t, {"identifier", "empty", "number", "("});
      return Term::var(t.text);
    }
    if (t.kind != Token::LParen) fail(t, {"identifier", "empty", "number", "("});
    const Token head = take();
    Op op;
    if (head.kind != Token::Symbol || !op_from_keyword(head.text, op))
      fail(head, {"union", "inter", "setminus", "single", "pow", "bigU", "bigI", "cross",
                  "ucross", "+", "-", "cons", "car", "cdr"});
    std::vector<Term> args;
    while (look_.kind != Token::RParen && look_.kind != Token::End) args.push_back(term());
    expect(Token::RParen, {"term", ")"});
    return Term::apply(op, std::move(args));
  }

  void expect_end() {
    if (look_.kind != Token::End) fail(look_, {"end of input"});
  }

 private:
  Token take() {
    Token t = look_;
    look_ = lexer_.next();
    return t;
  }
  void expect(Token::Kind k, std::vector<std::string> expected) {
    const Token t = take();
    if (t.kind != k) fail(t, std::move(expected));
  }
  [[noreturn]] static void fail(const Token& t, std::vector<std::string> expected) {
    const std::string found = t.kind == Token::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, std::move(expected), found);
  }

  Lexer lexer_;
  Token look_;
};

}  // namespace detail

/// Parses a whole script. Throws ParseError or ArityError.
inline Script parse_script(std::string_view text) {
  detail::Parser p(text);
  return p.script();
}

/// Parses a single formula, e.g. "(in x y)".
inline Formula parse_formula(std::string_view text) {
  detail::Parser p(text);
  Formula f = p.formula();
  p.expect_end();
  return f;
}

inline Term parse_term(std::string_view text) {
  detail::Parser p(text);
  Term t = p.term();
  p.expect_end();
  return t;
}

}  // namespace setsyl
