#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "adtcheck/frontend/diagnostic.hpp"

namespace adtcheck {

enum class TokenKind {
  // keywords
  kw_struct,
  kw_var,
  kw_func,
  kw_mutating,
  kw_throws,
  kw_throw,
  kw_guard,
  kw_else,
  kw_return,
  kw_protocol,
  kw_when,
  kw_after,
  kw_true,
  kw_false,
  kw_nil,
  // literals and names
  ident,
  int_lit,
  float_lit,
  underscore,
  // punctuation
  lbrace,
  rbrace,
  lparen,
  rparen,
  lbracket,
  rbracket,
  comma,
  colon,
  dot,
  question,
  eq,
  eqeq,
  neq,
  lt,
  le,
  gt,
  plus,
  minus,
  arrow,      // =>
  thin_arrow, // ->
  eof,
};

std::string_view token_kind_name(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::eof;
  std::string text;
  Span span;
  /// True when a line break separates this token from the previous one.
  bool starts_line = false;
  std::int64_t int_value = 0;

  bool is(TokenKind k) const { return kind == k; }
};

struct LexResult {
  std::vector<Token> tokens; // no trailing eof token
  Diagnostics diagnostics;
};

/// Splits `source` into tokens. Whitespace and `//` comments are dropped.
/// Illegal characters are reported and skipped; lexing always reaches the end
/// of the input.
LexResult tokenize(std::string_view source, std::string_view file = {});

} // namespace adtcheck
