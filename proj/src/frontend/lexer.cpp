#include "adtcheck/frontend/lexer.hpp"

#include <array>
#include <charconv>
#include <utility>

namespace adtcheck {

namespace {

constexpr std::array<std::pair<std::string_view, TokenKind>, 15> kKeywords{{
    {"struct", TokenKind::kw_struct},
    {"var", TokenKind::kw_var},
    {"func", TokenKind::kw_func},
    {"mutating", TokenKind::kw_mutating},
    {"throws", TokenKind::kw_throws},
    {"throw", TokenKind::kw_throw},
    {"guard", TokenKind::kw_guard},
    {"else", TokenKind::kw_else},
    {"return", TokenKind::kw_return},
    {"protocol", TokenKind::kw_protocol},
    {"when", TokenKind::kw_when},
    {"after", TokenKind::kw_after},
    {"true", TokenKind::kw_true},
    {"false", TokenKind::kw_false},
    {"nil", TokenKind::kw_nil},
}};

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

class Lexer {
public:
  Lexer(std::string_view src, std::string_view file) : src_(src), file_(file) {}

  LexResult run() {
    while (true) {
      skip_trivia();
      if (pos_ >= src_.size())
        break;
      lex_one();
    }
    return std::move(result_);
  }

private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
      newline_seen_ = true;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n')
          advance();
      } else {
        break;
      }
    }
  }

  void emit(TokenKind kind, std::size_t start, std::size_t line, std::size_t col) {
    Token t;
    t.kind = kind;
    t.text = std::string(src_.substr(start, pos_ - start));
    t.span = Span{start, line, col, pos_ - start};
    t.starts_line = newline_seen_ || result_.tokens.empty();
    newline_seen_ = false;
    result_.tokens.push_back(std::move(t));
  }

  void lex_one() {
    const std::size_t start = pos_;
    const std::size_t line = line_;
    const std::size_t col = col_;
    const char c = peek();

    if (is_ident_start(c)) {
      while (is_ident_char(peek()))
        advance();
      std::string_view word = src_.substr(start, pos_ - start);
      TokenKind kind = word == "_" ? TokenKind::underscore : TokenKind::ident;
      for (auto [kw, k] : kKeywords)
        if (kw == word)
          kind = k;
      emit(kind, start, line, col);
      return;
    }

    if (is_digit(c)) {
      while (is_digit(peek()))
        advance();
      bool is_float = false;
      if (peek() == '.' && is_digit(peek(1))) {
        is_float = true;
        advance();
        while (is_digit(peek()))
          advance();
      }
      emit(is_float ? TokenKind::float_lit : TokenKind::int_lit, start, line, col);
      if (!is_float) {
        Token &t = result_.tokens.back();
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.int_value);
        if (ec != std::errc{})
          error(t.span, "lex.int-range", "integer literal out of range");
      }
      return;
    }

    auto two = [&](char second) { return peek(1) == second; };
    TokenKind kind;
    std::size_t width = 1;
    switch (c) {
    case '{': kind = TokenKind::lbrace; break;
    case '}': kind = TokenKind::rbrace; break;
    case '(': kind = TokenKind::lparen; break;
    case ')': kind = TokenKind::rparen; break;
    case '[': kind = TokenKind::lbracket; break;
    case ']': kind = TokenKind::rbracket; break;
    case ',': kind = TokenKind::comma; break;
    case ':': kind = TokenKind::colon; break;
    case '.': kind = TokenKind::dot; break;
    case '?': kind = TokenKind::question; break;
    case '+': kind = TokenKind::plus; break;
    case '>': kind = TokenKind::gt; break;
    case '-':
      kind = two('>') ? TokenKind::thin_arrow : TokenKind::minus;
      width = two('>') ? 2 : 1;
      break;
    case '=':
      if (two('=')) {
        kind = TokenKind::eqeq;
        width = 2;
      } else if (two('>')) {
        kind = TokenKind::arrow;
        width = 2;
      } else {
        kind = TokenKind::eq;
      }
      break;
    case '<':
      kind = two('=') ? TokenKind::le : TokenKind::lt;
      width = two('=') ? 2 : 1;
      break;
    case '!':
      if (two('=')) {
        kind = TokenKind::neq;
        width = 2;
        break;
      }
      [[fallthrough]];
    default: {
      // Consume a whole UTF-8 sequence so one bad character yields one error.
      advance();
      while (pos_ < src_.size() && (static_cast<unsigned char>(peek()) & 0xC0) == 0x80 &&
             (static_cast<unsigned char>(c) & 0x80))
        advance();
      Span span{start, line, col, pos_ - start};
      error(span, "lex.illegal-char",
            "illegal character '" + std::string(src_.substr(start, pos_ - start)) + "'");
      return;
    }
    }
    for (std::size_t i = 0; i < width; ++i)
      advance();
    emit(kind, start, line, col);
  }

  void error(Span span, std::string code, std::string message) {
    result_.diagnostics.push_back(
        Diagnostic{Severity::error, span, std::move(code), std::move(message), std::string(file_)});
  }

  std::string_view src_;
  std::string_view file_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  bool newline_seen_ = false;
  LexResult result_;
};

} // namespace

std::string_view token_kind_name(TokenKind kind) {
  switch (kind) {
  case TokenKind::kw_struct: return "kw_struct";
  case TokenKind::kw_var: return "kw_var";
  case TokenKind::kw_func: return "kw_func";
  case TokenKind::kw_mutating: return "kw_mutating";
  case TokenKind::kw_throws: return "kw_throws";
  case TokenKind::kw_throw: return "kw_throw";
  case TokenKind::kw_guard: return "kw_guard";
  case TokenKind::kw_else: return "kw_else";
  case TokenKind::kw_return: return "kw_return";
  case TokenKind::kw_protocol: return "kw_protocol";
  case TokenKind::kw_when: return "kw_when";
  case TokenKind::kw_after: return "kw_after";
  case TokenKind::kw_true: return "kw_true";
  case TokenKind::kw_false: return "kw_false";
  case TokenKind::kw_nil: return "kw_nil";
  case TokenKind::ident: return "ident";
  case TokenKind::int_lit: return "int";
  case TokenKind::float_lit: return "float";
  case TokenKind::underscore: return "underscore";
  case TokenKind::lbrace: return "lbrace";
  case TokenKind::rbrace: return "rbrace";
  case TokenKind::lparen: return "lparen";
  case TokenKind::rparen: return "rparen";
  case TokenKind::lbracket: return "lbracket";
  case TokenKind::rbracket: return "rbracket";
  case TokenKind::comma: return "comma";
  case TokenKind::colon: return "colon";
  case TokenKind::dot: return "dot";
  case TokenKind::question: return "question";
  case TokenKind::eq: return "eq";
  case TokenKind::eqeq: return "eqeq";
  case TokenKind::neq: return "neq";
  case TokenKind::lt: return "lt";
  case TokenKind::le: return "le";
  case TokenKind::gt: return "gt";
  case TokenKind::plus: return "plus";
  case TokenKind::minus: return "minus";
  case TokenKind::arrow: return "arrow";
  case TokenKind::thin_arrow: return "thin_arrow";
  case TokenKind::eof: return "eof";
  }
  return "?";
}

LexResult tokenize(std::string_view source, std::string_view file) {
  return Lexer(source, file).run();
}

} // namespace adtcheck
