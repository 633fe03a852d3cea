#include "adtcheck/frontend/parser.hpp"

#include <filesystem>
#include <utility>

namespace adtcheck {

namespace {

/// Unwinds to the nearest recovery point after a diagnostic was recorded.
struct SyntaxError {};

class Parser {
public:
  Parser(std::string_view source, std::string_view path) : path_(path), source_size_(source.size()) {
    LexResult lexed = tokenize(source, path);
    tokens_ = std::move(lexed.tokens);
    diags_ = std::move(lexed.diagnostics);
    Token eof;
    eof.kind = TokenKind::eof;
    eof.starts_line = true;
    if (tokens_.empty()) {
      eof.span = Span{source.size(), 1, 1, 0};
    } else {
      // Position the sentinel just past the last real character.
      std::size_t line = 1, col = 1;
      for (char c : source) {
        if (c == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      eof.span = Span{source.size(), line, col, 0};
    }
    tokens_.push_back(eof);
    clause_file_ = std::filesystem::path(std::string(path)).filename().string();
  }

  Diagnostics take_diagnostics() { return std::move(diags_); }

  SourceFile parse_file() {
    SourceFile file;
    file.path = std::string(path_);
    while (!at(TokenKind::eof)) {
      try {
        if (at(TokenKind::kw_struct)) {
          file.structs.push_back(parse_struct());
        } else if (at(TokenKind::kw_protocol)) {
          file.contracts.push_back(parse_protocol());
        } else {
          fail(cur(), "parse.expected-decl", "expected 'struct' or 'protocol' declaration");
        }
      } catch (const SyntaxError &) {
        recover_top_level();
      }
    }
    return file;
  }

  std::optional<Expr> parse_lone_expression() {
    try {
      Expr e = parse_expr();
      if (!at(TokenKind::eof))
        fail(cur(), "parse.trailing", "unexpected '" + cur().text + "' after expression");
      return e;
    } catch (const SyntaxError &) {
      return std::nullopt;
    }
  }

  TestFile parse_tests() {
    TestFile file;
    file.path = std::string(path_);
    while (!at(TokenKind::eof)) {
      try {
        file.tests.push_back(parse_test_case());
      } catch (const SyntaxError &) {
        while (!at(TokenKind::eof) && !(at(TokenKind::ident) && cur().text == "test" && cur().starts_line))
          advance();
      }
    }
    return file;
  }

private:
  // --- token helpers -------------------------------------------------------

  const Token &cur() const { return tokens_[pos_]; }
  const Token &peek(std::size_t n = 1) const {
    return tokens_[std::min(pos_ + n, tokens_.size() - 1)];
  }
  bool at(TokenKind k) const { return cur().kind == k; }
  bool at_word(std::string_view w) const { return at(TokenKind::ident) && cur().text == w; }

  Token advance() {
    Token t = cur();
    if (!at(TokenKind::eof))
      ++pos_;
    return t;
  }

  bool accept(TokenKind k) {
    if (!at(k))
      return false;
    advance();
    return true;
  }

  [[noreturn]] void fail(const Token &at_tok, std::string code, std::string message) {
    Span span = at_tok.span;
    if (span.offset > source_size_)
      span.offset = source_size_;
    if (span.offset + span.length > source_size_)
      span.length = source_size_ - span.offset;
    diags_.push_back(Diagnostic{Severity::error, span, std::move(code), std::move(message),
                                std::string(path_)});
    throw SyntaxError{};
  }

  Token expect(TokenKind k, std::string_view what) {
    if (!at(k)) {
      std::string found = at(TokenKind::eof) ? "end of input" : "'" + cur().text + "'";
      fail(cur(), "parse.expected", "expected " + std::string(what) + ", found " + found);
    }
    return advance();
  }

  std::string expect_ident(std::string_view what) { return expect(TokenKind::ident, what).text; }

  void recover_top_level() {
    if (!at(TokenKind::eof))
      advance();
    while (!at(TokenKind::eof) && !at(TokenKind::kw_struct) && !at(TokenKind::kw_protocol))
      advance();
  }

  static Span join(const Span &a, const Span &b) {
    Span s = a;
    if (b.offset + b.length > a.offset)
      s.length = b.offset + b.length - a.offset;
    return s;
  }
  Span since(const Span &start) const { return join(start, tokens_[pos_ == 0 ? 0 : pos_ - 1].span); }

  // --- declarations ----------------------------------------------------------

  StructDecl parse_struct() {
    StructDecl s;
    Span start = expect(TokenKind::kw_struct, "'struct'").span;
    s.name = expect_ident("struct name");
    s.file = std::string(path_);
    const Token open = expect(TokenKind::lbrace, "'{' after struct name");
    while (!at(TokenKind::rbrace)) {
      if (at(TokenKind::kw_var)) {
        s.fields.push_back(parse_field());
      } else if (at(TokenKind::kw_func) || at(TokenKind::kw_mutating)) {
        s.methods.push_back(parse_method());
      } else if (at(TokenKind::eof)) {
        fail(open, "parse.unclosed-brace", "unclosed '{' in struct '" + s.name + "'");
      } else {
        fail(cur(), "parse.expected-member", "expected 'var' or 'func' in struct body, found '" + cur().text + "'");
      }
    }
    expect(TokenKind::rbrace, "'}'");
    s.span = since(start);
    return s;
  }

  TypeSyntax parse_type() {
    TypeSyntax t;
    Span start = cur().span;
    if (accept(TokenKind::lbracket)) {
      t.base = expect_ident("element type");
      t.array = true;
      expect(TokenKind::rbracket, "']'");
    } else {
      std::string outer = expect_ident("type name");
      if (accept(TokenKind::lt)) {
        std::string inner = expect_ident("type argument");
        expect(TokenKind::gt, "'>'");
        if (outer == "Array") {
          t.base = inner;
          t.array = true;
        } else {
          t.base = outer + "<" + inner + ">";
        }
      } else {
        t.base = outer;
      }
    }
    if (accept(TokenKind::question))
      t.optional = true;
    t.span = since(start);
    return t;
  }

  FieldDecl parse_field() {
    FieldDecl f;
    Span start = expect(TokenKind::kw_var, "'var'").span;
    f.name = expect_ident("field name");
    expect(TokenKind::colon, "':' after field name");
    f.syntax = parse_type();
    if (!at(TokenKind::eq))
      fail(cur(), "parse.missing-default", "field '" + f.name + "' requires a default value");
    advance();
    f.default_value = parse_expr();
    f.span = since(start);
    return f;
  }

  MethodDecl parse_method() {
    MethodDecl m;
    Span start = cur().span;
    if (accept(TokenKind::kw_mutating))
      m.mutating = true;
    expect(TokenKind::kw_func, "'func'");
    m.name = expect_ident("method name");
    expect(TokenKind::lparen, "'('");
    if (!at(TokenKind::rparen)) {
      do {
        Param p;
        Span ps = cur().span;
        p.name = expect_ident("parameter name");
        expect(TokenKind::colon, "':' after parameter name");
        p.syntax = parse_type();
        p.span = since(ps);
        m.params.push_back(std::move(p));
      } while (accept(TokenKind::comma));
    }
    expect(TokenKind::rparen, "')'");
    if (accept(TokenKind::kw_throws))
      m.throws = true;
    if (accept(TokenKind::thin_arrow))
      m.return_syntax = parse_type();
    m.body = parse_block();
    m.span = since(start);
    return m;
  }

  std::vector<Stmt> parse_block() {
    const Token open = expect(TokenKind::lbrace, "'{'");
    std::vector<Stmt> body;
    while (!at(TokenKind::rbrace)) {
      if (at(TokenKind::eof))
        fail(open, "parse.unclosed-brace", "unclosed '{' in block");
      body.push_back(parse_stmt());
    }
    advance();
    return body;
  }

  std::string parse_dotted() {
    std::string name = expect_ident("error name");
    while (at(TokenKind::dot) && peek().is(TokenKind::ident)) {
      advance();
      name += "." + advance().text;
    }
    return name;
  }

  Stmt parse_stmt() {
    Stmt s;
    Span start = cur().span;
    switch (cur().kind) {
    case TokenKind::kw_guard:
      advance();
      s.kind = StmtKind::Guard;
      s.value = parse_expr();
      expect(TokenKind::kw_else, "'else' after guard condition");
      s.else_body = parse_block();
      break;
    case TokenKind::kw_throw:
      advance();
      s.kind = StmtKind::Throw;
      s.name = parse_dotted();
      break;
    case TokenKind::kw_return:
      advance();
      s.kind = StmtKind::Return;
      if (!at(TokenKind::rbrace) && !cur().starts_line)
        s.value = parse_expr();
      break;
    case TokenKind::ident: {
      if (peek().is(TokenKind::eq)) {
        s.kind = StmtKind::AssignField;
        s.name = advance().text;
        advance();
        s.value = parse_expr();
      } else if (peek().is(TokenKind::dot)) {
        Expr call = parse_primary();
        if (call.kind != ExprKind::BuiltinCall)
          fail(tokens_[pos_ - 1], "parse.expected-stmt", "expression is not a statement");
        s.kind = StmtKind::CallBuiltin;
        s.value = std::move(call);
      } else {
        fail(peek(), "parse.expected-stmt", "expected '=' or '.' after '" + cur().text + "'");
      }
      break;
    }
    default:
      fail(cur(), "parse.expected-stmt", "expected statement, found '" + cur().text + "'");
    }
    s.span = since(start);
    return s;
  }

  // --- expressions -----------------------------------------------------------

  static std::optional<BinaryOp> comparison_op(TokenKind k) {
    switch (k) {
    case TokenKind::lt: return BinaryOp::Lt;
    case TokenKind::le: return BinaryOp::Le;
    case TokenKind::eqeq: return BinaryOp::Eq;
    case TokenKind::neq: return BinaryOp::Ne;
    default: return std::nullopt;
    }
  }

  Expr make_binary(BinaryOp op, Expr lhs, Expr rhs) {
    Expr e;
    e.kind = ExprKind::Binary;
    e.op = op;
    e.span = join(lhs.span, rhs.span);
    e.operands.push_back(std::move(lhs));
    e.operands.push_back(std::move(rhs));
    return e;
  }

  Expr parse_expr() {
    Expr lhs = parse_additive();
    if (auto op = comparison_op(cur().kind)) {
      advance();
      Expr rhs = parse_additive();
      lhs = make_binary(*op, std::move(lhs), std::move(rhs));
      if (comparison_op(cur().kind))
        fail(cur(), "parse.chained-comparison", "comparison operators cannot be chained");
    }
    if (at(TokenKind::gt))
      fail(cur(), "parse.unsupported-op", "operator '>' is not supported; swap operands and use '<'");
    return lhs;
  }

  Expr parse_additive() {
    Expr lhs = parse_unary();
    while (at(TokenKind::plus) || at(TokenKind::minus)) {
      BinaryOp op = advance().is(TokenKind::plus) ? BinaryOp::Add : BinaryOp::Sub;
      Expr rhs = parse_unary();
      lhs = make_binary(op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr parse_unary() {
    if (at(TokenKind::minus)) {
      Span start = advance().span;
      if (!at(TokenKind::int_lit))
        fail(cur(), "parse.unary-minus", "unary '-' applies only to integer literals");
      Token lit = advance();
      Expr e;
      e.kind = ExprKind::IntLit;
      e.int_value = -lit.int_value;
      e.span = join(start, lit.span);
      return e;
    }
    return parse_primary();
  }

  Expr parse_primary() {
    Expr e;
    Span start = cur().span;
    switch (cur().kind) {
    case TokenKind::int_lit:
      e.kind = ExprKind::IntLit;
      e.int_value = advance().int_value;
      break;
    case TokenKind::float_lit:
      e.kind = ExprKind::FloatLit;
      e.text = advance().text;
      break;
    case TokenKind::kw_true:
    case TokenKind::kw_false:
      e.kind = ExprKind::BoolLit;
      e.bool_value = advance().is(TokenKind::kw_true);
      break;
    case TokenKind::kw_nil:
      advance();
      e.kind = ExprKind::NilLit;
      break;
    case TokenKind::dot:
      advance();
      expect(TokenKind::kw_nil, "'nil' after '.'");
      e.kind = ExprKind::NilLit;
      break;
    case TokenKind::lbracket:
      advance();
      e.kind = ExprKind::ArrayLit;
      if (!at(TokenKind::rbracket)) {
        do {
          e.operands.push_back(parse_expr());
        } while (accept(TokenKind::comma));
      }
      expect(TokenKind::rbracket, "']'");
      break;
    case TokenKind::lparen: {
      advance();
      Expr inner = parse_expr();
      expect(TokenKind::rparen, "')'");
      return inner;
    }
    case TokenKind::ident: {
      e.name = advance().text;
      if (!at(TokenKind::dot)) {
        e.kind = ExprKind::Name;
        break;
      }
      advance();
      Token member = expect(TokenKind::ident, "member name after '.'");
      if (at(TokenKind::lparen)) {
        advance();
        e.kind = ExprKind::BuiltinCall;
        e.member = member.text;
        if (!at(TokenKind::rparen)) {
          do {
            e.operands.push_back(parse_expr());
          } while (accept(TokenKind::comma));
        }
        expect(TokenKind::rparen, "')'");
      } else if (member.text == "count") {
        e.kind = ExprKind::Count;
      } else {
        fail(member, "parse.unknown-property", "unsupported property '" + member.text + "'");
      }
      break;
    }
    default: {
      std::string found = at(TokenKind::eof) ? "end of input" : "'" + cur().text + "'";
      fail(cur(), "parse.expected-expr", "expected expression, found " + found);
    }
    }
    e.span = since(start);
    return e;
  }

  // --- contracts -------------------------------------------------------------

  ContractDecl parse_protocol() {
    ContractDecl c;
    Span start = expect(TokenKind::kw_protocol, "'protocol'").span;
    c.subject = expect_ident("protocol name");
    c.file = std::string(path_);
    const Token open = expect(TokenKind::lbrace, "'{' after protocol name");
    while (!at(TokenKind::rbrace)) {
      if (at(TokenKind::kw_when) || at(TokenKind::kw_after))
        c.clauses.push_back(parse_clause());
      else if (at(TokenKind::eof))
        fail(open, "parse.unclosed-brace", "unclosed '{' in protocol '" + c.subject + "'");
      else
        fail(cur(), "parse.expected-clause", "expected 'when' or 'after' clause, found '" + cur().text + "'");
    }
    advance();
    c.span = since(start);
    return c;
  }

  ContractClause parse_clause() {
    ContractClause cl;
    const Token head = advance();
    cl.id = clause_file_ + ":" + std::to_string(head.span.line);
    if (head.is(TokenKind::kw_when)) {
      cl.kind = ClauseKind::When;
      cl.predicate = parse_expr();
      expect(TokenKind::arrow, "'=>' after when-predicate");
      cl.call = parse_call_pattern();
      Span es = cur().span;
      if (accept(TokenKind::kw_throws)) {
        cl.expectation.kind = ExpectationKind::Throws;
        cl.expectation.error = parse_dotted();
      } else {
        expect(TokenKind::eqeq, "'==' or 'throws' after call");
        cl.expectation.kind = ExpectationKind::Equals;
        cl.expectation.value = parse_expr();
      }
      cl.expectation.span = since(es);
    } else {
      cl.kind = ClauseKind::After;
      cl.call = parse_call_pattern();
      expect(TokenKind::arrow, "'=>' after trigger call");
      cl.follow_up = parse_call_pattern();
      Span es = cur().span;
      expect(TokenKind::eqeq, "'==' after follow-up call");
      cl.expectation.kind = ExpectationKind::Equals;
      cl.expectation.value = parse_expr();
      cl.expectation.span = since(es);
    }
    cl.span = since(head.span);
    return cl;
  }

  CallPattern parse_call_pattern() {
    CallPattern c;
    Span start = cur().span;
    c.method = expect_ident("method name");
    expect(TokenKind::lparen, "'(' after method name");
    if (!at(TokenKind::rparen)) {
      do {
        ArgPattern a;
        Span as = cur().span;
        a.label = expect_ident("argument label");
        expect(TokenKind::colon, "':' after argument label");
        if (accept(TokenKind::underscore)) {
          a.kind = ArgPatternKind::Wildcard;
        } else {
          Expr v = parse_unary();
          if (v.kind == ExprKind::Name) {
            a.kind = ArgPatternKind::MetaVar;
            a.name = v.name;
          } else {
            a.kind = ArgPatternKind::Literal;
            a.literal = std::move(v);
          }
        }
        a.span = since(as);
        c.args.push_back(std::move(a));
      } while (accept(TokenKind::comma));
    }
    expect(TokenKind::rparen, "')'");
    c.span = since(start);
    return c;
  }

  // --- generated tests -------------------------------------------------------

  void expect_word(std::string_view w) {
    if (!at_word(w))
      fail(cur(), "parse.expected", "expected '" + std::string(w) + "', found '" + cur().text + "'");
    advance();
  }

  CallPattern parse_receiver_call(const std::string &receiver) {
    if (!at_word(receiver))
      fail(cur(), "parse.expected", "expected call on '" + receiver + "'");
    advance();
    expect(TokenKind::dot, "'.'");
    CallPattern call = parse_call_pattern();
    for (const auto &a : call.args)
      if (a.kind != ArgPatternKind::Literal)
        fail(cur(), "parse.expected-literal", "test call arguments must be literals");
    return call;
  }

  TestCase parse_test_case() {
    TestCase t;
    Span start = cur().span;
    expect_word("test");
    t.name = expect_ident("test name");
    const Token open = expect(TokenKind::lbrace, "'{'");
    expect(TokenKind::kw_var, "'var'");
    t.receiver = expect_ident("receiver name");
    expect(TokenKind::eq, "'='");
    t.struct_name = expect_ident("struct name");
    expect(TokenKind::lparen, "'('");
    if (!at(TokenKind::rparen)) {
      do {
        std::string label = expect_ident("field label");
        expect(TokenKind::colon, "':'");
        t.inits.emplace_back(std::move(label), parse_expr());
      } while (accept(TokenKind::comma));
    }
    expect(TokenKind::rparen, "')'");
    while (!at(TokenKind::rbrace)) {
      if (at(TokenKind::eof))
        fail(open, "parse.unclosed-brace", "unclosed '{' in test '" + t.name + "'");
      TestStep step;
      Span ss = cur().span;
      if (at_word("assert")) {
        advance();
        expect(TokenKind::lparen, "'('");
        step.kind = TestStepKind::AssertEquals;
        step.call = parse_receiver_call(t.receiver);
        expect(TokenKind::eqeq, "'=='");
        step.expected = parse_expr();
        expect(TokenKind::rparen, "')'");
      } else if (at_word("assertNil")) {
        advance();
        expect(TokenKind::lparen, "'('");
        step.kind = TestStepKind::AssertNil;
        step.call = parse_receiver_call(t.receiver);
        expect(TokenKind::rparen, "')'");
      } else if (at_word("assertThrows")) {
        advance();
        expect(TokenKind::lparen, "'('");
        step.kind = TestStepKind::AssertThrows;
        step.call = parse_receiver_call(t.receiver);
        expect(TokenKind::comma, "','");
        step.error = parse_dotted();
        expect(TokenKind::rparen, "')'");
      } else {
        step.kind = TestStepKind::Call;
        step.call = parse_receiver_call(t.receiver);
      }
      step.span = since(ss);
      t.steps.push_back(std::move(step));
    }
    advance();
    t.span = since(start);
    return t;
  }

  std::string_view path_;
  std::size_t source_size_;
  std::string clause_file_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Diagnostics diags_;
};

} // namespace

Checked<SourceFile> parse_program(std::string_view source, std::string_view path) {
  Parser p(source, path);
  SourceFile file = p.parse_file();
  Checked<SourceFile> out;
  out.diagnostics = p.take_diagnostics();
  if (!has_errors(out.diagnostics))
    out.value = std::move(file);
  return out;
}

Checked<Expr> parse_expression(std::string_view source, std::string_view path) {
  Parser p(source, path);
  auto e = p.parse_lone_expression();
  Checked<Expr> out;
  out.diagnostics = p.take_diagnostics();
  if (e && !has_errors(out.diagnostics))
    out.value = std::move(*e);
  return out;
}

Checked<TestFile> parse_test_file(std::string_view source, std::string_view path) {
  Parser p(source, path);
  TestFile file = p.parse_tests();
  Checked<TestFile> out;
  out.diagnostics = p.take_diagnostics();
  if (!has_errors(out.diagnostics))
    out.value = std::move(file);
  return out;
}

} // namespace adtcheck
