#include "adtcheck/terms/text.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace adtcheck::terms {

std::string print_trs(const Trs &trs) {
  std::ostringstream os;
  for (const Sort &s : trs.signature.sorts())
    os << "sort " << s.name << '\n';
  for (const OpSymbol &op : trs.signature.ops()) {
    os << "op " << op.name << " :";
    for (const Sort &s : op.arg_sorts)
      os << ' ' << s.name;
    os << " -> " << op.result_sort.name;
    if (op.kind == OpKind::constructor)
      os << " [ctor]";
    else if (op.builtin)
      os << " [builtin]";
    os << '\n';
  }
  for (const RewriteRule &r : trs.rules())
    os << to_string(r) << '\n';
  return os.str();
}

namespace {

enum class Tok { Ident, Int, LParen, RParen, Comma, Colon, LBracket, RBracket, Arrow, Lt, Le, Eq, Ne, And, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t value = 0;
  std::size_t col = 1;
  std::size_t offset = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '#' || c == '\''; }

/// Untyped parse of a term, typed in a second pass once arities are known.
struct Raw {
  bool is_int = false;
  std::int64_t value = 0;
  std::string name;
  bool applied = false;
  std::vector<Raw> kids;
  std::size_t col = 1;
};

struct LineError {
  std::size_t col;
  std::string message;
};

class LineParser {
public:
  LineParser(std::string_view line, std::size_t line_offset) : offset_(line_offset) { lex(line); }

  const Token &cur() const { return toks_[pos_]; }
  const Token &peek(std::size_t n = 1) const { return toks_[std::min(pos_ + n, toks_.size() - 1)]; }
  bool at(Tok k) const { return cur().kind == k; }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  Token expect(Tok k, std::string_view what) {
    if (!at(k))
      throw LineError{cur().col, "expected " + std::string(what) + (at(Tok::End) ? ", found end of line" : ", found '" + cur().text + "'")};
    return take();
  }

  Raw raw_term() {
    Raw r;
    r.col = cur().col;
    if (at(Tok::Int)) {
      r.is_int = true;
      r.value = take().value;
      return r;
    }
    r.name = expect(Tok::Ident, "term").text;
    if (at(Tok::LParen)) {
      take();
      r.applied = true;
      if (!at(Tok::RParen)) {
        do {
          r.kids.push_back(raw_term());
        } while (at(Tok::Comma) && (take(), true));
      }
      expect(Tok::RParen, "')'");
    }
    return r;
  }

private:
  void lex(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
      char c = s[i];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
        continue;
      }
      if (c == '#')
        break;
      Token t;
      t.col = i + 1;
      t.offset = offset_ + i;
      std::size_t start = i;
      auto two = [&](char d) { return i + 1 < s.size() && s[i + 1] == d; };
      if (ident_start(c)) {
        while (i < s.size() && ident_char(s[i]))
          ++i;
        t.kind = Tok::Ident;
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '-' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
          ++i;
        t.kind = Tok::Int;
        auto [p, ec] = std::from_chars(s.data() + start, s.data() + i, t.value);
        if (ec != std::errc{})
          throw LineError{t.col, "integer literal out of range"};
      } else if (c == '-' && two('>')) {
        t.kind = Tok::Arrow;
        i += 2;
      } else if (c == '<') {
        t.kind = two('=') ? Tok::Le : Tok::Lt;
        i += two('=') ? 2 : 1;
      } else if (c == '!' && two('=')) {
        t.kind = Tok::Ne;
        i += 2;
      } else if (c == '/' && two('\\')) {
        t.kind = Tok::And;
        i += 2;
      } else {
        switch (c) {
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case ',': t.kind = Tok::Comma; break;
        case ':': t.kind = Tok::Colon; break;
        case '[': t.kind = Tok::LBracket; break;
        case ']': t.kind = Tok::RBracket; break;
        case '=': t.kind = Tok::Eq; break;
        default: throw LineError{t.col, std::string("illegal character '") + c + "'"};
        }
        ++i;
      }
      t.text = std::string(s.substr(start, i - start));
      toks_.push_back(std::move(t));
    }
    Token end;
    end.kind = Tok::End;
    end.col = s.size() + 1;
    end.offset = offset_ + s.size();
    toks_.push_back(end);
  }

  std::size_t offset_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

enum class VarMode { none, bind, use };

class Typer {
public:
  Typer(Signature &sig, bool auto_errors) : sig_(sig), auto_errors_(auto_errors) {}

  std::map<std::string, Sort> vars;

  Term type(const Raw &r, const Sort &expected, VarMode mode) {
    Term t = type_inner(r, expected, mode);
    if (!sort_accepts(expected, t.sort()))
      throw LineError{r.col, "'" + to_string(t) + "' has sort " + t.sort().name + ", expected " + expected.name};
    return t;
  }

private:
  Term type_inner(const Raw &r, const Sort &expected, VarMode mode) {
    if (r.is_int)
      return Term::integer(r.value);
    const OpSymbol *op = sig_.find(r.name, r.kids.size());
    if (!op && !r.applied && auto_errors_ && r.name.find('.') != std::string::npos) {
      sig_.add_op(OpSymbol{r.name, {}, sorts::Error, OpKind::constructor, false});
      op = sig_.find(r.name, 0);
    }
    if (op) {
      std::vector<Term> kids;
      for (std::size_t i = 0; i < r.kids.size(); ++i)
        kids.push_back(type(r.kids[i], op->arg_sorts[i], mode));
      return Term::op(op->name, op->result_sort, std::move(kids));
    }
    if (r.applied)
      throw LineError{r.col, "undeclared symbol " + r.name + "/" + std::to_string(r.kids.size())};
    if (mode == VarMode::none)
      throw LineError{r.col, "undeclared constant '" + r.name + "'"};
    if (auto it = vars.find(r.name); it != vars.end()) {
      if (mode == VarMode::bind)
        throw LineError{r.col, "variable '" + r.name + "' occurs twice in the left-hand side"};
      return Term::var(r.name, it->second);
    }
    if (mode == VarMode::use)
      throw LineError{r.col, "variable '" + r.name + "' does not occur in the left-hand side"};
    if (expected == sorts::Any)
      throw LineError{r.col, "cannot infer the sort of variable '" + r.name + "'"};
    vars.emplace(r.name, expected);
    return Term::var(r.name, expected);
  }

  Signature &sig_;
  bool auto_errors_;
};

Diagnostic line_diag(std::string_view path, std::size_t line, std::size_t line_offset, const LineError &e) {
  return Diagnostic{Severity::error, Span{line_offset + e.col - 1, line, e.col, 1}, "trs.syntax", e.message,
                    std::string(path)};
}

void parse_decl(LineParser &p, Trs &trs) {
  std::string kw = p.take().text;
  if (kw == "sort") {
    Sort s{p.expect(Tok::Ident, "sort name").text};
    p.expect(Tok::End, "end of line");
    trs.signature.add_sort(s);
    return;
  }
  OpSymbol op;
  op.name = p.expect(Tok::Ident, "operation name").text;
  p.expect(Tok::Colon, "':'");
  while (p.at(Tok::Ident))
    op.arg_sorts.push_back(Sort{p.take().text});
  p.expect(Tok::Arrow, "'->'");
  op.result_sort = Sort{p.expect(Tok::Ident, "result sort").text};
  op.kind = OpKind::defined;
  if (p.at(Tok::LBracket)) {
    p.take();
    std::size_t col = p.cur().col;
    std::string attr = p.expect(Tok::Ident, "attribute").text;
    p.expect(Tok::RBracket, "']'");
    if (attr == "ctor") {
      op.kind = OpKind::constructor;
    } else if (attr == "builtin") {
      static const std::vector<std::string> known{"add", "sub", "lt", "le", "eq", "ne"};
      if (std::find(known.begin(), known.end(), op.name) == known.end() || op.arity() != 2)
        throw LineError{col, "no native implementation for '" + op.name + "'"};
      op.builtin = true;
    } else {
      throw LineError{col, "unknown attribute '" + attr + "'"};
    }
  }
  p.expect(Tok::End, "end of line");
  try {
    trs.signature.add_op(std::move(op));
  } catch (const SignatureError &e) {
    throw LineError{1, e.what()};
  }
}

std::optional<Relation> relation(Tok k) {
  switch (k) {
  case Tok::Lt: return Relation::Lt;
  case Tok::Le: return Relation::Le;
  case Tok::Eq: return Relation::Eq;
  case Tok::Ne: return Relation::Ne;
  default: return std::nullopt;
  }
}

void parse_rule(LineParser &p, Trs &trs) {
  RewriteRule rule;
  rule.label = p.expect(Tok::Ident, "rule label").text;
  p.expect(Tok::Colon, "':' after rule label");
  Typer typer(trs.signature, true);
  Raw lhs = p.raw_term();
  if (lhs.is_int)
    throw LineError{lhs.col, "left-hand side must be an operation application"};
  const OpSymbol *head = trs.signature.find(lhs.name, lhs.kids.size());
  if (!head)
    throw LineError{lhs.col, "undeclared symbol " + lhs.name + "/" + std::to_string(lhs.kids.size())};
  rule.lhs = typer.type(lhs, head->result_sort, VarMode::bind);
  p.expect(Tok::Arrow, "'->'");
  rule.rhs = typer.type(p.raw_term(), rule.lhs.sort(), VarMode::use);
  if (p.at(Tok::Ident) && p.cur().text == "if") {
    p.take();
    do {
      Term l = typer.type(p.raw_term(), sorts::Any, VarMode::use);
      std::size_t col = p.cur().col;
      auto rel = relation(p.cur().kind);
      if (!rel)
        throw LineError{col, "expected a relation (<, <=, =, !=)"};
      p.take();
      Term r = typer.type(p.raw_term(), sorts::Any, VarMode::use);
      rule.guards.push_back(Guard{l, r, *rel});
    } while (p.at(Tok::And) && (p.take(), true));
  }
  p.expect(Tok::End, "end of line");
  // Identical rules already present in the base are not repeated.
  for (const RewriteRule &existing : trs.rules())
    if (existing == rule)
      return;
  try {
    trs.add_rule(std::move(rule));
  } catch (const TrsError &e) {
    throw LineError{1, e.what()};
  }
}

} // namespace

Checked<Trs> parse_trs(std::string_view text, const Trs &base, std::string_view path) {
  Trs trs = base;
  Checked<Trs> out;
  std::size_t line_no = 0;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t nl = text.find('\n', offset);
    std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(offset, end - offset);
    ++line_no;
    try {
      LineParser p(line, offset);
      if (!p.at(Tok::End)) {
        bool decl = p.at(Tok::Ident) && (p.cur().text == "sort" || p.cur().text == "op") && p.peek().kind == Tok::Ident;
        if (decl)
          parse_decl(p, trs);
        else
          parse_rule(p, trs);
      }
    } catch (const LineError &e) {
      out.diagnostics.push_back(line_diag(path, line_no, offset, e));
    }
    if (nl == std::string_view::npos)
      break;
    offset = nl + 1;
  }
  if (!has_errors(out.diagnostics))
    out.value = std::move(trs);
  return out;
}

Checked<Term> parse_term(std::string_view text, const Signature &sig) {
  Checked<Term> out;
  Signature copy = sig;
  try {
    LineParser p(text, 0);
    Typer typer(copy, false);
    Raw raw = p.raw_term();
    Term t = typer.type(raw, sorts::Any, VarMode::none);
    p.expect(Tok::End, "end of term");
    out.value = t;
  } catch (const LineError &e) {
    out.diagnostics.push_back(line_diag("<term>", 1, 0, e));
  }
  return out;
}

} // namespace adtcheck::terms
