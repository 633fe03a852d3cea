#include "adtcheck/frontend/printer.hpp"

#include <sstream>

namespace adtcheck {

std::string print_type(const TypeSyntax &t) {
  std::string s = t.array ? "[" + t.base + "]" : t.base;
  if (t.optional)
    s += "?";
  return s;
}

std::string print_expr(const Expr &e) {
  switch (e.kind) {
  case ExprKind::IntLit: return std::to_string(e.int_value);
  case ExprKind::BoolLit: return e.bool_value ? "true" : "false";
  case ExprKind::NilLit: return "nil";
  case ExprKind::FloatLit: return e.text;
  case ExprKind::ArrayLit: {
    std::string s = "[";
    for (std::size_t i = 0; i < e.operands.size(); ++i)
      s += (i ? ", " : "") + print_expr(e.operands[i]);
    return s + "]";
  }
  case ExprKind::Name:
  case ExprKind::FieldAccess:
  case ExprKind::ParamRef:
  case ExprKind::MetaRef: return e.name;
  case ExprKind::Count: return e.name + ".count";
  case ExprKind::BuiltinCall: {
    std::string s = e.name + "." + e.member + "(";
    for (std::size_t i = 0; i < e.operands.size(); ++i)
      s += (i ? ", " : "") + print_expr(e.operands[i]);
    return s + ")";
  }
  case ExprKind::Promote: return print_expr(e.operands.at(0));
  case ExprKind::Binary: {
    auto side = [](const Expr &x) {
      std::string s = print_expr(x);
      return x.kind == ExprKind::Binary ? "(" + s + ")" : s;
    };
    return side(e.operands[0]) + " " + std::string(binary_op_text(e.op)) + " " + side(e.operands[1]);
  }
  }
  return "?";
}

std::string print_call(const CallPattern &c) {
  std::string s = c.method + "(";
  for (std::size_t i = 0; i < c.args.size(); ++i) {
    const ArgPattern &a = c.args[i];
    s += (i ? ", " : "") + a.label + ": ";
    switch (a.kind) {
    case ArgPatternKind::Wildcard: s += "_"; break;
    case ArgPatternKind::MetaVar: s += a.name; break;
    case ArgPatternKind::Literal: s += print_expr(*a.literal); break;
    }
  }
  return s + ")";
}

std::string print_clause(const ContractClause &c) {
  std::string s;
  if (c.kind == ClauseKind::When)
    s = "when " + print_expr(*c.predicate) + " => " + print_call(c.call);
  else
    s = "after " + print_call(c.call) + " => " + print_call(*c.follow_up);
  if (c.expectation.kind == ExpectationKind::Throws)
    s += " throws " + c.expectation.error;
  else
    s += " == " + print_expr(*c.expectation.value);
  return s;
}

namespace {

void print_block(std::ostream &os, const std::vector<Stmt> &body, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  for (const Stmt &s : body) {
    os << pad;
    switch (s.kind) {
    case StmtKind::Guard:
      os << "guard " << print_expr(*s.value) << " else {\n";
      print_block(os, s.else_body, depth + 1);
      os << pad << "}\n";
      continue;
    case StmtKind::Throw: os << "throw " << s.name; break;
    case StmtKind::Return:
      os << "return";
      if (s.value)
        os << ' ' << print_expr(*s.value);
      break;
    case StmtKind::AssignField: os << s.name << " = " << print_expr(*s.value); break;
    case StmtKind::CallBuiltin: os << print_expr(*s.value); break;
    }
    os << '\n';
  }
}

} // namespace

std::string print_source(const SourceFile &file) {
  std::ostringstream os;
  bool first = true;
  for (const StructDecl &s : file.structs) {
    if (!first)
      os << '\n';
    first = false;
    os << "struct " << s.name << " {\n";
    for (const FieldDecl &f : s.fields)
      os << "  var " << f.name << ": " << print_type(f.syntax) << " = " << print_expr(f.default_value) << '\n';
    for (const MethodDecl &m : s.methods) {
      os << "  " << (m.mutating ? "mutating " : "") << "func " << m.name << '(';
      for (std::size_t i = 0; i < m.params.size(); ++i)
        os << (i ? ", " : "") << m.params[i].name << ": " << print_type(m.params[i].syntax);
      os << ')';
      if (m.throws)
        os << " throws";
      if (m.return_syntax)
        os << " -> " << print_type(*m.return_syntax);
      os << " {\n";
      print_block(os, m.body, 2);
      os << "  }\n";
    }
    os << "}\n";
  }
  for (const ContractDecl &c : file.contracts) {
    if (!first)
      os << '\n';
    first = false;
    os << "protocol " << c.subject << " {\n";
    for (const ContractClause &cl : c.clauses)
      os << "  " << print_clause(cl) << '\n';
    os << "}\n";
  }
  return os.str();
}

std::string print_test_file(const TestFile &file) {
  std::ostringstream os;
  for (std::size_t t = 0; t < file.tests.size(); ++t) {
    const TestCase &tc = file.tests[t];
    if (t)
      os << '\n';
    os << "test " << tc.name << " {\n";
    os << "  var " << tc.receiver << " = " << tc.struct_name << '(';
    for (std::size_t i = 0; i < tc.inits.size(); ++i)
      os << (i ? ", " : "") << tc.inits[i].first << ": " << print_expr(tc.inits[i].second);
    os << ")\n";
    for (const TestStep &st : tc.steps) {
      const std::string call = tc.receiver + "." + print_call(st.call);
      switch (st.kind) {
      case TestStepKind::Call: os << "  " << call << '\n'; break;
      case TestStepKind::AssertEquals: os << "  assert(" << call << " == " << print_expr(*st.expected) << ")\n"; break;
      case TestStepKind::AssertNil: os << "  assertNil(" << call << ")\n"; break;
      case TestStepKind::AssertThrows: os << "  assertThrows(" << call << ", " << st.error << ")\n"; break;
      }
    }
    os << "}\n";
  }
  return os.str();
}

} // namespace adtcheck
