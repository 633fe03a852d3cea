#include "adtcheck/frontend/ast.hpp"

#include <algorithm>

namespace adtcheck {

std::string type_name(BuiltinType t) {
  switch (t) {
  case BuiltinType::Int: return "Int";
  case BuiltinType::Bool: return "Bool";
  case BuiltinType::IntArray: return "[Int]";
  case BuiltinType::OptInt: return "Int?";
  case BuiltinType::Void: return "Void";
  case BuiltinType::Unknown: break;
  }
  return "<unknown>";
}

std::string_view binary_op_text(BinaryOp op) {
  switch (op) {
  case BinaryOp::Add: return "+";
  case BinaryOp::Sub: return "-";
  case BinaryOp::Lt: return "<";
  case BinaryOp::Le: return "<=";
  case BinaryOp::Eq: return "==";
  case BinaryOp::Ne: return "!=";
  }
  return "?";
}

int StructDecl::field_index(std::string_view n) const {
  for (std::size_t i = 0; i < fields.size(); ++i)
    if (fields[i].name == n)
      return static_cast<int>(i);
  return -1;
}

int StructDecl::method_index(std::string_view n) const {
  for (std::size_t i = 0; i < methods.size(); ++i)
    if (methods[i].name == n)
      return static_cast<int>(i);
  return -1;
}

const StructDecl *SubjectProgram::find_struct(std::string_view name) const {
  int i = struct_index(name);
  return i < 0 ? nullptr : &structs[static_cast<std::size_t>(i)];
}

int SubjectProgram::struct_index(std::string_view name) const {
  for (std::size_t i = 0; i < structs.size(); ++i)
    if (structs[i].name == name)
      return static_cast<int>(i);
  return -1;
}

std::vector<ContractClause> SubjectProgram::clauses_for(std::string_view struct_name) const {
  std::vector<ContractClause> out;
  for (const auto &c : contracts)
    if (c.subject == struct_name)
      out.insert(out.end(), c.clauses.begin(), c.clauses.end());
  return out;
}

namespace {

template <typename T, typename F>
bool same_list(const std::vector<T> &a, const std::vector<T> &b, F eq) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), eq);
}

bool same_opt_expr(const std::optional<Expr> &a, const std::optional<Expr> &b) {
  if (a.has_value() != b.has_value())
    return false;
  return !a || same_structure(*a, *b);
}

bool same_type(const TypeSyntax &a, const TypeSyntax &b) {
  return a.base == b.base && a.array == b.array && a.optional == b.optional;
}

bool same_stmt(const Stmt &a, const Stmt &b) {
  return a.kind == b.kind && a.name == b.name && same_opt_expr(a.value, b.value) &&
         same_list(a.else_body, b.else_body, same_stmt);
}

bool same_call(const CallPattern &a, const CallPattern &b) {
  return a.method == b.method &&
         same_list(a.args, b.args, [](const ArgPattern &x, const ArgPattern &y) {
           return x.kind == y.kind && x.label == y.label && x.name == y.name &&
                  same_opt_expr(x.literal, y.literal);
         });
}

bool same_clause(const ContractClause &a, const ContractClause &b) {
  if (a.kind != b.kind || !same_opt_expr(a.predicate, b.predicate) || !same_call(a.call, b.call))
    return false;
  if (a.follow_up.has_value() != b.follow_up.has_value())
    return false;
  if (a.follow_up && !same_call(*a.follow_up, *b.follow_up))
    return false;
  return a.expectation.kind == b.expectation.kind && a.expectation.error == b.expectation.error &&
         same_opt_expr(a.expectation.value, b.expectation.value);
}

bool same_method(const MethodDecl &a, const MethodDecl &b) {
  if (a.return_syntax.has_value() != b.return_syntax.has_value())
    return false;
  if (a.return_syntax && !same_type(*a.return_syntax, *b.return_syntax))
    return false;
  return a.name == b.name && a.throws == b.throws && a.mutating == b.mutating &&
         same_list(a.params, b.params,
                   [](const Param &x, const Param &y) {
                     return x.name == y.name && same_type(x.syntax, y.syntax);
                   }) &&
         same_list(a.body, b.body, same_stmt);
}

bool same_struct(const StructDecl &a, const StructDecl &b) {
  return a.name == b.name &&
         same_list(a.fields, b.fields,
                   [](const FieldDecl &x, const FieldDecl &y) {
                     return x.name == y.name && same_type(x.syntax, y.syntax) &&
                            same_structure(x.default_value, y.default_value);
                   }) &&
         same_list(a.methods, b.methods, same_method);
}

} // namespace

bool same_structure(const Expr &a, const Expr &b) {
  if (a.kind != b.kind)
    return false;
  switch (a.kind) {
  case ExprKind::IntLit: return a.int_value == b.int_value;
  case ExprKind::BoolLit: return a.bool_value == b.bool_value;
  case ExprKind::FloatLit: return a.text == b.text;
  case ExprKind::NilLit: return true;
  case ExprKind::Binary:
    if (a.op != b.op)
      return false;
    break;
  default:
    if (a.name != b.name || a.member != b.member)
      return false;
    break;
  }
  return same_list(a.operands, b.operands,
                   [](const Expr &x, const Expr &y) { return same_structure(x, y); });
}

bool same_structure(const SourceFile &a, const SourceFile &b) {
  return same_list(a.structs, b.structs, same_struct) &&
         same_list(a.contracts, b.contracts, [](const ContractDecl &x, const ContractDecl &y) {
           return x.subject == y.subject && same_list(x.clauses, y.clauses, same_clause);
         });
}

} // namespace adtcheck
