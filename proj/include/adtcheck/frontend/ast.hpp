#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adtcheck/frontend/diagnostic.hpp"

namespace adtcheck {

/// The closed set of value types a subject program may use.
enum class BuiltinType { Unknown, Int, Bool, IntArray, OptInt, Void };

std::string type_name(BuiltinType t);

/// A type as written: `Int`, `Bool`, `[Int]`, `Array<Int>`, `Int?`. Unsupported
/// names survive parsing and are rejected by the resolver.
struct TypeSyntax {
  std::string base;
  bool array = false;
  bool optional = false;
  Span span;
};

enum class BinaryOp { Add, Sub, Lt, Le, Eq, Ne };

std::string_view binary_op_text(BinaryOp op);

enum class ExprKind {
  IntLit,
  BoolLit,
  NilLit,
  FloatLit,
  ArrayLit,
  Name,        // unresolved identifier, parser output only
  FieldAccess, // resolved
  ParamRef,    // resolved
  MetaRef,     // resolved contract metavariable
  Count,       // `field.count`
  Binary,
  BuiltinCall, // `field.append(x)`, `field.popLast()`, `field.popFirst()`
  Promote,     // implicit Int -> Int? inserted by the resolver
};

struct Expr {
  ExprKind kind = ExprKind::IntLit;
  Span span;
  std::int64_t int_value = 0;
  bool bool_value = false;
  std::string text;   // literal spelling for FloatLit
  std::string name;   // identifier, or receiver field for Count/BuiltinCall
  std::string member; // builtin method name
  BinaryOp op = BinaryOp::Add;
  std::vector<Expr> operands;

  // Filled in by the resolver.
  BuiltinType type = BuiltinType::Unknown;
  int index = -1; // field, parameter or metavariable index
};

enum class StmtKind { Guard, Throw, Return, AssignField, CallBuiltin };

struct Stmt {
  StmtKind kind = StmtKind::Return;
  Span span;
  std::optional<Expr> value; // guard condition, return value, assigned value, or the call
  std::vector<Stmt> else_body;
  std::string name; // thrown error, or assigned field
  int field_index = -1;
};

struct Param {
  std::string name;
  TypeSyntax syntax;
  BuiltinType type = BuiltinType::Unknown;
  Span span;
};

struct FieldDecl {
  std::string name;
  TypeSyntax syntax;
  BuiltinType type = BuiltinType::Unknown;
  Expr default_value;
  Span span;
};

struct MethodDecl {
  std::string name;
  std::vector<Param> params;
  std::optional<TypeSyntax> return_syntax;
  BuiltinType return_type = BuiltinType::Void;
  bool throws = false;
  bool mutating = false;
  std::vector<Stmt> body;
  Span span;
};

struct StructDecl {
  std::string name;
  std::vector<FieldDecl> fields;
  std::vector<MethodDecl> methods;
  Span span;
  std::string file;

  int field_index(std::string_view n) const;
  int method_index(std::string_view n) const;
};

enum class ArgPatternKind { Wildcard, Literal, MetaVar };

struct ArgPattern {
  ArgPatternKind kind = ArgPatternKind::Wildcard;
  std::string label;
  std::optional<Expr> literal;
  std::string name; // metavariable name
  Span span;
  int meta_index = -1;
};

struct CallPattern {
  std::string method;
  std::vector<ArgPattern> args;
  Span span;
  int method_index = -1;
};

enum class ClauseKind { When, After };
enum class ExpectationKind { Throws, Equals };

struct Expectation {
  ExpectationKind kind = ExpectationKind::Equals;
  std::string error;
  std::optional<Expr> value;
  Span span;
};

struct MetaVar {
  std::string name;
  BuiltinType type = BuiltinType::Unknown;
};

struct ContractClause {
  ClauseKind kind = ClauseKind::When;
  std::string id; // `file:line`
  Span span;
  std::optional<Expr> predicate;        // when
  CallPattern call;                     // the call under test, or the after trigger
  std::optional<CallPattern> follow_up; // after
  Expectation expectation;
  std::vector<MetaVar> metavars; // filled in by the resolver
};

struct ContractDecl {
  std::string subject;
  std::vector<ContractClause> clauses;
  Span span;
  std::string file;
  int struct_index = -1;
};

struct SourceFile {
  std::string path;
  std::vector<StructDecl> structs;
  std::vector<ContractDecl> contracts;
};

/// Fully resolved program: every name bound, every expression typed.
struct SubjectProgram {
  std::vector<StructDecl> structs;
  std::vector<ContractDecl> contracts;

  const StructDecl *find_struct(std::string_view name) const;
  int struct_index(std::string_view name) const;
  /// All clauses of the contract blocks bound to `struct_name`, in file order.
  std::vector<ContractClause> clauses_for(std::string_view struct_name) const;
};

/// Structural equality ignoring spans and resolver annotations.
bool same_structure(const Expr &a, const Expr &b);
bool same_structure(const SourceFile &a, const SourceFile &b);

} // namespace adtcheck
