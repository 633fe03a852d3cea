#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adtcheck/frontend/ast.hpp"
#include "adtcheck/terms/trs.hpp"

namespace adtcheck::lowering {

using terms::Guard;
using terms::RewriteRule;
using terms::Sort;
using terms::Term;

terms::Sort sort_of(BuiltinType t);
/// `Buffer` -> `BufferS`.
terms::Sort struct_sort(const StructDecl &s);

/// Replacement for a field default before exploration (`--override`).
struct FieldOverride {
  std::string field;
  Expr value; // resolved literal of the field's type
};

struct LoweredStruct {
  terms::Sort sort;
  terms::OpSymbol constructor;
  Term initial_state;
};

/// Sort and constructor for `s` (field order preserved) and the initial
/// state built from the field defaults, with `overrides` substituted.
LoweredStruct lower_struct(const StructDecl &s, std::span<const FieldOverride> overrides = {});

/// Terms bound to the names an expression may mention. Lowering a mutating
/// builtin call (`popLast`, `append`, ...) updates `fields` in place, so
/// evaluation order is left to right.
struct ExprEnv {
  std::vector<Term> fields;
  std::vector<Term> params;
  std::vector<Term> metavars;
};

Term lower_expr(const Expr &e, ExprEnv &env);

/// A guard condition `c` as a rule guard: comparisons map onto relations,
/// any other Bool expression `c` becomes `c = true`.
Guard lower_condition(const Expr &c, ExprEnv &env);

struct Conjunct {
  Expr condition;
  bool polarity = true;
  Guard guard; // already negated when polarity is false
};

struct PathCondition {
  std::vector<Conjunct> conjuncts;
};

enum class OutcomeKind { Returns, Throws };

struct PathEffect {
  /// Field values at the end of the path, over the entry-state variables.
  std::vector<Term> fields;
  /// Names of the fields assigned on the path, in first-update order.
  std::vector<std::string> updated;
  OutcomeKind outcome = OutcomeKind::Returns;
  Term value; // returned value (`void` for Void methods)
  std::string error;
};

struct Path {
  PathCondition condition;
  PathEffect effect;
};

/// Variable names used for the fields and parameters in rule patterns.
struct PatternNames {
  std::vector<std::string> fields;
  std::vector<std::string> params;
};

/// Field and parameter names, renamed where they collide with a nullary
/// symbol of `sig`.
PatternNames pattern_names(const StructDecl &owner, const MethodDecl &m, const terms::Signature &sig);

/// One entry per maximal control path of `m`, in source order with the
/// passing branch of each guard first.
std::vector<Path> enumerate_paths(const StructDecl &owner, const MethodDecl &m, const PatternNames &names);
std::vector<Path> enumerate_paths(const StructDecl &owner, const MethodDecl &m);

struct LoweredMethod {
  terms::OpSymbol symbol;
  std::vector<RewriteRule> rules;
};

/// Lowers `m` to the symbol `symbol_name : OwnerS x params -> OutcomeS` and
/// one rule per path. `sig` must already contain the owner's constructor.
LoweredMethod lower_method(const StructDecl &owner, const MethodDecl &m, const std::string &symbol_name,
                           const terms::Signature &sig);

struct StructSymbols {
  std::string name;
  LoweredStruct lowered;
  std::vector<std::string> method_symbols; // parallel to StructDecl::methods
};

struct LoweredProgram {
  terms::Trs trs;
  std::vector<StructSymbols> structs; // parallel to SubjectProgram::structs

  const StructSymbols *find(std::string_view struct_name) const;
};

/// prelude + struct sorts/constructors + method rules. Name clashes with the
/// prelude are errors; rule overlaps among lowered rules are warnings.
Checked<LoweredProgram> lower_program(const SubjectProgram &p);

} // namespace adtcheck::lowering
