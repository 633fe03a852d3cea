#pragma once

#include <span>

#include "adtcheck/frontend/ast.hpp"

namespace adtcheck {

/// Binds names and assigns types across a set of parsed files. Errors carry
/// distinct codes (see `resolve.*` codes in the README).
Checked<SubjectProgram> resolve(std::span<const SourceFile> files);
Checked<SubjectProgram> resolve(const SourceFile &file);

/// Type-checks a closed literal against `expected`; used for field
/// defaults and `--override` values. Returns the (possibly promoted) literal.
Checked<Expr> resolve_literal(const Expr &literal, BuiltinType expected, std::string_view file);

/// Maps written type syntax onto the built-in set, if supported.
std::optional<BuiltinType> builtin_type_of(const TypeSyntax &syntax);

} // namespace adtcheck
