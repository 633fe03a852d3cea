#pragma once

#include <string>

#include "adtcheck/frontend/ast.hpp"
#include "adtcheck/frontend/parser.hpp"

namespace adtcheck {

std::string print_type(const TypeSyntax &t);
std::string print_expr(const Expr &e);
std::string print_call(const CallPattern &c);
std::string print_clause(const ContractClause &c);

/// Canonical layout of a whole file. Parsing the output yields a
/// structurally equal SourceFile.
std::string print_source(const SourceFile &file);

std::string print_test_file(const TestFile &file);

} // namespace adtcheck
