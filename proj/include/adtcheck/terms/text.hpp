#pragma once

#include <string>
#include <string_view>

#include "adtcheck/frontend/diagnostic.hpp"
#include "adtcheck/terms/trs.hpp"

namespace adtcheck::terms {

/// Text form of a whole Trs, one declaration or rule per line:
///
///   sort BufferS
///   op Buffer : IntS ListS -> BufferS [ctor]
///   op add : IntS IntS -> IntS [builtin]
///   write.1: write(Buffer(c,s),d) -> ok(Buffer(c,append(s,d)),void) if count(s) < c
///
/// Guards use `<`, `<=`, `=`, `!=` and are joined with `/\`. `#` starts a
/// comment.
std::string print_trs(const Trs &trs);

/// Parses the text form on top of `base` (usually the prelude). Identifiers
/// that are not declared symbols are rule variables; their sort is taken from
/// the position of their first occurrence in the left-hand side. Undeclared
/// dotted nullary names (`BufferError.Overflow`) are declared as ErrorS
/// constants.
Checked<Trs> parse_trs(std::string_view text, const Trs &base, std::string_view path = "<trs>");

/// Parses a ground term in the debug format.
Checked<Term> parse_term(std::string_view text, const Signature &sig);

} // namespace adtcheck::terms
