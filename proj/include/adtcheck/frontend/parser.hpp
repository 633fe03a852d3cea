#pragma once

#include <string_view>

#include "adtcheck/frontend/ast.hpp"
#include "adtcheck/frontend/lexer.hpp"

namespace adtcheck {

/// Parses a `.subj` file: any sequence of `struct` and `protocol` blocks.
/// After a syntax error the parser skips to the next top-level keyword, so
/// one call can report several errors.
Checked<SourceFile> parse_program(std::string_view source, std::string_view path = "<input>");

/// Parses a single expression (used for `--override field=value`).
Checked<Expr> parse_expression(std::string_view source, std::string_view path = "<input>");

/// One statement inside a generated `test` block.
enum class TestStepKind { Call, AssertEquals, AssertNil, AssertThrows };

struct TestStep {
  TestStepKind kind = TestStepKind::Call;
  CallPattern call; // arguments are literals
  std::optional<Expr> expected;
  std::string error;
  Span span;
};

struct TestCase {
  std::string name;
  std::string receiver;    // the `var` name, e.g. `sut`
  std::string struct_name; // the constructed type
  std::vector<std::pair<std::string, Expr>> inits;
  std::vector<TestStep> steps;
  Span span;
};

struct TestFile {
  std::string path;
  std::vector<TestCase> tests;
};

/// Parses a `.subjtest` file (see docs/test-grammar.md).
Checked<TestFile> parse_test_file(std::string_view source, std::string_view path = "<input>");

} // namespace adtcheck
