#pragma once

#include <string>
#include <vector>

#include "adtcheck/checker/checker.hpp"
#include "adtcheck/frontend/parser.hpp"

namespace adtcheck::testgen {

inline constexpr const char *kReportVersion = "1.0.0";

/// JSON report matching schemas/report.schema.json, two-space indented, keys
/// in a fixed order, trailing newline.
std::string render_json(const checker::Report &report);

/// `0 violations, 0 vacuous clauses, 15 states, 45 transitions`, then one
/// block per violation and one `vacuous <id>` line per vacuous clause.
std::string render_text(const checker::Report &report);

struct TestCaseText {
  std::string name; // also the file stem
  std::string body; // `.subjtest` source
};

/// One test per violation: construct the initial state, replay the trace
/// prefix, assert the clause's expectation on the last call.
TestCase make_test(const checker::Violation &v, const checker::Model &m);
std::vector<TestCaseText> render_tests(const checker::Report &report, const checker::Model &m);

/// `<when|after>_<clause id with non-alphanumerics as _>_<fnv1a32 of trace>`.
std::string test_name(const checker::Violation &v, ClauseKind kind);

/// Source literal for a constructor value (`[1, 2]`, `nil`, `true`, `3`).
Expr value_literal(const terms::Term &t);

} // namespace adtcheck::testgen
