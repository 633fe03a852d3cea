#include "adtcheck/testgen/render.hpp"

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "adtcheck/frontend/printer.hpp"

namespace adtcheck::testgen {

using checker::Report;
using checker::Violation;
using nlohmann::ordered_json;
using terms::Term;

namespace {

ordered_json arg_json(const Term &t) {
  if (t.is_int())
    return t.value();
  if (t.is_op() && t.arity() == 0 && (t.name() == "true" || t.name() == "false"))
    return t.name() == "true";
  return terms::to_string(t);
}

std::string plural(std::size_t n, const char *word, const char *words) {
  return std::to_string(n) + " " + (n == 1 ? word : words);
}

std::string render_trace(const checker::Trace &t) {
  std::string out;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const checker::TraceStep &s = t.steps[i];
    out += "  " + std::to_string(i + 1) + ". " + checker::to_string(s.action) + " -> " +
           checker::outcome_text(s.threw, s.value) + "  " + terms::to_string(s.next_state) + "\n";
  }
  return out;
}

CallPattern call_of(const checker::Action &a, const StructDecl &s) {
  const MethodDecl &m = s.methods.at(static_cast<std::size_t>(a.method_index));
  CallPattern c;
  c.method = m.name;
  c.method_index = a.method_index;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    ArgPattern p;
    p.kind = ArgPatternKind::Literal;
    p.label = m.params.at(i).name;
    p.literal = value_literal(a.args[i]);
    c.args.push_back(std::move(p));
  }
  return c;
}

} // namespace

std::string render_json(const Report &report) {
  ordered_json j;
  j["version"] = kReportVersion;
  j["bounds"] = {{"max_depth", report.bounds.max_depth},
                 {"arg_domain", report.bounds.arg_domain},
                 {"fuel", report.bounds.fuel}};
  j["states_explored"] = report.states_explored;
  j["transitions_explored"] = report.transitions_explored;
  ordered_json vs = ordered_json::array();
  for (const Violation &v : report.violations) {
    ordered_json trace = ordered_json::array();
    for (const checker::TraceStep &s : v.trace.steps) {
      ordered_json args = ordered_json::array();
      for (const Term &a : s.action.args)
        args.push_back(arg_json(a));
      trace.push_back({{"method", s.action.method},
                       {"args", std::move(args)},
                       {"outcome", checker::outcome_text(s.threw, s.value)},
                       {"state", terms::to_string(s.next_state)}});
    }
    vs.push_back({{"clause_id", v.clause_id}, {"expected", v.expected}, {"actual", v.actual}, {"trace", trace}});
  }
  j["violations"] = std::move(vs);
  j["vacuous_clauses"] = report.vacuous_clauses;
  return j.dump(2) + "\n";
}

std::string render_text(const Report &report) {
  std::ostringstream os;
  os << plural(report.violations.size(), "violation", "violations") << ", "
     << plural(report.vacuous_clauses.size(), "vacuous clause", "vacuous clauses") << ", "
     << plural(report.states_explored, "state", "states") << ", "
     << plural(report.transitions_explored, "transition", "transitions") << "\n";
  for (const Violation &v : report.violations) {
    os << "violation " << v.clause_id << ": expected " << v.expected << ", got " << v.actual << " ("
       << plural(v.trace.steps.size(), "call", "calls") << ")\n";
    os << render_trace(v.trace);
  }
  for (const std::string &id : report.vacuous_clauses)
    os << "vacuous " << id << "\n";
  return os.str();
}

Expr value_literal(const Term &t) {
  Expr e;
  if (t.is_int()) {
    e.kind = ExprKind::IntLit;
    e.int_value = t.value();
    return e;
  }
  if (!t.is_op())
    throw std::invalid_argument("not a value: " + terms::to_string(t));
  const std::string &h = t.name();
  if (h == "true" || h == "false") {
    e.kind = ExprKind::BoolLit;
    e.bool_value = h == "true";
  } else if (h == "noneOpt") {
    e.kind = ExprKind::NilLit;
  } else if (h == "some" && t.arity() == 1) {
    return value_literal(t.child(0));
  } else if (h == "nil" || h == "cons") {
    e.kind = ExprKind::ArrayLit;
    for (Term cur = t; cur.is_op() && cur.name() == "cons"; cur = cur.child(1))
      e.operands.push_back(value_literal(cur.child(0)));
  } else {
    throw std::invalid_argument("no source literal for " + terms::to_string(t));
  }
  return e;
}

std::string test_name(const Violation &v, ClauseKind kind) {
  std::string id;
  for (char c : v.clause_id)
    id += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  std::uint32_t h = 2166136261u;
  auto mix = [&](const std::string &s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 16777619u;
    }
    h ^= 0xff;
    h *= 16777619u;
  };
  mix(v.clause_id);
  mix(terms::to_string(v.trace.initial));
  for (const checker::TraceStep &s : v.trace.steps) {
    mix(checker::to_string(s.action));
    mix(checker::outcome_text(s.threw, s.value));
    mix(terms::to_string(s.next_state));
  }
  char hex[9];
  std::snprintf(hex, sizeof hex, "%08x", h);
  return std::string(kind == ClauseKind::When ? "when_" : "after_") + id + "_" + hex;
}

TestCase make_test(const Violation &v, const checker::Model &m) {
  const StructDecl &s = *m.subject;
  ClauseKind kind = ClauseKind::When;
  for (const ContractClause &c : m.clauses)
    if (c.id == v.clause_id)
      kind = c.kind;
  TestCase tc;
  tc.name = test_name(v, kind);
  tc.receiver = "sut";
  tc.struct_name = s.name;
  for (std::size_t i = 0; i < s.fields.size(); ++i)
    tc.inits.emplace_back(s.fields[i].name, value_literal(v.trace.initial.child(i)));
  for (std::size_t i = 0; i < v.trace.steps.size(); ++i) {
    const checker::TraceStep &st = v.trace.steps[i];
    const bool last = i + 1 == v.trace.steps.size();
    TestStep step;
    step.call = call_of(st.action, s);
    const bool throws = last ? v.expected_throws : st.threw;
    const Term &value = last ? v.expected_value : st.value;
    if (throws) {
      step.kind = TestStepKind::AssertThrows;
      step.error = value.name();
    } else if (last && value.is_op() && value.name() == "noneOpt" && value.arity() == 0) {
      step.kind = TestStepKind::AssertNil;
    } else if (last && !(value.is_op() && value.name() == "void")) {
      step.kind = TestStepKind::AssertEquals;
      step.expected = value_literal(value);
    }
    tc.steps.push_back(std::move(step));
  }
  return tc;
}

std::vector<TestCaseText> render_tests(const Report &report, const checker::Model &m) {
  std::vector<TestCaseText> out;
  for (const Violation &v : report.violations) {
    TestFile f;
    f.tests.push_back(make_test(v, m));
    out.push_back(TestCaseText{f.tests.front().name, print_test_file(f)});
  }
  return out;
}

} // namespace adtcheck::testgen
