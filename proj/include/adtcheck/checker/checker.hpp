#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "adtcheck/frontend/ast.hpp"
#include "adtcheck/lowering/lowering.hpp"
#include "adtcheck/terms/rewrite.hpp"

namespace adtcheck::checker {

using terms::Term;

struct Bounds {
  int max_depth = 8;
  std::vector<std::int64_t> arg_domain{0, 1, 2};
  std::size_t fuel = terms::kDefaultFuel;
};

/// Throws std::invalid_argument unless max_depth >= 1 and arg_domain is
/// non-empty, sorted and free of duplicates.
void validate(const Bounds &b);

/// Raised for runs that cannot complete: fuel exhaustion, stuck terms, or a
/// method result that is not an Outcome.
class CheckError : public terms::EngineError {
public:
  using terms::EngineError::EngineError;
};

/// Everything the checker needs about one struct: its declaration and
/// contract, the Trs that defines its methods, and the rewrite symbol of each
/// method.
struct Model {
  const StructDecl *subject = nullptr;
  std::vector<ContractClause> clauses;
  const terms::Trs *trs = nullptr;
  std::vector<std::string> method_symbols; // parallel to subject->methods
  Term initial;                            // normalized
};

/// Model over the lowered rules of `lowered`. Throws std::invalid_argument
/// for an unknown struct.
Model make_model(const SubjectProgram &program, const lowering::LoweredProgram &lowered,
                 std::string_view struct_name, std::span<const lowering::FieldOverride> overrides = {});

/// Model over an externally written Trs whose method symbols are named after
/// the methods (used for hand-written rule fixtures).
Model make_model(const SubjectProgram &program, const terms::Trs &trs, std::string_view struct_name,
                 std::span<const lowering::FieldOverride> overrides = {});

/// Normalized initial constructor term, with field overrides substituted.
Term initial_state(const StructDecl &s, const terms::Trs &trs,
                   std::span<const lowering::FieldOverride> overrides = {});

struct Action {
  int method_index = -1;
  std::string method; // source name
  std::vector<Term> args;

  bool operator==(const Action &) const = default;
};

std::string to_string(const Action &a); // `write(1)`

/// Every method with every argument tuple: declaration order, then
/// lexicographic arguments. Int parameters range over arg_domain, Bool
/// parameters over {false, true}.
std::vector<Action> enabled_actions(const StructDecl &s, const Bounds &b);

struct StepResult {
  Term outcome; // normal form of the call
  bool threw = false;
  Term value; // returned value, or the error constant
  Term next;

  bool operator==(const StepResult &) const = default;
};

/// `return some(1)`, `return void`, `throw BufferError.Overflow`.
std::string outcome_text(bool threw, const Term &value);

/// Normalizes `method(s, args...)`. `ok(s', v)` and `thrown(s', e)` move to
/// s'; a bare `raise(e)` is a throw that keeps s.
StepResult step(const Model &m, const Term &s, const Action &a, std::size_t fuel);

struct TraceStep {
  Action action;
  bool threw = false;
  Term value;
  Term next_state;

  bool operator==(const TraceStep &) const = default;
};

struct Trace {
  Term initial;
  std::vector<TraceStep> steps;
};

struct Violation {
  std::string clause_id;
  Trace trace;
  Action triggering_action; // the call whose outcome was wrong
  std::string expected;
  std::string actual;
  bool expected_throws = false;
  Term expected_value; // normalized expected value, or the error constant
  std::size_t prefix_length = 0; // calls before the checked state
};

struct ClauseCheck {
  bool fired = false; // predicate held / trigger succeeded
  std::vector<Violation> atoms; // suffix-only traces, initial = checked state
};

/// `when` clause at one state; wildcards and metavariables expand over the
/// domain. Each atom's trace holds only the clause call.
ClauseCheck check_when(const Model &m, const ContractClause &c, const Term &s, const Bounds &b);
/// `after` clause at one state; each atom's trace holds trigger and follow-up.
ClauseCheck check_after(const Model &m, const ContractClause &c, const Term &s, const Bounds &b);
ClauseCheck check_clause(const Model &m, const ContractClause &c, const Term &s, const Bounds &b);

struct Report {
  std::string subject;
  std::vector<Violation> violations; // at most one per clause, clause order
  std::vector<std::string> vacuous_clauses;
  std::size_t states_explored = 0;
  std::size_t transitions_explored = 0;
  Bounds bounds;
};

/// Breadth-first exploration from the initial state. Every discovered state
/// (depth <= max_depth) is checked against every clause; states with depth
/// < max_depth are expanded by every enabled action. For each clause the
/// first violation in discovery order is kept, with the BFS prefix joined to
/// the clause calls. `workers` > 1 processes each level concurrently and
/// merges in discovery order, so the Report is identical.
Report explore(const Model &m, const Bounds &b, unsigned workers = 1);

/// True iff re-running the trace from the model's initial state reproduces
/// every recorded outcome and state.
bool replay(const Model &m, const Trace &t, std::size_t fuel = terms::kDefaultFuel);

} // namespace adtcheck::checker
