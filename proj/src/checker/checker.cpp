#include "adtcheck/checker/checker.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>
#include <unordered_map>

namespace adtcheck::checker {

namespace mk = terms::make;
using terms::sorts::Outcome;

namespace {

std::vector<Term> domain_of(BuiltinType t, const Bounds &b) {
  std::vector<Term> out;
  if (t == BuiltinType::Bool) {
    out = {mk::boolean(false), mk::boolean(true)};
  } else {
    for (std::int64_t v : b.arg_domain)
      out.push_back(Term::integer(v));
  }
  return out;
}

/// Calls `f` with every tuple of the cartesian product, rightmost position
/// varying fastest.
template <typename F> void for_each_tuple(const std::vector<std::vector<Term>> &sets, F &&f) {
  for (const auto &s : sets)
    if (s.empty())
      return;
  std::vector<std::size_t> idx(sets.size(), 0);
  std::vector<Term> tuple(sets.size());
  while (true) {
    for (std::size_t i = 0; i < sets.size(); ++i)
      tuple[i] = sets[i][idx[i]];
    f(tuple);
    std::size_t k = sets.size();
    while (k > 0) {
      --k;
      if (++idx[k] < sets[k].size())
        break;
      idx[k] = 0;
      if (k == 0)
        return;
    }
    if (sets.empty())
      return;
  }
}

Term normalize_value(const Model &m, const Term &t, std::size_t fuel, const char *what) {
  terms::NormalizeResult r = terms::normalize(*m.trs, t, fuel);
  if (auto *nf = std::get_if<terms::NormalForm>(&r))
    return nf->term;
  if (auto *fx = std::get_if<terms::FuelExhausted>(&r))
    throw CheckError(std::string("fuel exhausted evaluating ") + what + " " + terms::to_string(t) +
                     "; last term " + terms::to_string(fx->last));
  throw CheckError(std::string("evaluation of ") + what + " " + terms::to_string(t) + " is stuck at " +
                   terms::to_string(std::get<terms::Stuck>(r).term));
}

lowering::ExprEnv env_for(const Term &state, std::vector<Term> metavars) {
  lowering::ExprEnv env;
  env.fields.assign(state.children().begin(), state.children().end());
  env.metavars = std::move(metavars);
  return env;
}

/// Actions a call pattern stands for under one metavariable assignment.
std::vector<Action> instantiate(const Model &m, const CallPattern &p, const std::vector<Term> &metavars,
                                const Term &state, const Bounds &b) {
  const MethodDecl &decl = m.subject->methods.at(static_cast<std::size_t>(p.method_index));
  std::vector<std::vector<Term>> sets;
  for (std::size_t i = 0; i < p.args.size(); ++i) {
    const ArgPattern &a = p.args[i];
    switch (a.kind) {
    case ArgPatternKind::Wildcard: sets.push_back(domain_of(decl.params.at(i).type, b)); break;
    case ArgPatternKind::MetaVar: sets.push_back({metavars.at(static_cast<std::size_t>(a.meta_index))}); break;
    case ArgPatternKind::Literal: {
      lowering::ExprEnv env = env_for(state, metavars);
      sets.push_back({normalize_value(m, lowering::lower_expr(*a.literal, env), b.fuel, "argument")});
      break;
    }
    }
  }
  std::vector<Action> out;
  for_each_tuple(sets, [&](const std::vector<Term> &args) {
    out.push_back(Action{p.method_index, decl.name, args});
  });
  return out;
}

std::vector<std::vector<Term>> metavar_assignments(const ContractClause &c, const Bounds &b) {
  std::vector<std::vector<Term>> sets;
  for (const MetaVar &mv : c.metavars)
    sets.push_back(domain_of(mv.type, b));
  std::vector<std::vector<Term>> out;
  for_each_tuple(sets, [&](const std::vector<Term> &t) { out.push_back(t); });
  return out;
}

struct Expected {
  bool threw = false;
  Term value;
  std::string text;
};

Expected expected_outcome(const Model &m, const ContractClause &c, const Term &state,
                          const std::vector<Term> &metavars, const Bounds &b) {
  Expected e;
  if (c.expectation.kind == ExpectationKind::Throws) {
    e.threw = true;
    e.value = mk::error(c.expectation.error);
  } else {
    lowering::ExprEnv env = env_for(state, metavars);
    e.value = normalize_value(m, lowering::lower_expr(*c.expectation.value, env), b.fuel, "expectation");
  }
  e.text = outcome_text(e.threw, e.value);
  return e;
}

bool matches(const Expected &e, const StepResult &r) {
  if (e.threw != r.threw)
    return false;
  if (e.threw)
    return r.value.is_op() && r.value.name() == e.value.name();
  return r.value == e.value;
}

TraceStep as_trace_step(const Action &a, const StepResult &r) { return TraceStep{a, r.threw, r.value, r.next}; }

} // namespace

void validate(const Bounds &b) {
  if (b.max_depth < 1)
    throw std::invalid_argument("max_depth must be at least 1");
  if (b.arg_domain.empty())
    throw std::invalid_argument("arg_domain must not be empty");
  for (std::size_t i = 1; i < b.arg_domain.size(); ++i)
    if (b.arg_domain[i - 1] >= b.arg_domain[i])
      throw std::invalid_argument("arg_domain must be sorted and free of duplicates");
}

Term initial_state(const StructDecl &s, const terms::Trs &trs, std::span<const lowering::FieldOverride> overrides) {
  Term t = lowering::lower_struct(s, overrides).initial_state;
  terms::NormalizeResult r = terms::normalize(trs, t);
  if (auto *nf = std::get_if<terms::NormalForm>(&r))
    return nf->term;
  throw CheckError("initial state of " + s.name + " does not normalize: " + terms::to_string(t));
}

Model make_model(const SubjectProgram &program, const lowering::LoweredProgram &lowered,
                 std::string_view struct_name, std::span<const lowering::FieldOverride> overrides) {
  const StructDecl *s = program.find_struct(struct_name);
  const lowering::StructSymbols *sym = lowered.find(struct_name);
  if (!s || !sym)
    throw std::invalid_argument("unknown struct '" + std::string(struct_name) + "'");
  Model m;
  m.subject = s;
  m.clauses = program.clauses_for(struct_name);
  m.trs = &lowered.trs;
  m.method_symbols = sym->method_symbols;
  m.initial = initial_state(*s, lowered.trs, overrides);
  return m;
}

Model make_model(const SubjectProgram &program, const terms::Trs &trs, std::string_view struct_name,
                 std::span<const lowering::FieldOverride> overrides) {
  const StructDecl *s = program.find_struct(struct_name);
  if (!s)
    throw std::invalid_argument("unknown struct '" + std::string(struct_name) + "'");
  Model m;
  m.subject = s;
  m.clauses = program.clauses_for(struct_name);
  m.trs = &trs;
  for (const MethodDecl &md : s->methods) {
    if (!trs.signature.find(md.name, md.params.size() + 1))
      throw std::invalid_argument("rules define no symbol " + md.name + "/" + std::to_string(md.params.size() + 1));
    m.method_symbols.push_back(md.name);
  }
  m.initial = initial_state(*s, trs, overrides);
  return m;
}

std::string to_string(const Action &a) {
  std::string s = a.method + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i)
    s += (i ? "," : "") + terms::to_string(a.args[i]);
  return s + ")";
}

std::vector<Action> enabled_actions(const StructDecl &s, const Bounds &b) {
  std::vector<Action> out;
  for (std::size_t mi = 0; mi < s.methods.size(); ++mi) {
    const MethodDecl &m = s.methods[mi];
    std::vector<std::vector<Term>> sets;
    for (const Param &p : m.params)
      sets.push_back(domain_of(p.type, b));
    for_each_tuple(sets, [&](const std::vector<Term> &args) {
      out.push_back(Action{static_cast<int>(mi), m.name, args});
    });
  }
  return out;
}

std::string outcome_text(bool threw, const Term &value) {
  return (threw ? "throw " : "return ") + terms::to_string(value);
}

StepResult step(const Model &m, const Term &s, const Action &a, std::size_t fuel) {
  std::vector<Term> kids{s};
  kids.insert(kids.end(), a.args.begin(), a.args.end());
  Term call = Term::op(m.method_symbols.at(static_cast<std::size_t>(a.method_index)), Outcome, std::move(kids));
  Term out = normalize_value(m, call, fuel, "call");
  StepResult r;
  r.outcome = out;
  const std::string &h = out.name();
  if (out.is_op() && (h == "ok" || h == "thrown") && out.arity() == 2) {
    r.threw = h == "thrown";
    r.next = out.child(0);
    r.value = out.child(1);
  } else if (out.is_op() && h == "raise" && out.arity() == 1) {
    r.threw = true;
    r.next = s;
    r.value = out.child(0);
  } else {
    throw CheckError("call " + terms::to_string(call) + " did not produce an outcome: " + terms::to_string(out));
  }
  if (!r.next.is_op() || r.next.name() != m.subject->name || r.next.arity() != m.subject->fields.size())
    throw CheckError("call " + terms::to_string(call) + " produced a non-" + m.subject->name + " state " +
                     terms::to_string(r.next));
  return r;
}

ClauseCheck check_when(const Model &m, const ContractClause &c, const Term &s, const Bounds &b) {
  ClauseCheck out;
  lowering::ExprEnv env = env_for(s, {});
  Term held = normalize_value(m, lowering::lower_expr(*c.predicate, env), b.fuel, "predicate");
  if (held == mk::boolean(false))
    return out;
  if (held != mk::boolean(true))
    throw CheckError("predicate of " + c.id + " evaluated to " + terms::to_string(held));
  out.fired = true;
  for (const std::vector<Term> &mv : metavar_assignments(c, b)) {
    Expected e = expected_outcome(m, c, s, mv, b);
    for (const Action &a : instantiate(m, c.call, mv, s, b)) {
      StepResult r = step(m, s, a, b.fuel);
      if (matches(e, r))
        continue;
      Violation v;
      v.clause_id = c.id;
      v.trace.initial = s;
      v.trace.steps.push_back(as_trace_step(a, r));
      v.triggering_action = a;
      v.expected = e.text;
      v.expected_throws = e.threw;
      v.expected_value = e.value;
      v.actual = outcome_text(r.threw, r.value);
      out.atoms.push_back(std::move(v));
    }
  }
  return out;
}

ClauseCheck check_after(const Model &m, const ContractClause &c, const Term &s, const Bounds &b) {
  ClauseCheck out;
  for (const std::vector<Term> &mv : metavar_assignments(c, b)) {
    for (const Action &trigger : instantiate(m, c.call, mv, s, b)) {
      StepResult r1 = step(m, s, trigger, b.fuel);
      if (r1.threw)
        continue;
      out.fired = true;
      Expected e = expected_outcome(m, c, r1.next, mv, b);
      for (const Action &follow : instantiate(m, *c.follow_up, mv, r1.next, b)) {
        StepResult r2 = step(m, r1.next, follow, b.fuel);
        if (matches(e, r2))
          continue;
        Violation v;
        v.clause_id = c.id;
        v.trace.initial = s;
        v.trace.steps = {as_trace_step(trigger, r1), as_trace_step(follow, r2)};
        v.triggering_action = follow;
        v.expected = e.text;
        v.expected_throws = e.threw;
        v.expected_value = e.value;
      v.expected_throws = e.threw;
      v.expected_value = e.value;
        v.actual = outcome_text(r2.threw, r2.value);
        out.atoms.push_back(std::move(v));
      }
    }
  }
  return out;
}

ClauseCheck check_clause(const Model &m, const ContractClause &c, const Term &s, const Bounds &b) {
  return c.kind == ClauseKind::When ? check_when(m, c, s, b) : check_after(m, c, s, b);
}

namespace {

struct Node {
  Term state;
  int parent = -1;
  std::optional<TraceStep> via;
  int depth = 0;
};

struct LevelResult {
  std::vector<ClauseCheck> checks;
  std::vector<StepResult> successors; // parallel to the action list
  std::exception_ptr error;
};

LevelResult process(const Model &m, const Node &n, const std::vector<Action> &actions, const Bounds &b) {
  LevelResult r;
  try {
    for (const ContractClause &c : m.clauses)
      r.checks.push_back(check_clause(m, c, n.state, b));
    if (n.depth < b.max_depth)
      for (const Action &a : actions)
        r.successors.push_back(step(m, n.state, a, b.fuel));
  } catch (...) {
    r.error = std::current_exception();
  }
  return r;
}

std::vector<TraceStep> prefix_of(const std::vector<Node> &nodes, int idx) {
  std::vector<TraceStep> steps;
  for (int i = idx; nodes[static_cast<std::size_t>(i)].parent >= 0; i = nodes[static_cast<std::size_t>(i)].parent)
    steps.push_back(*nodes[static_cast<std::size_t>(i)].via);
  std::reverse(steps.begin(), steps.end());
  return steps;
}

} // namespace

Report explore(const Model &m, const Bounds &b, unsigned workers) {
  validate(b);
  if (workers == 0)
    workers = 1;
  Report report;
  report.subject = m.subject->name;
  report.bounds = b;

  const std::vector<Action> actions = enabled_actions(*m.subject, b);
  std::vector<Node> nodes{Node{m.initial, -1, std::nullopt, 0}};
  std::unordered_map<Term, int, terms::TermHash> index{{m.initial, 0}};
  std::vector<std::optional<Violation>> first(m.clauses.size());
  std::vector<bool> fired(m.clauses.size(), false);

  std::vector<int> level{0};
  while (!level.empty()) {
    std::vector<LevelResult> results(level.size());
    if (workers == 1 || level.size() == 1) {
      for (std::size_t i = 0; i < level.size(); ++i)
        results[i] = process(m, nodes[static_cast<std::size_t>(level[i])], actions, b);
    } else {
      std::atomic<std::size_t> next{0};
      auto work = [&] {
        for (std::size_t i = next++; i < level.size(); i = next++)
          results[i] = process(m, nodes[static_cast<std::size_t>(level[i])], actions, b);
      };
      std::vector<std::thread> pool;
      unsigned n = std::min<unsigned>(workers, static_cast<unsigned>(level.size()));
      for (unsigned w = 0; w < n; ++w)
        pool.emplace_back(work);
      for (std::thread &t : pool)
        t.join();
    }

    std::vector<int> next_level;
    for (std::size_t i = 0; i < level.size(); ++i) {
      LevelResult &r = results[i];
      if (r.error)
        std::rethrow_exception(r.error);
      const int idx = level[i];
      for (std::size_t c = 0; c < m.clauses.size(); ++c) {
        if (r.checks[c].fired)
          fired[c] = true;
        if (first[c] || r.checks[c].atoms.empty())
          continue;
        Violation v = std::move(r.checks[c].atoms.front());
        std::vector<TraceStep> steps = prefix_of(nodes, idx);
        v.prefix_length = steps.size();
        steps.insert(steps.end(), v.trace.steps.begin(), v.trace.steps.end());
        v.trace = Trace{m.initial, std::move(steps)};
        if (!replay(m, v.trace, b.fuel))
          throw CheckError("counterexample for " + v.clause_id + " does not replay");
        first[c] = std::move(v);
      }
      for (std::size_t a = 0; a < r.successors.size(); ++a) {
        ++report.transitions_explored;
        const StepResult &s = r.successors[a];
        if (index.count(s.next))
          continue;
        const int depth = nodes[static_cast<std::size_t>(idx)].depth + 1;
        index.emplace(s.next, static_cast<int>(nodes.size()));
        next_level.push_back(static_cast<int>(nodes.size()));
        nodes.push_back(Node{s.next, idx, as_trace_step(actions[a], s), depth});
      }
    }
    level = std::move(next_level);
  }

  report.states_explored = nodes.size();
  for (std::size_t c = 0; c < m.clauses.size(); ++c) {
    if (first[c])
      report.violations.push_back(std::move(*first[c]));
    if (!fired[c])
      report.vacuous_clauses.push_back(m.clauses[c].id);
  }
  return report;
}

bool replay(const Model &m, const Trace &t, std::size_t fuel) {
  if (t.steps.empty())
    return true;
  if (t.initial != m.initial)
    return false;
  Term cur = m.initial;
  for (const TraceStep &s : t.steps) {
    StepResult r;
    try {
      r = step(m, cur, s.action, fuel);
    } catch (const terms::EngineError &) {
      return false;
    }
    if (r.threw != s.threw || r.value != s.value || r.next != s.next_state)
      return false;
    cur = r.next;
  }
  return true;
}

} // namespace adtcheck::checker
