#include "adtcheck/lowering/lowering.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "adtcheck/terms/prelude.hpp"
#include "adtcheck/terms/rewrite.hpp"

namespace adtcheck::lowering {

namespace mk = terms::make;
namespace sorts = terms::sorts;

terms::Sort sort_of(BuiltinType t) {
  switch (t) {
  case BuiltinType::Int: return sorts::Int;
  case BuiltinType::Bool: return sorts::Bool;
  case BuiltinType::IntArray: return sorts::List;
  case BuiltinType::OptInt: return sorts::Opt;
  case BuiltinType::Void: return sorts::Unit;
  case BuiltinType::Unknown: break;
  }
  throw std::logic_error("unresolved type in lowering");
}

terms::Sort struct_sort(const StructDecl &s) { return terms::Sort{s.name + "S"}; }

namespace {

Term app(const char *name, const Sort &sort, std::vector<Term> kids) {
  return Term::op(name, sort, std::move(kids));
}

} // namespace

Term lower_expr(const Expr &e, ExprEnv &env) {
  switch (e.kind) {
  case ExprKind::IntLit: return Term::integer(e.int_value);
  case ExprKind::BoolLit: return mk::boolean(e.bool_value);
  case ExprKind::NilLit: return mk::none();
  case ExprKind::ArrayLit: {
    std::vector<Term> items;
    for (const Expr &x : e.operands)
      items.push_back(lower_expr(x, env));
    Term t = mk::nil();
    for (auto it = items.rbegin(); it != items.rend(); ++it)
      t = mk::cons(*it, t);
    return t;
  }
  case ExprKind::FieldAccess: return env.fields.at(static_cast<std::size_t>(e.index));
  case ExprKind::ParamRef: return env.params.at(static_cast<std::size_t>(e.index));
  case ExprKind::MetaRef: return env.metavars.at(static_cast<std::size_t>(e.index));
  case ExprKind::Count: return app("count", sorts::Int, {env.fields.at(static_cast<std::size_t>(e.index))});
  case ExprKind::Promote: return mk::some(lower_expr(e.operands.at(0), env));
  case ExprKind::BuiltinCall: {
    Term &field = env.fields.at(static_cast<std::size_t>(e.index));
    if (e.member == "append") {
      Term v = lower_expr(e.operands.at(0), env);
      field = app("append", sorts::List, {field, v});
      return mk::unit();
    }
    Term popped = app(e.member == "popLast" ? "popLast" : "popFirst", sorts::Pair, {field});
    field = app("fst", sorts::List, {popped});
    return app("snd", sorts::Opt, {popped});
  }
  case ExprKind::Binary: {
    Term l = lower_expr(e.operands[0], env);
    Term r = lower_expr(e.operands[1], env);
    switch (e.op) {
    case BinaryOp::Add: return app("add", sorts::Int, {l, r});
    case BinaryOp::Sub: return app("sub", sorts::Int, {l, r});
    case BinaryOp::Lt: return app("lt", sorts::Bool, {l, r});
    case BinaryOp::Le: return app("le", sorts::Bool, {l, r});
    case BinaryOp::Eq: return app("eq", sorts::Bool, {l, r});
    case BinaryOp::Ne: return app("ne", sorts::Bool, {l, r});
    }
    break;
  }
  case ExprKind::FloatLit:
  case ExprKind::Name: break;
  }
  throw std::logic_error("cannot lower unresolved expression");
}

Guard lower_condition(const Expr &c, ExprEnv &env) {
  if (c.kind == ExprKind::Binary && c.op != BinaryOp::Add && c.op != BinaryOp::Sub) {
    Term l = lower_expr(c.operands[0], env);
    Term r = lower_expr(c.operands[1], env);
    terms::Relation rel = terms::Relation::Eq;
    switch (c.op) {
    case BinaryOp::Lt: rel = terms::Relation::Lt; break;
    case BinaryOp::Le: rel = terms::Relation::Le; break;
    case BinaryOp::Eq: rel = terms::Relation::Eq; break;
    case BinaryOp::Ne: rel = terms::Relation::Ne; break;
    default: break;
    }
    return Guard{l, r, rel};
  }
  return Guard{lower_expr(c, env), mk::boolean(true), terms::Relation::Eq};
}

LoweredStruct lower_struct(const StructDecl &s, std::span<const FieldOverride> overrides) {
  LoweredStruct out;
  out.sort = struct_sort(s);
  out.constructor.name = s.name;
  out.constructor.result_sort = out.sort;
  out.constructor.kind = terms::OpKind::constructor;
  ExprEnv empty;
  std::vector<Term> values;
  for (const FieldDecl &f : s.fields) {
    out.constructor.arg_sorts.push_back(sort_of(f.type));
    const Expr *value = &f.default_value;
    for (const FieldOverride &o : overrides)
      if (o.field == f.name)
        value = &o.value;
    values.push_back(lower_expr(*value, empty));
  }
  out.initial_state = Term::op(s.name, out.sort, std::move(values));
  return out;
}

PatternNames pattern_names(const StructDecl &owner, const MethodDecl &m, const terms::Signature &sig) {
  PatternNames names;
  std::set<std::string> used;
  auto fresh = [&](std::string n) {
    while (sig.find(n, 0) || used.count(n) || n == "if")
      n += "_";
    used.insert(n);
    return n;
  };
  for (const FieldDecl &f : owner.fields)
    names.fields.push_back(fresh(f.name));
  for (const Param &p : m.params)
    names.params.push_back(fresh(p.name));
  return names;
}

namespace {

struct WalkState {
  ExprEnv env;
  PathCondition condition;
  std::vector<std::string> updated;
};

class PathWalker {
public:
  PathWalker(const StructDecl &owner, const MethodDecl &m) : owner_(owner), method_(m) {}

  std::vector<Path> run(WalkState start) {
    walk(method_.body, 0, std::move(start));
    return std::move(paths_);
  }

private:
  void note_update(WalkState &st, const std::string &field) {
    if (std::find(st.updated.begin(), st.updated.end(), field) == st.updated.end())
      st.updated.push_back(field);
  }

  void note_calls(WalkState &st, const Expr &e) {
    if (e.kind == ExprKind::BuiltinCall)
      note_update(st, e.name);
    for (const Expr &x : e.operands)
      note_calls(st, x);
  }

  void finish(const WalkState &st, OutcomeKind kind, Term value, std::string error) {
    Path p;
    p.condition = st.condition;
    p.effect.fields = st.env.fields;
    p.effect.updated = st.updated;
    p.effect.outcome = kind;
    p.effect.value = std::move(value);
    p.effect.error = std::move(error);
    paths_.push_back(std::move(p));
  }

  void walk(const std::vector<Stmt> &body, std::size_t from, WalkState st) {
    for (std::size_t i = from; i < body.size(); ++i) {
      const Stmt &s = body[i];
      switch (s.kind) {
      case StmtKind::Guard: {
        note_calls(st, *s.value);
        Guard g = lower_condition(*s.value, st.env);
        WalkState fail = st;
        st.condition.conjuncts.push_back(Conjunct{*s.value, true, g});
        fail.condition.conjuncts.push_back(Conjunct{*s.value, false, terms::negate(g)});
        walk(body, i + 1, std::move(st));
        walk(s.else_body, 0, std::move(fail));
        return;
      }
      case StmtKind::Throw: finish(st, OutcomeKind::Throws, mk::unit(), s.name); return;
      case StmtKind::Return: {
        Term v = mk::unit();
        if (s.value) {
          note_calls(st, *s.value);
          v = lower_expr(*s.value, st.env);
        }
        finish(st, OutcomeKind::Returns, v, {});
        return;
      }
      case StmtKind::AssignField: {
        note_calls(st, *s.value);
        Term v = lower_expr(*s.value, st.env);
        st.env.fields.at(static_cast<std::size_t>(s.field_index)) = v;
        note_update(st, s.name);
        break;
      }
      case StmtKind::CallBuiltin:
        note_calls(st, *s.value);
        lower_expr(*s.value, st.env);
        break;
      }
    }
    finish(st, OutcomeKind::Returns, mk::unit(), {});
  }

  const StructDecl &owner_;
  const MethodDecl &method_;
  std::vector<Path> paths_;
};

} // namespace

std::vector<Path> enumerate_paths(const StructDecl &owner, const MethodDecl &m, const PatternNames &names) {
  WalkState st;
  for (std::size_t i = 0; i < owner.fields.size(); ++i)
    st.env.fields.push_back(Term::var(names.fields[i], sort_of(owner.fields[i].type)));
  for (std::size_t i = 0; i < m.params.size(); ++i)
    st.env.params.push_back(Term::var(names.params[i], sort_of(m.params[i].type)));
  return PathWalker(owner, m).run(std::move(st));
}

std::vector<Path> enumerate_paths(const StructDecl &owner, const MethodDecl &m) {
  return enumerate_paths(owner, m, pattern_names(owner, m, terms::prelude().signature));
}

LoweredMethod lower_method(const StructDecl &owner, const MethodDecl &m, const std::string &symbol_name,
                           const terms::Signature &sig) {
  const Sort owner_sort = struct_sort(owner);
  LoweredMethod out;
  out.symbol.name = symbol_name;
  out.symbol.arg_sorts.push_back(owner_sort);
  for (const Param &p : m.params)
    out.symbol.arg_sorts.push_back(sort_of(p.type));
  out.symbol.result_sort = sorts::Outcome;
  out.symbol.kind = terms::OpKind::defined;

  const PatternNames names = pattern_names(owner, m, sig);
  std::vector<Term> field_vars;
  for (std::size_t i = 0; i < owner.fields.size(); ++i)
    field_vars.push_back(Term::var(names.fields[i], sort_of(owner.fields[i].type)));
  std::vector<Term> lhs_args{Term::op(owner.name, owner_sort, field_vars)};
  for (std::size_t i = 0; i < m.params.size(); ++i)
    lhs_args.push_back(Term::var(names.params[i], sort_of(m.params[i].type)));
  const Term lhs = Term::op(symbol_name, sorts::Outcome, std::move(lhs_args));

  std::size_t k = 0;
  for (const Path &path : enumerate_paths(owner, m, names)) {
    RewriteRule rule;
    rule.label = symbol_name + "." + std::to_string(++k);
    rule.lhs = lhs;
    for (const Conjunct &c : path.condition.conjuncts)
      rule.guards.push_back(c.guard);
    Term state = Term::op(owner.name, owner_sort, path.effect.fields);
    rule.rhs = path.effect.outcome == OutcomeKind::Returns ? mk::ok(state, path.effect.value)
                                                           : mk::thrown(state, mk::error(path.effect.error));
    out.rules.push_back(std::move(rule));
  }
  return out;
}

const StructSymbols *LoweredProgram::find(std::string_view struct_name) const {
  for (const auto &s : structs)
    if (s.name == struct_name)
      return &s;
  return nullptr;
}

namespace {

void collect_errors(const std::vector<Stmt> &body, std::vector<std::string> &out) {
  for (const Stmt &s : body) {
    if (s.kind == StmtKind::Throw && std::find(out.begin(), out.end(), s.name) == out.end())
      out.push_back(s.name);
    collect_errors(s.else_body, out);
  }
}

} // namespace

Checked<LoweredProgram> lower_program(const SubjectProgram &p) {
  Checked<LoweredProgram> result;
  LoweredProgram out;
  out.trs = terms::prelude();
  terms::Signature &sig = out.trs.signature;
  const terms::Signature &base = terms::prelude().signature;
  auto error = [&](const StructDecl &s, const Span &span, std::string msg) {
    result.diagnostics.push_back(Diagnostic{Severity::error, span, "lower.name-clash", std::move(msg), s.file});
  };

  // Sorts and constructors first, so method symbols can be checked against them.
  for (const StructDecl &s : p.structs) {
    StructSymbols sym;
    sym.name = s.name;
    sym.lowered = lower_struct(s);
    if (sig.has_sort(sym.lowered.sort))
      error(s, s.span, "sort " + sym.lowered.sort.name + " of struct '" + s.name + "' clashes with an existing sort");
    else if (sig.has_name(s.name))
      error(s, s.span, "struct name '" + s.name + "' clashes with a built-in symbol");
    else {
      sig.add_sort(sym.lowered.sort);
      sig.add_op(sym.lowered.constructor);
    }
    out.structs.push_back(std::move(sym));
  }

  // Symbol names: the method name, qualified when it would be ambiguous.
  std::map<std::pair<std::string, std::size_t>, int> arity_uses;
  for (const StructDecl &s : p.structs)
    for (const MethodDecl &m : s.methods)
      ++arity_uses[{m.name, m.params.size() + 1}];
  for (std::size_t si = 0; si < p.structs.size(); ++si) {
    const StructDecl &s = p.structs[si];
    for (const MethodDecl &m : s.methods) {
      bool clash = base.has_name(m.name) || sig.has_name(m.name) || arity_uses[{m.name, m.params.size() + 1}] > 1;
      out.structs[si].method_symbols.push_back(clash ? s.name + "." + m.name : m.name);
    }
  }

  for (const StructDecl &s : p.structs) {
    std::vector<std::string> errs;
    for (const MethodDecl &m : s.methods)
      collect_errors(m.body, errs);
    for (const std::string &e : errs) {
      try {
        sig.add_op(terms::OpSymbol{e, {}, sorts::Error, terms::OpKind::constructor, false});
      } catch (const terms::SignatureError &) {
        error(s, s.span, "error name '" + e + "' clashes with an existing symbol");
      }
    }
  }
  if (has_errors(result.diagnostics))
    return result;

  std::vector<LoweredMethod> lowered;
  for (std::size_t si = 0; si < p.structs.size(); ++si) {
    const StructDecl &s = p.structs[si];
    for (std::size_t mi = 0; mi < s.methods.size(); ++mi) {
      LoweredMethod lm = lower_method(s, s.methods[mi], out.structs[si].method_symbols[mi], sig);
      sig.add_op(lm.symbol);
      lowered.push_back(std::move(lm));
    }
  }
  for (LoweredMethod &lm : lowered) {
    for (RewriteRule &r : lm.rules) {
      try {
        out.trs.add_rule(std::move(r));
      } catch (const terms::TrsError &e) {
        result.diagnostics.push_back(Diagnostic{Severity::error, {}, "lower.invalid-rule", e.what(), {}});
      }
    }
  }

  for (const auto &w : terms::check_rule_overlap(out.trs)) {
    result.diagnostics.push_back(Diagnostic{Severity::warning, {}, "lower.overlap", w.message, {}});
  }
  if (!has_errors(result.diagnostics))
    result.value = std::move(out);
  return result;
}

} // namespace adtcheck::lowering
