#include "adtcheck/frontend/resolver.hpp"

#include <map>
#include <set>
#include <utility>

namespace adtcheck {

namespace {

bool is_closed_literal(const Expr &e) {
  switch (e.kind) {
  case ExprKind::IntLit:
  case ExprKind::BoolLit:
  case ExprKind::NilLit: return true;
  case ExprKind::ArrayLit:
    for (const Expr &x : e.operands)
      if (x.kind != ExprKind::IntLit)
        return false;
    return true;
  default: return false;
  }
}

Expr promote(Expr inner) {
  Expr p;
  p.kind = ExprKind::Promote;
  p.span = inner.span;
  p.type = BuiltinType::OptInt;
  p.operands.push_back(std::move(inner));
  return p;
}

/// What an expression may refer to.
struct Scope {
  const StructDecl *owner = nullptr;
  const MethodDecl *method = nullptr; // parameters in scope
  std::vector<MetaVar> *metavars = nullptr;
  bool fields = true;
  bool mutation = false;
};

class Resolver {
public:
  Checked<SubjectProgram> run(std::span<const SourceFile> files) {
    SubjectProgram prog;
    for (const SourceFile &f : files) {
      file_ = f.path;
      for (const StructDecl &s : f.structs) {
        if (prog.struct_index(s.name) >= 0) {
          error(s.span, "resolve.duplicate-struct", "duplicate struct '" + s.name + "'");
          continue;
        }
        prog.structs.push_back(s);
        prog.structs.back().file = f.path;
      }
    }
    for (StructDecl &s : prog.structs) {
      file_ = s.file;
      resolve_struct(s);
    }
    for (const SourceFile &f : files) {
      file_ = f.path;
      for (const ContractDecl &c : f.contracts) {
        ContractDecl copy = c;
        copy.file = f.path;
        copy.struct_index = prog.struct_index(c.subject);
        if (copy.struct_index < 0) {
          error(c.span, "resolve.unknown-struct", "protocol names unknown struct '" + c.subject + "'");
          continue;
        }
        const StructDecl &owner = prog.structs[static_cast<std::size_t>(copy.struct_index)];
        for (ContractClause &cl : copy.clauses)
          resolve_clause(owner, cl);
        prog.contracts.push_back(std::move(copy));
      }
    }
    Checked<SubjectProgram> out;
    out.diagnostics = std::move(diags_);
    if (!has_errors(out.diagnostics))
      out.value = std::move(prog);
    return out;
  }

  Checked<Expr> literal(const Expr &lit, BuiltinType expected) {
    Expr e = lit;
    coerce_literal(e, expected);
    Checked<Expr> out;
    out.diagnostics = std::move(diags_);
    if (!has_errors(out.diagnostics))
      out.value = std::move(e);
    return out;
  }

  void set_file(std::string_view f) { file_ = std::string(f); }

private:
  void error(const Span &span, std::string code, std::string message) {
    diags_.push_back(Diagnostic{Severity::error, span, std::move(code), std::move(message), file_});
  }
  void warning(const Span &span, std::string code, std::string message) {
    diags_.push_back(Diagnostic{Severity::warning, span, std::move(code), std::move(message), file_});
  }

  BuiltinType resolve_type(const TypeSyntax &t) {
    if (auto bt = builtin_type_of(t))
      return *bt;
    error(t.span, "resolve.unsupported-type", "unsupported builtin type '" + t.base + (t.array ? "[]" : "") +
                                                  (t.optional ? "?" : "") + "'");
    return BuiltinType::Unknown;
  }

  void coerce_literal(Expr &e, BuiltinType expected) {
    if (e.kind == ExprKind::FloatLit) {
      error(e.span, "resolve.unsupported-literal", "floating-point literal '" + e.text + "' is not supported");
      return;
    }
    if (!is_closed_literal(e)) {
      error(e.span, "resolve.expected-literal", "expected a closed literal");
      return;
    }
    BuiltinType got = BuiltinType::Unknown;
    switch (e.kind) {
    case ExprKind::IntLit: got = BuiltinType::Int; break;
    case ExprKind::BoolLit: got = BuiltinType::Bool; break;
    case ExprKind::NilLit: got = BuiltinType::OptInt; break;
    case ExprKind::ArrayLit:
      got = BuiltinType::IntArray;
      for (Expr &x : e.operands)
        x.type = BuiltinType::Int;
      break;
    default: break;
    }
    e.type = got;
    if (!coerce(e, expected))
      error(e.span, "resolve.type-mismatch",
            "literal of type " + type_name(got) + " where " + type_name(expected) + " is expected");
  }

  /// Accepts `e` where `expected` is required, inserting Int -> Int?
  /// promotion when needed.
  static bool coerce(Expr &e, BuiltinType expected) {
    if (e.type == expected || e.type == BuiltinType::Unknown || expected == BuiltinType::Unknown)
      return true;
    if (e.type == BuiltinType::Int && expected == BuiltinType::OptInt) {
      e = promote(std::move(e));
      return true;
    }
    return false;
  }

  void expect_type(Expr &e, BuiltinType expected, std::string_view what) {
    if (!coerce(e, expected))
      error(e.span, "resolve.type-mismatch",
            std::string(what) + " has type " + type_name(e.type) + ", expected " + type_name(expected));
  }

  void resolve_struct(StructDecl &s) {
    std::set<std::string> names;
    for (FieldDecl &f : s.fields) {
      if (!names.insert(f.name).second)
        error(f.span, "resolve.duplicate-field", "duplicate field '" + f.name + "' in '" + s.name + "'");
      f.type = resolve_type(f.syntax);
      if (f.type != BuiltinType::Unknown)
        coerce_literal(f.default_value, f.type);
    }
    std::set<std::string> methods;
    for (MethodDecl &m : s.methods) {
      if (!methods.insert(m.name).second)
        error(m.span, "resolve.duplicate-method", "duplicate method '" + m.name + "' in '" + s.name + "'");
      resolve_method(s, m);
    }
  }

  void resolve_method(const StructDecl &s, MethodDecl &m) {
    std::set<std::string> pnames;
    for (Param &p : m.params) {
      if (!pnames.insert(p.name).second)
        error(p.span, "resolve.duplicate-param", "duplicate parameter '" + p.name + "'");
      if (s.field_index(p.name) >= 0)
        error(p.span, "resolve.shadowing", "parameter '" + p.name + "' shadows a field of '" + s.name + "'");
      p.type = resolve_type(p.syntax);
      if (p.type == BuiltinType::IntArray || p.type == BuiltinType::OptInt)
        error(p.syntax.span, "resolve.unsupported-param",
              "parameters must be Int or Bool, not " + type_name(p.type));
    }
    m.return_type = m.return_syntax ? resolve_type(*m.return_syntax) : BuiltinType::Void;
    Scope scope{&s, &m, nullptr, true, m.mutating};
    bool terminated = resolve_block(scope, m, m.body);
    if (!terminated && m.return_type != BuiltinType::Void)
      error(m.span, "resolve.missing-return",
            "method '" + m.name + "' must return a " + type_name(m.return_type) + " on every path");
  }

  /// Returns true when the block always ends in `return` or `throw`.
  bool resolve_block(const Scope &scope, const MethodDecl &m, std::vector<Stmt> &body) {
    bool terminated = false;
    for (Stmt &st : body) {
      if (terminated) {
        warning(st.span, "resolve.unreachable", "unreachable code");
        break;
      }
      terminated = resolve_stmt(scope, m, st);
    }
    return terminated;
  }

  bool resolve_stmt(const Scope &scope, const MethodDecl &m, Stmt &st) {
    switch (st.kind) {
    case StmtKind::Guard:
      resolve_expr(scope, *st.value);
      expect_type(*st.value, BuiltinType::Bool, "guard condition");
      if (!resolve_block(scope, m, st.else_body))
        error(st.span, "resolve.guard-fallthrough", "guard body must not fall through; end it with 'return' or 'throw'");
      return false;
    case StmtKind::Throw:
      if (!m.throws)
        error(st.span, "resolve.throw-in-nonthrows", "'throw' in method '" + m.name + "' which is not marked 'throws'");
      return true;
    case StmtKind::Return:
      if (st.value) {
        resolve_expr(scope, *st.value);
        if (m.return_type == BuiltinType::Void)
          error(st.value->span, "resolve.type-mismatch", "Void method '" + m.name + "' cannot return a value");
        else
          expect_type(*st.value, m.return_type, "return value");
      } else if (m.return_type != BuiltinType::Void) {
        error(st.span, "resolve.missing-return", "missing return value of type " + type_name(m.return_type));
      }
      return true;
    case StmtKind::AssignField: {
      st.field_index = scope.owner->field_index(st.name);
      resolve_expr(scope, *st.value);
      if (st.field_index < 0) {
        error(st.span, "resolve.unknown-field", "unknown field '" + st.name + "'");
        return false;
      }
      if (!scope.mutation)
        error(st.span, "resolve.mutation-not-allowed", "assignment to '" + st.name + "' requires a 'mutating' method");
      expect_type(*st.value, scope.owner->fields[static_cast<std::size_t>(st.field_index)].type, "assigned value");
      return false;
    }
    case StmtKind::CallBuiltin:
      resolve_expr(scope, *st.value);
      return false;
    }
    return false;
  }

  void resolve_expr(const Scope &scope, Expr &e) {
    switch (e.kind) {
    case ExprKind::IntLit: e.type = BuiltinType::Int; return;
    case ExprKind::BoolLit: e.type = BuiltinType::Bool; return;
    case ExprKind::NilLit: e.type = BuiltinType::OptInt; return;
    case ExprKind::FloatLit:
      error(e.span, "resolve.unsupported-literal", "floating-point literal '" + e.text + "' is not supported");
      return;
    case ExprKind::ArrayLit:
      for (Expr &x : e.operands) {
        resolve_expr(scope, x);
        expect_type(x, BuiltinType::Int, "array element");
      }
      e.type = BuiltinType::IntArray;
      return;
    case ExprKind::Name:
    case ExprKind::FieldAccess:
    case ExprKind::ParamRef:
    case ExprKind::MetaRef: resolve_name(scope, e); return;
    case ExprKind::Count: {
      int fi = receiver(scope, e);
      e.type = BuiltinType::Int;
      (void)fi;
      return;
    }
    case ExprKind::BuiltinCall: resolve_builtin_call(scope, e); return;
    case ExprKind::Promote:
      resolve_expr(scope, e.operands[0]);
      e.type = BuiltinType::OptInt;
      return;
    case ExprKind::Binary: resolve_binary(scope, e); return;
    }
  }

  void resolve_name(const Scope &scope, Expr &e) {
    if (scope.metavars) {
      for (std::size_t i = 0; i < scope.metavars->size(); ++i) {
        if ((*scope.metavars)[i].name == e.name) {
          e.kind = ExprKind::MetaRef;
          e.index = static_cast<int>(i);
          e.type = (*scope.metavars)[i].type;
          return;
        }
      }
    }
    if (scope.method) {
      for (std::size_t i = 0; i < scope.method->params.size(); ++i) {
        if (scope.method->params[i].name == e.name) {
          e.kind = ExprKind::ParamRef;
          e.index = static_cast<int>(i);
          e.type = scope.method->params[i].type;
          return;
        }
      }
    }
    if (scope.fields) {
      int fi = scope.owner->field_index(e.name);
      if (fi >= 0) {
        e.kind = ExprKind::FieldAccess;
        e.index = fi;
        e.type = scope.owner->fields[static_cast<std::size_t>(fi)].type;
        return;
      }
    }
    std::string what = scope.metavars ? (scope.fields ? "field or metavariable" : "metavariable") : "field or parameter";
    error(e.span, scope.metavars && !scope.fields ? "resolve.unknown-metavar" : "resolve.unknown-field",
          "unknown " + what + " '" + e.name + "'");
  }

  /// Resolves the receiver field of `.count` and builtin calls; it must be an
  /// `[Int]` field.
  int receiver(const Scope &scope, Expr &e) {
    int fi = scope.fields ? scope.owner->field_index(e.name) : -1;
    if (fi < 0) {
      error(e.span, "resolve.unknown-field", "unknown field '" + e.name + "'");
      return -1;
    }
    e.index = fi;
    BuiltinType t = scope.owner->fields[static_cast<std::size_t>(fi)].type;
    if (t != BuiltinType::IntArray) {
      error(e.span, "resolve.type-mismatch", "'" + e.name + "' has type " + type_name(t) + ", expected [Int]");
      return -1;
    }
    return fi;
  }

  void resolve_builtin_call(const Scope &scope, Expr &e) {
    receiver(scope, e);
    for (Expr &a : e.operands)
      resolve_expr(scope, a);
    std::size_t arity = 0;
    if (e.member == "append") {
      arity = 1;
      e.type = BuiltinType::Void;
    } else if (e.member == "popLast" || e.member == "popFirst") {
      e.type = BuiltinType::OptInt;
    } else {
      error(e.span, "resolve.unknown-method", "unknown array method '" + e.member + "'");
      return;
    }
    if (e.operands.size() != arity) {
      error(e.span, "resolve.arity", "'" + e.member + "' takes " + std::to_string(arity) + " argument(s), got " +
                                         std::to_string(e.operands.size()));
      return;
    }
    if (arity == 1)
      expect_type(e.operands[0], BuiltinType::Int, "appended value");
    if (!scope.mutation)
      error(e.span, "resolve.mutation-not-allowed",
            "'" + e.member + "' mutates '" + e.name + "' and requires a 'mutating' method");
  }

  void resolve_binary(const Scope &scope, Expr &e) {
    Expr &l = e.operands[0];
    Expr &r = e.operands[1];
    resolve_expr(scope, l);
    resolve_expr(scope, r);
    const std::string op(binary_op_text(e.op));
    switch (e.op) {
    case BinaryOp::Add:
    case BinaryOp::Sub:
    case BinaryOp::Lt:
    case BinaryOp::Le:
      expect_type(l, BuiltinType::Int, "left operand of '" + op + "'");
      expect_type(r, BuiltinType::Int, "right operand of '" + op + "'");
      e.type = (e.op == BinaryOp::Add || e.op == BinaryOp::Sub) ? BuiltinType::Int : BuiltinType::Bool;
      return;
    case BinaryOp::Eq:
    case BinaryOp::Ne:
      e.type = BuiltinType::Bool;
      if (l.type == BuiltinType::Unknown || r.type == BuiltinType::Unknown)
        return;
      if (!coerce(r, l.type) && !coerce(l, r.type))
        error(e.span, "resolve.type-mismatch",
              "cannot compare " + type_name(l.type) + " with " + type_name(r.type));
      if (l.type == BuiltinType::Void)
        error(e.span, "resolve.type-mismatch", "cannot compare Void values");
      return;
    }
  }

  // --- contracts -------------------------------------------------------------

  const MethodDecl *resolve_call(const StructDecl &owner, CallPattern &call) {
    call.method_index = owner.method_index(call.method);
    if (call.method_index < 0) {
      error(call.span, "resolve.unknown-method", "unknown method '" + call.method + "' of '" + owner.name + "'");
      return nullptr;
    }
    const MethodDecl &m = owner.methods[static_cast<std::size_t>(call.method_index)];
    if (call.args.size() != m.params.size()) {
      error(call.span, "resolve.arity", "'" + m.name + "' takes " + std::to_string(m.params.size()) +
                                            " argument(s), got " + std::to_string(call.args.size()));
      return nullptr;
    }
    for (std::size_t i = 0; i < call.args.size(); ++i) {
      ArgPattern &a = call.args[i];
      const Param &p = m.params[i];
      if (a.label != p.name)
        error(a.span, "resolve.label-mismatch", "argument label '" + a.label + "' does not match parameter '" +
                                                    p.name + "'");
      if (a.kind == ArgPatternKind::Literal)
        coerce_literal(*a.literal, p.type);
    }
    return &m;
  }

  void resolve_clause(const StructDecl &owner, ContractClause &cl) {
    Scope field_scope{&owner, nullptr, nullptr, true, false};
    if (cl.predicate) {
      resolve_expr(field_scope, *cl.predicate);
      expect_type(*cl.predicate, BuiltinType::Bool, "when-predicate");
    }

    const MethodDecl *m = resolve_call(owner, cl.call);
    if (m) {
      for (std::size_t i = 0; i < cl.call.args.size(); ++i) {
        ArgPattern &a = cl.call.args[i];
        if (a.kind != ArgPatternKind::MetaVar)
          continue;
        for (const MetaVar &mv : cl.metavars)
          if (mv.name == a.name)
            error(a.span, "resolve.duplicate-metavar", "metavariable '" + a.name + "' is bound more than once");
        a.meta_index = static_cast<int>(cl.metavars.size());
        cl.metavars.push_back(MetaVar{a.name, m->params[i].type});
      }
    }

    const MethodDecl *target = m;
    if (cl.follow_up) {
      target = resolve_call(owner, *cl.follow_up);
      if (target) {
        for (ArgPattern &a : cl.follow_up->args) {
          if (a.kind == ArgPatternKind::Wildcard) {
            error(a.span, "resolve.wildcard-follow-up", "follow-up calls cannot use '_'");
          } else if (a.kind == ArgPatternKind::MetaVar) {
            for (std::size_t k = 0; k < cl.metavars.size(); ++k)
              if (cl.metavars[k].name == a.name)
                a.meta_index = static_cast<int>(k);
            if (a.meta_index < 0)
              error(a.span, "resolve.unknown-metavar", "unbound metavariable '" + a.name + "'");
          }
        }
        for (std::size_t i = 0; i < cl.follow_up->args.size(); ++i) {
          const ArgPattern &a = cl.follow_up->args[i];
          if (a.meta_index >= 0 && cl.metavars[static_cast<std::size_t>(a.meta_index)].type != target->params[i].type)
            error(a.span, "resolve.type-mismatch", "metavariable '" + a.name + "' has the wrong type");
        }
      }
    }

    if (cl.expectation.kind == ExpectationKind::Equals && cl.expectation.value) {
      Scope s{&owner, nullptr, &cl.metavars, cl.kind == ClauseKind::When, false};
      resolve_expr(s, *cl.expectation.value);
      if (target) {
        if (target->return_type == BuiltinType::Void)
          error(cl.expectation.span, "resolve.type-mismatch", "'" + target->name + "' returns Void; nothing to compare");
        else
          expect_type(*cl.expectation.value, target->return_type, "expected value");
      }
    }
  }

  std::string file_;
  Diagnostics diags_;
};

} // namespace

std::optional<BuiltinType> builtin_type_of(const TypeSyntax &t) {
  if (t.base == "Int") {
    if (t.array && !t.optional)
      return BuiltinType::IntArray;
    if (!t.array)
      return t.optional ? BuiltinType::OptInt : BuiltinType::Int;
    return std::nullopt;
  }
  if (t.base == "Bool" && !t.array && !t.optional)
    return BuiltinType::Bool;
  return std::nullopt;
}

Checked<SubjectProgram> resolve(std::span<const SourceFile> files) { return Resolver().run(files); }

Checked<SubjectProgram> resolve(const SourceFile &file) { return resolve(std::span<const SourceFile>(&file, 1)); }

Checked<Expr> resolve_literal(const Expr &literal, BuiltinType expected, std::string_view file) {
  Resolver r;
  r.set_file(file);
  return r.literal(literal, expected);
}

} // namespace adtcheck
