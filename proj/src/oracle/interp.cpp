#include "adtcheck/oracle/interp.hpp"

#include <algorithm>

namespace adtcheck::oracle {

namespace {

std::int64_t as_int(const ConcreteValue &v) {
  if (auto *i = std::get_if<IntValue>(&v))
    return i->value;
  throw OracleError("expected Int, got " + to_string(v));
}
bool as_bool(const ConcreteValue &v) {
  if (auto *b = std::get_if<BoolValue>(&v))
    return b->value;
  throw OracleError("expected Bool, got " + to_string(v));
}

struct Returned {
  ConcreteValue value;
};
using Completion = std::variant<Returned, ThrownError>;

class Interpreter {
public:
  Interpreter(const StructDecl &owner, ConcreteState state, std::vector<ConcreteValue> args,
              std::vector<ConcreteValue> metavars, bool allow_mutation)
      : owner_(owner), state_(std::move(state)), args_(std::move(args)), metavars_(std::move(metavars)),
        allow_mutation_(allow_mutation) {}

  ConcreteState &state() { return state_; }

  std::optional<Completion> exec(const std::vector<Stmt> &body) {
    for (const Stmt &s : body) {
      switch (s.kind) {
      case StmtKind::Guard:
        if (!as_bool(eval(*s.value))) {
          auto c = exec(s.else_body);
          if (!c)
            throw OracleError("guard body fell through");
          return c;
        }
        break;
      case StmtKind::Throw: return ThrownError{s.name};
      case StmtKind::Return:
        if (s.value)
          return Returned{eval(*s.value)};
        return Returned{VoidValue{}};
      case StmtKind::AssignField: {
        ConcreteValue v = eval(*s.value);
        field(s.name) = std::move(v);
        break;
      }
      case StmtKind::CallBuiltin: eval(*s.value); break;
      }
    }
    return std::nullopt;
  }

  ConcreteValue eval(const Expr &e) {
    switch (e.kind) {
    case ExprKind::IntLit: return IntValue{e.int_value};
    case ExprKind::BoolLit: return BoolValue{e.bool_value};
    case ExprKind::NilLit: return OptValue{};
    case ExprKind::ArrayLit: {
      ArrayValue a;
      for (const Expr &x : e.operands)
        a.items.push_back(as_int(eval(x)));
      return a;
    }
    case ExprKind::FieldAccess: return field(e.name);
    case ExprKind::ParamRef: return args_.at(static_cast<std::size_t>(e.index));
    case ExprKind::MetaRef: return metavars_.at(static_cast<std::size_t>(e.index));
    case ExprKind::Count: return IntValue{static_cast<std::int64_t>(array(e.name).size())};
    case ExprKind::Promote: return OptValue{as_int(eval(e.operands.at(0)))};
    case ExprKind::BuiltinCall: return call_builtin(e);
    case ExprKind::Binary: {
      ConcreteValue l = eval(e.operands[0]);
      ConcreteValue r = eval(e.operands[1]);
      std::int64_t out = 0;
      switch (e.op) {
      case BinaryOp::Add:
        if (__builtin_add_overflow(as_int(l), as_int(r), &out))
          throw OracleError("integer overflow");
        return IntValue{out};
      case BinaryOp::Sub:
        if (__builtin_sub_overflow(as_int(l), as_int(r), &out))
          throw OracleError("integer overflow");
        return IntValue{out};
      case BinaryOp::Lt: return BoolValue{as_int(l) < as_int(r)};
      case BinaryOp::Le: return BoolValue{as_int(l) <= as_int(r)};
      case BinaryOp::Eq: return BoolValue{l == r};
      case BinaryOp::Ne: return BoolValue{l != r};
      }
      break;
    }
    case ExprKind::FloatLit:
    case ExprKind::Name: break;
    }
    throw OracleError("cannot evaluate unresolved expression");
  }

private:
  ConcreteValue &field(const std::string &name) {
    auto it = state_.find(name);
    if (it == state_.end())
      throw OracleError("state has no field '" + name + "'");
    return it->second;
  }

  std::vector<std::int64_t> &array(const std::string &name) {
    auto *a = std::get_if<ArrayValue>(&field(name));
    if (!a)
      throw OracleError("field '" + name + "' is not an array");
    return a->items;
  }

  ConcreteValue call_builtin(const Expr &e) {
    if (!allow_mutation_)
      throw OracleError("mutating call in a pure expression");
    if (e.member == "append") {
      std::int64_t v = as_int(eval(e.operands.at(0)));
      array(e.name).push_back(v);
      return VoidValue{};
    }
    std::vector<std::int64_t> &items = array(e.name);
    if (items.empty())
      return OptValue{};
    if (e.member == "popLast") {
      std::int64_t v = items.back();
      items.pop_back();
      return OptValue{v};
    }
    if (e.member == "popFirst") {
      std::int64_t v = items.front();
      items.erase(items.begin());
      return OptValue{v};
    }
    throw OracleError("unknown array method '" + e.member + "'");
  }

  const StructDecl &owner_;
  ConcreteState state_;
  std::vector<ConcreteValue> args_;
  std::vector<ConcreteValue> metavars_;
  bool allow_mutation_;
};

} // namespace

std::string to_string(const ConcreteValue &v) {
  struct Visitor {
    std::string operator()(const IntValue &i) const { return std::to_string(i.value); }
    std::string operator()(const BoolValue &b) const { return b.value ? "true" : "false"; }
    std::string operator()(const ArrayValue &a) const {
      std::string s = "[";
      for (std::size_t i = 0; i < a.items.size(); ++i)
        s += (i ? ", " : "") + std::to_string(a.items[i]);
      return s + "]";
    }
    std::string operator()(const OptValue &o) const { return o.value ? std::to_string(*o.value) : "nil"; }
    std::string operator()(const VoidValue &) const { return "()"; }
  };
  return std::visit(Visitor{}, v);
}

ConcreteState default_state(const StructDecl &s) {
  ConcreteState st;
  Interpreter interp(s, {}, {}, {}, false);
  for (const FieldDecl &f : s.fields)
    st[f.name] = interp.eval(f.default_value);
  return st;
}

InterpResult interp_method(const StructDecl &owner, const ConcreteState &state, std::string_view method,
                           const std::vector<ConcreteValue> &args) {
  int mi = owner.method_index(method);
  if (mi < 0)
    throw OracleError("unknown method '" + std::string(method) + "'");
  const MethodDecl &m = owner.methods[static_cast<std::size_t>(mi)];
  if (args.size() != m.params.size())
    throw OracleError("arity mismatch calling '" + m.name + "'");
  Interpreter interp(owner, state, args, {}, true);
  std::optional<Completion> c = interp.exec(m.body);
  InterpResult r;
  r.state = interp.state();
  if (!c) {
    r.result = ConcreteValue{VoidValue{}};
  } else if (auto *ret = std::get_if<Returned>(&*c)) {
    r.result = ret->value;
  } else {
    r.result = std::get<ThrownError>(*c);
  }
  return r;
}

InterpResult interp_method(const SubjectProgram &program, std::string_view struct_name, const ConcreteState &state,
                           std::string_view method, const std::vector<ConcreteValue> &args) {
  const StructDecl *s = program.find_struct(struct_name);
  if (!s)
    throw OracleError("unknown struct '" + std::string(struct_name) + "'");
  return interp_method(*s, state, method, args);
}

ConcreteValue eval_pure(const StructDecl &owner, const ConcreteState &state, const Expr &e,
                        const std::vector<ConcreteValue> &metavars) {
  Interpreter interp(owner, state, {}, metavars, false);
  return interp.eval(e);
}

terms::Term encode(const ConcreteValue &v) {
  namespace mk = terms::make;
  struct Visitor {
    terms::Term operator()(const IntValue &i) const { return terms::Term::integer(i.value); }
    terms::Term operator()(const BoolValue &b) const { return mk::boolean(b.value); }
    terms::Term operator()(const ArrayValue &a) const { return mk::list(a.items); }
    terms::Term operator()(const OptValue &o) const {
      return o.value ? mk::some(terms::Term::integer(*o.value)) : mk::none();
    }
    terms::Term operator()(const VoidValue &) const { return mk::unit(); }
  };
  return std::visit(Visitor{}, v);
}

terms::Term encode_state(const StructDecl &s, const ConcreteState &state) {
  std::vector<terms::Term> kids;
  for (const FieldDecl &f : s.fields) {
    auto it = state.find(f.name);
    if (it == state.end())
      throw OracleError("state lacks field '" + f.name + "'");
    kids.push_back(encode(it->second));
  }
  return terms::Term::op(s.name, terms::Sort{s.name + "S"}, std::move(kids));
}

ConcreteValue decode(const terms::Term &t) {
  if (t.is_int())
    return IntValue{t.value()};
  if (!t.is_op())
    throw OracleError("cannot decode variable " + t.name());
  const std::string &h = t.name();
  if (h == "true" && t.arity() == 0)
    return BoolValue{true};
  if (h == "false" && t.arity() == 0)
    return BoolValue{false};
  if (h == "void" && t.arity() == 0)
    return VoidValue{};
  if (h == "noneOpt" && t.arity() == 0)
    return OptValue{};
  if (h == "some" && t.arity() == 1 && t.child(0).is_int())
    return OptValue{t.child(0).value()};
  if (h == "nil" || h == "cons") {
    ArrayValue a;
    terms::Term cur = t;
    while (cur.is_op() && cur.name() == "cons" && cur.arity() == 2) {
      if (!cur.child(0).is_int())
        throw OracleError("non-integer list element in " + terms::to_string(t));
      a.items.push_back(cur.child(0).value());
      cur = cur.child(1);
    }
    if (!(cur.is_op() && cur.name() == "nil" && cur.arity() == 0))
      throw OracleError("not a list value: " + terms::to_string(t));
    return a;
  }
  throw OracleError("not a constructor value: " + terms::to_string(t));
}

ConcreteState decode_state(const StructDecl &s, const terms::Term &t) {
  if (!t.is_op() || t.name() != s.name || t.arity() != s.fields.size())
    throw OracleError("not a " + s.name + " state: " + terms::to_string(t));
  ConcreteState st;
  for (std::size_t i = 0; i < s.fields.size(); ++i)
    st[s.fields[i].name] = decode(t.child(i));
  return st;
}

} // namespace adtcheck::oracle
