#include "adtcheck/terms/rewrite.hpp"

namespace adtcheck::terms {

namespace {

struct OutOfFuel {};

class Engine {
public:
  Engine(const Trs &trs, std::size_t budget) : trs_(trs), budget_(budget) {}

  std::size_t used() const { return used_; }

  /// Leftmost-innermost step, or nullopt at a normal form. Throws OutOfFuel
  /// when a redex exists but the budget is spent.
  std::optional<Term> step(const Term &t) {
    if (!t.is_op())
      return std::nullopt;
    for (std::size_t i = 0; i < t.arity(); ++i)
      if (auto r = step(t.child(i)))
        return t.with_child(i, std::move(*r));
    return try_root(t);
  }

private:
  void charge() {
    if (used_ >= budget_)
      throw OutOfFuel{};
    ++used_;
  }

  std::optional<Term> try_root(const Term &t) {
    const OpSymbol *sym = trs_.signature.find(t.name(), t.arity());
    if (!sym || sym->kind == OpKind::constructor)
      return std::nullopt;
    if (sym->builtin) {
      auto r = eval_builtin(t);
      if (r)
        charge();
      return r;
    }
    for (std::size_t idx : trs_.rules_for(t.name(), t.arity())) {
      const RewriteRule &rule = trs_.rules()[idx];
      auto sigma = match_pattern(rule.lhs, t);
      if (!sigma)
        continue;
      bool holds = true;
      for (const Guard &g : rule.guards) {
        if (!eval_guard(rule, g, *sigma)) {
          holds = false;
          break;
        }
      }
      if (!holds)
        continue;
      charge();
      return apply(*sigma, rule.rhs);
    }
    return std::nullopt;
  }

  std::optional<Term> eval_builtin(const Term &t) const {
    const std::string &n = t.name();
    const Term &a = t.child(0);
    const Term &b = t.child(1);
    if (n == "eq" || n == "ne") {
      if (!is_constructor_term(trs_.signature, a) || !is_constructor_term(trs_.signature, b))
        return std::nullopt;
      return make::boolean((a == b) == (n == "eq"));
    }
    if (!a.is_int() || !b.is_int())
      return std::nullopt;
    const std::int64_t x = a.value();
    const std::int64_t y = b.value();
    std::int64_t r = 0;
    if (n == "add") {
      if (__builtin_add_overflow(x, y, &r))
        return std::nullopt;
      return Term::integer(r);
    }
    if (n == "sub") {
      if (__builtin_sub_overflow(x, y, &r))
        return std::nullopt;
      return Term::integer(r);
    }
    if (n == "lt")
      return make::boolean(x < y);
    if (n == "le")
      return make::boolean(x <= y);
    return std::nullopt;
  }

  Term reduce_operand(const RewriteRule &rule, const Term &t) {
    Term cur = t;
    try {
      while (auto next = step(cur))
        cur = std::move(*next);
    } catch (const OutOfFuel &) {
      throw EngineError("guard operand " + to_string(t) + " of rule " + rule.label +
                        " did not normalize within fuel");
    }
    if (!is_constructor_term(trs_.signature, cur))
      throw EngineError("guard operand " + to_string(t) + " of rule " + rule.label + " is stuck at " +
                        to_string(cur));
    return cur;
  }

  bool eval_guard(const RewriteRule &rule, const Guard &g, const Substitution &sigma) {
    Term l = reduce_operand(rule, apply(sigma, g.lhs));
    Term r = reduce_operand(rule, apply(sigma, g.rhs));
    switch (g.rel) {
    case Relation::Eq: return l == r;
    case Relation::Ne: return l != r;
    case Relation::Lt:
    case Relation::Le:
      if (!l.is_int() || !r.is_int())
        throw EngineError("ordering guard of rule " + rule.label + " compares non-integers " + to_string(l) +
                          " and " + to_string(r));
      return g.rel == Relation::Lt ? l.value() < r.value() : l.value() <= r.value();
    }
    return false;
  }

  const Trs &trs_;
  std::size_t budget_;
  std::size_t used_ = 0;
};

} // namespace

std::optional<Term> rewrite_step(const Trs &trs, const Term &t, std::size_t guard_fuel) {
  Engine e(trs, guard_fuel + 1);
  try {
    return e.step(t);
  } catch (const OutOfFuel &) {
    throw EngineError("rewrite step on " + to_string(t) + " exceeded the guard fuel");
  }
}

NormalizeResult normalize(const Trs &trs, const Term &t, std::size_t fuel) {
  Engine e(trs, fuel);
  Term cur = t;
  try {
    while (auto next = e.step(cur))
      cur = std::move(*next);
  } catch (const OutOfFuel &) {
    return FuelExhausted{cur, e.used()};
  }
  if (!is_constructor_term(trs.signature, cur))
    return Stuck{cur, e.used()};
  return NormalForm{cur, e.used()};
}

Term normalize_or_throw(const Trs &trs, const Term &t, std::size_t fuel) {
  NormalizeResult r = normalize(trs, t, fuel);
  if (auto *nf = std::get_if<NormalForm>(&r))
    return nf->term;
  if (auto *fe = std::get_if<FuelExhausted>(&r))
    throw EngineError("fuel exhausted after " + std::to_string(fe->steps) + " steps normalizing " + to_string(t) +
                      "; last term " + to_string(fe->last));
  throw EngineError("evaluation of " + to_string(t) + " is stuck at " + to_string(std::get<Stuck>(r).term));
}

} // namespace adtcheck::terms
