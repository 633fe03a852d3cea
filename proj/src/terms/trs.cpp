#include "adtcheck/terms/trs.hpp"

#include <algorithm>
#include <set>

namespace adtcheck::terms {

std::string_view relation_text(Relation r) {
  switch (r) {
  case Relation::Lt: return "<";
  case Relation::Le: return "<=";
  case Relation::Eq: return "=";
  case Relation::Ne: return "!=";
  }
  return "?";
}

std::pair<Relation, bool> complement(Relation r) {
  switch (r) {
  case Relation::Lt: return {Relation::Le, true};
  case Relation::Le: return {Relation::Lt, true};
  case Relation::Eq: return {Relation::Ne, false};
  case Relation::Ne: return {Relation::Eq, false};
  }
  return {r, false};
}

Guard negate(const Guard &g) {
  auto [rel, swap] = complement(g.rel);
  return swap ? Guard{g.rhs, g.lhs, rel} : Guard{g.lhs, g.rhs, rel};
}

std::optional<std::string> validate_rule(const Signature &sig, const RewriteRule &rule) {
  const std::string where = "rule " + rule.label + ": ";
  if (!rule.lhs.is_op())
    return where + "left-hand side must be an operation application";
  const OpSymbol *head = sig.find(rule.lhs.name(), rule.lhs.arity());
  if (!head)
    return where + "undeclared symbol " + rule.lhs.name();
  if (head->kind != OpKind::defined || head->builtin)
    return where + "left-hand side is headed by constructor or builtin " + head->name;
  if (auto err = check_well_sorted(sig, rule.lhs))
    return where + *err;
  if (auto err = check_well_sorted(sig, rule.rhs))
    return where + *err;
  if (!sort_accepts(rule.lhs.sort(), rule.rhs.sort()))
    return where + "right-hand side has sort " + rule.rhs.sort().name + ", expected " + rule.lhs.sort().name;
  if (!is_linear(rule.lhs))
    return where + "left-hand side is not linear";
  auto lhs_vars = variables(rule.lhs);
  std::set<std::string> bound(lhs_vars.begin(), lhs_vars.end());
  auto check_bound = [&](const Term &t) -> std::optional<std::string> {
    for (const auto &v : variables(t))
      if (!bound.count(v))
        return where + "variable " + v + " does not occur in the left-hand side";
    return std::nullopt;
  };
  if (auto err = check_bound(rule.rhs))
    return err;
  for (const Guard &g : rule.guards) {
    for (const Term *side : {&g.lhs, &g.rhs}) {
      if (auto err = check_well_sorted(sig, *side))
        return where + *err;
      if (auto err = check_bound(*side))
        return err;
    }
    if ((g.rel == Relation::Lt || g.rel == Relation::Le) &&
        (g.lhs.sort() != sorts::Int || g.rhs.sort() != sorts::Int))
      return where + "ordering guard on non-integer operands";
  }
  return std::nullopt;
}

void Trs::add_rule(RewriteRule rule) {
  if (auto err = validate_rule(signature, rule))
    throw TrsError(*err);
  by_symbol_[{rule.lhs.name(), rule.lhs.arity()}].push_back(rules_.size());
  rules_.push_back(std::move(rule));
}

std::span<const std::size_t> Trs::rules_for(const std::string &name, std::size_t arity) const {
  auto it = by_symbol_.find({name, arity});
  if (it == by_symbol_.end())
    return {};
  return it->second;
}

std::string to_string(const Guard &g) {
  return to_string(g.lhs) + " " + std::string(relation_text(g.rel)) + " " + to_string(g.rhs);
}

std::string to_string(const RewriteRule &r) {
  std::string s = r.label + ": " + to_string(r.lhs) + " -> " + to_string(r.rhs);
  for (std::size_t i = 0; i < r.guards.size(); ++i)
    s += (i ? " /\\ " : " if ") + to_string(r.guards[i]);
  return s;
}

namespace {

Term rename(const Term &t, const std::string &suffix) {
  if (t.is_var())
    return Term::var(t.name() + suffix, t.sort());
  if (t.is_ground())
    return t;
  std::vector<Term> kids;
  for (const Term &c : t.children())
    kids.push_back(rename(c, suffix));
  return Term::op(t.name(), t.sort(), std::move(kids));
}

/// Unifies two linear patterns with disjoint variables.
bool unify(const Term &a, const Term &b, Substitution &sigma) {
  if (a.is_var())
    return sort_accepts(a.sort(), b.sort()) && sigma.bind(a, b);
  if (b.is_var())
    return sort_accepts(b.sort(), a.sort()) && sigma.bind(b, a);
  if (a.is_int() || b.is_int())
    return a.is_int() && b.is_int() && a.value() == b.value();
  if (a.name() != b.name() || a.arity() != b.arity())
    return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!unify(a.child(i), b.child(i), sigma))
      return false;
  return true;
}

Term apply_fully(const Substitution &sigma, Term t) {
  for (;;) {
    Term next = apply(sigma, t);
    if (next == t)
      return t;
    t = std::move(next);
  }
}

bool complementary(const Guard &a, const Guard &b) {
  Guard na = negate(a);
  if (na == b)
    return true;
  // Equality is symmetric.
  if (na.rel == Relation::Eq || na.rel == Relation::Ne)
    return Guard{na.rhs, na.lhs, na.rel} == b;
  return false;
}

} // namespace

std::vector<OverlapWarning> check_rule_overlap(const Trs &trs) {
  std::vector<OverlapWarning> out;
  const auto &rules = trs.rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (std::size_t j = i + 1; j < rules.size(); ++j) {
      const RewriteRule &a = rules[i];
      const RewriteRule &b = rules[j];
      if (a.lhs.name() != b.lhs.name() || a.lhs.arity() != b.lhs.arity())
        continue;
      Substitution sigma;
      const Term blhs = rename(b.lhs, "'");
      if (!unify(a.lhs, blhs, sigma))
        continue;
      std::vector<Guard> ga, gb;
      for (const Guard &g : a.guards)
        ga.push_back(Guard{apply_fully(sigma, g.lhs), apply_fully(sigma, g.rhs), g.rel});
      for (const Guard &g : b.guards)
        gb.push_back(Guard{apply_fully(sigma, rename(g.lhs, "'")), apply_fully(sigma, rename(g.rhs, "'")), g.rel});
      bool disjoint = false;
      for (const Guard &x : ga)
        for (const Guard &y : gb)
          disjoint = disjoint || complementary(x, y);
      if (!disjoint)
        out.push_back(OverlapWarning{a.label, b.label,
                                     "rules " + a.label + " and " + b.label +
                                         " overlap: left-hand sides unify and guards are not complementary"});
    }
  }
  return out;
}

} // namespace adtcheck::terms
