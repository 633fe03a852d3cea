#include "adtcheck/terms/term.hpp"

#include <algorithm>
#include <functional>

namespace adtcheck::terms {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

} // namespace

Term::Term() : Term(integer(0)) {}

Term Term::make(Node n) {
  std::size_t h = mix(static_cast<std::size_t>(n.kind), std::hash<std::string>{}(n.name));
  h = mix(h, std::hash<std::int64_t>{}(n.value));
  for (const Term &c : n.children) {
    h = mix(h, c.hash());
    n.size += c.size();
    n.ground = n.ground && c.is_ground();
  }
  n.hash = h;
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::op(std::string name, Sort sort, std::vector<Term> children) {
  return make(Node{TermKind::Op, std::move(name), std::move(sort), 0, std::move(children)});
}

Term Term::var(std::string name, Sort sort) {
  Node n{TermKind::Var, std::move(name), std::move(sort), 0, {}};
  n.ground = false;
  return make(std::move(n));
}

Term Term::integer(std::int64_t value) {
  return make(Node{TermKind::Int, {}, sorts::Int, value, {}});
}

Term Term::with_child(std::size_t i, Term replacement) const {
  std::vector<Term> kids(node_->children.begin(), node_->children.end());
  kids.at(i) = std::move(replacement);
  return op(node_->name, node_->sort, std::move(kids));
}

bool operator==(const Term &a, const Term &b) {
  if (a.node_ == b.node_)
    return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size())
    return false;
  switch (a.kind()) {
  case TermKind::Int: return a.value() == b.value();
  case TermKind::Var: return a.name() == b.name() && a.sort() == b.sort();
  case TermKind::Op: break;
  }
  if (a.name() != b.name() || a.sort() != b.sort() || a.arity() != b.arity())
    return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (a.child(i) != b.child(i))
      return false;
  return true;
}

std::string to_string(const Term &t) {
  if (t.is_int())
    return std::to_string(t.value());
  std::string s = t.name();
  if (t.arity() == 0)
    return s;
  s += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i)
      s += ',';
    s += to_string(t.child(i));
  }
  s += ')';
  return s;
}

bool Substitution::bind(const Term &var, const Term &value) {
  auto [it, inserted] = bindings_.emplace(var.name(), value);
  return inserted || it->second == value;
}

const Term *Substitution::lookup(const std::string &name) const {
  auto it = bindings_.find(name);
  return it == bindings_.end() ? nullptr : &it->second;
}

namespace {

bool match_into(const Term &p, const Term &s, Substitution &sigma) {
  switch (p.kind()) {
  case TermKind::Var:
    if (p.sort() != sorts::Any && p.sort() != s.sort())
      return false;
    return sigma.bind(p, s);
  case TermKind::Int: return s.is_int() && s.value() == p.value();
  case TermKind::Op: break;
  }
  if (!s.is_op() || s.name() != p.name() || s.arity() != p.arity())
    return false;
  for (std::size_t i = 0; i < p.arity(); ++i)
    if (!match_into(p.child(i), s.child(i), sigma))
      return false;
  return true;
}

void collect_vars(const Term &t, std::vector<std::string> &out) {
  if (t.is_var()) {
    out.push_back(t.name());
    return;
  }
  for (const Term &c : t.children())
    collect_vars(c, out);
}

} // namespace

std::optional<Substitution> match_pattern(const Term &pattern, const Term &subject) {
  Substitution sigma;
  if (!match_into(pattern, subject, sigma))
    return std::nullopt;
  return sigma;
}

Term apply(const Substitution &sigma, const Term &t) {
  if (t.is_var()) {
    const Term *b = sigma.lookup(t.name());
    return b ? *b : t;
  }
  if (t.is_ground() || t.arity() == 0)
    return t;
  std::vector<Term> kids;
  kids.reserve(t.arity());
  for (const Term &c : t.children())
    kids.push_back(apply(sigma, c));
  return Term::op(t.name(), t.sort(), std::move(kids));
}

std::vector<std::string> variables(const Term &t) {
  std::vector<std::string> out;
  collect_vars(t, out);
  return out;
}

bool is_linear(const Term &t) {
  auto vs = variables(t);
  std::sort(vs.begin(), vs.end());
  return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
}

namespace make {
Term boolean(bool b) { return Term::op(b ? "true" : "false", sorts::Bool); }
Term nil() { return Term::op("nil", sorts::List); }
Term cons(Term head, Term tail) { return Term::op("cons", sorts::List, {std::move(head), std::move(tail)}); }
Term list(std::span<const std::int64_t> items) {
  Term t = nil();
  for (auto it = items.rbegin(); it != items.rend(); ++it)
    t = cons(Term::integer(*it), t);
  return t;
}
Term none() { return Term::op("noneOpt", sorts::Opt); }
Term some(Term v) { return Term::op("some", sorts::Opt, {std::move(v)}); }
Term pair(Term rest, Term opt) { return Term::op("pair", sorts::Pair, {std::move(rest), std::move(opt)}); }
Term unit() { return Term::op("void", sorts::Unit); }
Term ok(Term state, Term value) { return Term::op("ok", sorts::Outcome, {std::move(state), std::move(value)}); }
Term thrown(Term state, Term error) {
  return Term::op("thrown", sorts::Outcome, {std::move(state), std::move(error)});
}
Term error(const std::string &name) { return Term::op(name, sorts::Error); }
} // namespace make

} // namespace adtcheck::terms
