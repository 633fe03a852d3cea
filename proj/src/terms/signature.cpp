#include "adtcheck/terms/signature.hpp"

#include <algorithm>

namespace adtcheck::terms {

void Signature::add_sort(const Sort &s) {
  if (!has_sort(s))
    sorts_.push_back(s);
}

void Signature::add_op(OpSymbol op) {
  for (const Sort &s : op.arg_sorts)
    if (!has_sort(s))
      throw SignatureError("undeclared sort " + s.name + " in profile of " + op.name);
  if (!has_sort(op.result_sort))
    throw SignatureError("undeclared sort " + op.result_sort.name + " in profile of " + op.name);
  auto key = std::make_pair(op.name, op.arity());
  if (auto it = index_.find(key); it != index_.end()) {
    if (ops_[it->second] == op)
      return;
    throw SignatureError("conflicting declaration of " + op.name + "/" + std::to_string(op.arity()));
  }
  index_.emplace(key, ops_.size());
  ops_.push_back(std::move(op));
}

bool Signature::has_sort(const Sort &s) const {
  return std::find(sorts_.begin(), sorts_.end(), s) != sorts_.end();
}

const OpSymbol *Signature::find(const std::string &name, std::size_t arity) const {
  auto it = index_.find(std::make_pair(name, arity));
  return it == index_.end() ? nullptr : &ops_[it->second];
}

bool Signature::has_name(const std::string &name) const {
  return std::any_of(ops_.begin(), ops_.end(), [&](const OpSymbol &o) { return o.name == name; });
}

bool sort_accepts(const Sort &expected, const Sort &actual) {
  return expected == actual || expected == sorts::Any || actual == sorts::Any;
}

std::optional<std::string> check_well_sorted(const Signature &sig, const Term &t) {
  switch (t.kind()) {
  case TermKind::Int:
    if (t.sort() != sorts::Int)
      return "integer literal with sort " + t.sort().name;
    return std::nullopt;
  case TermKind::Var:
    if (!sig.has_sort(t.sort()))
      return "variable " + t.name() + " has undeclared sort " + t.sort().name;
    return std::nullopt;
  case TermKind::Op: break;
  }
  const OpSymbol *op = sig.find(t.name(), t.arity());
  if (!op)
    return "undeclared symbol " + t.name() + "/" + std::to_string(t.arity());
  if (t.sort() != op->result_sort)
    return "term " + to_string(t) + " carries sort " + t.sort().name + " but " + op->name + " returns " +
           op->result_sort.name;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (!sort_accepts(op->arg_sorts[i], t.child(i).sort()))
      return "argument " + std::to_string(i + 1) + " of " + op->name + " has sort " + t.child(i).sort().name +
             ", expected " + op->arg_sorts[i].name;
    if (auto err = check_well_sorted(sig, t.child(i)))
      return err;
  }
  return std::nullopt;
}

bool is_constructor_term(const Signature &sig, const Term &t) {
  if (t.is_int())
    return true;
  if (t.is_var())
    return false;
  const OpSymbol *op = sig.find(t.name(), t.arity());
  if (!op || op->kind != OpKind::constructor)
    return false;
  for (const Term &c : t.children())
    if (!is_constructor_term(sig, c))
      return false;
  return true;
}

} // namespace adtcheck::terms
