#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace adtcheck::terms {

struct Sort {
  std::string name;

  auto operator<=>(const Sort &) const = default;
};

namespace sorts {
inline const Sort Int{"IntS"};
inline const Sort Bool{"BoolS"};
inline const Sort List{"ListS"};
inline const Sort Opt{"OptS"};
inline const Sort Pair{"PairS"};
inline const Sort Unit{"UnitS"};
inline const Sort Error{"ErrorS"};
inline const Sort Outcome{"OutcomeS"};
/// Top sort accepted by the polymorphic payload slots of `ok`, `thrown`,
/// `eq` and `ne`.
inline const Sort Any{"AnyS"};
} // namespace sorts

enum class TermKind { Op, Var, Int };

/// Immutable, shared term tree. Copies are cheap; equality is structural.
class Term {
public:
  Term(); // the integer 0

  static Term op(std::string name, Sort sort, std::vector<Term> children = {});
  static Term var(std::string name, Sort sort);
  static Term integer(std::int64_t value);

  TermKind kind() const { return node_->kind; }
  bool is_op() const { return kind() == TermKind::Op; }
  bool is_var() const { return kind() == TermKind::Var; }
  bool is_int() const { return kind() == TermKind::Int; }

  const std::string &name() const { return node_->name; }
  const Sort &sort() const { return node_->sort; }
  std::int64_t value() const { return node_->value; }
  std::span<const Term> children() const { return node_->children; }
  const Term &child(std::size_t i) const { return node_->children.at(i); }
  std::size_t arity() const { return node_->children.size(); }

  bool is_ground() const { return node_->ground; }
  /// Number of nodes.
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }

  /// Copy with child `i` replaced.
  Term with_child(std::size_t i, Term replacement) const;

  friend bool operator==(const Term &a, const Term &b);
  friend bool operator!=(const Term &a, const Term &b) { return !(a == b); }

private:
  struct Node {
    TermKind kind;
    std::string name;
    Sort sort;
    std::int64_t value = 0;
    std::vector<Term> children;
    std::size_t hash = 0;
    std::size_t size = 1;
    bool ground = true;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term make(Node n);

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term &t) const { return t.hash(); }
};

/// Debug rendering: `head(child,...)`, integers in decimal, nullary symbols
/// and variables by name, e.g. `Buffer(3,cons(1,nil))`.
std::string to_string(const Term &t);

/// Map from variable name to the ground term bound to it.
class Substitution {
public:
  bool bind(const Term &var, const Term &value);
  const Term *lookup(const std::string &name) const;
  std::size_t size() const { return bindings_.size(); }
  const std::map<std::string, Term> &bindings() const { return bindings_; }

  bool operator==(const Substitution &) const = default;

private:
  std::map<std::string, Term> bindings_;
};

/// Matches a linear pattern against a ground subject. A variable matches any
/// subject of its sort (or of any sort when the variable has sort AnyS).
std::optional<Substitution> match_pattern(const Term &pattern, const Term &subject);

/// Replaces bound variables; unbound variables are left in place.
Term apply(const Substitution &sigma, const Term &t);

/// Variable names in left-to-right order, with repetitions.
std::vector<std::string> variables(const Term &t);
bool is_linear(const Term &t);

/// Helpers for the prelude vocabulary.
namespace make {
Term boolean(bool b);
Term nil();
Term cons(Term head, Term tail);
Term list(std::span<const std::int64_t> items);
Term none();
Term some(Term v);
Term pair(Term rest, Term opt);
Term unit();
Term ok(Term state, Term value);
Term thrown(Term state, Term error);
Term error(const std::string &name);
} // namespace make

} // namespace adtcheck::terms
