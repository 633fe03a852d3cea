#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adtcheck/terms/term.hpp"

namespace adtcheck::terms {

enum class OpKind { constructor, defined };

struct OpSymbol {
  std::string name;
  std::vector<Sort> arg_sorts;
  Sort result_sort;
  OpKind kind = OpKind::defined;
  /// Defined symbols evaluated natively on literal arguments (integer
  /// arithmetic and comparisons, equality).
  bool builtin = false;

  std::size_t arity() const { return arg_sorts.size(); }
  bool operator==(const OpSymbol &) const = default;
};

class SignatureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Sorts and operation symbols, in declaration order. Symbols are keyed by
/// (name, arity).
class Signature {
public:
  /// Adding an existing sort is a no-op.
  void add_sort(const Sort &s);
  /// Throws SignatureError if (name, arity) exists with a different profile
  /// or a sort is undeclared; re-adding an identical symbol is a no-op.
  void add_op(OpSymbol op);

  bool has_sort(const Sort &s) const;
  const OpSymbol *find(const std::string &name, std::size_t arity) const;
  /// Any arity.
  bool has_name(const std::string &name) const;

  const std::vector<Sort> &sorts() const { return sorts_; }
  const std::vector<OpSymbol> &ops() const { return ops_; }

  bool operator==(const Signature &) const = default;

private:
  std::vector<Sort> sorts_;
  std::vector<OpSymbol> ops_;
  std::map<std::pair<std::string, std::size_t>, std::size_t> index_;
};

/// True when `actual` may appear where `expected` is required. AnyS is
/// compatible with every sort in both directions, so AnyS-sorted variables of
/// polymorphic slots can flow into typed positions.
bool sort_accepts(const Sort &expected, const Sort &actual);

/// Returns an error message when `t` uses undeclared symbols or is not
/// well-sorted.
std::optional<std::string> check_well_sorted(const Signature &sig, const Term &t);

/// True when every symbol in `t` is a constructor (integers count as
/// constructors).
bool is_constructor_term(const Signature &sig, const Term &t);

} // namespace adtcheck::terms
