#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adtcheck/terms/signature.hpp"

namespace adtcheck::terms {

enum class Relation { Lt, Le, Eq, Ne };

std::string_view relation_text(Relation r);
/// The relation that holds exactly when `lhs rel rhs` does not, together with
/// whether the operands have to be swapped (e.g. not(a < b) is b <= a).
std::pair<Relation, bool> complement(Relation r);

struct Guard {
  Term lhs;
  Term rhs;
  Relation rel = Relation::Eq;

  bool operator==(const Guard &) const = default;
};

/// Returns the guard `not(g)` expressed with a complementary relation.
Guard negate(const Guard &g);

struct RewriteRule {
  std::string label;
  Term lhs;
  std::vector<Guard> guards;
  Term rhs;

  bool operator==(const RewriteRule &) const = default;
};

class TrsError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A signature plus an ordered rule list. Rules for a symbol are tried in
/// the order they were added.
class Trs {
public:
  Signature signature;

  /// Validates and appends `rule`; throws TrsError describing the first
  /// broken invariant (undeclared symbol, ill-sorted side, non-linear lhs,
  /// constructor-headed lhs, unbound variable on the rhs or in a guard).
  void add_rule(RewriteRule rule);

  const std::vector<RewriteRule> &rules() const { return rules_; }
  /// Indices into rules() for the symbol (name, arity), in order.
  std::span<const std::size_t> rules_for(const std::string &name, std::size_t arity) const;

  bool operator==(const Trs &other) const {
    return signature == other.signature && rules_ == other.rules_;
  }

private:
  std::vector<RewriteRule> rules_;
  std::map<std::pair<std::string, std::size_t>, std::vector<std::size_t>> by_symbol_;
};

/// Returns an error message if `rule` is not a valid rule over `sig`.
std::optional<std::string> validate_rule(const Signature &sig, const RewriteRule &rule);

std::string to_string(const Guard &g);
/// `label: lhs -> rhs if g1 /\ g2`
std::string to_string(const RewriteRule &r);

struct OverlapWarning {
  std::string first;
  std::string second;
  std::string message;
};

/// Pairs of rules on the same symbol whose left-hand sides unify and whose
/// guards are not syntactically complementary.
std::vector<OverlapWarning> check_rule_overlap(const Trs &trs);

} // namespace adtcheck::terms
