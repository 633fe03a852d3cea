#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <variant>

#include "adtcheck/terms/trs.hpp"

namespace adtcheck::terms {

/// Raised when evaluation cannot proceed meaningfully, e.g. a guard operand
/// does not normalize within the remaining fuel or does not reduce to a
/// comparable value.
class EngineError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultFuel = 10000;

/// One leftmost-innermost step. Rules are tried in declaration order; guard
/// operands are normalized (with `guard_fuel`) before comparison. Returns
/// nullopt when `t` is a normal form.
std::optional<Term> rewrite_step(const Trs &trs, const Term &t, std::size_t guard_fuel = kDefaultFuel);

struct NormalForm {
  Term term;
  std::size_t steps = 0;

  bool operator==(const NormalForm &) const = default;
};
struct FuelExhausted {
  Term last; // the last intermediate term
  std::size_t steps = 0;

  bool operator==(const FuelExhausted &) const = default;
};
/// A normal form that still contains a defined symbol.
struct Stuck {
  Term term;
  std::size_t steps = 0;

  bool operator==(const Stuck &) const = default;
};

using NormalizeResult = std::variant<NormalForm, FuelExhausted, Stuck>;

/// Rewrites `t` to normal form, spending at most `fuel` rule applications
/// (guard evaluation included).
NormalizeResult normalize(const Trs &trs, const Term &t, std::size_t fuel = kDefaultFuel);

/// Convenience wrapper: the normal form, or EngineError.
Term normalize_or_throw(const Trs &trs, const Term &t, std::size_t fuel = kDefaultFuel);

} // namespace adtcheck::terms
