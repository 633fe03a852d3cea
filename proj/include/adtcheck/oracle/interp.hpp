#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "adtcheck/frontend/ast.hpp"
#include "adtcheck/terms/term.hpp"

namespace adtcheck::oracle {

// Reference interpreter over the resolved AST. It shares no evaluation code
// with lowering or rewriting and exists to cross-check them.

struct IntValue {
  std::int64_t value = 0;
  bool operator==(const IntValue &) const = default;
};
struct BoolValue {
  bool value = false;
  bool operator==(const BoolValue &) const = default;
};
struct ArrayValue {
  std::vector<std::int64_t> items;
  bool operator==(const ArrayValue &) const = default;
};
struct OptValue {
  std::optional<std::int64_t> value;
  bool operator==(const OptValue &) const = default;
};
struct VoidValue {
  bool operator==(const VoidValue &) const = default;
};

using ConcreteValue = std::variant<IntValue, BoolValue, ArrayValue, OptValue, VoidValue>;

std::string to_string(const ConcreteValue &v);

/// Field name -> value for one struct instance.
using ConcreteState = std::map<std::string, ConcreteValue>;

struct ThrownError {
  std::string name;
  bool operator==(const ThrownError &) const = default;
};

struct InterpResult {
  ConcreteState state; // after the call, or at the throw
  std::variant<ConcreteValue, ThrownError> result;
};

class OracleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Initial state from the field defaults.
ConcreteState default_state(const StructDecl &s);

InterpResult interp_method(const StructDecl &owner, const ConcreteState &state, std::string_view method,
                           const std::vector<ConcreteValue> &args);
InterpResult interp_method(const SubjectProgram &program, std::string_view struct_name, const ConcreteState &state,
                           std::string_view method, const std::vector<ConcreteValue> &args);

/// Evaluates a side-effect-free expression (contract predicates, expected
/// values) against a state and metavariable values.
ConcreteValue eval_pure(const StructDecl &owner, const ConcreteState &state, const Expr &e,
                        const std::vector<ConcreteValue> &metavars = {});

terms::Term encode(const ConcreteValue &v);
terms::Term encode_state(const StructDecl &s, const ConcreteState &state);
/// Throws OracleError for terms that are not constructor values.
ConcreteValue decode(const terms::Term &t);
ConcreteState decode_state(const StructDecl &s, const terms::Term &t);

} // namespace adtcheck::oracle
