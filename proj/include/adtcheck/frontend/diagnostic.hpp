#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace adtcheck {

/// Source location. Lines and columns are 1-based; `offset` is the byte
/// offset of the first character and `length` is measured in bytes.
struct Span {
  std::size_t offset = 0;
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t length = 0;

  bool operator==(const Span &) const = default;
};

enum class Severity { error, warning };

struct Diagnostic {
  Severity severity = Severity::error;
  Span span;
  std::string code;
  std::string message;
  std::string file;
};

using Diagnostics = std::vector<Diagnostic>;

bool has_errors(const Diagnostics &diags);

/// Renders as `file:line:col: error: message [code]`.
std::string format_diagnostic(const Diagnostic &d);
void print_diagnostics(std::ostream &os, const Diagnostics &diags);

/// A value together with the diagnostics produced while computing it. The
/// value is absent whenever an error diagnostic was raised.
template <typename T> struct Checked {
  std::optional<T> value;
  Diagnostics diagnostics;

  bool ok() const { return value.has_value(); }
  explicit operator bool() const { return ok(); }
  T &operator*() { return *value; }
  const T &operator*() const { return *value; }
  T *operator->() { return &*value; }
  const T *operator->() const { return &*value; }
};

} // namespace adtcheck
