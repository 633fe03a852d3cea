#include "adtcheck/frontend/diagnostic.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace adtcheck {

bool has_errors(const Diagnostics &diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic &d) { return d.severity == Severity::error; });
}

std::string format_diagnostic(const Diagnostic &d) {
  std::ostringstream os;
  os << (d.file.empty() ? "<input>" : d.file) << ':' << d.span.line << ':' << d.span.column << ": "
     << (d.severity == Severity::error ? "error" : "warning") << ": " << d.message;
  if (!d.code.empty())
    os << " [" << d.code << ']';
  return os.str();
}

void print_diagnostics(std::ostream &os, const Diagnostics &diags) {
  for (const auto &d : diags)
    os << format_diagnostic(d) << '\n';
}

} // namespace adtcheck
