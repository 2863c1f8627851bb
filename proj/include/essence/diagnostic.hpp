#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace essence {

/// 1-based source location range inside one input file.
struct SourceSpan {
  std::string file;
  int line_begin = 1;
  int col_begin = 1;
  int line_end = 1;
  int col_end = 1;

  bool operator==(const SourceSpan&) const = default;
};

inline std::string to_string(const SourceSpan& span) {
  return span.file + ":" + std::to_string(span.line_begin) + ":" + std::to_string(span.col_begin);
}

enum class Severity { warning, error };

inline const char* to_string(Severity s) { return s == Severity::error ? "error" : "warning"; }

/// A finding produced by the validator or the lint engine.
///
/// `path` is an element id (ids of nested elements are slash-joined paths, so
/// the path is always resolvable through `lookup`).
struct Diagnostic {
  std::string rule;
  Severity severity = Severity::error;
  std::string path;
  std::string message;
  std::optional<SourceSpan> span;

  bool operator==(const Diagnostic&) const = default;
};

/// `RULE severity path: message (file:line:col)`
inline std::string format_report_line(const Diagnostic& d) {
  std::string line = d.rule + " " + to_string(d.severity) + " " + d.path + ": " + d.message;
  if (d.span) line += " (" + to_string(*d.span) + ")";
  return line;
}

inline std::size_t count_severity(const std::vector<Diagnostic>& diags, Severity s) {
  return static_cast<std::size_t>(
      std::count_if(diags.begin(), diags.end(), [s](const Diagnostic& d) { return d.severity == s; }));
}

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  return count_severity(diags, Severity::error) > 0;
}

/// Raised by operations whose contract names a hard failure (mapping errors,
/// unknown lint ids, unknown checklist keys, ...).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace essence
