#ifndef GRN_DIAGNOSTIC_HPP
#define GRN_DIAGNOSTIC_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace grn {

/// Position of a token or construct in the source text. Lines and columns
/// are 1-based; columns count bytes.
struct SourceSpan {
  int line = 1;
  int column = 1;
  int length = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

/// Smallest span covering both arguments. Spans on different lines are
/// merged into the first one (spans never cross lines in this language).
inline SourceSpan cover(SourceSpan first, SourceSpan last) {
  if (first.line != last.line) return first;
  const int begin = std::min(first.column, last.column);
  const int end = std::max(first.column + first.length, last.column + last.length);
  return {first.line, begin, end - begin};
}

enum class Severity { error, warning };

/// Diagnostic codes:
///   E001 syntax, E002 unknown gene, E003 level/threshold out of range,
///   E004 duplicate (or missing) declaration, E005 rule reads a gene without an edge,
///   W001 edge never read by the target's rule, W002 constant differs from edge threshold.
struct Diagnostic {
  Severity severity = Severity::error;
  std::string code;
  std::string message;
  SourceSpan span;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

inline Diagnostic make_error(std::string code, std::string message, SourceSpan span) {
  return {Severity::error, std::move(code), std::move(message), span};
}

inline Diagnostic make_warning(std::string code, std::string message, SourceSpan span) {
  return {Severity::warning, std::move(code), std::move(message), span};
}

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

inline std::size_t count_severity(const std::vector<Diagnostic>& diags, Severity s) {
  return static_cast<std::size_t>(std::count_if(
      diags.begin(), diags.end(), [s](const Diagnostic& d) { return d.severity == s; }));
}

/// "file:line:col: error E001: message"
inline std::string format(const Diagnostic& d, std::string_view file = {}) {
  std::string out;
  if (!file.empty()) {
    out += file;
    out += ':';
  }
  out += std::to_string(d.span.line) + ':' + std::to_string(d.span.column) + ": ";
  out += d.severity == Severity::error ? "error " : "warning ";
  out += d.code + ": " + d.message;
  return out;
}

/// True when the span addresses bytes that exist in `text` (a zero-length
/// span may sit just past the end of a line).
inline bool span_in_bounds(const SourceSpan& span, std::string_view text) {
  if (span.line < 1 || span.column < 1 || span.length < 0) return false;
  int line = 1;
  std::size_t begin = 0;
  while (line < span.line) {
    const auto nl = text.find('\n', begin);
    if (nl == std::string_view::npos) return false;
    begin = nl + 1;
    ++line;
  }
  auto end = text.find('\n', begin);
  if (end == std::string_view::npos) end = text.size();
  const auto line_length = static_cast<int>(end - begin);
  return span.column - 1 + span.length <= line_length && span.column <= line_length + 1;
}

}  // namespace grn

#endif
