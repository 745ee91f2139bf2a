#pragma once

#include <optional>
#include <string>
#include <vector>

namespace specsift {

struct SourcePos {
  int line = 0;
  int col = 0;
  bool operator==(const SourcePos&) const = default;
};

enum class DiagKind {
  SyntaxError,
  TypeError,
  NameError,
  ArityError,
  ScopeError,
  GrammarError,
  ProtocolError,
  ConfigError,
  TransportError,
  ReplayMiss,
};

const char* diag_kind_name(DiagKind kind);

struct Diagnostic {
  enum class Severity { Error, Warning };

  DiagKind kind = DiagKind::SyntaxError;
  Severity severity = Severity::Error;
  SourcePos pos;  // {0,0} when the diagnostic is not tied to a source position
  std::string message;

  std::string to_string() const;
};

Diagnostic make_error(DiagKind kind, SourcePos pos, std::string message);
Diagnostic make_warning(DiagKind kind, std::string message);

/// Result of a parse-like operation: `value` is present iff no error-severity
/// diagnostic was produced. Warnings may accompany a value.
template <typename T>
struct Parsed {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return value.has_value(); }
  const T& operator*() const { return *value; }
  const T* operator->() const { return &*value; }

  bool has_error(DiagKind kind) const {
    for (const auto& d : diagnostics) {
      if (d.kind == kind && d.severity == Diagnostic::Severity::Error) return true;
    }
    return false;
  }

  std::string first_error() const {
    for (const auto& d : diagnostics) {
      if (d.severity == Diagnostic::Severity::Error) return d.to_string();
    }
    return {};
  }
};

std::string join_diagnostics(const std::vector<Diagnostic>& diags);

}  // namespace specsift
