#include "specsift/diag.hpp"

#include <sstream>

#include "specsift/hash.hpp"
#include "specsift/value.hpp"

namespace specsift {

const char* diag_kind_name(DiagKind kind) {
  switch (kind) {
    case DiagKind::SyntaxError: return "SyntaxError";
    case DiagKind::TypeError: return "TypeError";
    case DiagKind::NameError: return "NameError";
    case DiagKind::ArityError: return "ArityError";
    case DiagKind::ScopeError: return "ScopeError";
    case DiagKind::GrammarError: return "GrammarError";
    case DiagKind::ProtocolError: return "ProtocolError";
    case DiagKind::ConfigError: return "ConfigError";
    case DiagKind::TransportError: return "TransportError";
    case DiagKind::ReplayMiss: return "ReplayMiss";
  }
  return "Error";
}

std::string Diagnostic::to_string() const {
  std::ostringstream out;
  out << diag_kind_name(kind);
  if (severity == Severity::Warning) out << " (warning)";
  if (pos.line > 0) out << " at " << pos.line << ":" << pos.col;
  out << ": " << message;
  return out.str();
}

Diagnostic make_error(DiagKind kind, SourcePos pos, std::string message) {
  Diagnostic d;
  d.kind = kind;
  d.pos = pos;
  d.message = std::move(message);
  return d;
}

Diagnostic make_warning(DiagKind kind, std::string message) {
  Diagnostic d;
  d.kind = kind;
  d.severity = Diagnostic::Severity::Warning;
  d.message = std::move(message);
  return d;
}

std::string join_diagnostics(const std::vector<Diagnostic>& diags) {
  std::string out;
  for (const auto& d : diags) {
    if (!out.empty()) out += "\n";
    out += d.to_string();
  }
  return out;
}

std::string hex64(uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

std::string Value::to_string() const {
  switch (kind) {
    case Kind::Int: return std::to_string(i);
    case Kind::Bool: return b ? "true" : "false";
    case Kind::Null: return "null";
    case Kind::Array: {
      std::string s = "[";
      for (size_t k = 0; k < arr.size(); ++k) {
        if (k > 0) s += ", ";
        s += std::to_string(arr[k]);
      }
      s += "]";
      return s;
    }
  }
  return "?";
}

}  // namespace specsift
