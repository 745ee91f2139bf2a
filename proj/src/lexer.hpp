#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "specsift/diag.hpp"

namespace specsift {

enum class Tok {
  Ident,
  IntLit,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Semicolon,
  Colon,
  Assign,
  EqEq,
  Neq,
  Lt,
  Le,
  Gt,
  Ge,
  Plus,
  Minus,
  Star,
  Slash,
  Percent,
  AndAnd,
  OrOr,
  Bang,
  Implies,  // ==>
  End,
  Invalid,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  uint64_t int_value = 0;  // IntLit magnitude; range-checked by the parser
  SourcePos pos;
};

enum class CommentStyle { Slash, Hash };

/// Tokenizes the whole input. Never throws; invalid characters and overlong
/// integer literals become Invalid tokens with a diagnostic.
std::vector<Token> lex(std::string_view source, CommentStyle style,
                       std::vector<Diagnostic>& diags);

/// Token cursor shared by the recursive-descent parsers.
class TokenStream {
 public:
  TokenStream(std::vector<Token> tokens, std::vector<Diagnostic>* diags)
      : tokens_(std::move(tokens)), diags_(diags) {}

  const Token& peek(int ahead = 0) const {
    size_t i = pos_ + static_cast<size_t>(ahead);
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& advance() {
    const Token& t = peek();
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_ident(std::string_view word) const {
    return peek().kind == Tok::Ident && peek().text == word;
  }
  bool accept(Tok kind) {
    if (!at(kind)) return false;
    advance();
    return true;
  }
  bool accept_ident(std::string_view word) {
    if (!at_ident(word)) return false;
    advance();
    return true;
  }
  bool expect(Tok kind, std::string_view what) {
    if (accept(kind)) return true;
    error(std::string("expected ") + std::string(what) + ", found '" + describe(peek()) + "'");
    return false;
  }
  void error(std::string message, DiagKind kind = DiagKind::SyntaxError) {
    diags_->push_back(make_error(kind, peek().pos, std::move(message)));
  }
  void error_at(SourcePos pos, std::string message, DiagKind kind = DiagKind::SyntaxError) {
    diags_->push_back(make_error(kind, pos, std::move(message)));
  }
  bool had_error() const {
    for (const auto& d : *diags_)
      if (d.severity == Diagnostic::Severity::Error) return true;
    return false;
  }

  static std::string describe(const Token& t);

 private:
  std::vector<Token> tokens_;
  std::vector<Diagnostic>* diags_;
  size_t pos_ = 0;
};

}  // namespace specsift
