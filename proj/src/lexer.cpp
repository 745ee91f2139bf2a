#include "lexer.hpp"

namespace specsift {

namespace {

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::vector<Token> lex(std::string_view src, CommentStyle style,
                       std::vector<Diagnostic>& diags) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1, col = 1;

  auto bump = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto push = [&](Tok kind, SourcePos pos, std::string text, uint64_t value = 0) {
    Token t;
    t.kind = kind;
    t.text = std::move(text);
    t.int_value = value;
    t.pos = pos;
    out.push_back(std::move(t));
  };

  while (i < src.size()) {
    char c = src[i];
    SourcePos pos{line, col};
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      bump(1);
      continue;
    }
    if (style == CommentStyle::Slash && c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') bump(1);
      continue;
    }
    if (style == CommentStyle::Hash && c == '#') {
      while (i < src.size() && src[i] != '\n') bump(1);
      continue;
    }
    if (is_ident_start(c)) {
      size_t start = i;
      while (i < src.size() && is_ident_char(src[i])) bump(1);
      push(Tok::Ident, pos, std::string(src.substr(start, i - start)));
      continue;
    }
    if (is_digit(c)) {
      uint64_t value = 0;
      bool overflow = false;
      size_t start = i;
      while (i < src.size() && is_digit(src[i])) {
        if (value > (UINT64_MAX - 9) / 10) overflow = true;
        if (!overflow) value = value * 10 + static_cast<uint64_t>(src[i] - '0');
        bump(1);
      }
      if (overflow) {
        diags.push_back(make_error(DiagKind::SyntaxError, pos, "integer literal out of range"));
        push(Tok::Invalid, pos, std::string(src.substr(start, i - start)));
      } else {
        push(Tok::IntLit, pos, std::string(src.substr(start, i - start)), value);
      }
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < src.size() && src[i + 1] == b;
    };
    if (c == '=' && i + 2 < src.size() && src[i + 1] == '=' && src[i + 2] == '>') {
      push(Tok::Implies, pos, "==>");
      bump(3);
      continue;
    }
    if (two('=', '=')) { push(Tok::EqEq, pos, "=="); bump(2); continue; }
    if (two('!', '=')) { push(Tok::Neq, pos, "!="); bump(2); continue; }
    if (two('<', '=')) { push(Tok::Le, pos, "<="); bump(2); continue; }
    if (two('>', '=')) { push(Tok::Ge, pos, ">="); bump(2); continue; }
    if (two('&', '&')) { push(Tok::AndAnd, pos, "&&"); bump(2); continue; }
    if (two('|', '|')) { push(Tok::OrOr, pos, "||"); bump(2); continue; }
    switch (c) {
      case '(': push(Tok::LParen, pos, "("); bump(1); continue;
      case ')': push(Tok::RParen, pos, ")"); bump(1); continue;
      case '{': push(Tok::LBrace, pos, "{"); bump(1); continue;
      case '}': push(Tok::RBrace, pos, "}"); bump(1); continue;
      case '[': push(Tok::LBracket, pos, "["); bump(1); continue;
      case ']': push(Tok::RBracket, pos, "]"); bump(1); continue;
      case ',': push(Tok::Comma, pos, ","); bump(1); continue;
      case ';': push(Tok::Semicolon, pos, ";"); bump(1); continue;
      case ':': push(Tok::Colon, pos, ":"); bump(1); continue;
      case '=': push(Tok::Assign, pos, "="); bump(1); continue;
      case '<': push(Tok::Lt, pos, "<"); bump(1); continue;
      case '>': push(Tok::Gt, pos, ">"); bump(1); continue;
      case '+': push(Tok::Plus, pos, "+"); bump(1); continue;
      case '-': push(Tok::Minus, pos, "-"); bump(1); continue;
      case '*': push(Tok::Star, pos, "*"); bump(1); continue;
      case '/': push(Tok::Slash, pos, "/"); bump(1); continue;
      case '%': push(Tok::Percent, pos, "%"); bump(1); continue;
      case '!': push(Tok::Bang, pos, "!"); bump(1); continue;
      default:
        diags.push_back(make_error(DiagKind::SyntaxError, pos,
                                   std::string("unexpected character '") + c + "'"));
        push(Tok::Invalid, pos, std::string(1, c));
        bump(1);
        continue;
    }
  }
  push(Tok::End, SourcePos{line, col}, "<end of input>");
  return out;
}

std::string TokenStream::describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return t.text;
}

}  // namespace specsift
