#include <functional>

#include "lexer.hpp"
#include "specsift/assertion.hpp"

namespace specsift {

namespace {

enum class AType { Int, Bool, Arr, Tag };

const char* atype_name(AType t) {
  switch (t) {
    case AType::Int: return "Int";
    case AType::Bool: return "Bool";
    case AType::Arr: return "IntArray";
    case AType::Tag: return "Type";
  }
  return "?";
}

struct Typed {
  AExprPtr expr;
  AType type = AType::Bool;
};

class AssertionParser {
 public:
  AssertionParser(TokenStream& ts, const MethodSignature& sig) : ts_(ts), sig_(sig) {}

  std::optional<Typed> parse_spec() { return parse_imp(); }

 private:
  std::optional<Typed> parse_imp() {
    auto lhs = parse_or();
    if (!lhs) return std::nullopt;
    if (ts_.at(Tok::Implies)) {
      SourcePos pos = ts_.advance().pos;
      if (!require_bool(*lhs, pos)) return std::nullopt;
      auto rhs = parse_imp();  // right-associative
      if (!rhs) return std::nullopt;
      if (!require_bool(*rhs, pos)) return std::nullopt;
      return Typed{a_imp(lhs->expr, rhs->expr), AType::Bool};
    }
    return lhs;
  }

  std::optional<Typed> parse_or() {
    auto lhs = parse_and();
    while (lhs && ts_.at(Tok::OrOr)) {
      SourcePos pos = ts_.advance().pos;
      if (!require_bool(*lhs, pos)) return std::nullopt;
      auto rhs = parse_and();
      if (!rhs || !require_bool(*rhs, pos)) return std::nullopt;
      lhs = Typed{a_binary(BinOp::Or, lhs->expr, rhs->expr), AType::Bool};
    }
    return lhs;
  }

  std::optional<Typed> parse_and() {
    auto lhs = parse_cmp();
    while (lhs && ts_.at(Tok::AndAnd)) {
      SourcePos pos = ts_.advance().pos;
      if (!require_bool(*lhs, pos)) return std::nullopt;
      auto rhs = parse_cmp();
      if (!rhs || !require_bool(*rhs, pos)) return std::nullopt;
      lhs = Typed{a_binary(BinOp::And, lhs->expr, rhs->expr), AType::Bool};
    }
    return lhs;
  }

  std::optional<Typed> parse_cmp() {
    auto lhs = parse_add();
    while (lhs) {
      BinOp op;
      if (ts_.at(Tok::EqEq)) op = BinOp::Eq;
      else if (ts_.at(Tok::Neq)) op = BinOp::Ne;
      else if (ts_.at(Tok::Lt)) op = BinOp::Lt;
      else if (ts_.at(Tok::Le)) op = BinOp::Le;
      else if (ts_.at(Tok::Gt)) op = BinOp::Gt;
      else if (ts_.at(Tok::Ge)) op = BinOp::Ge;
      else break;
      SourcePos pos = ts_.advance().pos;
      auto rhs = parse_add();
      if (!rhs) return std::nullopt;
      if (op == BinOp::Eq || op == BinOp::Ne) {
        if (lhs->type != rhs->type) {
          error(DiagKind::TypeError, pos,
                std::string("'") + bin_op_text(op) + "' cannot compare " +
                    atype_name(lhs->type) + " and " + atype_name(rhs->type));
          return std::nullopt;
        }
      } else if (lhs->type != AType::Int || rhs->type != AType::Int) {
        error(DiagKind::TypeError, pos,
              std::string("'") + bin_op_text(op) + "' expects Int operands, got " +
                  atype_name(lhs->type) + " and " + atype_name(rhs->type));
        return std::nullopt;
      }
      lhs = Typed{a_binary(op, lhs->expr, rhs->expr), AType::Bool};
    }
    return lhs;
  }

  std::optional<Typed> parse_add() {
    auto lhs = parse_mul();
    while (lhs && (ts_.at(Tok::Plus) || ts_.at(Tok::Minus))) {
      BinOp op = ts_.at(Tok::Plus) ? BinOp::Add : BinOp::Sub;
      SourcePos pos = ts_.advance().pos;
      if (!require_int(*lhs, pos)) return std::nullopt;
      auto rhs = parse_mul();
      if (!rhs || !require_int(*rhs, pos)) return std::nullopt;
      lhs = Typed{a_binary(op, lhs->expr, rhs->expr), AType::Int};
    }
    return lhs;
  }

  std::optional<Typed> parse_mul() {
    auto lhs = parse_unary();
    while (lhs && (ts_.at(Tok::Star) || ts_.at(Tok::Slash) || ts_.at(Tok::Percent))) {
      BinOp op = ts_.at(Tok::Star) ? BinOp::Mul : ts_.at(Tok::Slash) ? BinOp::Div : BinOp::Mod;
      SourcePos pos = ts_.advance().pos;
      if (!require_int(*lhs, pos)) return std::nullopt;
      auto rhs = parse_unary();
      if (!rhs || !require_int(*rhs, pos)) return std::nullopt;
      lhs = Typed{a_binary(op, lhs->expr, rhs->expr), AType::Int};
    }
    return lhs;
  }

  std::optional<Typed> parse_unary() {
    if (ts_.at(Tok::Minus)) {
      SourcePos pos = ts_.advance().pos;
      if (ts_.at(Tok::IntLit)) {
        const Token& t = ts_.advance();
        if (t.int_value > 2147483648ull) {
          error(DiagKind::SyntaxError, t.pos, "integer literal out of range");
          return std::nullopt;
        }
        return Typed{a_int(static_cast<int32_t>(0u - static_cast<uint32_t>(t.int_value))),
                     AType::Int};
      }
      auto operand = parse_unary();
      if (!operand || !require_int(*operand, pos)) return std::nullopt;
      return Typed{a_unary(UnOp::Neg, operand->expr), AType::Int};
    }
    if (ts_.at(Tok::Bang)) {
      SourcePos pos = ts_.advance().pos;
      auto operand = parse_unary();
      if (!operand || !require_bool(*operand, pos)) return std::nullopt;
      return Typed{a_unary(UnOp::Not, operand->expr), AType::Bool};
    }
    return parse_primary();
  }

  std::optional<Typed> parse_primary() {
    const Token& t = ts_.peek();
    switch (t.kind) {
      case Tok::IntLit:
        ts_.advance();
        if (t.int_value > 2147483647ull) {
          error(DiagKind::SyntaxError, t.pos, "integer literal out of range");
          return std::nullopt;
        }
        return Typed{a_int(static_cast<int32_t>(t.int_value)), AType::Int};
      case Tok::LParen: {
        ts_.advance();
        auto e = parse_spec();
        if (!e) return std::nullopt;
        if (!ts_.expect(Tok::RParen, "')'")) return std::nullopt;
        return e;
      }
      case Tok::Ident: break;
      default:
        error(DiagKind::SyntaxError, t.pos,
              "expected expression, found '" + TokenStream::describe(t) + "'");
        return std::nullopt;
    }

    if (t.text == "true" || t.text == "false") {
      ts_.advance();
      return Typed{a_bool(t.text == "true"), AType::Bool};
    }
    if (t.text == "result") {
      ts_.advance();
      if (in_old_) {
        error(DiagKind::ScopeError, t.pos, "result cannot appear inside old()");
        return std::nullopt;
      }
      if (sig_.return_type == Type::Void) {
        error(DiagKind::ScopeError, t.pos,
              "result is not available: method '" + sig_.method_name + "' is void");
        return std::nullopt;
      }
      return Typed{a_result(), from_subject_type(sig_.return_type)};
    }
    if (t.text == "old") {
      if (in_old_) {
        error(DiagKind::SyntaxError, t.pos, "old() applications cannot nest");
        return std::nullopt;
      }
      ts_.advance();
      if (!ts_.expect(Tok::LParen, "'('")) return std::nullopt;
      in_old_ = true;
      auto inner = parse_spec();
      in_old_ = false;
      if (!inner) return std::nullopt;
      if (!ts_.expect(Tok::RParen, "')'")) return std::nullopt;
      return Typed{a_old(inner->expr), inner->type};
    }
    if (t.text == "size") {
      ts_.advance();
      auto arr = parse_helper_arr("size");
      if (!arr) return std::nullopt;
      return Typed{a_size(arr->expr), AType::Int};
    }
    if (t.text == "typeArray") {
      ts_.advance();
      auto arr = parse_helper_arr("typeArray");
      if (!arr) return std::nullopt;
      return Typed{a_type_array(arr->expr), AType::Tag};
    }
    if (t.text == "getElement") {
      ts_.advance();
      if (!ts_.expect(Tok::LParen, "'('")) return std::nullopt;
      auto arr = parse_spec();
      if (!arr) return std::nullopt;
      if (arr->type != AType::Arr) {
        error(DiagKind::TypeError, t.pos,
              std::string("getElement() expects IntArray, got ") + atype_name(arr->type));
        return std::nullopt;
      }
      if (!ts_.expect(Tok::Comma, "','")) return std::nullopt;
      auto idx = parse_spec();
      if (!idx) return std::nullopt;
      if (idx->type != AType::Int) {
        error(DiagKind::TypeError, t.pos,
              std::string("getElement() index must be Int, got ") + atype_name(idx->type));
        return std::nullopt;
      }
      if (!ts_.expect(Tok::RParen, "')'")) return std::nullopt;
      return Typed{a_get_element(arr->expr, idx->expr), AType::Int};
    }
    if (t.text == "pairwiseEqual" || t.text == "isReverse") {
      bool pairwise = t.text == "pairwiseEqual";
      ts_.advance();
      if (!ts_.expect(Tok::LParen, "'('")) return std::nullopt;
      auto a = parse_spec();
      if (!a) return std::nullopt;
      if (!ts_.expect(Tok::Comma, "','")) return std::nullopt;
      auto b = parse_spec();
      if (!b) return std::nullopt;
      if (!ts_.expect(Tok::RParen, "')'")) return std::nullopt;
      if (a->type != AType::Arr || b->type != AType::Arr) {
        error(DiagKind::TypeError, t.pos,
              t.text + "() expects IntArray arguments, got " + atype_name(a->type) + " and " +
                  atype_name(b->type));
        return std::nullopt;
      }
      return Typed{pairwise ? a_pairwise_equal(a->expr, b->expr) : a_is_reverse(a->expr, b->expr),
                   AType::Bool};
    }

    ts_.advance();
    if (const FieldDecl* f = sig_.find_field(t.text)) {
      return Typed{a_field(t.text), from_subject_type(f->type)};
    }
    if (const Param* p = sig_.find_param(t.text)) {
      return Typed{a_param(t.text), from_subject_type(p->type)};
    }
    error(DiagKind::ScopeError, t.pos, "unknown identifier '" + t.text + "'");
    return std::nullopt;
  }

  std::optional<Typed> parse_helper_arr(const char* helper) {
    SourcePos pos = ts_.peek().pos;
    if (!ts_.expect(Tok::LParen, "'('")) return std::nullopt;
    auto arr = parse_spec();
    if (!arr) return std::nullopt;
    if (!ts_.expect(Tok::RParen, "')'")) return std::nullopt;
    if (arr->type != AType::Arr) {
      error(DiagKind::TypeError, pos,
            std::string(helper) + "() expects IntArray, got " + atype_name(arr->type));
      return std::nullopt;
    }
    return arr;
  }

  static AType from_subject_type(Type t) {
    switch (t) {
      case Type::Int: return AType::Int;
      case Type::Bool: return AType::Bool;
      case Type::IntArray: return AType::Arr;
      case Type::Void: return AType::Bool;  // unreachable; result is rejected for void
    }
    return AType::Int;
  }

  bool require_bool(const Typed& e, SourcePos pos) {
    if (e.type == AType::Bool) return true;
    error(DiagKind::TypeError, pos,
          std::string("expected Bool operand, got ") + atype_name(e.type));
    return false;
  }
  bool require_int(const Typed& e, SourcePos pos) {
    if (e.type == AType::Int) return true;
    error(DiagKind::TypeError, pos,
          std::string("expected Int operand, got ") + atype_name(e.type));
    return false;
  }

  void error(DiagKind kind, SourcePos pos, std::string msg) {
    ts_.error_at(pos, std::move(msg), kind);
  }

  TokenStream& ts_;
  const MethodSignature& sig_;
  bool in_old_ = false;
};

}  // namespace

Parsed<CandidateAssertion> parse_assertion(std::string_view text, const MethodSignature& sig) {
  Parsed<CandidateAssertion> result;
  auto tokens = lex(text, CommentStyle::Hash, result.diagnostics);
  if (!result.diagnostics.empty()) return result;
  TokenStream ts(std::move(tokens), &result.diagnostics);
  AssertionParser parser(ts, sig);
  auto typed = parser.parse_spec();
  if (!typed || ts.had_error()) return result;
  if (!ts.at(Tok::End)) {
    ts.error("unexpected trailing input after assertion");
    return result;
  }
  if (typed->type != AType::Bool) {
    result.diagnostics.push_back(make_error(
        DiagKind::TypeError, {},
        std::string("assertion must be Bool, got ") + atype_name(typed->type)));
    return result;
  }
  result.value = make_assertion(typed->expr);
  return result;
}

Parsed<std::vector<CandidateAssertion>> parse_assertion_file(std::string_view text,
                                                             const MethodSignature& sig) {
  Parsed<std::vector<CandidateAssertion>> result;
  std::vector<CandidateAssertion> out;
  int line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    std::string_view line = text.substr(
        start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos) {
      auto parsed = parse_assertion(line, sig);
      if (!parsed.ok()) {
        for (auto d : parsed.diagnostics) {
          d.pos.line = line_no;
          result.diagnostics.push_back(std::move(d));
        }
        return result;
      }
      out.push_back(std::move(*parsed.value));
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  result.value = std::move(out);
  return result;
}

std::string render_assertion_file(const std::vector<CandidateAssertion>& assertions) {
  std::string out;
  for (const auto& a : assertions) {
    out += a.text;
    out += "\n";
  }
  return out;
}

}  // namespace specsift
