#include "specsift/subject_parser.hpp"

#include <cstdint>

#include "lexer.hpp"

namespace specsift {

namespace {

// ---------------------------------------------------------------------------
// Expression parsing (shared by unit bodies and test scripts)
// ---------------------------------------------------------------------------

class ExprParser {
 public:
  explicit ExprParser(TokenStream& ts) : ts_(ts) {}

  ExprPtr parse() { return parse_or(); }

 private:
  ExprPtr parse_or() {
    ExprPtr lhs = parse_and();
    while (lhs && ts_.at(Tok::OrOr)) {
      SourcePos pos = ts_.advance().pos;
      ExprPtr rhs = parse_and();
      if (!rhs) return nullptr;
      lhs = mk_binary(BinOp::Or, lhs, rhs, pos);
    }
    return lhs;
  }

  ExprPtr parse_and() {
    ExprPtr lhs = parse_cmp();
    while (lhs && ts_.at(Tok::AndAnd)) {
      SourcePos pos = ts_.advance().pos;
      ExprPtr rhs = parse_cmp();
      if (!rhs) return nullptr;
      lhs = mk_binary(BinOp::And, lhs, rhs, pos);
    }
    return lhs;
  }

  ExprPtr parse_cmp() {
    ExprPtr lhs = parse_add();
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
      ExprPtr rhs = parse_add();
      if (!rhs) return nullptr;
      lhs = mk_binary(op, lhs, rhs, pos);
    }
    return lhs;
  }

  ExprPtr parse_add() {
    ExprPtr lhs = parse_mul();
    while (lhs && (ts_.at(Tok::Plus) || ts_.at(Tok::Minus))) {
      BinOp op = ts_.at(Tok::Plus) ? BinOp::Add : BinOp::Sub;
      SourcePos pos = ts_.advance().pos;
      ExprPtr rhs = parse_mul();
      if (!rhs) return nullptr;
      lhs = mk_binary(op, lhs, rhs, pos);
    }
    return lhs;
  }

  ExprPtr parse_mul() {
    ExprPtr lhs = parse_unary();
    while (lhs && (ts_.at(Tok::Star) || ts_.at(Tok::Slash) || ts_.at(Tok::Percent))) {
      BinOp op = ts_.at(Tok::Star) ? BinOp::Mul : ts_.at(Tok::Slash) ? BinOp::Div : BinOp::Mod;
      SourcePos pos = ts_.advance().pos;
      ExprPtr rhs = parse_unary();
      if (!rhs) return nullptr;
      lhs = mk_binary(op, lhs, rhs, pos);
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (ts_.at(Tok::Minus)) {
      SourcePos pos = ts_.advance().pos;
      // A negated literal folds; check range against INT32_MIN here.
      if (ts_.at(Tok::IntLit)) {
        const Token& t = ts_.advance();
        if (t.int_value > 2147483648ull) {
          ts_.error_at(t.pos, "integer literal out of range");
          return nullptr;
        }
        return mk_int(static_cast<int32_t>(0u - static_cast<uint32_t>(t.int_value)), pos);
      }
      ExprPtr e = parse_unary();
      if (!e) return nullptr;
      return mk_unary(UnOp::Neg, e, pos);
    }
    if (ts_.at(Tok::Bang)) {
      SourcePos pos = ts_.advance().pos;
      ExprPtr e = parse_unary();
      if (!e) return nullptr;
      return mk_unary(UnOp::Not, e, pos);
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    const Token& t = ts_.peek();
    switch (t.kind) {
      case Tok::IntLit: {
        ts_.advance();
        if (t.int_value > 2147483647ull) {
          ts_.error_at(t.pos, "integer literal out of range");
          return nullptr;
        }
        return mk_int(static_cast<int32_t>(t.int_value), t.pos);
      }
      case Tok::LParen: {
        ts_.advance();
        ExprPtr e = parse();
        if (!e) return nullptr;
        if (!ts_.expect(Tok::RParen, "')'")) return nullptr;
        return e;
      }
      case Tok::Ident: {
        if (t.text == "true" || t.text == "false") {
          ts_.advance();
          return mk_bool(t.text == "true", t.pos);
        }
        if (t.text == "null") {
          ts_.advance();
          return mk_null(t.pos);
        }
        if (t.text == "new") {
          ts_.advance();
          if (!ts_.at_ident("IntArray")) {
            ts_.error("expected 'IntArray' after 'new'");
            return nullptr;
          }
          ts_.advance();
          if (!ts_.expect(Tok::LParen, "'('")) return nullptr;
          ExprPtr len = parse();
          if (!len) return nullptr;
          if (!ts_.expect(Tok::RParen, "')'")) return nullptr;
          return mk_new_array(len, t.pos);
        }
        if (t.text == "length") {
          ts_.advance();
          if (!ts_.expect(Tok::LParen, "'('")) return nullptr;
          ExprPtr arr = parse();
          if (!arr) return nullptr;
          if (!ts_.expect(Tok::RParen, "')'")) return nullptr;
          return mk_length(arr, t.pos);
        }
        ts_.advance();
        if (ts_.at(Tok::LParen)) {
          std::vector<ExprPtr> args;
          if (!parse_args(args)) return nullptr;
          return mk_call(t.text, std::move(args), t.pos);
        }
        if (ts_.at(Tok::LBracket)) {
          ts_.advance();
          ExprPtr idx = parse();
          if (!idx) return nullptr;
          if (!ts_.expect(Tok::RBracket, "']'")) return nullptr;
          return mk_index(mk_var(t.text, t.pos), idx, t.pos);
        }
        return mk_var(t.text, t.pos);
      }
      default:
        ts_.error("expected expression, found '" + TokenStream::describe(t) + "'");
        return nullptr;
    }
  }

 public:
  bool parse_args(std::vector<ExprPtr>& out) {
    if (!ts_.expect(Tok::LParen, "'('")) return false;
    if (ts_.accept(Tok::RParen)) return true;
    while (true) {
      ExprPtr e = parse();
      if (!e) return false;
      out.push_back(e);
      if (ts_.accept(Tok::Comma)) continue;
      return ts_.expect(Tok::RParen, "')'");
    }
  }

 private:
  TokenStream& ts_;
};

// ---------------------------------------------------------------------------
// Unit parsing
// ---------------------------------------------------------------------------

class SubjectParser {
 public:
  SubjectParser(TokenStream& ts) : ts_(ts) {}

  std::optional<SubjectProgram> parse_unit() {
    SubjectProgram p;
    if (!ts_.accept_ident("unit")) {
      ts_.error("expected 'unit'");
      return std::nullopt;
    }
    if (!parse_name(p.unit_name, "unit name")) return std::nullopt;
    if (!ts_.expect(Tok::LBrace, "'{'")) return std::nullopt;

    while (ts_.at_ident("field")) {
      ts_.advance();
      FieldDecl f;
      if (!parse_name(f.name, "field name")) return std::nullopt;
      if (!ts_.expect(Tok::Colon, "':'")) return std::nullopt;
      if (!parse_type(f.type, /*allow_array=*/true, /*allow_void=*/false)) return std::nullopt;
      if (!ts_.expect(Tok::Semicolon, "';'")) return std::nullopt;
      p.fields.push_back(std::move(f));
    }

    if (!ts_.at_ident("ctor")) {
      ts_.error("expected 'ctor' declaration");
      return std::nullopt;
    }
    ts_.advance();
    if (!parse_params(p.ctor.params)) return std::nullopt;
    if (!parse_block(p.ctor.body)) return std::nullopt;

    while (ts_.at_ident("method")) {
      ts_.advance();
      MethodDef m;
      if (!parse_name(m.name, "method name")) return std::nullopt;
      if (!parse_params(m.params)) return std::nullopt;
      if (!ts_.expect(Tok::Colon, "':'")) return std::nullopt;
      if (!parse_type(m.return_type, /*allow_array=*/true, /*allow_void=*/true))
        return std::nullopt;
      if (!parse_block(m.body)) return std::nullopt;
      p.methods.push_back(std::move(m));
    }

    if (!ts_.expect(Tok::RBrace, "'}'")) return std::nullopt;
    if (!ts_.at(Tok::End)) {
      ts_.error("unexpected trailing input after unit declaration");
      return std::nullopt;
    }
    return p;
  }

  bool parse_name(std::string& out, const char* what) {
    if (!ts_.at(Tok::Ident)) {
      ts_.error(std::string("expected ") + what);
      return false;
    }
    const Token& t = ts_.advance();
    if (is_reserved_word(t.text)) {
      ts_.error_at(t.pos, "'" + t.text + "' is a reserved word");
      return false;
    }
    out = t.text;
    return true;
  }

  bool parse_type(Type& out, bool allow_array, bool allow_void) {
    const Token& t = ts_.peek();
    if (t.kind == Tok::Ident) {
      if (t.text == "Int") { out = Type::Int; ts_.advance(); return true; }
      if (t.text == "Bool") { out = Type::Bool; ts_.advance(); return true; }
      if (allow_array && t.text == "IntArray") { out = Type::IntArray; ts_.advance(); return true; }
      if (allow_void && t.text == "Void") { out = Type::Void; ts_.advance(); return true; }
    }
    ts_.error("expected type name");
    return false;
  }

  bool parse_params(std::vector<Param>& out) {
    if (!ts_.expect(Tok::LParen, "'('")) return false;
    if (ts_.accept(Tok::RParen)) return true;
    while (true) {
      Param prm;
      if (!parse_name(prm.name, "parameter name")) return false;
      if (!ts_.expect(Tok::Colon, "':'")) return false;
      if (!parse_type(prm.type, /*allow_array=*/false, /*allow_void=*/false)) return false;
      out.push_back(std::move(prm));
      if (ts_.accept(Tok::Comma)) continue;
      return ts_.expect(Tok::RParen, "')'");
    }
  }

  bool parse_block(std::vector<StmtPtr>& out) {
    if (!ts_.expect(Tok::LBrace, "'{'")) return false;
    while (!ts_.at(Tok::RBrace) && !ts_.at(Tok::End)) {
      StmtPtr s = parse_stmt();
      if (!s) return false;
      out.push_back(std::move(s));
    }
    return ts_.expect(Tok::RBrace, "'}'");
  }

  StmtPtr parse_stmt() {
    const Token& t = ts_.peek();
    if (t.kind != Tok::Ident) {
      ts_.error("expected statement");
      return nullptr;
    }
    if (t.text == "var") {
      ts_.advance();
      std::string name;
      if (!parse_name(name, "variable name")) return nullptr;
      if (!ts_.expect(Tok::Colon, "':'")) return nullptr;
      Type type;
      if (!parse_type(type, /*allow_array=*/false, /*allow_void=*/false)) return nullptr;
      if (!ts_.expect(Tok::Assign, "'='")) return nullptr;
      ExprPtr init = ExprParser(ts_).parse();
      if (!init) return nullptr;
      if (!ts_.expect(Tok::Semicolon, "';'")) return nullptr;
      return mk_var_decl(std::move(name), type, init, t.pos);
    }
    if (t.text == "if") {
      ts_.advance();
      if (!ts_.expect(Tok::LParen, "'('")) return nullptr;
      ExprPtr cond = ExprParser(ts_).parse();
      if (!cond) return nullptr;
      if (!ts_.expect(Tok::RParen, "')'")) return nullptr;
      std::vector<StmtPtr> then_body;
      if (!parse_block(then_body)) return nullptr;
      std::vector<StmtPtr> else_body;
      if (ts_.at_ident("else")) {
        ts_.advance();
        if (ts_.at_ident("if")) {
          StmtPtr nested = parse_stmt();
          if (!nested) return nullptr;
          else_body.push_back(std::move(nested));
        } else if (!parse_block(else_body)) {
          return nullptr;
        }
      }
      return mk_if(cond, std::move(then_body), std::move(else_body), t.pos);
    }
    if (t.text == "while") {
      ts_.advance();
      if (!ts_.expect(Tok::LParen, "'('")) return nullptr;
      ExprPtr cond = ExprParser(ts_).parse();
      if (!cond) return nullptr;
      if (!ts_.expect(Tok::RParen, "')'")) return nullptr;
      std::vector<StmtPtr> body;
      if (!parse_block(body)) return nullptr;
      return mk_while(cond, std::move(body), t.pos);
    }
    if (t.text == "return") {
      ts_.advance();
      if (ts_.accept(Tok::Semicolon)) return mk_return(nullptr, t.pos);
      ExprPtr value = ExprParser(ts_).parse();
      if (!value) return nullptr;
      if (!ts_.expect(Tok::Semicolon, "';'")) return nullptr;
      return mk_return(value, t.pos);
    }
    // assignment, array store, or a call statement
    if (is_reserved_word(t.text)) {
      ts_.error("expected statement, found '" + t.text + "'");
      return nullptr;
    }
    ts_.advance();
    if (ts_.at(Tok::LParen)) {
      ExprParser ep(ts_);
      std::vector<ExprPtr> args;
      if (!ep.parse_args(args)) return nullptr;
      if (!ts_.expect(Tok::Semicolon, "';'")) return nullptr;
      return mk_expr_stmt(mk_call(t.text, std::move(args), t.pos), t.pos);
    }
    if (ts_.accept(Tok::LBracket)) {
      ExprPtr idx = ExprParser(ts_).parse();
      if (!idx) return nullptr;
      if (!ts_.expect(Tok::RBracket, "']'")) return nullptr;
      if (!ts_.expect(Tok::Assign, "'='")) return nullptr;
      ExprPtr value = ExprParser(ts_).parse();
      if (!value) return nullptr;
      if (!ts_.expect(Tok::Semicolon, "';'")) return nullptr;
      return mk_array_store(t.text, idx, value, t.pos);
    }
    if (!ts_.expect(Tok::Assign, "'='")) return nullptr;
    ExprPtr value = ExprParser(ts_).parse();
    if (!value) return nullptr;
    if (!ts_.expect(Tok::Semicolon, "';'")) return nullptr;
    return mk_assign(t.text, value, t.pos);
  }

 private:
  TokenStream& ts_;
};

// ---------------------------------------------------------------------------
// Test script parsing
// ---------------------------------------------------------------------------

class TestParser {
 public:
  explicit TestParser(TokenStream& ts) : ts_(ts) {}

  std::optional<TestScript> parse_one() {
    if (!ts_.accept_ident("test")) {
      ts_.error("expected 'test'");
      return std::nullopt;
    }
    TestScript script;
    if (!ts_.at(Tok::Ident) || is_reserved_word(ts_.peek().text)) {
      ts_.error("expected test name");
      return std::nullopt;
    }
    script.name = ts_.advance().text;
    if (!ts_.expect(Tok::LBrace, "'{'")) return std::nullopt;
    while (!ts_.at(Tok::RBrace) && !ts_.at(Tok::End)) {
      auto stmt = parse_stmt();
      if (!stmt) return std::nullopt;
      script.statements.push_back(std::move(*stmt));
    }
    if (!ts_.expect(Tok::RBrace, "'}'")) return std::nullopt;
    return script;
  }

  std::optional<TestStmt> parse_stmt() {
    const Token& t = ts_.peek();
    if (t.kind != Tok::Ident) {
      ts_.error("expected test statement");
      return std::nullopt;
    }
    TestStmt s;
    s.pos = t.pos;
    if (t.text == "new") {
      ts_.advance();
      s.kind = TestStmt::Kind::Construct;
      if (!ts_.at(Tok::Ident)) {
        ts_.error("expected unit name after 'new'");
        return std::nullopt;
      }
      s.name = ts_.advance().text;
      ExprParser ep(ts_);
      if (!ep.parse_args(s.args)) return std::nullopt;
      if (!ts_.expect(Tok::Semicolon, "';'")) return std::nullopt;
      return s;
    }
    if (t.text == "var") {
      ts_.advance();
      s.kind = TestStmt::Kind::VarDecl;
      if (!ts_.at(Tok::Ident) || is_reserved_word(ts_.peek().text)) {
        ts_.error("expected variable name");
        return std::nullopt;
      }
      s.name = ts_.advance().text;
      if (!ts_.expect(Tok::Colon, "':'")) return std::nullopt;
      const Token& ty = ts_.peek();
      if (ty.kind == Tok::Ident && (ty.text == "Int" || ty.text == "Bool")) {
        s.decl_type = ty.text == "Int" ? Type::Int : Type::Bool;
        ts_.advance();
      } else {
        ts_.error("expected 'Int' or 'Bool'");
        return std::nullopt;
      }
      if (!ts_.expect(Tok::Assign, "'='")) return std::nullopt;
      s.expr = ExprParser(ts_).parse();
      if (!s.expr) return std::nullopt;
      if (!ts_.expect(Tok::Semicolon, "';'")) return std::nullopt;
      return s;
    }
    if (t.text == "assert") {
      ts_.advance();
      s.kind = TestStmt::Kind::Assert;
      s.expr = ExprParser(ts_).parse();
      if (!s.expr) return std::nullopt;
      if (!ts_.expect(Tok::Semicolon, "';'")) return std::nullopt;
      return s;
    }
    if (is_reserved_word(t.text)) {
      ts_.error("expected test statement, found '" + t.text + "'");
      return std::nullopt;
    }
    ts_.advance();
    s.kind = TestStmt::Kind::Call;
    ExprParser ep(ts_);
    std::vector<ExprPtr> args;
    if (!ep.parse_args(args)) return std::nullopt;
    s.expr = mk_call(t.text, std::move(args), t.pos);
    if (!ts_.expect(Tok::Semicolon, "';'")) return std::nullopt;
    return s;
  }

 private:
  TokenStream& ts_;
};

// Defined in subject_typecheck.cpp.
}  // namespace

std::vector<Diagnostic> check_test_script(const TestScript& script,
                                          const SubjectProgram& program);

Parsed<SubjectProgram> parse_subject(std::string_view source) {
  Parsed<SubjectProgram> result;
  auto tokens = lex(source, CommentStyle::Slash, result.diagnostics);
  if (!result.diagnostics.empty()) return result;
  TokenStream ts(std::move(tokens), &result.diagnostics);
  SubjectParser parser(ts);
  auto program = parser.parse_unit();
  if (!program || ts.had_error()) return result;
  auto type_diags = typecheck_program(*program);
  if (!type_diags.empty()) {
    result.diagnostics.insert(result.diagnostics.end(), type_diags.begin(), type_diags.end());
    bool fatal = false;
    for (const auto& d : type_diags)
      if (d.severity == Diagnostic::Severity::Error) fatal = true;
    if (fatal) return result;
  }
  result.value = std::move(*program);
  return result;
}

Parsed<TestScript> parse_test(std::string_view source, const SubjectProgram& program) {
  Parsed<TestScript> result;
  auto tokens = lex(source, CommentStyle::Slash, result.diagnostics);
  if (!result.diagnostics.empty()) return result;
  TokenStream ts(std::move(tokens), &result.diagnostics);
  TestParser parser(ts);
  auto script = parser.parse_one();
  if (!script || ts.had_error()) return result;
  if (!ts.at(Tok::End)) {
    ts.error("unexpected trailing input after test block");
    return result;
  }
  auto diags = check_test_script(*script, program);
  if (!diags.empty()) {
    result.diagnostics.insert(result.diagnostics.end(), diags.begin(), diags.end());
    return result;
  }
  result.value = std::move(*script);
  return result;
}

Parsed<std::vector<TestScript>> parse_test_file(std::string_view source,
                                                const SubjectProgram& program) {
  Parsed<std::vector<TestScript>> result;
  auto tokens = lex(source, CommentStyle::Slash, result.diagnostics);
  if (!result.diagnostics.empty()) return result;
  TokenStream ts(std::move(tokens), &result.diagnostics);
  std::vector<TestScript> scripts;
  while (!ts.at(Tok::End)) {
    TestParser parser(ts);
    auto script = parser.parse_one();
    if (!script || ts.had_error()) return result;
    auto diags = check_test_script(*script, program);
    if (!diags.empty()) {
      result.diagnostics.insert(result.diagnostics.end(), diags.begin(), diags.end());
      return result;
    }
    scripts.push_back(std::move(*script));
  }
  result.value = std::move(scripts);
  return result;
}

}  // namespace specsift
