#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "specsift/subject_parser.hpp"

namespace specsift {

namespace {

// Type::Void doubles as "no type" for error recovery; NullType marks the
// null literal, which is only legal directly under `return`.
struct CheckContext {
  const SubjectProgram* program = nullptr;
  std::vector<Diagnostic>* diags = nullptr;
  std::map<std::string, Type> locals;  // params + declared locals of current body
  bool in_ctor = false;

  void error(DiagKind kind, SourcePos pos, std::string msg) {
    diags->push_back(make_error(kind, pos, std::move(msg)));
  }
};

std::optional<Type> check_expr(CheckContext& ctx, const Expr& e);

std::optional<Type> check_call(CheckContext& ctx, const Expr& e) {
  const MethodDef* callee = ctx.program->find_method(e.name);
  if (!callee) {
    ctx.error(DiagKind::NameError, e.pos, "unknown method '" + e.name + "'");
    return std::nullopt;
  }
  if (callee->params.size() != e.children.size()) {
    ctx.error(DiagKind::ArityError, e.pos,
              "method '" + e.name + "' expects " + std::to_string(callee->params.size()) +
                  " argument(s), got " + std::to_string(e.children.size()));
    return std::nullopt;
  }
  bool ok = true;
  for (size_t i = 0; i < e.children.size(); ++i) {
    auto at = check_expr(ctx, *e.children[i]);
    if (!at) {
      ok = false;
      continue;
    }
    if (*at != callee->params[i].type) {
      ctx.error(DiagKind::TypeError, e.children[i]->pos,
                "argument " + std::to_string(i + 1) + " of '" + e.name + "' expects " +
                    type_name(callee->params[i].type) + ", got " + type_name(*at));
      ok = false;
    }
  }
  if (!ok) return std::nullopt;
  return callee->return_type;
}

std::optional<Type> check_expr(CheckContext& ctx, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::IntLit: return Type::Int;
    case Expr::Kind::BoolLit: return Type::Bool;
    case Expr::Kind::NullLit:
      ctx.error(DiagKind::TypeError, e.pos, "null may only appear as a return value");
      return std::nullopt;
    case Expr::Kind::VarRef: {
      auto it = ctx.locals.find(e.name);
      if (it != ctx.locals.end()) return it->second;
      if (const FieldDecl* f = ctx.program->find_field(e.name)) return f->type;
      ctx.error(DiagKind::NameError, e.pos, "unresolved identifier '" + e.name + "'");
      return std::nullopt;
    }
    case Expr::Kind::Index: {
      auto arr = check_expr(ctx, *e.children[0]);
      auto idx = check_expr(ctx, *e.children[1]);
      if (arr && *arr != Type::IntArray) {
        ctx.error(DiagKind::TypeError, e.pos,
                  std::string("cannot index a value of type ") + type_name(*arr));
        return std::nullopt;
      }
      if (idx && *idx != Type::Int) {
        ctx.error(DiagKind::TypeError, e.children[1]->pos,
                  std::string("array index must be Int, got ") + type_name(*idx));
        return std::nullopt;
      }
      if (!arr || !idx) return std::nullopt;
      return Type::Int;
    }
    case Expr::Kind::Length: {
      auto arr = check_expr(ctx, *e.children[0]);
      if (!arr) return std::nullopt;
      if (*arr != Type::IntArray) {
        ctx.error(DiagKind::TypeError, e.pos,
                  std::string("length() expects IntArray, got ") + type_name(*arr));
        return std::nullopt;
      }
      return Type::Int;
    }
    case Expr::Kind::Unary: {
      auto t = check_expr(ctx, *e.children[0]);
      if (!t) return std::nullopt;
      if (e.un_op == UnOp::Neg) {
        if (*t != Type::Int) {
          ctx.error(DiagKind::TypeError, e.pos,
                    std::string("unary '-' expects Int, got ") + type_name(*t));
          return std::nullopt;
        }
        return Type::Int;
      }
      if (*t != Type::Bool) {
        ctx.error(DiagKind::TypeError, e.pos,
                  std::string("'!' expects Bool, got ") + type_name(*t));
        return std::nullopt;
      }
      return Type::Bool;
    }
    case Expr::Kind::Binary: {
      auto lt = check_expr(ctx, *e.children[0]);
      auto rt = check_expr(ctx, *e.children[1]);
      if (!lt || !rt) return std::nullopt;
      BinOp op = e.bin_op;
      if (is_arith_op(op)) {
        if (*lt != Type::Int || *rt != Type::Int) {
          ctx.error(DiagKind::TypeError, e.pos,
                    std::string("'") + bin_op_text(op) + "' expects Int operands, got " +
                        type_name(*lt) + " and " + type_name(*rt));
          return std::nullopt;
        }
        return Type::Int;
      }
      if (op == BinOp::And || op == BinOp::Or) {
        if (*lt != Type::Bool || *rt != Type::Bool) {
          ctx.error(DiagKind::TypeError, e.pos,
                    std::string("'") + bin_op_text(op) + "' expects Bool operands, got " +
                        type_name(*lt) + " and " + type_name(*rt));
          return std::nullopt;
        }
        return Type::Bool;
      }
      if (op == BinOp::Eq || op == BinOp::Ne) {
        if (*lt != *rt || *lt == Type::IntArray) {
          ctx.error(DiagKind::TypeError, e.pos,
                    std::string("'") + bin_op_text(op) + "' cannot compare " + type_name(*lt) +
                        " and " + type_name(*rt));
          return std::nullopt;
        }
        return Type::Bool;
      }
      if (*lt != Type::Int || *rt != Type::Int) {
        ctx.error(DiagKind::TypeError, e.pos,
                  std::string("'") + bin_op_text(op) + "' expects Int operands, got " +
                      type_name(*lt) + " and " + type_name(*rt));
        return std::nullopt;
      }
      return Type::Bool;
    }
    case Expr::Kind::Call: return check_call(ctx, e);
    case Expr::Kind::NewArray: {
      if (!ctx.in_ctor) {
        ctx.error(DiagKind::TypeError, e.pos,
                  "array allocation is only allowed in the constructor");
        return std::nullopt;
      }
      auto len = check_expr(ctx, *e.children[0]);
      if (!len) return std::nullopt;
      if (*len != Type::Int) {
        ctx.error(DiagKind::TypeError, e.pos,
                  std::string("array length must be Int, got ") + type_name(*len));
        return std::nullopt;
      }
      return Type::IntArray;
    }
  }
  return std::nullopt;
}

void check_block(CheckContext& ctx, const std::vector<StmtPtr>& block, Type return_type);

void check_stmt(CheckContext& ctx, const Stmt& s, Type return_type) {
  switch (s.kind) {
    case Stmt::Kind::VarDecl: {
      if (ctx.locals.count(s.name) || ctx.program->find_field(s.name)) {
        ctx.error(DiagKind::NameError, s.pos,
                  "'" + s.name + "' is already declared in this scope");
      }
      auto it = check_expr(ctx, *s.expr);
      if (it && *it != s.decl_type) {
        ctx.error(DiagKind::TypeError, s.pos,
                  "cannot initialize " + std::string(type_name(s.decl_type)) + " '" + s.name +
                      "' with " + type_name(*it));
      }
      ctx.locals[s.name] = s.decl_type;
      break;
    }
    case Stmt::Kind::Assign: {
      std::optional<Type> target;
      auto it = ctx.locals.find(s.name);
      if (it != ctx.locals.end()) {
        target = it->second;
      } else if (const FieldDecl* f = ctx.program->find_field(s.name)) {
        target = f->type;
      } else {
        ctx.error(DiagKind::NameError, s.pos, "unresolved identifier '" + s.name + "'");
      }
      auto vt = check_expr(ctx, *s.expr);
      if (target && vt && *target != *vt) {
        ctx.error(DiagKind::TypeError, s.pos,
                  "cannot assign " + std::string(type_name(*vt)) + " to " + type_name(*target) +
                      " '" + s.name + "'");
      }
      break;
    }
    case Stmt::Kind::ArrayStore: {
      std::optional<Type> target;
      auto it = ctx.locals.find(s.name);
      if (it != ctx.locals.end()) {
        target = it->second;
      } else if (const FieldDecl* f = ctx.program->find_field(s.name)) {
        target = f->type;
      } else {
        ctx.error(DiagKind::NameError, s.pos, "unresolved identifier '" + s.name + "'");
      }
      if (target && *target != Type::IntArray) {
        ctx.error(DiagKind::TypeError, s.pos,
                  "'" + s.name + "' is not an IntArray");
      }
      auto idx = check_expr(ctx, *s.index);
      if (idx && *idx != Type::Int) {
        ctx.error(DiagKind::TypeError, s.index->pos, "array index must be Int");
      }
      auto vt = check_expr(ctx, *s.expr);
      if (vt && *vt != Type::Int) {
        ctx.error(DiagKind::TypeError, s.expr->pos,
                  std::string("array element must be Int, got ") + type_name(*vt));
      }
      break;
    }
    case Stmt::Kind::If: {
      auto ct = check_expr(ctx, *s.expr);
      if (ct && *ct != Type::Bool) {
        ctx.error(DiagKind::TypeError, s.expr->pos,
                  std::string("condition must be Bool, got ") + type_name(*ct));
      }
      check_block(ctx, s.body, return_type);
      check_block(ctx, s.else_body, return_type);
      break;
    }
    case Stmt::Kind::While: {
      auto ct = check_expr(ctx, *s.expr);
      if (ct && *ct != Type::Bool) {
        ctx.error(DiagKind::TypeError, s.expr->pos,
                  std::string("condition must be Bool, got ") + type_name(*ct));
      }
      check_block(ctx, s.body, return_type);
      break;
    }
    case Stmt::Kind::Return: {
      if (!s.expr) {
        if (return_type != Type::Void) {
          ctx.error(DiagKind::TypeError, s.pos,
                    std::string("non-void method must return a ") + type_name(return_type));
        }
        break;
      }
      if (return_type == Type::Void) {
        ctx.error(DiagKind::TypeError, s.pos, "void method cannot return a value");
        break;
      }
      if (s.expr->kind == Expr::Kind::NullLit) break;  // null return allowed for any value type
      auto vt = check_expr(ctx, *s.expr);
      if (vt && *vt != return_type) {
        ctx.error(DiagKind::TypeError, s.pos,
                  std::string("return type mismatch: expected ") + type_name(return_type) +
                      ", got " + type_name(*vt));
      }
      break;
    }
    case Stmt::Kind::ExprStmt: {
      if (s.expr->kind != Expr::Kind::Call) {
        ctx.error(DiagKind::SyntaxError, s.pos, "only call expressions may stand alone");
        break;
      }
      check_expr(ctx, *s.expr);
      break;
    }
  }
}

void check_block(CheckContext& ctx, const std::vector<StmtPtr>& block, Type return_type) {
  for (const auto& s : block) check_stmt(ctx, *s, return_type);
}

bool block_must_return(const std::vector<StmtPtr>& block);

bool stmt_must_return(const Stmt& s) {
  if (s.kind == Stmt::Kind::Return) return true;
  if (s.kind == Stmt::Kind::If && !s.else_body.empty()) {
    return block_must_return(s.body) && block_must_return(s.else_body);
  }
  return false;
}

bool block_must_return(const std::vector<StmtPtr>& block) {
  for (const auto& s : block) {
    if (stmt_must_return(*s)) return true;
  }
  return false;
}

void check_signature_names(CheckContext& ctx, const SubjectProgram& p,
                           const std::vector<Param>& params, SourcePos pos) {
  std::set<std::string> seen;
  for (const auto& prm : params) {
    if (!seen.insert(prm.name).second) {
      ctx.error(DiagKind::NameError, pos, "duplicate parameter '" + prm.name + "'");
    }
    if (p.find_field(prm.name)) {
      ctx.error(DiagKind::NameError, pos,
                "parameter '" + prm.name + "' shadows a field");
    }
  }
}

}  // namespace

std::vector<Diagnostic> typecheck_program(const SubjectProgram& p) {
  std::vector<Diagnostic> diags;
  CheckContext ctx;
  ctx.program = &p;
  ctx.diags = &diags;

  std::set<std::string> field_names;
  for (const auto& f : p.fields) {
    if (!field_names.insert(f.name).second) {
      ctx.error(DiagKind::NameError, {}, "duplicate field '" + f.name + "'");
    }
  }
  std::set<std::string> method_names;
  for (const auto& m : p.methods) {
    if (!method_names.insert(m.name).second) {
      ctx.error(DiagKind::NameError, {}, "duplicate method '" + m.name + "'");
    }
  }

  ctx.in_ctor = true;
  ctx.locals.clear();
  check_signature_names(ctx, p, p.ctor.params, {});
  for (const auto& prm : p.ctor.params) ctx.locals[prm.name] = prm.type;
  check_block(ctx, p.ctor.body, Type::Void);

  ctx.in_ctor = false;
  for (const auto& m : p.methods) {
    ctx.locals.clear();
    check_signature_names(ctx, p, m.params, {});
    for (const auto& prm : m.params) ctx.locals[prm.name] = prm.type;
    check_block(ctx, m.body, m.return_type);
    if (m.return_type != Type::Void && !block_must_return(m.body)) {
      ctx.error(DiagKind::TypeError, {},
                "method '" + m.name + "': not every path returns a " +
                    type_name(m.return_type));
    }
  }
  return diags;
}

// ---------------------------------------------------------------------------
// Test script checking
// ---------------------------------------------------------------------------

namespace {

struct ScriptContext {
  const SubjectProgram* program = nullptr;
  std::vector<Diagnostic>* diags = nullptr;
  std::map<std::string, Type> locals;

  void error(DiagKind kind, SourcePos pos, std::string msg) {
    diags->push_back(make_error(kind, pos, std::move(msg)));
  }
};

std::optional<Type> check_script_expr(ScriptContext& ctx, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::IntLit: return Type::Int;
    case Expr::Kind::BoolLit: return Type::Bool;
    case Expr::Kind::VarRef: {
      auto it = ctx.locals.find(e.name);
      if (it == ctx.locals.end()) {
        ctx.error(DiagKind::NameError, e.pos, "unresolved identifier '" + e.name + "'");
        return std::nullopt;
      }
      return it->second;
    }
    case Expr::Kind::Call: {
      const MethodDef* callee = ctx.program->find_method(e.name);
      if (!callee) {
        ctx.error(DiagKind::NameError, e.pos, "unknown method '" + e.name + "'");
        return std::nullopt;
      }
      if (callee->params.size() != e.children.size()) {
        ctx.error(DiagKind::ArityError, e.pos,
                  "method '" + e.name + "' expects " +
                      std::to_string(callee->params.size()) + " argument(s), got " +
                      std::to_string(e.children.size()));
        return std::nullopt;
      }
      bool ok = true;
      for (size_t i = 0; i < e.children.size(); ++i) {
        auto at = check_script_expr(ctx, *e.children[i]);
        if (!at) {
          ok = false;
          continue;
        }
        if (*at != callee->params[i].type) {
          ctx.error(DiagKind::TypeError, e.children[i]->pos,
                    "argument " + std::to_string(i + 1) + " of '" + e.name + "' expects " +
                        type_name(callee->params[i].type) + ", got " + type_name(*at));
          ok = false;
        }
      }
      if (!ok) return std::nullopt;
      return callee->return_type;
    }
    case Expr::Kind::Unary: {
      auto t = check_script_expr(ctx, *e.children[0]);
      if (!t) return std::nullopt;
      Type want = e.un_op == UnOp::Neg ? Type::Int : Type::Bool;
      if (*t != want) {
        ctx.error(DiagKind::TypeError, e.pos,
                  std::string(e.un_op == UnOp::Neg ? "unary '-'" : "'!'") + " expects " +
                      type_name(want) + ", got " + type_name(*t));
        return std::nullopt;
      }
      return want;
    }
    case Expr::Kind::Binary: {
      auto lt = check_script_expr(ctx, *e.children[0]);
      auto rt = check_script_expr(ctx, *e.children[1]);
      if (!lt || !rt) return std::nullopt;
      BinOp op = e.bin_op;
      if (is_arith_op(op)) {
        if (*lt != Type::Int || *rt != Type::Int) {
          ctx.error(DiagKind::TypeError, e.pos,
                    std::string("'") + bin_op_text(op) + "' expects Int operands");
          return std::nullopt;
        }
        return Type::Int;
      }
      if (op == BinOp::And || op == BinOp::Or) {
        if (*lt != Type::Bool || *rt != Type::Bool) {
          ctx.error(DiagKind::TypeError, e.pos,
                    std::string("'") + bin_op_text(op) + "' expects Bool operands");
          return std::nullopt;
        }
        return Type::Bool;
      }
      if (op == BinOp::Eq || op == BinOp::Ne) {
        if (*lt != *rt || *lt == Type::IntArray) {
          ctx.error(DiagKind::TypeError, e.pos,
                    std::string("'") + bin_op_text(op) + "' cannot compare " + type_name(*lt) +
                        " and " + type_name(*rt));
          return std::nullopt;
        }
        return Type::Bool;
      }
      if (*lt != Type::Int || *rt != Type::Int) {
        ctx.error(DiagKind::TypeError, e.pos,
                  std::string("'") + bin_op_text(op) + "' expects Int operands");
        return std::nullopt;
      }
      return Type::Bool;
    }
    default:
      ctx.error(DiagKind::SyntaxError, e.pos, "expression form not allowed in test scripts");
      return std::nullopt;
  }
}

}  // namespace

std::vector<Diagnostic> check_test_script(const TestScript& script,
                                          const SubjectProgram& program) {
  std::vector<Diagnostic> diags;
  ScriptContext ctx;
  ctx.program = &program;
  ctx.diags = &diags;

  bool constructed = false;
  for (const auto& s : script.statements) {
    switch (s.kind) {
      case TestStmt::Kind::Construct: {
        if (constructed) {
          ctx.error(DiagKind::SyntaxError, s.pos, "a test constructs exactly one instance");
          break;
        }
        constructed = true;
        if (s.name != program.unit_name) {
          ctx.error(DiagKind::NameError, s.pos,
                    "unknown unit '" + s.name + "' (expected '" + program.unit_name + "')");
          break;
        }
        if (s.args.size() != program.ctor.params.size()) {
          ctx.error(DiagKind::ArityError, s.pos,
                    "constructor expects " + std::to_string(program.ctor.params.size()) +
                        " argument(s), got " + std::to_string(s.args.size()));
          break;
        }
        for (size_t i = 0; i < s.args.size(); ++i) {
          auto at = check_script_expr(ctx, *s.args[i]);
          if (at && *at != program.ctor.params[i].type) {
            ctx.error(DiagKind::TypeError, s.args[i]->pos,
                      "constructor argument " + std::to_string(i + 1) + " expects " +
                          type_name(program.ctor.params[i].type) + ", got " + type_name(*at));
          }
        }
        break;
      }
      case TestStmt::Kind::Call: {
        if (!constructed) {
          ctx.error(DiagKind::ScopeError, s.pos, "method call before construction");
          break;
        }
        check_script_expr(ctx, *s.expr);
        break;
      }
      case TestStmt::Kind::VarDecl: {
        if (ctx.locals.count(s.name)) {
          ctx.error(DiagKind::NameError, s.pos, "'" + s.name + "' is already declared");
        }
        bool calls = false;
        // An initializer that calls a method needs the instance.
        std::function<void(const Expr&)> scan = [&](const Expr& e) {
          if (e.kind == Expr::Kind::Call) calls = true;
          for (const auto& c : e.children) scan(*c);
        };
        scan(*s.expr);
        if (calls && !constructed) {
          ctx.error(DiagKind::ScopeError, s.pos, "method call before construction");
          break;
        }
        auto it = check_script_expr(ctx, *s.expr);
        if (it && *it != s.decl_type) {
          ctx.error(DiagKind::TypeError, s.pos,
                    "cannot initialize " + std::string(type_name(s.decl_type)) + " '" + s.name +
                        "' with " + type_name(*it));
        }
        ctx.locals[s.name] = s.decl_type;
        break;
      }
      case TestStmt::Kind::Assert: {
        if (!constructed) {
          bool calls = false;
          std::function<void(const Expr&)> scan = [&](const Expr& e) {
            if (e.kind == Expr::Kind::Call) calls = true;
            for (const auto& c : e.children) scan(*c);
          };
          scan(*s.expr);
          if (calls) {
            ctx.error(DiagKind::ScopeError, s.pos, "method call before construction");
            break;
          }
        }
        auto t = check_script_expr(ctx, *s.expr);
        if (t && *t != Type::Bool) {
          ctx.error(DiagKind::TypeError, s.pos,
                    std::string("assert expects Bool, got ") + type_name(*t));
        }
        break;
      }
    }
  }
  if (!constructed) {
    diags.push_back(make_error(DiagKind::SyntaxError, {}, "test constructs no instance"));
  }
  return diags;
}

}  // namespace specsift
