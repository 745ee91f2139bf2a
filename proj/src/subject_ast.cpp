#include "specsift/subject_ast.hpp"

#include <set>

#include "specsift/value.hpp"

namespace specsift {

const char* type_name(Type t) {
  switch (t) {
    case Type::Int: return "Int";
    case Type::Bool: return "Bool";
    case Type::IntArray: return "IntArray";
    case Type::Void: return "Void";
  }
  return "?";
}

const char* bin_op_text(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Mod: return "%";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
  }
  return "?";
}

bool is_arith_op(BinOp op) {
  switch (op) {
    case BinOp::Add:
    case BinOp::Sub:
    case BinOp::Mul:
    case BinOp::Div:
    case BinOp::Mod: return true;
    default: return false;
  }
}

bool is_rel_op(BinOp op) {
  switch (op) {
    case BinOp::Eq:
    case BinOp::Ne:
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge: return true;
    default: return false;
  }
}

namespace {

std::shared_ptr<Expr> new_expr(Expr::Kind kind, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->pos = pos;
  return e;
}

}  // namespace

ExprPtr mk_int(int32_t v, SourcePos pos) {
  auto e = new_expr(Expr::Kind::IntLit, pos);
  e->int_value = v;
  return e;
}

ExprPtr mk_bool(bool v, SourcePos pos) {
  auto e = new_expr(Expr::Kind::BoolLit, pos);
  e->bool_value = v;
  return e;
}

ExprPtr mk_null(SourcePos pos) { return new_expr(Expr::Kind::NullLit, pos); }

ExprPtr mk_var(std::string name, SourcePos pos) {
  auto e = new_expr(Expr::Kind::VarRef, pos);
  e->name = std::move(name);
  return e;
}

ExprPtr mk_index(ExprPtr arr, ExprPtr idx, SourcePos pos) {
  auto e = new_expr(Expr::Kind::Index, pos);
  e->children = {std::move(arr), std::move(idx)};
  return e;
}

ExprPtr mk_length(ExprPtr arr, SourcePos pos) {
  auto e = new_expr(Expr::Kind::Length, pos);
  e->children = {std::move(arr)};
  return e;
}

ExprPtr mk_unary(UnOp op, ExprPtr operand, SourcePos pos) {
  if (op == UnOp::Neg && operand->kind == Expr::Kind::IntLit) {
    return mk_int(wrap_neg(operand->int_value), pos);
  }
  auto e = new_expr(Expr::Kind::Unary, pos);
  e->un_op = op;
  e->children = {std::move(operand)};
  return e;
}

ExprPtr mk_binary(BinOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
  auto e = new_expr(Expr::Kind::Binary, pos);
  e->bin_op = op;
  e->children = {std::move(lhs), std::move(rhs)};
  return e;
}

ExprPtr mk_call(std::string name, std::vector<ExprPtr> args, SourcePos pos) {
  auto e = new_expr(Expr::Kind::Call, pos);
  e->name = std::move(name);
  e->children = std::move(args);
  return e;
}

ExprPtr mk_new_array(ExprPtr len, SourcePos pos) {
  auto e = new_expr(Expr::Kind::NewArray, pos);
  e->children = {std::move(len)};
  return e;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::IntLit:
      if (a->int_value != b->int_value) return false;
      break;
    case Expr::Kind::BoolLit:
      if (a->bool_value != b->bool_value) return false;
      break;
    case Expr::Kind::VarRef:
    case Expr::Kind::Call:
      if (a->name != b->name) return false;
      break;
    case Expr::Kind::Binary:
      if (a->bin_op != b->bin_op) return false;
      break;
    case Expr::Kind::Unary:
      if (a->un_op != b->un_op) return false;
      break;
    default: break;
  }
  if (a->children.size() != b->children.size()) return false;
  for (size_t i = 0; i < a->children.size(); ++i) {
    if (!expr_equal(a->children[i], b->children[i])) return false;
  }
  return true;
}

namespace {

std::shared_ptr<Stmt> new_stmt(Stmt::Kind kind, SourcePos pos) {
  auto s = std::make_shared<Stmt>();
  s->kind = kind;
  s->pos = pos;
  return s;
}

}  // namespace

StmtPtr mk_var_decl(std::string name, Type type, ExprPtr init, SourcePos pos) {
  auto s = new_stmt(Stmt::Kind::VarDecl, pos);
  s->name = std::move(name);
  s->decl_type = type;
  s->expr = std::move(init);
  return s;
}

StmtPtr mk_assign(std::string name, ExprPtr value, SourcePos pos) {
  auto s = new_stmt(Stmt::Kind::Assign, pos);
  s->name = std::move(name);
  s->expr = std::move(value);
  return s;
}

StmtPtr mk_array_store(std::string name, ExprPtr index, ExprPtr value, SourcePos pos) {
  auto s = new_stmt(Stmt::Kind::ArrayStore, pos);
  s->name = std::move(name);
  s->index = std::move(index);
  s->expr = std::move(value);
  return s;
}

StmtPtr mk_if(ExprPtr cond, std::vector<StmtPtr> then_body, std::vector<StmtPtr> else_body,
              SourcePos pos) {
  auto s = new_stmt(Stmt::Kind::If, pos);
  s->expr = std::move(cond);
  s->body = std::move(then_body);
  s->else_body = std::move(else_body);
  return s;
}

StmtPtr mk_while(ExprPtr cond, std::vector<StmtPtr> body, SourcePos pos) {
  auto s = new_stmt(Stmt::Kind::While, pos);
  s->expr = std::move(cond);
  s->body = std::move(body);
  return s;
}

StmtPtr mk_return(ExprPtr value, SourcePos pos) {
  auto s = new_stmt(Stmt::Kind::Return, pos);
  s->expr = std::move(value);
  return s;
}

StmtPtr mk_expr_stmt(ExprPtr call, SourcePos pos) {
  auto s = new_stmt(Stmt::Kind::ExprStmt, pos);
  s->expr = std::move(call);
  return s;
}

bool stmt_equal(const StmtPtr& a, const StmtPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name) return false;
  if (a->kind == Stmt::Kind::VarDecl && a->decl_type != b->decl_type) return false;
  if ((a->expr == nullptr) != (b->expr == nullptr)) return false;
  if (a->expr && !expr_equal(a->expr, b->expr)) return false;
  if ((a->index == nullptr) != (b->index == nullptr)) return false;
  if (a->index && !expr_equal(a->index, b->index)) return false;
  return block_equal(a->body, b->body) && block_equal(a->else_body, b->else_body);
}

bool block_equal(const std::vector<StmtPtr>& a, const std::vector<StmtPtr>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!stmt_equal(a[i], b[i])) return false;
  }
  return true;
}

const MethodDef* SubjectProgram::find_method(const std::string& name) const {
  for (const auto& m : methods) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

const FieldDecl* SubjectProgram::find_field(const std::string& name) const {
  for (const auto& f : fields) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

bool program_equal(const SubjectProgram& a, const SubjectProgram& b) {
  if (a.unit_name != b.unit_name) return false;
  if (a.fields != b.fields) return false;
  if (a.ctor.params != b.ctor.params || !block_equal(a.ctor.body, b.ctor.body)) return false;
  if (a.methods.size() != b.methods.size()) return false;
  for (size_t i = 0; i < a.methods.size(); ++i) {
    const auto& ma = a.methods[i];
    const auto& mb = b.methods[i];
    if (ma.name != mb.name || ma.params != mb.params || ma.return_type != mb.return_type)
      return false;
    if (!block_equal(ma.body, mb.body)) return false;
  }
  return true;
}

int TestScript::call_count() const {
  int n = 0;
  for (const auto& s : statements) {
    if (s.kind == TestStmt::Kind::Call) ++n;
  }
  return n;
}

bool is_reserved_word(const std::string& word) {
  static const std::set<std::string> kReserved = {
      "unit",   "field",   "ctor",    "method",        "var",       "if",
      "else",   "while",   "return",  "new",           "assert",    "test",
      "true",   "false",   "null",    "Int",           "Bool",      "IntArray",
      "Void",   "length",  "old",     "result",        "size",      "getElement",
      "pairwiseEqual",     "isReverse",                "typeArray",
  };
  return kReserved.count(word) > 0;
}

}  // namespace specsift
