#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "specsift/diag.hpp"

namespace specsift {

enum class Type { Int, Bool, IntArray, Void };
const char* type_name(Type t);

enum class BinOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or };
enum class UnOp { Neg, Not };

const char* bin_op_text(BinOp op);
bool is_arith_op(BinOp op);
bool is_rel_op(BinOp op);  // Eq..Ge

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Expression node. Children layout by kind:
///   Index:    {array, index}
///   Length:   {array}
///   Unary:    {operand}
///   Binary:   {lhs, rhs}
///   Call:     arguments
///   NewArray: {length}
struct Expr {
  enum class Kind { IntLit, BoolLit, NullLit, VarRef, Index, Length, Unary, Binary, Call, NewArray };

  Kind kind = Kind::IntLit;
  int32_t int_value = 0;
  bool bool_value = false;
  std::string name;  // VarRef, Call
  BinOp bin_op = BinOp::Add;
  UnOp un_op = UnOp::Neg;
  std::vector<ExprPtr> children;
  SourcePos pos;
};

ExprPtr mk_int(int32_t v, SourcePos pos = {});
ExprPtr mk_bool(bool v, SourcePos pos = {});
ExprPtr mk_null(SourcePos pos = {});
ExprPtr mk_var(std::string name, SourcePos pos = {});
ExprPtr mk_index(ExprPtr arr, ExprPtr idx, SourcePos pos = {});
ExprPtr mk_length(ExprPtr arr, SourcePos pos = {});
// Folds unary minus on an int literal into a negative literal.
ExprPtr mk_unary(UnOp op, ExprPtr operand, SourcePos pos = {});
ExprPtr mk_binary(BinOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});
ExprPtr mk_call(std::string name, std::vector<ExprPtr> args, SourcePos pos = {});
ExprPtr mk_new_array(ExprPtr len, SourcePos pos = {});

bool expr_equal(const ExprPtr& a, const ExprPtr& b);  // structural, ignores positions

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

/// Statement node. Field use by kind:
///   VarDecl:    name, decl_type, expr (initializer)
///   Assign:     name, expr
///   ArrayStore: name, index, expr
///   If:         expr (condition), body (then), else_body
///   While:      expr (condition), body
///   Return:     expr (null for `return;`)
///   ExprStmt:   expr (a call)
struct Stmt {
  enum class Kind { VarDecl, Assign, ArrayStore, If, While, Return, ExprStmt };

  Kind kind = Kind::Return;
  std::string name;
  Type decl_type = Type::Int;
  ExprPtr expr;
  ExprPtr index;
  std::vector<StmtPtr> body;
  std::vector<StmtPtr> else_body;
  SourcePos pos;
};

StmtPtr mk_var_decl(std::string name, Type type, ExprPtr init, SourcePos pos = {});
StmtPtr mk_assign(std::string name, ExprPtr value, SourcePos pos = {});
StmtPtr mk_array_store(std::string name, ExprPtr index, ExprPtr value, SourcePos pos = {});
StmtPtr mk_if(ExprPtr cond, std::vector<StmtPtr> then_body, std::vector<StmtPtr> else_body,
              SourcePos pos = {});
StmtPtr mk_while(ExprPtr cond, std::vector<StmtPtr> body, SourcePos pos = {});
StmtPtr mk_return(ExprPtr value, SourcePos pos = {});  // value may be null
StmtPtr mk_expr_stmt(ExprPtr call, SourcePos pos = {});

bool stmt_equal(const StmtPtr& a, const StmtPtr& b);
bool block_equal(const std::vector<StmtPtr>& a, const std::vector<StmtPtr>& b);

struct Param {
  std::string name;
  Type type = Type::Int;
  bool operator==(const Param&) const = default;
};

struct FieldDecl {
  std::string name;
  Type type = Type::Int;
  bool operator==(const FieldDecl&) const = default;
};

struct MethodDef {
  std::string name;
  std::vector<Param> params;
  Type return_type = Type::Void;
  std::vector<StmtPtr> body;
};

struct CtorDef {
  std::vector<Param> params;
  std::vector<StmtPtr> body;
};

struct SubjectProgram {
  std::string unit_name;
  std::vector<FieldDecl> fields;
  CtorDef ctor;
  std::vector<MethodDef> methods;

  const MethodDef* find_method(const std::string& name) const;
  const FieldDecl* find_field(const std::string& name) const;
};

bool program_equal(const SubjectProgram& a, const SubjectProgram& b);

/// One statement of a test script. Field use by kind:
///   Construct: name (unit), args
///   Call:      expr (a Call expression)
///   VarDecl:   name, decl_type, expr (initializer)
///   Assert:    expr (condition)
struct TestStmt {
  enum class Kind { Construct, Call, VarDecl, Assert };

  Kind kind = Kind::Call;
  std::string name;
  Type decl_type = Type::Int;
  ExprPtr expr;
  std::vector<ExprPtr> args;
  SourcePos pos;
};

struct TestScript {
  std::string name;
  std::vector<TestStmt> statements;

  int call_count() const;  // Call statements, excluding the construction
};

/// True for words that may not be used as unit/field/method/param/local names.
bool is_reserved_word(const std::string& word);

}  // namespace specsift
