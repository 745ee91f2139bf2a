#include "specsift/subject_printer.hpp"

#include <sstream>

namespace specsift {

namespace {

// Higher binds tighter. Matches the parser's precedence ladder.
int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Binary:
      switch (e.bin_op) {
        case BinOp::Or: return 1;
        case BinOp::And: return 2;
        case BinOp::Eq:
        case BinOp::Ne:
        case BinOp::Lt:
        case BinOp::Le:
        case BinOp::Gt:
        case BinOp::Ge: return 3;
        case BinOp::Add:
        case BinOp::Sub: return 4;
        case BinOp::Mul:
        case BinOp::Div:
        case BinOp::Mod: return 5;
      }
      return 0;
    case Expr::Kind::Unary: return 6;
    default: return 7;
  }
}

void print_expr(std::ostream& out, const Expr& e);

void print_child(std::ostream& out, const Expr& parent, const Expr& child, bool right) {
  int pp = precedence(parent);
  int cp = precedence(child);
  bool parens = cp < pp || (cp == pp && right);
  if (parens) out << "(";
  print_expr(out, child);
  if (parens) out << ")";
}

void print_expr(std::ostream& out, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::IntLit: out << e.int_value; break;
    case Expr::Kind::BoolLit: out << (e.bool_value ? "true" : "false"); break;
    case Expr::Kind::NullLit: out << "null"; break;
    case Expr::Kind::VarRef: out << e.name; break;
    case Expr::Kind::Index:
      print_expr(out, *e.children[0]);
      out << "[";
      print_expr(out, *e.children[1]);
      out << "]";
      break;
    case Expr::Kind::Length:
      out << "length(";
      print_expr(out, *e.children[0]);
      out << ")";
      break;
    case Expr::Kind::Unary: {
      out << (e.un_op == UnOp::Neg ? "-" : "!");
      const Expr& operand = *e.children[0];
      // Space keeps `- -x` from fusing; parens keep binaries attached.
      bool parens = precedence(operand) < precedence(e);
      if (!parens && operand.kind == Expr::Kind::Unary && operand.un_op == e.un_op) out << " ";
      if (parens) out << "(";
      print_expr(out, operand);
      if (parens) out << ")";
      break;
    }
    case Expr::Kind::Binary:
      print_child(out, e, *e.children[0], false);
      out << " " << bin_op_text(e.bin_op) << " ";
      print_child(out, e, *e.children[1], true);
      break;
    case Expr::Kind::Call: {
      out << e.name << "(";
      for (size_t i = 0; i < e.children.size(); ++i) {
        if (i > 0) out << ", ";
        print_expr(out, *e.children[i]);
      }
      out << ")";
      break;
    }
    case Expr::Kind::NewArray:
      out << "new IntArray(";
      print_expr(out, *e.children[0]);
      out << ")";
      break;
  }
}

void print_block(std::ostream& out, const std::vector<StmtPtr>& block, int indent);

void print_stmt(std::ostream& out, const Stmt& s, int indent) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  out << pad;
  switch (s.kind) {
    case Stmt::Kind::VarDecl:
      out << "var " << s.name << ": " << type_name(s.decl_type) << " = ";
      print_expr(out, *s.expr);
      out << ";\n";
      break;
    case Stmt::Kind::Assign:
      out << s.name << " = ";
      print_expr(out, *s.expr);
      out << ";\n";
      break;
    case Stmt::Kind::ArrayStore:
      out << s.name << "[";
      print_expr(out, *s.index);
      out << "] = ";
      print_expr(out, *s.expr);
      out << ";\n";
      break;
    case Stmt::Kind::If:
      out << "if (";
      print_expr(out, *s.expr);
      out << ") {\n";
      print_block(out, s.body, indent + 1);
      out << pad << "}";
      if (!s.else_body.empty()) {
        out << " else {\n";
        print_block(out, s.else_body, indent + 1);
        out << pad << "}";
      }
      out << "\n";
      break;
    case Stmt::Kind::While:
      out << "while (";
      print_expr(out, *s.expr);
      out << ") {\n";
      print_block(out, s.body, indent + 1);
      out << pad << "}\n";
      break;
    case Stmt::Kind::Return:
      out << "return";
      if (s.expr) {
        out << " ";
        print_expr(out, *s.expr);
      }
      out << ";\n";
      break;
    case Stmt::Kind::ExprStmt:
      print_expr(out, *s.expr);
      out << ";\n";
      break;
  }
}

void print_block(std::ostream& out, const std::vector<StmtPtr>& block, int indent) {
  for (const auto& s : block) print_stmt(out, *s, indent);
}

void print_params(std::ostream& out, const std::vector<Param>& params) {
  out << "(";
  for (size_t i = 0; i < params.size(); ++i) {
    if (i > 0) out << ", ";
    out << params[i].name << ": " << type_name(params[i].type);
  }
  out << ")";
}

void print_method(std::ostream& out, const MethodDef& m, int indent) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  out << pad << "method " << m.name;
  print_params(out, m.params);
  out << ": " << type_name(m.return_type) << " {\n";
  print_block(out, m.body, indent + 1);
  out << pad << "}\n";
}

}  // namespace

std::string render_expr(const Expr& e) {
  std::ostringstream out;
  print_expr(out, e);
  return out.str();
}

std::string render_method(const MethodDef& method) {
  std::ostringstream out;
  print_method(out, method, 0);
  return out.str();
}

std::string render_subject(const SubjectProgram& p) {
  std::ostringstream out;
  out << "unit " << p.unit_name << " {\n";
  for (const auto& f : p.fields) {
    out << "  field " << f.name << ": " << type_name(f.type) << ";\n";
  }
  if (!p.fields.empty()) out << "\n";
  out << "  ctor";
  print_params(out, p.ctor.params);
  out << " {\n";
  print_block(out, p.ctor.body, 2);
  out << "  }\n";
  for (const auto& m : p.methods) {
    out << "\n";
    print_method(out, m, 1);
  }
  out << "}\n";
  return out.str();
}

std::string render_test(const TestScript& test) {
  std::ostringstream out;
  out << "test " << test.name << " {\n";
  for (const auto& s : test.statements) {
    out << "  ";
    switch (s.kind) {
      case TestStmt::Kind::Construct:
        out << "new " << s.name << "(";
        for (size_t i = 0; i < s.args.size(); ++i) {
          if (i > 0) out << ", ";
          print_expr(out, *s.args[i]);
        }
        out << ");\n";
        break;
      case TestStmt::Kind::Call:
        print_expr(out, *s.expr);
        out << ";\n";
        break;
      case TestStmt::Kind::VarDecl:
        out << "var " << s.name << ": " << type_name(s.decl_type) << " = ";
        print_expr(out, *s.expr);
        out << ";\n";
        break;
      case TestStmt::Kind::Assert:
        out << "assert ";
        print_expr(out, *s.expr);
        out << ";\n";
        break;
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace specsift
