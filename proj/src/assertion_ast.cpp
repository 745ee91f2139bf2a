#include <sstream>

#include "specsift/assertion.hpp"
#include "specsift/hash.hpp"

namespace specsift {

const FieldDecl* MethodSignature::find_field(const std::string& name) const {
  for (const auto& f : fields)
    if (f.name == name) return &f;
  return nullptr;
}

const Param* MethodSignature::find_param(const std::string& name) const {
  for (const auto& p : params)
    if (p.name == name) return &p;
  return nullptr;
}

MethodSignature signature_of(const SubjectProgram& program, const MethodDef& method) {
  MethodSignature sig;
  sig.unit_name = program.unit_name;
  sig.method_name = method.name;
  sig.fields = program.fields;
  sig.params = method.params;
  sig.return_type = method.return_type;
  return sig;
}

namespace {

std::shared_ptr<AExpr> new_aexpr(AExpr::Kind kind) {
  auto e = std::make_shared<AExpr>();
  e->kind = kind;
  return e;
}

BinOp flip_rel(BinOp op) {
  switch (op) {
    case BinOp::Eq: return BinOp::Ne;
    case BinOp::Ne: return BinOp::Eq;
    case BinOp::Lt: return BinOp::Ge;
    case BinOp::Le: return BinOp::Gt;
    case BinOp::Gt: return BinOp::Le;
    case BinOp::Ge: return BinOp::Lt;
    default: return op;
  }
}

}  // namespace

AExprPtr a_int(int32_t v) {
  auto e = new_aexpr(AExpr::Kind::IntLit);
  e->int_value = v;
  return e;
}

AExprPtr a_bool(bool v) {
  auto e = new_aexpr(AExpr::Kind::BoolLit);
  e->bool_value = v;
  return e;
}

AExprPtr a_field(std::string name) {
  auto e = new_aexpr(AExpr::Kind::FieldRef);
  e->name = std::move(name);
  return e;
}

AExprPtr a_param(std::string name) {
  auto e = new_aexpr(AExpr::Kind::ParamRef);
  e->name = std::move(name);
  return e;
}

AExprPtr a_result() { return new_aexpr(AExpr::Kind::Result); }

AExprPtr a_old(AExprPtr operand) {
  auto e = new_aexpr(AExpr::Kind::Old);
  e->children = {std::move(operand)};
  return e;
}

AExprPtr a_unary(UnOp op, AExprPtr operand) {
  if (op == UnOp::Neg && operand->kind == AExpr::Kind::IntLit) {
    return a_int(wrap_neg(operand->int_value));
  }
  if (op == UnOp::Not) {
    // Normal form: !(a REL b) becomes the flipped relation and !!e cancels.
    // Both rewrites preserve three-valued semantics exactly.
    if (operand->kind == AExpr::Kind::Binary && is_rel_op(operand->bin_op)) {
      auto e = new_aexpr(AExpr::Kind::Binary);
      e->bin_op = flip_rel(operand->bin_op);
      e->children = operand->children;
      return e;
    }
    if (operand->kind == AExpr::Kind::Unary && operand->un_op == UnOp::Not) {
      return operand->children[0];
    }
  }
  auto e = new_aexpr(AExpr::Kind::Unary);
  e->un_op = op;
  e->children = {std::move(operand)};
  return e;
}

AExprPtr a_binary(BinOp op, AExprPtr lhs, AExprPtr rhs) {
  auto e = new_aexpr(AExpr::Kind::Binary);
  e->bin_op = op;
  e->children = {std::move(lhs), std::move(rhs)};
  return e;
}

AExprPtr a_imp(AExprPtr lhs, AExprPtr rhs) {
  return a_binary(BinOp::Or, a_unary(UnOp::Not, std::move(lhs)), std::move(rhs));
}

AExprPtr a_size(AExprPtr arr) {
  auto e = new_aexpr(AExpr::Kind::Size);
  e->children = {std::move(arr)};
  return e;
}

AExprPtr a_get_element(AExprPtr arr, AExprPtr idx) {
  auto e = new_aexpr(AExpr::Kind::GetElement);
  e->children = {std::move(arr), std::move(idx)};
  return e;
}

AExprPtr a_pairwise_equal(AExprPtr a, AExprPtr b) {
  auto e = new_aexpr(AExpr::Kind::PairwiseEqual);
  e->children = {std::move(a), std::move(b)};
  return e;
}

AExprPtr a_is_reverse(AExprPtr a, AExprPtr b) {
  auto e = new_aexpr(AExpr::Kind::IsReverse);
  e->children = {std::move(a), std::move(b)};
  return e;
}

AExprPtr a_type_array(AExprPtr arr) {
  auto e = new_aexpr(AExpr::Kind::TypeArray);
  e->children = {std::move(arr)};
  return e;
}

namespace {

// Fully parenthesized, left-associated by construction, decimal literals:
// injective over structurally distinct normal-form trees.
void print_aexpr(std::ostream& out, const AExpr& e) {
  switch (e.kind) {
    case AExpr::Kind::IntLit: out << e.int_value; return;
    case AExpr::Kind::BoolLit: out << (e.bool_value ? "true" : "false"); return;
    case AExpr::Kind::FieldRef:
    case AExpr::Kind::ParamRef: out << e.name; return;
    case AExpr::Kind::Result: out << "result"; return;
    case AExpr::Kind::Old:
      out << "old(";
      print_aexpr(out, *e.children[0]);
      out << ")";
      return;
    case AExpr::Kind::Unary:
      out << "(" << (e.un_op == UnOp::Neg ? "-" : "!");
      print_aexpr(out, *e.children[0]);
      out << ")";
      return;
    case AExpr::Kind::Binary:
      out << "(";
      print_aexpr(out, *e.children[0]);
      out << " " << bin_op_text(e.bin_op) << " ";
      print_aexpr(out, *e.children[1]);
      out << ")";
      return;
    case AExpr::Kind::Size:
      out << "size(";
      print_aexpr(out, *e.children[0]);
      out << ")";
      return;
    case AExpr::Kind::GetElement:
      out << "getElement(";
      print_aexpr(out, *e.children[0]);
      out << ", ";
      print_aexpr(out, *e.children[1]);
      out << ")";
      return;
    case AExpr::Kind::PairwiseEqual:
      out << "pairwiseEqual(";
      print_aexpr(out, *e.children[0]);
      out << ", ";
      print_aexpr(out, *e.children[1]);
      out << ")";
      return;
    case AExpr::Kind::IsReverse:
      out << "isReverse(";
      print_aexpr(out, *e.children[0]);
      out << ", ";
      print_aexpr(out, *e.children[1]);
      out << ")";
      return;
    case AExpr::Kind::TypeArray:
      out << "typeArray(";
      print_aexpr(out, *e.children[0]);
      out << ")";
      return;
  }
}

}  // namespace

std::string canonical_text(const AExpr& e) {
  std::ostringstream out;
  print_aexpr(out, e);
  return out.str();
}

int a_node_count(const AExpr& e) {
  int n = 1;
  for (const auto& c : e.children) n += a_node_count(*c);
  return n;
}

CandidateAssertion make_assertion(AExprPtr root) {
  CandidateAssertion a;
  a.text = canonical_text(*root);
  a.id = fnv1a64(a.text);
  a.node_count = a_node_count(*root);
  a.root = std::move(root);
  return a;
}

namespace {

void collect_slots(const AExpr& e, bool in_old, ReferencedSlots& out) {
  switch (e.kind) {
    case AExpr::Kind::FieldRef: {
      auto& list = in_old ? out.pre_fields : out.post_fields;
      for (const auto& n : list)
        if (n == e.name) return;
      list.push_back(e.name);
      return;
    }
    case AExpr::Kind::ParamRef: {
      for (const auto& n : out.params)
        if (n == e.name) return;
      out.params.push_back(e.name);
      return;
    }
    case AExpr::Kind::Result:
      out.uses_result = true;
      return;
    case AExpr::Kind::Old:
      collect_slots(*e.children[0], true, out);
      return;
    default:
      for (const auto& c : e.children) collect_slots(*c, in_old, out);
      return;
  }
}

}  // namespace

ReferencedSlots referenced_slots(const CandidateAssertion& a) {
  ReferencedSlots out;
  collect_slots(*a.root, false, out);
  return out;
}

void merge_slots(ReferencedSlots& into, const ReferencedSlots& from) {
  auto merge = [](std::vector<std::string>& dst, const std::vector<std::string>& src) {
    for (const auto& s : src) {
      bool present = false;
      for (const auto& d : dst)
        if (d == s) present = true;
      if (!present) dst.push_back(s);
    }
  };
  merge(into.pre_fields, from.pre_fields);
  merge(into.post_fields, from.post_fields);
  merge(into.params, from.params);
  into.uses_result = into.uses_result || from.uses_result;
}

const char* truth_name(Truth t) {
  switch (t) {
    case Truth::True: return "true";
    case Truth::False: return "false";
    case Truth::Undefined: return "undefined";
  }
  return "?";
}

}  // namespace specsift
