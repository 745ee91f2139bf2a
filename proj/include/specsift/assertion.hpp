#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "specsift/diag.hpp"
#include "specsift/interp.hpp"
#include "specsift/subject_ast.hpp"

namespace specsift {

/// Vocabulary an assertion is typed against: the unit's fields plus the
/// target method's parameters and return type.
struct MethodSignature {
  std::string unit_name;
  std::string method_name;
  std::vector<FieldDecl> fields;
  std::vector<Param> params;
  Type return_type = Type::Void;

  const FieldDecl* find_field(const std::string& name) const;
  const Param* find_param(const std::string& name) const;
};

MethodSignature signature_of(const SubjectProgram& program, const MethodDef& method);

struct AExpr;
using AExprPtr = std::shared_ptr<const AExpr>;

/// Postcondition expression node. Children layout by kind:
///   Old:           {operand}
///   Unary:         {operand}
///   Binary:        {lhs, rhs}
///   Size:          {array}
///   GetElement:    {array, index}
///   PairwiseEqual: {lhs, rhs}
///   IsReverse:     {lhs, rhs}
///   TypeArray:     {array}
/// Trees are kept in normal form: `a ==> b` is desugared to `!a || b`, unary
/// not flips relational operators and cancels double negation, and unary
/// minus on an int literal folds into a negative literal.
struct AExpr {
  enum class Kind {
    IntLit,
    BoolLit,
    FieldRef,
    ParamRef,
    Result,
    Old,
    Unary,
    Binary,
    Size,
    GetElement,
    PairwiseEqual,
    IsReverse,
    TypeArray,
  };

  Kind kind = Kind::IntLit;
  int32_t int_value = 0;
  bool bool_value = false;
  std::string name;  // FieldRef, ParamRef
  BinOp bin_op = BinOp::Add;
  UnOp un_op = UnOp::Neg;
  std::vector<AExprPtr> children;
};

AExprPtr a_int(int32_t v);
AExprPtr a_bool(bool v);
AExprPtr a_field(std::string name);
AExprPtr a_param(std::string name);
AExprPtr a_result();
AExprPtr a_old(AExprPtr e);
AExprPtr a_unary(UnOp op, AExprPtr e);
AExprPtr a_binary(BinOp op, AExprPtr lhs, AExprPtr rhs);
AExprPtr a_imp(AExprPtr lhs, AExprPtr rhs);  // desugars to !lhs || rhs
AExprPtr a_size(AExprPtr arr);
AExprPtr a_get_element(AExprPtr arr, AExprPtr idx);
AExprPtr a_pairwise_equal(AExprPtr a, AExprPtr b);
AExprPtr a_is_reverse(AExprPtr a, AExprPtr b);
AExprPtr a_type_array(AExprPtr arr);

std::string canonical_text(const AExpr& e);
int a_node_count(const AExpr& e);

struct CandidateAssertion {
  AExprPtr root;
  std::string text;  // canonical rendering (injective over distinct trees)
  uint64_t id = 0;   // fnv1a64(text)
  int node_count = 0;
};

CandidateAssertion make_assertion(AExprPtr root);

/// Parses and type-checks one postcondition against `sig`. The root must
/// type-check to Bool; old() never nests; `result` is rejected for void
/// methods and inside old().
Parsed<CandidateAssertion> parse_assertion(std::string_view text, const MethodSignature& sig);

enum class Truth { True, False, Undefined };
const char* truth_name(Truth t);

/// Three-valued evaluation over one trace. Faulting subexpressions (division
/// by zero, out-of-range getElement, reads of null values, absent result)
/// yield Undefined, which is distinct from False. && and || evaluate
/// left-to-right and short-circuit. Pure: no side effects.
Truth eval_assertion(const CandidateAssertion& a, const TraceRecord& t);

/// Assertion files: one assertion per line, `#` comments, UTF-8.
Parsed<std::vector<CandidateAssertion>> parse_assertion_file(std::string_view text,
                                                             const MethodSignature& sig);
std::string render_assertion_file(const std::vector<CandidateAssertion>& assertions);

/// Names of the state slots an assertion reads (used by bounded enumeration).
struct ReferencedSlots {
  std::vector<std::string> pre_fields;   // fields read inside old()
  std::vector<std::string> post_fields;  // fields read outside old()
  std::vector<std::string> params;
  bool uses_result = false;
};
ReferencedSlots referenced_slots(const CandidateAssertion& a);
void merge_slots(ReferencedSlots& into, const ReferencedSlots& from);

}  // namespace specsift
