#include "specsift/assertion.hpp"

namespace specsift {

namespace {

struct AVal {
  enum class Kind { Int, Bool, Arr, Tag };
  Kind kind = Kind::Int;
  int32_t i = 0;
  bool b = false;
  std::vector<int32_t> arr;

  static AVal of_int(int32_t v) { return AVal{Kind::Int, v, false, {}}; }
  static AVal of_bool(bool v) { return AVal{Kind::Bool, 0, v, {}}; }
  static AVal of_arr(std::vector<int32_t> a) { return AVal{Kind::Arr, 0, false, std::move(a)}; }
  static AVal of_tag() { return AVal{Kind::Tag, 0, false, {}}; }
};

using MaybeVal = std::optional<AVal>;  // nullopt = Undefined

MaybeVal from_trace_value(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Int: return AVal::of_int(v.i);
    case Value::Kind::Bool: return AVal::of_bool(v.b);
    case Value::Kind::Array: return AVal::of_arr(v.arr);
    case Value::Kind::Null: return std::nullopt;  // reading a null value faults
  }
  return std::nullopt;
}

class Evaluator {
 public:
  explicit Evaluator(const TraceRecord& trace) : trace_(trace) {}

  MaybeVal eval(const AExpr& e, bool in_old) {
    switch (e.kind) {
      case AExpr::Kind::IntLit: return AVal::of_int(e.int_value);
      case AExpr::Kind::BoolLit: return AVal::of_bool(e.bool_value);
      case AExpr::Kind::FieldRef: {
        const auto& state = in_old ? trace_.pre_state : trace_.post_state;
        auto it = state.find(e.name);
        if (it == state.end()) return std::nullopt;
        return from_trace_value(it->second);
      }
      case AExpr::Kind::ParamRef: {
        auto it = trace_.pre_state.find(e.name);  // parameters are pre-state values
        if (it == trace_.pre_state.end()) return std::nullopt;
        return from_trace_value(it->second);
      }
      case AExpr::Kind::Result:
        if (!trace_.result) return std::nullopt;
        return from_trace_value(*trace_.result);
      case AExpr::Kind::Old: return eval(*e.children[0], true);
      case AExpr::Kind::Unary: {
        auto v = eval(*e.children[0], in_old);
        if (!v) return std::nullopt;
        if (e.un_op == UnOp::Neg) {
          if (v->kind != AVal::Kind::Int) return std::nullopt;
          return AVal::of_int(wrap_neg(v->i));
        }
        if (v->kind != AVal::Kind::Bool) return std::nullopt;
        return AVal::of_bool(!v->b);
      }
      case AExpr::Kind::Binary: return eval_binary(e, in_old);
      case AExpr::Kind::Size: {
        auto arr = eval(*e.children[0], in_old);
        if (!arr || arr->kind != AVal::Kind::Arr) return std::nullopt;
        return AVal::of_int(static_cast<int32_t>(arr->arr.size()));
      }
      case AExpr::Kind::GetElement: {
        auto arr = eval(*e.children[0], in_old);
        if (!arr || arr->kind != AVal::Kind::Arr) return std::nullopt;
        auto idx = eval(*e.children[1], in_old);
        if (!idx || idx->kind != AVal::Kind::Int) return std::nullopt;
        if (idx->i < 0 || static_cast<size_t>(idx->i) >= arr->arr.size()) return std::nullopt;
        return AVal::of_int(arr->arr[static_cast<size_t>(idx->i)]);
      }
      case AExpr::Kind::PairwiseEqual: {
        auto a = eval(*e.children[0], in_old);
        auto b = eval(*e.children[1], in_old);
        if (!a || !b || a->kind != AVal::Kind::Arr || b->kind != AVal::Kind::Arr)
          return std::nullopt;
        return AVal::of_bool(a->arr == b->arr);
      }
      case AExpr::Kind::IsReverse: {
        auto a = eval(*e.children[0], in_old);
        auto b = eval(*e.children[1], in_old);
        if (!a || !b || a->kind != AVal::Kind::Arr || b->kind != AVal::Kind::Arr)
          return std::nullopt;
        if (a->arr.size() != b->arr.size()) return AVal::of_bool(false);
        size_t n = a->arr.size();
        for (size_t i = 0; i < n; ++i) {
          if (a->arr[i] != b->arr[n - 1 - i]) return AVal::of_bool(false);
        }
        return AVal::of_bool(true);
      }
      case AExpr::Kind::TypeArray:
        // The subject language is monomorphic in arrays; the tag is constant.
        return AVal::of_tag();
    }
    return std::nullopt;
  }

 private:
  MaybeVal eval_binary(const AExpr& e, bool in_old) {
    BinOp op = e.bin_op;
    if (op == BinOp::And || op == BinOp::Or) {
      // Left-to-right with short-circuit: a False && or True || left operand
      // decides without touching the right.
      auto l = eval(*e.children[0], in_old);
      if (!l || l->kind != AVal::Kind::Bool) return std::nullopt;
      if (op == BinOp::And && !l->b) return AVal::of_bool(false);
      if (op == BinOp::Or && l->b) return AVal::of_bool(true);
      auto r = eval(*e.children[1], in_old);
      if (!r || r->kind != AVal::Kind::Bool) return std::nullopt;
      return r;
    }
    auto l = eval(*e.children[0], in_old);
    if (!l) return std::nullopt;
    auto r = eval(*e.children[1], in_old);
    if (!r) return std::nullopt;
    if (op == BinOp::Eq || op == BinOp::Ne) {
      if (l->kind != r->kind) return std::nullopt;
      bool eq = false;
      switch (l->kind) {
        case AVal::Kind::Int: eq = l->i == r->i; break;
        case AVal::Kind::Bool: eq = l->b == r->b; break;
        case AVal::Kind::Arr: eq = l->arr == r->arr; break;
        case AVal::Kind::Tag: eq = true; break;  // only one array type exists
      }
      return AVal::of_bool(op == BinOp::Eq ? eq : !eq);
    }
    if (l->kind != AVal::Kind::Int || r->kind != AVal::Kind::Int) return std::nullopt;
    switch (op) {
      case BinOp::Add: return AVal::of_int(wrap_add(l->i, r->i));
      case BinOp::Sub: return AVal::of_int(wrap_sub(l->i, r->i));
      case BinOp::Mul: return AVal::of_int(wrap_mul(l->i, r->i));
      case BinOp::Div:
        if (r->i == 0) return std::nullopt;
        return AVal::of_int(wrap_div(l->i, r->i));
      case BinOp::Mod:
        if (r->i == 0) return std::nullopt;
        return AVal::of_int(wrap_mod(l->i, r->i));
      case BinOp::Lt: return AVal::of_bool(l->i < r->i);
      case BinOp::Le: return AVal::of_bool(l->i <= r->i);
      case BinOp::Gt: return AVal::of_bool(l->i > r->i);
      case BinOp::Ge: return AVal::of_bool(l->i >= r->i);
      default: return std::nullopt;
    }
  }

  const TraceRecord& trace_;
};

}  // namespace

Truth eval_assertion(const CandidateAssertion& a, const TraceRecord& t) {
  Evaluator ev(t);
  auto v = ev.eval(*a.root, false);
  if (!v || v->kind != AVal::Kind::Bool) return Truth::Undefined;
  return v->b ? Truth::True : Truth::False;
}

}  // namespace specsift
