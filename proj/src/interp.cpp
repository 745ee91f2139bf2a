#include "specsift/interp.hpp"

namespace specsift {

namespace {

struct FaultError {
  std::string message;
  SourcePos pos;
};

struct AssertError {
  SourcePos pos;
};

struct Flow {
  bool returned = false;
  std::optional<Value> value;  // engaged for `return e;` (Null for `return null;`)
};

using Env = std::map<std::string, Value>;

class Interpreter {
 public:
  Interpreter(const SubjectProgram& program, const std::string& monitor, InterpConfig cfg)
      : program_(program), monitor_(monitor), cfg_(cfg) {}

  RunOutcome run(const TestScript& test) {
    test_id_ = test.name;
    fields_.clear();
    traces_.clear();
    steps_ = 0;
    depth_ = 0;
    for (const auto& f : program_.fields) {
      switch (f.type) {
        case Type::Int: fields_[f.name] = Value::from_int(0); break;
        case Type::Bool: fields_[f.name] = Value::from_bool(false); break;
        default: fields_[f.name] = Value::null(); break;
      }
    }
    RunOutcome outcome;
    Env script_locals;
    try {
      for (const auto& s : test.statements) {
        step(s.pos);
        switch (s.kind) {
          case TestStmt::Kind::Construct: {
            std::vector<Value> args;
            for (const auto& a : s.args) args.push_back(eval(*a, script_locals));
            run_ctor(args);
            break;
          }
          case TestStmt::Kind::Call:
            eval(*s.expr, script_locals);
            break;
          case TestStmt::Kind::VarDecl:
            script_locals[s.name] = eval(*s.expr, script_locals);
            break;
          case TestStmt::Kind::Assert: {
            Value v = eval(*s.expr, script_locals);
            if (v.kind != Value::Kind::Bool) throw FaultError{"null value in assert", s.pos};
            if (!v.b) throw AssertError{s.pos};
            break;
          }
        }
      }
    } catch (const FaultError& f) {
      outcome.status = RunOutcome::Status::Fault;
      outcome.fault_message = f.message;
      outcome.fault_pos = f.pos;
    } catch (const AssertError& a) {
      outcome.status = RunOutcome::Status::AssertFailed;
      outcome.fault_message = "assertion failed";
      outcome.fault_pos = a.pos;
    }
    if (outcome.flagged()) {
      for (auto& t : traces_) t.script_flagged = true;
    }
    outcome.traces = std::move(traces_);
    return outcome;
  }

 private:
  void step(SourcePos pos) {
    if (++steps_ > cfg_.max_steps) throw FaultError{"step limit exceeded", pos};
  }

  void run_ctor(const std::vector<Value>& args) {
    Env locals;
    for (size_t i = 0; i < program_.ctor.params.size(); ++i) {
      locals[program_.ctor.params[i].name] = args[i];
    }
    in_ctor_ = true;
    exec_block(program_.ctor.body, locals);
    in_ctor_ = false;
  }

  Value call_method(const MethodDef& m, const std::vector<Value>& args, SourcePos pos) {
    if (++depth_ > cfg_.max_call_depth) {
      --depth_;
      throw FaultError{"call depth limit exceeded", pos};
    }
    Env locals;
    for (size_t i = 0; i < m.params.size(); ++i) locals[m.params[i].name] = args[i];

    bool monitored = m.name == monitor_;
    std::map<std::string, Value> pre_state;
    if (monitored) {
      pre_state = fields_;  // deep copy: snapshot isolation for old()
      for (size_t i = 0; i < m.params.size(); ++i) pre_state[m.params[i].name] = args[i];
    }

    Flow flow;
    try {
      flow = exec_block(m.body, locals);
    } catch (...) {
      --depth_;
      throw;
    }
    --depth_;

    if (monitored) {
      TraceRecord t;
      t.method = m.name;
      t.test_id = test_id_;
      t.pre_state = std::move(pre_state);
      t.post_state = fields_;
      if (m.return_type != Type::Void && flow.returned && flow.value && !flow.value->is_null()) {
        t.result = *flow.value;
      }
      traces_.push_back(std::move(t));
    }
    if (flow.returned && flow.value) return *flow.value;
    return Value::null();
  }

  Flow exec_block(const std::vector<StmtPtr>& block, Env& locals) {
    for (const auto& s : block) {
      Flow f = exec_stmt(*s, locals);
      if (f.returned) return f;
    }
    return {};
  }

  Flow exec_stmt(const Stmt& s, Env& locals) {
    step(s.pos);
    switch (s.kind) {
      case Stmt::Kind::VarDecl:
        locals[s.name] = eval(*s.expr, locals);
        return {};
      case Stmt::Kind::Assign: {
        Value v = eval(*s.expr, locals);
        auto it = locals.find(s.name);
        if (it != locals.end()) {
          it->second = std::move(v);
        } else {
          fields_[s.name] = std::move(v);
        }
        return {};
      }
      case Stmt::Kind::ArrayStore: {
        Value idx = eval(*s.index, locals);
        Value v = eval(*s.expr, locals);
        Value* target = nullptr;
        auto it = locals.find(s.name);
        if (it != locals.end()) {
          target = &it->second;
        } else {
          target = &fields_[s.name];
        }
        if (target->is_null()) throw FaultError{"null dereference", s.pos};
        require_int(idx, s.pos);
        if (idx.i < 0 || static_cast<size_t>(idx.i) >= target->arr.size()) {
          throw FaultError{"array index out of bounds (" + std::to_string(idx.i) + " of " +
                               std::to_string(target->arr.size()) + ")",
                           s.pos};
        }
        require_int(v, s.pos);
        target->arr[static_cast<size_t>(idx.i)] = v.i;
        return {};
      }
      case Stmt::Kind::If: {
        Value c = eval(*s.expr, locals);
        require_bool(c, s.expr->pos);
        return exec_block(c.b ? s.body : s.else_body, locals);
      }
      case Stmt::Kind::While: {
        while (true) {
          step(s.pos);
          Value c = eval(*s.expr, locals);
          require_bool(c, s.expr->pos);
          if (!c.b) return {};
          Flow f = exec_block(s.body, locals);
          if (f.returned) return f;
        }
      }
      case Stmt::Kind::Return: {
        Flow f;
        f.returned = true;
        if (s.expr) f.value = eval(*s.expr, locals);
        return f;
      }
      case Stmt::Kind::ExprStmt:
        eval(*s.expr, locals);
        return {};
    }
    return {};
  }

  void require_int(const Value& v, SourcePos pos) {
    if (v.kind == Value::Kind::Null) throw FaultError{"null value in arithmetic", pos};
    if (v.kind != Value::Kind::Int) throw FaultError{"expected Int value", pos};
  }
  void require_bool(const Value& v, SourcePos pos) {
    if (v.kind == Value::Kind::Null) throw FaultError{"null value in condition", pos};
    if (v.kind != Value::Kind::Bool) throw FaultError{"expected Bool value", pos};
  }

  Value eval(const Expr& e, Env& locals) {
    switch (e.kind) {
      case Expr::Kind::IntLit: return Value::from_int(e.int_value);
      case Expr::Kind::BoolLit: return Value::from_bool(e.bool_value);
      case Expr::Kind::NullLit: return Value::null();
      case Expr::Kind::VarRef: {
        auto it = locals.find(e.name);
        if (it != locals.end()) return it->second;
        auto fit = fields_.find(e.name);
        if (fit != fields_.end()) return fit->second;
        throw FaultError{"unresolved identifier '" + e.name + "'", e.pos};
      }
      case Expr::Kind::Index: {
        Value arr = eval(*e.children[0], locals);
        if (arr.is_null()) throw FaultError{"null dereference", e.pos};
        Value idx = eval(*e.children[1], locals);
        require_int(idx, e.pos);
        if (idx.i < 0 || static_cast<size_t>(idx.i) >= arr.arr.size()) {
          throw FaultError{"array index out of bounds (" + std::to_string(idx.i) + " of " +
                               std::to_string(arr.arr.size()) + ")",
                           e.pos};
        }
        return Value::from_int(arr.arr[static_cast<size_t>(idx.i)]);
      }
      case Expr::Kind::Length: {
        Value arr = eval(*e.children[0], locals);
        if (arr.is_null()) throw FaultError{"null dereference", e.pos};
        return Value::from_int(static_cast<int32_t>(arr.arr.size()));
      }
      case Expr::Kind::Unary: {
        Value v = eval(*e.children[0], locals);
        if (e.un_op == UnOp::Neg) {
          require_int(v, e.pos);
          return Value::from_int(wrap_neg(v.i));
        }
        require_bool(v, e.pos);
        return Value::from_bool(!v.b);
      }
      case Expr::Kind::Binary: {
        if (e.bin_op == BinOp::And || e.bin_op == BinOp::Or) {
          Value l = eval(*e.children[0], locals);
          require_bool(l, e.pos);
          if (e.bin_op == BinOp::And && !l.b) return Value::from_bool(false);
          if (e.bin_op == BinOp::Or && l.b) return Value::from_bool(true);
          Value r = eval(*e.children[1], locals);
          require_bool(r, e.pos);
          return r;
        }
        Value l = eval(*e.children[0], locals);
        Value r = eval(*e.children[1], locals);
        switch (e.bin_op) {
          case BinOp::Add: require_int(l, e.pos); require_int(r, e.pos);
            return Value::from_int(wrap_add(l.i, r.i));
          case BinOp::Sub: require_int(l, e.pos); require_int(r, e.pos);
            return Value::from_int(wrap_sub(l.i, r.i));
          case BinOp::Mul: require_int(l, e.pos); require_int(r, e.pos);
            return Value::from_int(wrap_mul(l.i, r.i));
          case BinOp::Div:
            require_int(l, e.pos); require_int(r, e.pos);
            if (r.i == 0) throw FaultError{"division by zero", e.pos};
            return Value::from_int(wrap_div(l.i, r.i));
          case BinOp::Mod:
            require_int(l, e.pos); require_int(r, e.pos);
            if (r.i == 0) throw FaultError{"division by zero", e.pos};
            return Value::from_int(wrap_mod(l.i, r.i));
          case BinOp::Eq:
          case BinOp::Ne: {
            if (l.is_null() || r.is_null()) throw FaultError{"null dereference", e.pos};
            bool eq = l == r;
            return Value::from_bool(e.bin_op == BinOp::Eq ? eq : !eq);
          }
          case BinOp::Lt: require_int(l, e.pos); require_int(r, e.pos);
            return Value::from_bool(l.i < r.i);
          case BinOp::Le: require_int(l, e.pos); require_int(r, e.pos);
            return Value::from_bool(l.i <= r.i);
          case BinOp::Gt: require_int(l, e.pos); require_int(r, e.pos);
            return Value::from_bool(l.i > r.i);
          case BinOp::Ge: require_int(l, e.pos); require_int(r, e.pos);
            return Value::from_bool(l.i >= r.i);
          default: break;
        }
        throw FaultError{"bad operator", e.pos};
      }
      case Expr::Kind::Call: {
        const MethodDef* m = program_.find_method(e.name);
        if (!m) throw FaultError{"unknown method '" + e.name + "'", e.pos};
        std::vector<Value> args;
        for (const auto& a : e.children) args.push_back(eval(*a, locals));
        return call_method(*m, args, e.pos);
      }
      case Expr::Kind::NewArray: {
        Value len = eval(*e.children[0], locals);
        require_int(len, e.pos);
        if (len.i < 0) throw FaultError{"negative array length", e.pos};
        if (len.i > cfg_.max_array_len) {
          throw FaultError{"array length " + std::to_string(len.i) +
                               " exceeds configured maximum " +
                               std::to_string(cfg_.max_array_len),
                           e.pos};
        }
        return Value::from_array(std::vector<int32_t>(static_cast<size_t>(len.i), 0));
      }
    }
    throw FaultError{"bad expression", e.pos};
  }

  const SubjectProgram& program_;
  std::string monitor_;
  InterpConfig cfg_;
  std::string test_id_;
  Env fields_;
  std::vector<TraceRecord> traces_;
  long long steps_ = 0;
  int depth_ = 0;
  bool in_ctor_ = false;
};

}  // namespace

RunOutcome run_test(const SubjectProgram& program, const TestScript& test,
                    const std::string& monitor, const InterpConfig& cfg) {
  Interpreter interp(program, monitor, cfg);
  return interp.run(test);
}

}  // namespace specsift
