#include "specsift/mutation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "specsift/hash.hpp"
#include "specsift/subject_parser.hpp"
#include "specsift/subject_printer.hpp"

namespace specsift {

namespace {

struct ExprVariant {
  ExprPtr expr;
  MutationEdit edit;
};

struct StmtVariant {
  StmtPtr stmt;
  MutationEdit edit;
};

struct BlockVariant {
  std::vector<StmtPtr> block;
  MutationEdit edit;
};

const BinOp kArithOps[] = {BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Mod};
const BinOp kRelOps[] = {BinOp::Eq, BinOp::Ne, BinOp::Lt, BinOp::Le, BinOp::Gt, BinOp::Ge};

ExprPtr with_children(const Expr& e, std::vector<ExprPtr> children) {
  auto copy = std::make_shared<Expr>(e);
  copy->children = std::move(children);
  return copy;
}

void mutate_expr(const ExprPtr& e, const std::string& path, std::vector<ExprVariant>& out) {
  // Edits at this node.
  if (e->kind == Expr::Kind::Binary) {
    const BinOp* ops = nullptr;
    size_t n = 0;
    const char* tag = nullptr;
    if (is_arith_op(e->bin_op)) {
      ops = kArithOps;
      n = std::size(kArithOps);
      tag = "aor";
    } else if (is_rel_op(e->bin_op)) {
      ops = kRelOps;
      n = std::size(kRelOps);
      tag = "ror";
    }
    for (size_t i = 0; i < n; ++i) {
      if (ops[i] == e->bin_op) continue;
      auto copy = std::make_shared<Expr>(*e);
      copy->bin_op = ops[i];
      MutationEdit edit{tag, path, render_expr(*e), render_expr(*copy)};
      out.push_back({copy, std::move(edit)});
    }
  } else if (e->kind == Expr::Kind::IntLit) {
    int32_t candidates[] = {wrap_add(e->int_value, 1), wrap_sub(e->int_value, 1), 0};
    std::set<int32_t> emitted;
    for (int32_t v : candidates) {
      if (v == e->int_value || !emitted.insert(v).second) continue;
      MutationEdit edit{"const", path, render_expr(*e), std::to_string(v)};
      out.push_back({mk_int(v, e->pos), std::move(edit)});
    }
  }
  // Edits inside children.
  for (size_t i = 0; i < e->children.size(); ++i) {
    std::vector<ExprVariant> inner;
    mutate_expr(e->children[i], path + "/" + std::to_string(i), inner);
    for (auto& v : inner) {
      auto children = e->children;
      children[i] = v.expr;
      out.push_back({with_children(*e, std::move(children)), std::move(v.edit)});
    }
  }
}

std::string render_stmt_head(const Stmt& s) {
  switch (s.kind) {
    case Stmt::Kind::Assign: return s.name + " = " + render_expr(*s.expr) + ";";
    case Stmt::Kind::ArrayStore:
      return s.name + "[" + render_expr(*s.index) + "] = " + render_expr(*s.expr) + ";";
    case Stmt::Kind::If: return "if (" + render_expr(*s.expr) + ")";
    case Stmt::Kind::While: return "while (" + render_expr(*s.expr) + ")";
    default: return "";
  }
}

void mutate_block(const std::vector<StmtPtr>& block, const std::string& path,
                  std::vector<BlockVariant>& out);

void mutate_stmt(const StmtPtr& s, const std::string& path, std::vector<StmtVariant>& out) {
  auto replace_expr = [&](const ExprPtr& child, const char* slot,
                          auto apply) {
    std::vector<ExprVariant> inner;
    mutate_expr(child, path + "/" + slot, inner);
    for (auto& v : inner) {
      auto copy = std::make_shared<Stmt>(*s);
      apply(*copy, v.expr);
      out.push_back({copy, std::move(v.edit)});
    }
  };

  switch (s->kind) {
    case Stmt::Kind::VarDecl:
    case Stmt::Kind::Assign:
    case Stmt::Kind::ExprStmt:
    case Stmt::Kind::Return:
      if (s->expr) {
        replace_expr(s->expr, "expr", [](Stmt& st, ExprPtr e) { st.expr = std::move(e); });
      }
      break;
    case Stmt::Kind::ArrayStore:
      replace_expr(s->index, "index", [](Stmt& st, ExprPtr e) { st.index = std::move(e); });
      replace_expr(s->expr, "expr", [](Stmt& st, ExprPtr e) { st.expr = std::move(e); });
      break;
    case Stmt::Kind::If:
    case Stmt::Kind::While: {
      // Condition negation.
      {
        auto copy = std::make_shared<Stmt>(*s);
        copy->expr = mk_unary(UnOp::Not, s->expr, s->expr->pos);
        MutationEdit edit{"negate-cond", path + "/cond", render_stmt_head(*s),
                          render_stmt_head(*copy)};
        out.push_back({copy, std::move(edit)});
      }
      replace_expr(s->expr, "cond", [](Stmt& st, ExprPtr e) { st.expr = std::move(e); });
      {
        std::vector<BlockVariant> inner;
        mutate_block(s->body, path + "/body", inner);
        for (auto& v : inner) {
          auto copy = std::make_shared<Stmt>(*s);
          copy->body = std::move(v.block);
          out.push_back({copy, std::move(v.edit)});
        }
      }
      if (s->kind == Stmt::Kind::If) {
        std::vector<BlockVariant> inner;
        mutate_block(s->else_body, path + "/else", inner);
        for (auto& v : inner) {
          auto copy = std::make_shared<Stmt>(*s);
          copy->else_body = std::move(v.block);
          out.push_back({copy, std::move(v.edit)});
        }
      }
      break;
    }
  }
}

void mutate_block(const std::vector<StmtPtr>& block, const std::string& path,
                  std::vector<BlockVariant>& out) {
  for (size_t i = 0; i < block.size(); ++i) {
    std::string stmt_path = path + "[" + std::to_string(i) + "]";
    // Assignment deletion (declarations are kept so names stay resolvable).
    if (block[i]->kind == Stmt::Kind::Assign || block[i]->kind == Stmt::Kind::ArrayStore) {
      std::vector<StmtPtr> shorter;
      shorter.reserve(block.size() - 1);
      for (size_t j = 0; j < block.size(); ++j) {
        if (j != i) shorter.push_back(block[j]);
      }
      MutationEdit edit{"del-assign", stmt_path, render_stmt_head(*block[i]), ""};
      out.push_back({std::move(shorter), std::move(edit)});
    }
    std::vector<StmtVariant> inner;
    mutate_stmt(block[i], stmt_path, inner);
    for (auto& v : inner) {
      auto copy = block;
      copy[i] = v.stmt;
      out.push_back({std::move(copy), std::move(v.edit)});
    }
  }
}

std::set<std::string> reachable_methods(const SubjectProgram& program,
                                        const std::string& monitor) {
  std::set<std::string> seen;
  std::vector<std::string> work{monitor};
  std::function<void(const Expr&, std::vector<std::string>&)> scan_expr =
      [&](const Expr& e, std::vector<std::string>& acc) {
        if (e.kind == Expr::Kind::Call) acc.push_back(e.name);
        for (const auto& c : e.children) scan_expr(*c, acc);
      };
  std::function<void(const std::vector<StmtPtr>&, std::vector<std::string>&)> scan_block =
      [&](const std::vector<StmtPtr>& block, std::vector<std::string>& acc) {
        for (const auto& s : block) {
          if (s->expr) scan_expr(*s->expr, acc);
          if (s->index) scan_expr(*s->index, acc);
          scan_block(s->body, acc);
          scan_block(s->else_body, acc);
        }
      };
  while (!work.empty()) {
    std::string name = work.back();
    work.pop_back();
    if (!seen.insert(name).second) continue;
    const MethodDef* m = program.find_method(name);
    if (!m) continue;
    std::vector<std::string> callees;
    scan_block(m->body, callees);
    for (auto& c : callees) work.push_back(std::move(c));
  }
  return seen;
}

}  // namespace

std::vector<Mutant> generate_mutants(const SubjectProgram& program, const std::string& monitor) {
  std::vector<Mutant> out;
  auto reachable = reachable_methods(program, monitor);
  int next_id = 0;
  for (const auto& m : program.methods) {
    if (!reachable.count(m.name)) continue;
    std::vector<BlockVariant> variants;
    mutate_block(m.body, m.name + "/body", variants);
    for (auto& v : variants) {
      SubjectProgram mutated = program;
      for (auto& mm : mutated.methods) {
        if (mm.name == m.name) mm.body = v.block;
      }
      if (!typecheck_program(mutated).empty()) continue;
      Mutant mutant;
      mutant.id = next_id++;
      mutant.program = std::move(mutated);
      mutant.edit = std::move(v.edit);
      out.push_back(std::move(mutant));
    }
  }
  return out;
}

KillMatrix compute_kill_matrix(const SubjectProgram& original, const std::vector<Mutant>& mutants,
                               const std::vector<TestScript>& suite,
                               const std::vector<CandidateAssertion>& survivors,
                               const std::string& monitor, const InterpConfig& cfg) {
  (void)original;  // survivors are known to hold on the original's traces
  KillMatrix matrix;
  matrix.assertions = survivors;
  matrix.kills.assign(survivors.size(), {});

  for (const auto& mutant : mutants) {
    std::vector<TraceRecord> traces;
    bool any_clean = false;
    for (const auto& test : suite) {
      RunOutcome outcome = run_test(mutant.program, test, monitor, cfg);
      if (outcome.status != RunOutcome::Status::Fault) any_clean = true;
      for (auto& t : outcome.traces) traces.push_back(std::move(t));
    }
    if (!any_clean && !suite.empty()) {
      matrix.stillborn_ids.push_back(mutant.id);
      continue;
    }
    matrix.mutant_ids.push_back(mutant.id);
    for (size_t row = 0; row < survivors.size(); ++row) {
      uint8_t killed = 0;
      for (const auto& t : traces) {
        if (eval_assertion(survivors[row], t) != Truth::True) {
          killed = 1;
          break;
        }
      }
      matrix.kills[row].push_back(killed);
    }
  }
  return matrix;
}

ClusterSelection cluster_and_select(const KillMatrix& matrix) {
  ClusterSelection sel;
  std::map<std::vector<uint8_t>, size_t> cluster_of_row;  // row pattern -> cluster index
  struct Cluster {
    std::vector<size_t> rows;
  };
  std::vector<Cluster> clusters;  // first-appearance order
  std::vector<size_t> zero_rows;

  for (size_t row = 0; row < matrix.assertions.size(); ++row) {
    const auto& pattern = matrix.kills[row];
    bool all_zero = std::all_of(pattern.begin(), pattern.end(),
                                [](uint8_t k) { return k == 0; });
    if (all_zero) {
      zero_rows.push_back(row);
      continue;
    }
    auto it = cluster_of_row.find(pattern);
    if (it == cluster_of_row.end()) {
      cluster_of_row.emplace(pattern, clusters.size());
      clusters.push_back({{row}});
    } else {
      clusters[it->second].rows.push_back(row);
    }
  }

  auto better = [&](size_t a, size_t b) {
    const auto& aa = matrix.assertions[a];
    const auto& ab = matrix.assertions[b];
    if (aa.node_count != ab.node_count) return aa.node_count < ab.node_count;
    return aa.text < ab.text;
  };

  for (const auto& cluster : clusters) {
    size_t rep = cluster.rows[0];
    for (size_t row : cluster.rows) {
      if (better(row, rep)) rep = row;
    }
    sel.representatives.push_back(matrix.assertions[rep]);
    std::vector<uint64_t> members;
    for (size_t row : cluster.rows) members.push_back(matrix.assertions[row].id);
    sel.cluster_members.push_back(std::move(members));
  }
  for (size_t row : zero_rows) sel.zero_kill.push_back(matrix.assertions[row]);
  return sel;
}

std::string kill_matrix_csv(const KillMatrix& matrix) {
  std::string out = "assertion";
  for (int id : matrix.mutant_ids) {
    out += ",m" + std::to_string(id);
  }
  out += "\n";
  for (size_t row = 0; row < matrix.assertions.size(); ++row) {
    out += hex64(matrix.assertions[row].id);
    for (uint8_t k : matrix.kills[row]) {
      out += k ? ",1" : ",0";
    }
    out += "\n";
  }
  return out;
}

}  // namespace specsift
