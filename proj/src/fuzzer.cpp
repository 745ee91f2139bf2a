#include "specsift/fuzzer.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>

namespace specsift {

namespace {

constexpr int kUnproductive = std::numeric_limits<int>::max();

bool is_nonterminal(const std::string& tok) {
  return tok.size() >= 3 && tok.front() == '<' && tok.back() == '>';
}

const char* const kBuiltins[] = {"<IntVar>",   "<BoolVar>", "<ArrVar>",
                                 "<IntConst>", "<Result>",  "<OldIntVar>"};

bool is_builtin(const std::string& nt) {
  for (const char* b : kBuiltins)
    if (nt == b) return true;
  return false;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

void populate_builtins(AssertionGrammar& g, const MethodSignature& sig,
                       const std::vector<int32_t>& const_pool) {
  auto add = [&](const char* nt, std::vector<std::string> tokens) {
    AssertionGrammar::Production p;
    p.tokens = std::move(tokens);
    g.rules[nt].push_back(std::move(p));
  };
  for (const char* b : kBuiltins) g.rules[b];  // present even when empty

  for (const auto& f : sig.fields) {
    switch (f.type) {
      case Type::Int:
        add("<IntVar>", {f.name});
        add("<OldIntVar>", {"old", "(", f.name, ")"});
        break;
      case Type::Bool: add("<BoolVar>", {f.name}); break;
      case Type::IntArray: add("<ArrVar>", {f.name}); break;
      default: break;
    }
  }
  for (const auto& p : sig.params) {
    switch (p.type) {
      case Type::Int: add("<IntVar>", {p.name}); break;
      case Type::Bool: add("<BoolVar>", {p.name}); break;
      default: break;
    }
  }
  for (int32_t c : const_pool) add("<IntConst>", {std::to_string(c)});
  if (sig.return_type != Type::Void) add("<Result>", {"result"});
}

// Fixpoint over shortest terminating derivation depth; prunes alternatives
// that can never terminate.
std::vector<std::string> compute_min_depths(AssertionGrammar& g) {
  std::map<std::string, int> depth;
  for (auto& [nt, _] : g.rules) depth[nt] = kUnproductive;

  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [nt, prods] : g.rules) {
      for (auto& p : prods) {
        int d = 1;
        for (const auto& tok : p.tokens) {
          if (!is_nonterminal(tok)) continue;
          auto it = depth.find(tok);
          int td = it == depth.end() ? kUnproductive : it->second;
          if (td == kUnproductive) {
            d = kUnproductive;
            break;
          }
          d = std::max(d, td + 1);
        }
        p.min_depth = d;
        if (d < depth[nt]) {
          depth[nt] = d;
          changed = true;
        }
      }
    }
  }

  std::vector<std::string> unproductive;
  for (auto& [nt, prods] : g.rules) {
    prods.erase(std::remove_if(prods.begin(), prods.end(),
                               [](const AssertionGrammar::Production& p) {
                                 return p.min_depth == kUnproductive;
                               }),
                prods.end());
    if (depth[nt] == kUnproductive) unproductive.push_back(nt);
  }
  return unproductive;
}

}  // namespace

Parsed<AssertionGrammar> load_grammar(std::string_view text, const MethodSignature& sig,
                                      const std::vector<int32_t>& const_pool) {
  Parsed<AssertionGrammar> result;
  AssertionGrammar g;
  auto error = [&](int line, std::string msg) {
    result.diagnostics.push_back(
        make_error(DiagKind::GrammarError, SourcePos{line, 1}, std::move(msg)));
  };

  populate_builtins(g, sig, const_pool);

  std::set<std::string> user_defined;
  int line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    std::string line(text.substr(
        start, end == std::string_view::npos ? std::string_view::npos : end - start));
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto tokens = split_ws(line);
    if (!tokens.empty()) {
      if (tokens.size() < 3 || !is_nonterminal(tokens[0]) || tokens[1] != "::=") {
        error(line_no, "expected '<Name> ::= alternative | alternative'");
        return result;
      }
      const std::string& nt = tokens[0];
      if (is_builtin(nt)) {
        error(line_no, "builtin nonterminal " + nt + " cannot be redefined");
        return result;
      }
      if (g.start.empty()) g.start = nt;
      user_defined.insert(nt);
      AssertionGrammar::Production current;
      bool any = false;
      for (size_t i = 2; i <= tokens.size(); ++i) {
        if (i == tokens.size() || tokens[i] == "|") {
          if (current.tokens.empty()) {
            error(line_no, "empty alternative in rule for " + nt);
            return result;
          }
          g.rules[nt].push_back(std::move(current));
          current = {};
          any = true;
        } else {
          current.tokens.push_back(tokens[i]);
        }
      }
      if (!any) {
        error(line_no, "rule for " + nt + " has no alternatives");
        return result;
      }
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }

  if (g.start.empty()) {
    error(0, "grammar defines no rules");
    return result;
  }

  // Undefined nonterminal references (builtins excluded; they may be empty).
  for (const auto& [nt, prods] : g.rules) {
    for (const auto& p : prods) {
      for (const auto& tok : p.tokens) {
        if (is_nonterminal(tok) && !is_builtin(tok) && !user_defined.count(tok)) {
          error(0, "undefined nonterminal " + tok);
          return result;
        }
      }
    }
  }

  auto unproductive = compute_min_depths(g);
  bool start_dead = false;
  for (const auto& nt : unproductive)
    if (nt == g.start) start_dead = true;
  if (start_dead) {
    std::string names;
    for (const auto& nt : unproductive) {
      if (!is_builtin(nt)) {
        if (!names.empty()) names += ", ";
        names += nt;
      }
    }
    error(0,
          "start symbol cannot derive any sentence (no terminating production; check for "
          "left-recursive cycles or vocabulary this signature lacks): " +
              names);
    return result;
  }

  result.value = std::move(g);
  return result;
}

std::vector<CandidateAssertion> generate_candidates(const AssertionGrammar& grammar,
                                                    const MethodSignature& sig,
                                                    const FuzzerConfig& cfg) {
  std::vector<CandidateAssertion> out;
  if (cfg.max_candidates <= 0) return out;

  // mt19937_64 with modulo choice: identical streams on every platform.
  std::mt19937_64 rng(cfg.seed);
  std::set<std::string> seen;

  // Derivation: uniform choice while depth budget remains; once exhausted the
  // shortest-terminating alternative (lowest index among minimal) is forced.
  std::vector<std::string> sentence;
  std::function<bool(const std::string&, int)> derive = [&](const std::string& nt,
                                                            int budget) -> bool {
    const auto& prods = grammar.productions(nt);
    if (prods.empty()) return false;
    size_t choice;
    if (budget <= 1) {
      choice = 0;
      for (size_t i = 1; i < prods.size(); ++i) {
        if (prods[i].min_depth < prods[choice].min_depth) choice = i;
      }
    } else {
      choice = static_cast<size_t>(rng() % prods.size());
      if (prods[choice].min_depth > budget) {
        // Too deep to terminate within budget; fall back to the shortest.
        choice = 0;
        for (size_t i = 1; i < prods.size(); ++i) {
          if (prods[i].min_depth < prods[choice].min_depth) choice = i;
        }
      }
    }
    for (const auto& tok : prods[choice].tokens) {
      if (is_nonterminal(tok)) {
        if (!derive(tok, budget - 1)) return false;
      } else {
        sentence.push_back(tok);
      }
    }
    return true;
  };

  long long attempts = static_cast<long long>(cfg.max_candidates) * 32;
  for (long long k = 0; k < attempts && static_cast<int>(out.size()) < cfg.max_candidates;
       ++k) {
    sentence.clear();
    if (!derive(grammar.start, cfg.max_depth)) continue;
    std::string text;
    for (size_t i = 0; i < sentence.size(); ++i) {
      if (i > 0) text += ' ';
      text += sentence[i];
    }
    auto parsed = parse_assertion(text, sig);
    if (!parsed.ok()) continue;
    if (!seen.insert(parsed->text).second) continue;
    out.push_back(std::move(*parsed.value));
  }
  return out;
}

}  // namespace specsift

namespace specsift {

// Mirrors grammars/default.gram (checked by a unit test).
const char* const kDefaultGrammarText = R"GRAM(<Spec> ::= <Clause> | <Clause> || <Clause> | <Clause> && <Clause> | <Clause> ==> <Clause>
<Clause> ::= <Atom> | ! ( <Atom> )
<Atom> ::= <IntRel> | <BoolVar> | <SeqAtom>
<IntRel> ::= <IntOperand> <RelOp> <IntOperand>
<IntOperand> ::= <IntVar> | <IntVar> | <IntConst> | <Result> | <OldIntVar>
<RelOp> ::= == | != | < | <= | > | >=
<SeqAtom> ::= pairwiseEqual ( <ArrVar> , old ( <ArrVar> ) ) | isReverse ( <ArrVar> , old ( <ArrVar> ) ) | size ( <ArrVar> ) <RelOp> <IntOperand> | getElement ( <ArrVar> , <IntOperand> ) <RelOp> <IntOperand> | typeArray ( <ArrVar> ) == typeArray ( <ArrVar> )
)GRAM";

}  // namespace specsift
