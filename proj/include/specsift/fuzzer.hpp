#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "specsift/assertion.hpp"
#include "specsift/diag.hpp"

namespace specsift {

struct FuzzerConfig {
  uint64_t seed = 1;
  int max_depth = 8;
  int max_candidates = 300;
  std::vector<int32_t> const_pool = {-1, 0, 1};
};

/// A grammar over assertion tokens. Nonterminals are written `<Name>`; the
/// builtin nonterminals <IntVar>, <BoolVar>, <ArrVar>, <IntConst>, <Result>
/// and <OldIntVar> are populated from the target signature. The start symbol
/// is the left-hand side of the first rule.
struct AssertionGrammar {
  struct Production {
    std::vector<std::string> tokens;  // "<X>" entries are nonterminal references
    int min_depth = 0;                // shortest terminating derivation depth
  };

  std::map<std::string, std::vector<Production>> rules;
  std::string start;

  const std::vector<Production>& productions(const std::string& nt) const {
    static const std::vector<Production> kEmpty;
    auto it = rules.find(nt);
    return it == rules.end() ? kEmpty : it->second;
  }
};

/// Parses a `.gram` file and splices the signature vocabulary into the
/// builtin nonterminals. Alternatives that cannot terminate (left-recursive
/// cycles without a base case, or references to builtins that are empty for
/// this signature) are pruned; a grammar whose start symbol cannot derive any
/// sentence is a GrammarError.
Parsed<AssertionGrammar> load_grammar(std::string_view text, const MethodSignature& sig,
                                      const std::vector<int32_t>& const_pool);

/// Samples depth-bounded derivations by seeded pseudo-random rule choice,
/// keeping candidates that parse and type-check, deduplicated by canonical
/// id. Output order is deterministic for a fixed seed.
std::vector<CandidateAssertion> generate_candidates(const AssertionGrammar& grammar,
                                                    const MethodSignature& sig,
                                                    const FuzzerConfig& cfg);

/// The grammar file shipped with the tool (grammars/default.gram).
extern const char* const kDefaultGrammarText;

}  // namespace specsift
