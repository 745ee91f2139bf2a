#pragma once

#include <string>
#include <vector>

#include "specsift/assertion.hpp"
#include "specsift/inference.hpp"
#include "specsift/subject_ast.hpp"

namespace specsift {

struct MutationEdit {
  std::string op;           // aor | ror | const | negate-cond | del-assign
  std::string path;         // node path, e.g. "dequeue/body[4]/cond"
  std::string original;     // rendered fragment before the edit
  std::string replacement;  // rendered fragment after the edit ("" for deletion)
};

/// A program differing from the original at exactly one expression or
/// statement node of the monitored method or a method it (transitively)
/// calls. Mutants that fail type-checking are dropped at generation time.
struct Mutant {
  int id = 0;
  SubjectProgram program;
  MutationEdit edit;
};

std::vector<Mutant> generate_mutants(const SubjectProgram& program, const std::string& monitor);

struct KillMatrix {
  std::vector<CandidateAssertion> assertions;  // row order
  std::vector<int> mutant_ids;                 // column order; stillborn excluded
  std::vector<std::vector<uint8_t>> kills;     // kills[row][col] in {0,1}
  std::vector<int> stillborn_ids;              // mutants that fault on every test
};

/// kills[a][m] = true iff `a` evaluates false or Undefined on at least one
/// trace of mutant m under `suite`. Deterministic in (assertion, mutant)
/// order regardless of execution interleaving.
KillMatrix compute_kill_matrix(const SubjectProgram& original, const std::vector<Mutant>& mutants,
                               const std::vector<TestScript>& suite,
                               const std::vector<CandidateAssertion>& survivors,
                               const std::string& monitor, const InterpConfig& cfg = {});

struct ClusterSelection {
  /// One representative per non-zero-kill cluster: fewest expression-tree
  /// nodes, ties broken by lexicographic canonical text.
  std::vector<CandidateAssertion> representatives;
  std::vector<std::vector<uint64_t>> cluster_members;  // aligned with representatives
  std::vector<CandidateAssertion> zero_kill;           // the segregated all-zero cluster
};

ClusterSelection cluster_and_select(const KillMatrix& matrix);

std::string kill_matrix_csv(const KillMatrix& matrix);

}  // namespace specsift
