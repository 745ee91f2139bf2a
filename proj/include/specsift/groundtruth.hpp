#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "specsift/assertion.hpp"
#include "specsift/inference.hpp"

namespace specsift {

/// Bounds for exhaustive enumeration of abstract observations. The sentinel
/// list is appended to the int range so overflow counterexamples stay
/// representable under small ranges.
struct EnumerationBounds {
  int32_t int_lo = -4;
  int32_t int_hi = 4;
  std::vector<int32_t> sentinels = {INT32_MIN, INT32_MAX};
  int array_len_max = 2;
  int32_t elem_lo = -1;
  int32_t elem_hi = 1;
  uint64_t max_tuples = 2'000'000;

  std::vector<int32_t> int_domain() const;
};

struct BoundsExplosion {
  uint64_t tuple_count = 0;
  uint64_t ceiling = 0;
};

/// Logical implication over abstract observation tuples (pre-state,
/// post-state, result) enumerated from `bounds`; states need not be
/// program-reachable. A tuple counts iff every premise evaluates True
/// (False or Undefined premises exclude it); the conclusion must then be
/// True (Undefined counts as non-satisfaction).
std::variant<bool, BoundsExplosion> implies(const std::vector<CandidateAssertion>& premises,
                                            const CandidateAssertion& conclusion,
                                            const MethodSignature& sig,
                                            const EnumerationBounds& bounds);

struct MetricsReport {
  std::optional<double> precision;  // NA when the inferred set is empty
  std::optional<double> recall;     // NA when the ground-truth set is empty
  double f1 = 0.0;                  // 0 whenever either side is 0 or NA
  int a_total = 0;
  int a_valid = 0;
  int g_total = 0;
  int g_implied = 0;
  std::vector<uint64_t> invalid_ids;            // I = {a in A : not G |= a}
  std::map<uint64_t, bool> verdict_labels;      // assertion id -> valid?
  bool gt_vacuous = false;  // no tuple within bounds satisfies all of G
};

std::variant<MetricsReport, BoundsExplosion> score(const std::vector<CandidateAssertion>& inferred,
                                                   const std::vector<CandidateAssertion>& ground_truth,
                                                   const MethodSignature& sig,
                                                   const EnumerationBounds& bounds);

enum class VerdictKind { Ok, Failed };

struct VerdictConfusion {
  int tp = 0;  // FAILED and invalid
  int fp = 0;  // FAILED and valid
  int tn = 0;  // OK and valid
  int fn = 0;  // OK and invalid
  std::optional<double> precision;
  std::optional<double> recall;
};

VerdictConfusion verdict_confusion(const std::map<uint64_t, VerdictKind>& verdicts,
                                   const std::set<uint64_t>& invalid_ids);

enum class KillKind { Targeted, Collateral };

struct Attribution {
  std::string test_id;
  KillKind kind = KillKind::Collateral;
  bool undefined = false;
};

struct NewTestInfo {
  std::string test_id;
  uint64_t target_assertion = 0;
};

/// For each assertion surviving `before` and falsified in `after`, records
/// the falsifying test and whether it was that assertion's own counterexample
/// (targeted kill) or a test generated for another assertion (collateral).
std::map<uint64_t, Attribution> attribute_discards(const InferenceResult& before,
                                                   const InferenceResult& after,
                                                   const std::vector<NewTestInfo>& new_tests);

}  // namespace specsift
