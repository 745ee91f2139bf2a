#pragma once

#include <map>
#include <string>
#include <vector>

#include "specsift/assertion.hpp"
#include "specsift/interp.hpp"

namespace specsift {

struct Falsification {
  std::string test_id;
  int trace_index = 0;  // index into the collected trace list
  bool undefined = false;
};

/// Daikon-style filter output. An assertion survives iff it evaluates true on
/// every trace; otherwise its first non-true trace is recorded, under
/// `falsified` when it is ever outright false and under `undefined_only` when
/// every non-true outcome was Undefined. The three groups partition the
/// candidate set.
struct InferenceResult {
  std::vector<CandidateAssertion> survivors;
  std::map<uint64_t, Falsification> falsified;
  std::map<uint64_t, Falsification> undefined_only;
  std::map<uint64_t, int> undefined_hits;  // Undefined outcome count per assertion
  int trace_count = 0;
  bool vacuous = false;  // zero traces: all candidates survive vacuously

  bool is_survivor(uint64_t id) const {
    for (const auto& a : survivors)
      if (a.id == id) return true;
    return false;
  }
};

/// Concatenation of run_test outputs in suite order. Per-test faults are
/// recorded in the trace flags, never propagated.
std::vector<TraceRecord> collect_traces(const SubjectProgram& program,
                                        const std::vector<TestScript>& suite,
                                        const std::string& monitor,
                                        const InterpConfig& cfg = {});

InferenceResult filter_candidates(const std::vector<CandidateAssertion>& candidates,
                                  const std::vector<TraceRecord>& traces);

}  // namespace specsift
