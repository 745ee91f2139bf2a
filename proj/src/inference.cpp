#include "specsift/inference.hpp"

namespace specsift {

std::vector<TraceRecord> collect_traces(const SubjectProgram& program,
                                        const std::vector<TestScript>& suite,
                                        const std::string& monitor,
                                        const InterpConfig& cfg) {
  std::vector<TraceRecord> traces;
  for (const auto& test : suite) {
    RunOutcome outcome = run_test(program, test, monitor, cfg);
    for (auto& t : outcome.traces) traces.push_back(std::move(t));
  }
  return traces;
}

InferenceResult filter_candidates(const std::vector<CandidateAssertion>& candidates,
                                  const std::vector<TraceRecord>& traces) {
  InferenceResult result;
  result.trace_count = static_cast<int>(traces.size());
  if (traces.empty()) {
    result.vacuous = true;
    result.survivors = candidates;
    return result;
  }
  for (const auto& a : candidates) {
    bool any_false = false;
    int undef_count = 0;
    Falsification first;
    bool have_first = false;
    for (size_t i = 0; i < traces.size(); ++i) {
      Truth t = eval_assertion(a, traces[i]);
      if (t == Truth::True) continue;
      if (t == Truth::Undefined) ++undef_count;
      if (t == Truth::False) any_false = true;
      if (!have_first) {
        first.test_id = traces[i].test_id;
        first.trace_index = static_cast<int>(i);
        first.undefined = t == Truth::Undefined;
        have_first = true;
      }
    }
    if (undef_count > 0) result.undefined_hits[a.id] = undef_count;
    if (!have_first) {
      result.survivors.push_back(a);
    } else if (any_false) {
      result.falsified[a.id] = first;
    } else {
      result.undefined_only[a.id] = first;
    }
  }
  return result;
}

}  // namespace specsift
