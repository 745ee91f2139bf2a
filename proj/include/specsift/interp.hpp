#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specsift/subject_ast.hpp"
#include "specsift/value.hpp"

namespace specsift {

/// One monitored execution of the target method: pre-state snapshot (fields
/// plus parameters, deep-copied at entry), post-state snapshot (fields) and
/// result at exit. `result` is absent iff the method is void or returned null.
struct TraceRecord {
  std::string method;
  std::string test_id;
  std::map<std::string, Value> pre_state;
  std::map<std::string, Value> post_state;
  std::optional<Value> result;
  bool script_flagged = false;  // the enclosing script later faulted or failed an assert
};

struct RunOutcome {
  enum class Status { Passed, AssertFailed, Fault };

  Status status = Status::Passed;
  std::string fault_message;
  SourcePos fault_pos;
  std::vector<TraceRecord> traces;

  bool flagged() const { return status != Status::Passed; }
};

struct InterpConfig {
  int max_array_len = 16;
  long long max_steps = 1'000'000;  // guards runaway loops in mutants
  int max_call_depth = 64;
};

/// Executes `test` under the interpreter, emitting one TraceRecord for every
/// dynamic call of `monitor` (including calls made from other methods).
/// Runtime faults and failing asserts abort the script; traces completed
/// before the abort are retained and flagged.
RunOutcome run_test(const SubjectProgram& program, const TestScript& test,
                    const std::string& monitor, const InterpConfig& cfg = {});

}  // namespace specsift
