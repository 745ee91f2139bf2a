#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specsift/assertion.hpp"
#include "specsift/diag.hpp"
#include "specsift/groundtruth.hpp"
#include "specsift/interp.hpp"
#include "specsift/subject_ast.hpp"

namespace specsift {

// ---------------------------------------------------------------------------
// Prompts
// ---------------------------------------------------------------------------

struct PromptBundle {
  std::string system_text;  // role, input format, output format, few-shot examples
  std::string user_text;    // [[CODE]] / [[METHOD]] / [[POSTCONDITION]] payload
  double temperature = 0.1;
  std::string model_id;
};

struct PromptOptions {
  double temperature = 0.1;
  std::string model_id;
};

/// Deterministic prompt assembly. `few_shot_dir` may be empty or name a
/// directory of example files in the marker format; a missing or empty
/// directory omits the examples section with a warning diagnostic.
Parsed<PromptBundle> build_prompt(const SubjectProgram& program, const MethodDef& method,
                                  const CandidateAssertion& assertion,
                                  const std::string& few_shot_dir,
                                  const PromptOptions& opts = {});

/// Extends a bundle with the failing test and its diagnostics for one repair
/// round.
PromptBundle build_repair_prompt(const PromptBundle& original, const std::string& failing_test,
                                 const std::vector<Diagnostic>& diagnostics);

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

struct RefinementVerdict {
  VerdictKind verdict = VerdictKind::Ok;
  std::string test_source;  // non-empty iff verdict == Failed
  std::string reasoning;    // free text preceding the verdict marker
  std::string raw_response;

  bool operator==(const RefinementVerdict& other) const {
    return verdict == other.verdict && test_source == other.test_source &&
           reasoning == other.reasoning;
  }
};

/// Locates the last [[VERDICT]] marker, accepts OK/FAILED, and on FAILED
/// extracts the [[TEST]] section with Markdown fences stripped.
Parsed<RefinementVerdict> parse_response(std::string_view raw);

/// Renders a verdict in the response format; parse_response round-trips it.
std::string render_verdict(const RefinementVerdict& v);

// ---------------------------------------------------------------------------
// Transcripts (newline-delimited JSON records)
// ---------------------------------------------------------------------------

struct TranscriptRecord {
  std::string key;  // "<unit>.<method>|<assertion canonical text>"
  int attempt = 0;
  std::string request_digest;
  std::string response_text;
};

std::string transcript_key(const std::string& unit, const std::string& method,
                           const CandidateAssertion& assertion);

class TranscriptWriter {
 public:
  explicit TranscriptWriter(std::string path) : path_(std::move(path)) {}
  void append(const TranscriptRecord& record);  // serialized; append-only

 private:
  std::string path_;
  std::mutex mutex_;
  std::map<std::string, int> attempts_;
};

std::vector<TranscriptRecord> load_transcript(const std::string& path);

// ---------------------------------------------------------------------------
// Backends
// ---------------------------------------------------------------------------

struct RetryPolicy {
  int attempts = 3;
  int backoff_ms = 500;  // doubled per retry
};

struct OracleBounds {
  int max_calls = 4;       // call-sequence length bound (monitored call included)
  int32_t arg_lo = -1;
  int32_t arg_hi = 2;
  std::vector<int32_t> sentinels = {INT32_MIN, INT32_MAX};

  std::vector<int32_t> argument_values() const;
};

struct BackendConfig {
  enum class Kind { Http, Oracle, Replay };

  Kind kind = Kind::Oracle;
  // http
  std::string endpoint;
  std::string api_key_env = "SPECSIFT_API_KEY";
  std::string model_id = "gpt-4o";
  double temperature = 0.1;
  int timeout_ms = 120'000;
  RetryPolicy retry;
  int max_concurrency = 4;
  // oracle
  OracleBounds oracle;
  // replay
  std::string transcript_path;  // replay source
  // http and oracle runs may record here
  std::string record_path;
};

class BackendError : public std::exception {
 public:
  BackendError(DiagKind kind, std::string message)
      : kind_(kind), message_(std::move(message)) {}
  const char* what() const noexcept override { return message_.c_str(); }
  DiagKind kind() const { return kind_; }

 private:
  DiagKind kind_;
  std::string message_;
};

class Backend {
 public:
  virtual ~Backend() = default;
  /// One request. `key` identifies the (method, assertion) conversation for
  /// transcript recording and replay. Throws BackendError.
  virtual std::string query(const PromptBundle& bundle, const std::string& key) = 0;
  virtual const char* kind_name() const = 0;
};

/// The oracle backend needs the subject under test to search for
/// counterexamples; http and replay ignore these.
struct BackendSubject {
  const SubjectProgram* program = nullptr;
  std::string monitor;
  InterpConfig interp;
};

std::unique_ptr<Backend> make_backend(const BackendConfig& cfg, const BackendSubject& subject);

// ---------------------------------------------------------------------------
// Counterexample validation
// ---------------------------------------------------------------------------

struct ValidationResult {
  bool accepted = false;
  std::optional<TestScript> test;
  std::string test_source;
  std::vector<std::string> attempt_diagnostics;  // one entry per failed attempt
  int attempts_used = 0;
};

/// Compilation gate with repair loop: parses the verdict's test; on
/// diagnostics, asks the backend to fix it. Three total attempts; after the
/// third failure the counterexample is discarded. Accepted tests are not
/// executed here; execution happens in the re-inference run.
ValidationResult validate_counterexample(const RefinementVerdict& verdict,
                                         const SubjectProgram& program,
                                         const PromptBundle& original, Backend& backend,
                                         const std::string& key);

}  // namespace specsift
