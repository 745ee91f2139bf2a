#include <algorithm>
#include <deque>

#include "refiner_internal.hpp"
#include "specsift/hash.hpp"
#include "specsift/subject_parser.hpp"
#include "specsift/subject_printer.hpp"

namespace specsift {

std::vector<int32_t> OracleBounds::argument_values() const {
  std::vector<int32_t> values;
  for (int64_t v = arg_lo; v <= arg_hi; ++v) values.push_back(static_cast<int32_t>(v));
  for (int32_t s : sentinels) values.push_back(s);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

namespace {

/// Extracts the section following `marker` up to the next [[...]] marker.
std::string extract_section(const std::string& text, const std::string& marker) {
  size_t at = text.rfind(marker);
  if (at == std::string::npos) return {};
  size_t begin = at + marker.size();
  if (begin < text.size() && text[begin] == ':') ++begin;
  size_t end = text.find("[[", begin);
  std::string section =
      end == std::string::npos ? text.substr(begin) : text.substr(begin, end - begin);
  size_t b = section.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  size_t e = section.find_last_not_of(" \t\r\n");
  return section.substr(b, e - b + 1);
}

class RecordingMixin {
 public:
  explicit RecordingMixin(const std::string& record_path) {
    if (!record_path.empty()) writer_ = std::make_unique<TranscriptWriter>(record_path);
  }

 protected:
  void record(const std::string& key, const PromptBundle& bundle,
              const std::string& response) {
    if (!writer_) return;
    TranscriptRecord r;
    r.key = key;
    r.request_digest = hex64(fnv1a64(bundle.system_text + '\0' + bundle.user_text));
    r.response_text = response;
    writer_->append(r);
  }

 private:
  std::unique_ptr<TranscriptWriter> writer_;
};

// ---------------------------------------------------------------------------
// Oracle: deterministic bounded counterexample search
// ---------------------------------------------------------------------------

class OracleBackend : public Backend, private RecordingMixin {
 public:
  OracleBackend(const BackendConfig& cfg, const BackendSubject& subject)
      : RecordingMixin(cfg.record_path),
        program_(*subject.program),
        monitor_(subject.monitor),
        interp_(subject.interp),
        bounds_(cfg.oracle) {
    const MethodDef* m = program_.find_method(monitor_);
    if (!m) {
      throw BackendError(DiagKind::ConfigError,
                         "oracle backend: unknown monitored method '" + monitor_ + "'");
    }
    sig_ = signature_of(program_, *m);
    build_scripts();
  }

  const char* kind_name() const override { return "oracle"; }

  std::string query(const PromptBundle& bundle, const std::string& key) override {
    std::string post = extract_section(bundle.user_text, "[[POSTCONDITION]]");
    if (post.empty()) {
      throw BackendError(DiagKind::ProtocolError,
                         "oracle backend: prompt has no [[POSTCONDITION]] section");
    }
    auto assertion = parse_assertion(post, sig_);
    if (!assertion.ok()) {
      throw BackendError(DiagKind::ProtocolError,
                         "oracle backend: cannot parse postcondition: " +
                             assertion.first_error());
    }
    RefinementVerdict verdict;
    verdict.verdict = VerdictKind::Ok;
    for (auto& entry : scripts_) {
      if (!entry.ran) {
        RunOutcome outcome = run_test(program_, entry.script, monitor_, interp_);
        entry.traces = std::move(outcome.traces);
        entry.ran = true;
      }
      bool falsifies = false;
      for (const auto& t : entry.traces) {
        if (eval_assertion(*assertion, t) != Truth::True) {
          falsifies = true;
          break;
        }
      }
      if (falsifies) {
        TestScript named = entry.script;
        named.name = "cex_" + hex64(assertion->id).substr(0, 12);
        verdict.verdict = VerdictKind::Failed;
        verdict.test_source = render_test(named);
        break;
      }
    }
    std::string response = render_verdict(verdict);
    record(key, bundle, response);
    return response;
  }

 private:
  struct Entry {
    TestScript script;
    bool ran = false;
    std::vector<TraceRecord> traces;
  };

  // Scripts ordered by (call count, constructor arguments ascending, call
  // sequence lexicographic by method name then argument values ascending).
  // Only sequences whose final call is the monitored method are generated:
  // any falsifying run has a falsifying prefix of this shape within the same
  // length bound, so completeness within bounds is preserved.
  void build_scripts() {
    auto values = bounds_.argument_values();
    auto arg_domain = [&](Type t) -> std::vector<ExprPtr> {
      std::vector<ExprPtr> out;
      if (t == Type::Bool) {
        out.push_back(mk_bool(false));
        out.push_back(mk_bool(true));
      } else {
        for (int32_t v : values) out.push_back(mk_int(v));
      }
      return out;
    };

    // All argument tuples for a parameter list, odometer order.
    auto tuples_for = [&](const std::vector<Param>& params) {
      std::vector<std::vector<ExprPtr>> tuples;
      std::vector<std::vector<ExprPtr>> domains;
      for (const auto& p : params) domains.push_back(arg_domain(p.type));
      std::vector<size_t> idx(params.size(), 0);
      while (true) {
        std::vector<ExprPtr> tuple;
        for (size_t i = 0; i < params.size(); ++i) tuple.push_back(domains[i][idx[i]]);
        tuples.push_back(std::move(tuple));
        size_t pos = params.size();
        bool done = true;
        while (pos > 0) {
          --pos;
          if (++idx[pos] < domains[pos].size()) {
            done = false;
            break;
          }
          idx[pos] = 0;
        }
        if (done) break;
      }
      return tuples;
    };

    auto ctor_tuples = tuples_for(program_.ctor.params);

    // Call menu for prefix positions, sorted by method name.
    struct CallChoice {
      std::string method;
      std::vector<ExprPtr> args;
    };
    std::vector<const MethodDef*> methods;
    for (const auto& m : program_.methods) methods.push_back(&m);
    std::sort(methods.begin(), methods.end(),
              [](const MethodDef* a, const MethodDef* b) { return a->name < b->name; });
    std::vector<CallChoice> menu;
    for (const MethodDef* m : methods) {
      for (auto& tuple : tuples_for(m->params)) {
        menu.push_back({m->name, std::move(tuple)});
      }
    }
    const MethodDef* monitored = program_.find_method(monitor_);
    std::vector<CallChoice> last_menu;
    for (auto& tuple : tuples_for(monitored->params)) {
      last_menu.push_back({monitor_, std::move(tuple)});
    }

    double total = 0;
    double prefix_choices = 1;
    for (int len = 1; len <= bounds_.max_calls; ++len) {
      total += static_cast<double>(ctor_tuples.size()) * prefix_choices *
               static_cast<double>(last_menu.size());
      prefix_choices *= static_cast<double>(menu.size());
    }
    if (total > 2'000'000) {
      throw BackendError(DiagKind::ConfigError,
                         "oracle search space is too large for the configured bounds (" +
                             std::to_string(static_cast<long long>(total)) + " scripts)");
    }

    for (int len = 1; len <= bounds_.max_calls; ++len) {
      for (const auto& ctor_args : ctor_tuples) {
        std::vector<size_t> pick(static_cast<size_t>(len - 1), 0);
        while (true) {
          for (const auto& last : last_menu) {
            TestScript script;
            script.name = "cex";
            TestStmt construct;
            construct.kind = TestStmt::Kind::Construct;
            construct.name = program_.unit_name;
            construct.args = ctor_args;
            script.statements.push_back(std::move(construct));
            bool ok = true;
            for (size_t i = 0; i + 1 < static_cast<size_t>(len); ++i) {
              if (menu.empty()) {
                ok = false;
                break;
              }
              const auto& choice = menu[pick[i]];
              TestStmt call;
              call.kind = TestStmt::Kind::Call;
              call.expr = mk_call(choice.method, choice.args);
              script.statements.push_back(std::move(call));
            }
            if (!ok) continue;
            TestStmt call;
            call.kind = TestStmt::Kind::Call;
            call.expr = mk_call(last.method, last.args);
            script.statements.push_back(std::move(call));
            scripts_.push_back({std::move(script), false, {}});
          }
          if (len == 1 || menu.empty()) break;
          size_t pos = pick.size();
          bool done = true;
          while (pos > 0) {
            --pos;
            if (++pick[pos] < menu.size()) {
              done = false;
              break;
            }
            pick[pos] = 0;
          }
          if (done) break;
        }
      }
    }
  }

  SubjectProgram program_;
  std::string monitor_;
  InterpConfig interp_;
  OracleBounds bounds_;
  MethodSignature sig_;
  std::vector<Entry> scripts_;
};

// ---------------------------------------------------------------------------
// Replay: consume a recorded transcript
// ---------------------------------------------------------------------------

class ReplayBackend : public Backend {
 public:
  explicit ReplayBackend(const BackendConfig& cfg) {
    for (auto& r : load_transcript(cfg.transcript_path)) {
      queues_[r.key].push_back(std::move(r.response_text));
    }
  }

  const char* kind_name() const override { return "replay"; }

  std::string query(const PromptBundle&, const std::string& key) override {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = queues_.find(key);
    if (it == queues_.end() || it->second.empty()) {
      throw BackendError(DiagKind::ReplayMiss, "no transcript entry for key '" + key + "'");
    }
    std::string response = std::move(it->second.front());
    it->second.pop_front();
    return response;
  }

  /// Responses left unconsumed (exposed for tests via remaining()).
  size_t remaining(const std::string& key) const {
    auto it = queues_.find(key);
    return it == queues_.end() ? 0 : it->second.size();
  }

 private:
  std::map<std::string, std::deque<std::string>> queues_;
  std::mutex mutex_;
};

}  // namespace

std::unique_ptr<Backend> make_backend(const BackendConfig& cfg, const BackendSubject& subject) {
  switch (cfg.kind) {
    case BackendConfig::Kind::Oracle:
      if (!subject.program) {
        throw BackendError(DiagKind::ConfigError, "oracle backend needs a subject program");
      }
      return std::make_unique<OracleBackend>(cfg, subject);
    case BackendConfig::Kind::Replay:
      return std::make_unique<ReplayBackend>(cfg);
    case BackendConfig::Kind::Http:
      return make_http_backend(cfg);
  }
  throw BackendError(DiagKind::ConfigError, "unknown backend kind");
}

}  // namespace specsift
