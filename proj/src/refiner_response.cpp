#include "specsift/hash.hpp"
#include "specsift/refiner.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>

namespace specsift {

namespace {

std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

/// Drops a leading ``` fence line (with optional language tag) and the
/// matching trailing fence.
std::string strip_fences(std::string text) {
  std::string t = trim(text);
  if (t.rfind("```", 0) != 0) return t;
  size_t first_nl = t.find('\n');
  if (first_nl == std::string::npos) return t;
  std::string body = t.substr(first_nl + 1);
  size_t closing = body.rfind("```");
  if (closing != std::string::npos) body = body.substr(0, closing);
  return trim(body);
}

}  // namespace

Parsed<RefinementVerdict> parse_response(std::string_view raw) {
  Parsed<RefinementVerdict> result;
  static const std::string kVerdict = "[[VERDICT]]";
  static const std::string kTest = "[[TEST]]";

  // The last marker wins: reasoning text may quote the instructions earlier.
  size_t at = raw.rfind(kVerdict);
  if (at == std::string_view::npos) {
    result.diagnostics.push_back(
        make_error(DiagKind::ProtocolError, {}, "response contains no [[VERDICT]] marker"));
    return result;
  }
  RefinementVerdict v;
  v.raw_response = std::string(raw);
  v.reasoning = trim(raw.substr(0, at));

  std::string_view after = raw.substr(at + kVerdict.size());
  size_t cursor = 0;
  while (cursor < after.size() &&
         (after[cursor] == ':' || after[cursor] == ' ' || after[cursor] == '\t' ||
          after[cursor] == '\r' || after[cursor] == '\n')) {
    ++cursor;
  }
  size_t word_end = cursor;
  while (word_end < after.size() && std::isalpha(static_cast<unsigned char>(after[word_end]))) {
    ++word_end;
  }
  std::string token(after.substr(cursor, word_end - cursor));
  if (token == "OK") {
    v.verdict = VerdictKind::Ok;
    result.value = std::move(v);
    return result;
  }
  if (token != "FAILED") {
    result.diagnostics.push_back(make_error(
        DiagKind::ProtocolError, {}, "unrecognized verdict token '" + token + "'"));
    return result;
  }
  v.verdict = VerdictKind::Failed;
  size_t test_at = after.find(kTest, word_end);
  if (test_at == std::string_view::npos) {
    result.diagnostics.push_back(make_error(DiagKind::ProtocolError, {},
                                            "verdict FAILED but no [[TEST]] section follows"));
    return result;
  }
  std::string_view body = after.substr(test_at + kTest.size());
  if (!body.empty() && body.front() == ':') body.remove_prefix(1);
  v.test_source = strip_fences(std::string(body));
  if (v.test_source.empty()) {
    result.diagnostics.push_back(
        make_error(DiagKind::ProtocolError, {}, "[[TEST]] section is empty"));
    return result;
  }
  result.value = std::move(v);
  return result;
}

std::string render_verdict(const RefinementVerdict& v) {
  std::string out;
  if (!v.reasoning.empty()) out += v.reasoning + "\n";
  out += "[[VERDICT]]\n";
  if (v.verdict == VerdictKind::Ok) {
    out += "OK\n";
    return out;
  }
  out += "FAILED\n[[TEST]]\n" + v.test_source;
  if (out.back() != '\n') out += "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Transcripts
// ---------------------------------------------------------------------------

std::string transcript_key(const std::string& unit, const std::string& method,
                           const CandidateAssertion& assertion) {
  return unit + "." + method + "|" + assertion.text;
}

void TranscriptWriter::append(const TranscriptRecord& record) {
  std::lock_guard<std::mutex> lock(mutex_);
  nlohmann::json j;
  j["key"] = record.key;
  j["attempt"] = record.attempt > 0 ? record.attempt : ++attempts_[record.key];
  j["request_digest"] = record.request_digest;
  j["response_text"] = record.response_text;
  std::ofstream out(path_, std::ios::app);
  out << j.dump() << "\n";
}

std::vector<TranscriptRecord> load_transcript(const std::string& path) {
  std::vector<TranscriptRecord> out;
  std::ifstream in(path);
  if (!in) {
    throw BackendError(DiagKind::ConfigError, "cannot open transcript '" + path + "'");
  }
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("key") || !j.contains("response_text")) {
      throw BackendError(DiagKind::ConfigError, "malformed transcript record at line " +
                                                    std::to_string(line_no));
    }
    TranscriptRecord r;
    r.key = j["key"].get<std::string>();
    r.attempt = j.value("attempt", 0);
    r.request_digest = j.value("request_digest", std::string());
    r.response_text = j["response_text"].get<std::string>();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace specsift
