#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "specsift/refiner.hpp"
#include "specsift/subject_printer.hpp"

namespace specsift {

namespace {

const char* const kRoleText =
    "You are an expert in program verification and testing. You are given a method written in "
    "a small imperative unit language and a postcondition assertion for that method.\n"
    "Based on the method behavior, you will need to confirm that the method meets the "
    "postcondition.\n"
    "If indeed the method meets the postcondition, you MUST output \"OK\".\n"
    "If, on the other hand, you determine that the method does NOT meet the postcondition, you "
    "MUST output a counterexample, in the form of a test script.\n"
    "The counterexample test script MUST demonstrate the violation of the postcondition, using "
    "input values for the method that, after the execution of the method, make the "
    "postcondition invalid. You may provide the reasoning behind your output.\n";

const char* const kInputFormatText =
    "You will receive the input in the following way:\n"
    "- The source code of the unit comes first, after a line containing the text [[CODE]]\n"
    "- The method under test, that the postcondition refers to, comes after the code, preceded "
    "by text [[METHOD]]\n"
    "- The postcondition follows after the method, and is preceded by text [[POSTCONDITION]] "
    "(note: postconditions may include quantifiers like size(X) – returns the size of the "
    "collection X; pairwiseEqual(seq1, seq2) - True iff seq1 and seq2 have the same length, "
    "and every seq1[i] == seq2[i]; isReverse(seq1, seq2) - True iff seq1 is the reverse of "
    "seq2, typeArray(X) – returns the type of the array X; getElement(X, i) – returns "
    "the i-th element of the array X; old(X) – returns the value of X before executing the "
    "method under test;\n";

const char* const kOutputFormatText =
    "The output must be produced as follows:\n"
    "- After text [[VERDICT]], you will output \"OK\" if no counterexample for the method and "
    "postcondition exist, and \"FAILED\" otherwise.\n"
    "- If verdict was \"FAILED\", output the counterexample after the verdict, preceded by "
    "text [[TEST]], in the test-script format of the unit language: a `test <name> { ... }` "
    "block that constructs one instance with `new <Unit>(<args>);` and then calls its "
    "methods.\n";

const char* const kExamplesHeader =
    "Here are some examples of inputs and corresponding outputs:\n";

bool markers_in_order(const std::string& text, const std::vector<std::string>& markers,
                      bool each_exactly_once) {
  size_t from = 0;
  for (const auto& m : markers) {
    size_t at = text.find(m, from);
    if (at == std::string::npos) return false;
    if (each_exactly_once && text.find(m, at + m.size()) != std::string::npos) return false;
    from = at + m.size();
  }
  return true;
}

}  // namespace

Parsed<PromptBundle> build_prompt(const SubjectProgram& program, const MethodDef& method,
                                  const CandidateAssertion& assertion,
                                  const std::string& few_shot_dir, const PromptOptions& opts) {
  Parsed<PromptBundle> result;
  PromptBundle bundle;
  bundle.temperature = opts.temperature;
  bundle.model_id = opts.model_id;

  std::string examples;
  if (!few_shot_dir.empty() && std::filesystem::is_directory(few_shot_dir)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(few_shot_dir)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
      std::ifstream in(path);
      std::stringstream buf;
      buf << in.rdbuf();
      std::string text = buf.str();
      if (!markers_in_order(text,
                            {"[[CODE]]", "[[METHOD]]", "[[POSTCONDITION]]", "[[VERDICT]]"},
                            false)) {
        result.diagnostics.push_back(make_error(
            DiagKind::ConfigError, {},
            "few-shot example '" + path.filename().string() + "' is missing protocol markers"));
        return result;
      }
      examples += text;
      if (examples.empty() || examples.back() != '\n') examples += "\n";
    }
  }

  bundle.system_text = std::string(kRoleText) + "\n" + kInputFormatText + "\n" +
                       kOutputFormatText;
  if (!examples.empty()) {
    bundle.system_text += "\n" + std::string(kExamplesHeader) + examples;
  } else {
    result.diagnostics.push_back(
        make_warning(DiagKind::ConfigError, "no few-shot examples found; section omitted"));
  }

  bundle.user_text = "[[CODE]]:\n" + render_subject(program) + "[[METHOD]]:\n" +
                     render_method(method) + "[[POSTCONDITION]]:\n" + assertion.text + "\n";

  result.value = std::move(bundle);
  return result;
}

PromptBundle build_repair_prompt(const PromptBundle& original, const std::string& failing_test,
                                 const std::vector<Diagnostic>& diagnostics) {
  PromptBundle repair = original;
  repair.user_text += "\n[[PREVIOUS_TEST]]:\n" + failing_test;
  if (repair.user_text.back() != '\n') repair.user_text += "\n";
  repair.user_text += "[[DIAGNOSTICS]]:\n";
  for (const auto& d : diagnostics) {
    repair.user_text += d.to_string() + "\n";
  }
  repair.user_text +=
      "The test above does not compile. Fix it and output the corrected counterexample after "
      "[[VERDICT]] FAILED and [[TEST]], as before.\n";
  return repair;
}

}  // namespace specsift
