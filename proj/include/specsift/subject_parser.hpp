#pragma once

#include <string_view>

#include "specsift/diag.hpp"
#include "specsift/subject_ast.hpp"

namespace specsift {

/// Parses and type-checks a unit declaration. Total: malformed input yields
/// diagnostics with line/column positions, never a crash.
Parsed<SubjectProgram> parse_subject(std::string_view source);

/// Parses and checks a single `test <name> { ... }` script against `program`.
/// Checking covers name resolution, arity and argument types of every call;
/// this is the compilation gate for generated counterexamples.
Parsed<TestScript> parse_test(std::string_view source, const SubjectProgram& program);

/// Parses a `.sjt` file: one script per `test <name> { ... }` block.
Parsed<std::vector<TestScript>> parse_test_file(std::string_view source,
                                                const SubjectProgram& program);

/// Type-checks an already-built program (used to vet mutants).
std::vector<Diagnostic> typecheck_program(const SubjectProgram& program);

}  // namespace specsift
