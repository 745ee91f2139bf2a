#pragma once

#include <string>

#include "specsift/subject_ast.hpp"

namespace specsift {

/// Deterministic pretty-printer; parse_subject(render_subject(p)) is
/// structurally equal to p.
std::string render_subject(const SubjectProgram& program);

std::string render_method(const MethodDef& method);

std::string render_expr(const Expr& e);

std::string render_test(const TestScript& test);

}  // namespace specsift
