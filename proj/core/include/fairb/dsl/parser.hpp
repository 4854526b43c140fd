#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "fairb/dsl/ast.hpp"

namespace fairb::dsl {

struct ParseResult {
  std::optional<Document> document;  // set iff there are no errors
  std::vector<Diagnostic> diagnostics;

  bool ok() const noexcept { return document.has_value(); }
};

/// Parses a model document. Syntax errors are collected; after an error
/// the parser resumes at the next top-level declaration.
ParseResult parse_document(std::string_view text);

/// Parses a standalone predicate (used by tests and the printer round trip).
ParseResult parse_expression(std::string_view text, Expr& out);

}  // namespace fairb::dsl
