#pragma once

#include <string>

#include "fairb/dsl/ast.hpp"

namespace fairb::dsl {

/// Canonical ASCII rendering; parsing the output yields an equal document.
std::string print_document(const Document& doc);
std::string print_expr(const Expr& e);

}  // namespace fairb::dsl
