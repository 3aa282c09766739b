#pragma once

#include <string>
#include <string_view>

#include "bugfix/model.hpp"

namespace bugfix {

// Parenthesized tree files:
//
//   (argument_list [766,28]-[766,66]
//     (identifier [766,29]-[766,37] "fromNode")
//     (field_access
//       object: (identifier "Branch")
//       field: (identifier "ON_EX")))
//
// Spans are optional, a node carries either children or a quoted leaf text,
// and `--` starts a line comment. Throws SyntaxError.
UNode parse_tree(std::string_view text);

std::string write_tree(const UNode& node);

/// Quotes a string with the `\"` and `\\` escapes.
std::string quote(std::string_view text);

}  // namespace bugfix
