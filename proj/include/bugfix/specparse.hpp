#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bugfix/errors.hpp"
#include "bugfix/spec.hpp"

namespace bugfix {

/// Parses a `.bugfix` document. A combined bug element is followed in the
/// result by standalone FIX and APPLICATION elements for each of its inline
/// clauses (with `inline_of` set). Throws SyntaxError.
std::vector<ElementSpec> parse_document(std::string_view text);

Pattern parse_pattern(std::string_view text);
Template parse_template(std::string_view text);
/// Indentation-based `tree` clause body; two spaces per nesting level.
RecordedTree parse_recorded_tree(std::string_view text);
/// Body of an application `parameter` clause: `@name = (sexp)` entries.
std::map<std::string, Template> parse_bindings(std::string_view text);

/// Canonical text of one element; parse_document maps it back to an equal element.
std::string serialize(const ElementSpec& element);
std::string serialize(const std::vector<ElementSpec>& elements);

/// Multi-line rendering with two-space indentation, used inside clauses.
std::string pretty(const Pattern& pattern, std::size_t indent);
std::string pretty(const Template& tmpl, std::size_t indent);
std::string pretty(const RecordedTree& tree, std::size_t indent);

}  // namespace bugfix
