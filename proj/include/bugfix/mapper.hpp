#pragma once

#include <string>
#include <vector>

#include "bugfix/model.hpp"
#include "bugfix/spec.hpp"

namespace bugfix {

/// The mappings of one concrete language, in declaration order.
struct LanguageDef {
  std::string id;
  std::vector<LanguageMappingSpec> mappings;

  /// Canonical names of the constructs the language provides.
  ConstructSet construct_set() const;
};

/// Groups language-mapping elements by language, keeping declaration order.
std::vector<LanguageDef> group_languages(const std::vector<ElementSpec>& elements);

/// Rewrites a concrete tree into universal constructs. At each node the first
/// mapping whose source matches (and whose context names the parent) fires;
/// captured nodes are translated before substitution. Unmapped nodes keep
/// their name, leaf and span.
UNode translate(const UNode& concrete, const LanguageDef& language, const Registry& registry);

/// UnknownConstruct (warning), UnboundTemplateCapture and DuplicateMapping.
std::vector<Diagnostic> validate_language(const LanguageDef& language, const Registry& registry);

/// Runs an external parser: source on stdin, `language` as the argument, tree
/// file format on stdout. Throws std::runtime_error on a nonzero exit.
UNode run_parser_plugin(const std::string& command, const std::string& language, const std::string& source);

}  // namespace bugfix
