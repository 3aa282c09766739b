#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bugfix/model.hpp"
#include "bugfix/pattern.hpp"

namespace bugfix {

/// A node bound by a capture, with the field label it carries in its parent.
struct BoundNode {
  std::optional<std::string> field;
  const UNode* node = nullptr;
};

using Binding = std::vector<BoundNode>;

/// One way a pattern matches. Node pointers refer into the searched tree,
/// which must outlive the result.
struct MatchResult {
  const UNode* root = nullptr;
  std::vector<std::size_t> path;
  /// Every capture of the pattern, plus "@bug"; unmatched quantified
  /// captures are present with an empty sequence.
  std::map<std::string, Binding> bindings;

  const Binding& at(const std::string& capture) const { return bindings.at(capture); }
};

/// Matches `pattern` at `node`. A pattern name matches equal construct names
/// or any construct declaring it as a kind. A pattern that lists children
/// must account for all of the node's children in order (exact cover); a
/// childless pattern accepts any children. Results are deduplicated by
/// capture assignment and ordered with earlier quantifiers taking the
/// shortest run first.
std::vector<MatchResult> match_at(const Pattern& pattern, const UNode& node, const Registry& registry,
                                  const ConstructSet* language_constructs = nullptr);

/// Pre-order search of the whole tree; results carry child-index paths.
std::vector<MatchResult> find_matches(const Pattern& pattern, const UNode& tree, const Registry& registry,
                                      const ConstructSet* language_constructs = nullptr);

bool name_matches(std::string_view pattern_name, const UNode& node, const Registry& registry,
                  const ConstructSet* language_constructs = nullptr);

}  // namespace bugfix
