#pragma once

#include <filesystem>
#include <string>

#include "bugfix/tree_format.hpp"
#include "oracles.hpp"

namespace fixture {

inline const std::filesystem::path kData = BUGFIX_TEST_DATA;
inline const std::filesystem::path kCorpus = BUGFIX_CORPUS;

inline std::string listing(const std::string& name) { return oracle::slurp(kData / "listings" / name); }

inline bugfix::UNode closure_before() { return bugfix::parse_tree(oracle::slurp(kCorpus / "examples/closure_14.before.tree")); }
inline bugfix::UNode closure_after() { return bugfix::parse_tree(oracle::slurp(kCorpus / "examples/closure_14.after.tree")); }

// Argument list with `n` identifier children named x0, x1, ...
inline bugfix::UNode argument_list(std::size_t n) {
  bugfix::UNode list = bugfix::make_node("ARGUMENT_LIST", {});
  for (std::size_t i = 0; i < n; ++i) list.children.push_back({std::nullopt, bugfix::make_leaf("identifier", "x" + std::to_string(i))});
  return list;
}

inline const char* const kWrongArgument = "(ARGUMENT_LIST (_)* @pre (_) @wrong_arg (_)* @post)";

}  // namespace fixture
