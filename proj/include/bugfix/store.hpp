#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bugfix/mapper.hpp"
#include "bugfix/model.hpp"
#include "bugfix/spec.hpp"

namespace bugfix {

/// Collection names in output order.
inline constexpr std::string_view kCollections[] = {"bugs",      "fixes", "applications", "examples",
                                                    "constructs", "kinds", "languages"};

/// Validated elements keyed by canonical id, with reverse links. Language
/// mapping elements are grouped into `languages`, keyed by canonical
/// language id; languages named only by examples get an empty entry.
struct Database {
  std::map<std::string, ElementSpec> bugs;
  std::map<std::string, ElementSpec> fixes;
  std::map<std::string, ElementSpec> applications;
  std::map<std::string, ElementSpec> examples;
  std::map<std::string, ElementSpec> constructs;
  std::map<std::string, ElementSpec> mappings;
  std::map<std::string, LanguageDef> languages;
  Registry registry;

  /// Canonical ids, sorted.
  std::map<std::string, std::vector<std::string>> fixes_of_bug;
  std::map<std::string, std::vector<std::string>> applications_of_fix;
  std::map<std::string, std::vector<std::string>> applications_of_example;
  std::map<std::string, std::vector<std::string>> examples_of_language;

  const ElementSpec* find(ElementKind kind, std::string_view id) const;
  const std::map<std::string, ElementSpec>& elements(ElementKind kind) const;
  /// Canonical ids of one collection (any of kCollections).
  std::vector<std::string> ids(std::string_view collection) const;
  bool empty() const;
};

/// Builds a database from parsed elements. Elements with errors (dangling
/// references, unknown fix captures, duplicate ids, malformed hunks, missing
/// parameters) are left out and reported.
Database build_database(std::vector<ElementSpec> elements, std::vector<Diagnostic>& diagnostics);

/// Parses every `.bugfix` file below `root` (sorted by path). Unreadable or
/// malformed files are reported and skipped.
Database load_repository(const std::filesystem::path& root, std::vector<Diagnostic>& diagnostics);

/// Writes `<C>.json` and `<C>/<id>.json` for each collection; returns the
/// written paths relative to `out_dir`, sorted.
std::vector<std::string> emit_json(const Database& db, const std::filesystem::path& out_dir);

/// Writes `index.html`, `<C>.html` and `<C>/<id>.html`; returns the written
/// paths relative to `out_dir`, sorted.
std::vector<std::string> emit_html(const Database& db, const std::filesystem::path& out_dir);

}  // namespace bugfix
