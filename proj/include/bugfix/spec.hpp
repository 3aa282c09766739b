#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bugfix/model.hpp"
#include "bugfix/pattern.hpp"

namespace bugfix {

enum class ElementKind { Bug, Fix, Application, Example, Construct, LanguageMapping };

std::string_view keyword(ElementKind kind);
/// Collection name used by the database and the JSON API ("bugs", "fixes", ...).
std::string_view collection(ElementKind kind);

/// Fix parameter declaration; names are stored with their leading '@'.
struct Parameter {
  std::string name;
  std::string type_name;

  friend bool operator==(const Parameter&, const Parameter&) = default;
};

struct InlineFix {
  std::string id;
  Template then;

  friend bool operator==(const InlineFix&, const InlineFix&) = default;
};

struct InlineApplication {
  std::string id;
  std::string fix_id;
  std::optional<std::string> example_id;
  std::optional<RecordedTree> tree;
  std::map<std::string, Template> parameters;

  friend bool operator==(const InlineApplication&, const InlineApplication&) = default;
};

struct BugSpec {
  std::vector<Parameter> parameters;
  Pattern where;
  std::vector<InlineFix> fixes;
  std::vector<InlineApplication> applications;

  friend bool operator==(const BugSpec&, const BugSpec&) = default;
};

struct FixSpec {
  std::string bug_id;
  std::vector<Parameter> parameters;
  Template then;

  friend bool operator==(const FixSpec&, const FixSpec&) = default;
};

struct ApplicationSpec {
  std::string example_id;  // empty for detached inline applications
  std::string fix_id;
  std::optional<RecordedTree> tree;
  std::map<std::string, Template> parameters;

  bool detached() const { return example_id.empty(); }

  friend bool operator==(const ApplicationSpec&, const ApplicationSpec&) = default;
};

struct ExampleSpec {
  std::string repository;
  std::string before;
  std::string after;
  std::string language;
  std::string hunk;  // raw unified diff text, lines joined with '\n'

  friend bool operator==(const ExampleSpec&, const ExampleSpec&) = default;
};

struct ConstructSpec {
  std::vector<std::string> kinds;
  std::vector<FeatureDef> features;

  friend bool operator==(const ConstructSpec&, const ConstructSpec&) = default;
};

struct LanguageMappingSpec {
  std::string language;
  std::string construct_name;
  std::optional<std::string> context;
  Pattern source;
  Template construct;

  friend bool operator==(const LanguageMappingSpec&, const LanguageMappingSpec&) = default;
};

struct SourceLocation {
  std::string file;
  std::size_t line = 0;
};

struct ElementSpec {
  std::string id;
  std::string comment;  // lines joined with '\n'
  std::variant<BugSpec, FixSpec, ApplicationSpec, ExampleSpec, ConstructSpec, LanguageMappingSpec> body;
  /// Set on fixes and applications declared inside a combined bug element.
  std::optional<std::string> inline_of;
  SourceLocation location;

  ElementKind kind() const { return static_cast<ElementKind>(body.index()); }

  template <typename T>
  const T& as() const { return std::get<T>(body); }
  template <typename T>
  T& as() { return std::get<T>(body); }
};

/// Compares id, comment and clauses; source location and inline origin are ignored.
bool operator==(const ElementSpec& a, const ElementSpec& b);

ConstructDef to_construct_def(const ElementSpec& construct);

/// Id given to an unnamed inline application: `<FIX_ID>_APPLICATION_<n>`.
std::string inline_application_id(std::string_view fix_id, std::size_t ordinal);

}  // namespace bugfix
