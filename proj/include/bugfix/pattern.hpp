#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bugfix/model.hpp"

namespace bugfix {

inline constexpr std::string_view kWildcard = "_";
inline constexpr std::string_view kBugCapture = "@bug";

struct PatternChild;

/// Bug query tree: `(NAME child*) @capture?`. Name "_" is the wildcard.
struct Pattern {
  std::string name;
  std::vector<PatternChild> children;
  std::optional<std::string> capture;

  bool is_wildcard() const { return name == kWildcard; }
};

struct PatternChild {
  std::optional<std::string> field;
  Pattern pattern;
  Multiplicity quantifier = Multiplicity::Required;
  std::optional<std::string> capture;
};

bool operator==(const Pattern& a, const Pattern& b);
bool operator==(const PatternChild& a, const PatternChild& b);

/// "@bug" followed by every capture name in in-order traversal, without
/// duplicates.
std::vector<std::string> captures(const Pattern& pattern);

/// Single-line canonical text, e.g. `(return_statement return_value: (true) @wrong_value)`.
std::string to_string(const Pattern& pattern);

struct TemplateChild;

/// `(NAME *@base? child*)`; an empty name with a base takes the base's name.
struct ConstructTemplate {
  std::string name;
  std::optional<std::string> splice_base;
  std::vector<TemplateChild> children;
};

/// `@name`; `splat` marks the bare `*@name` child form which inserts the
/// children of the bound node.
struct CaptureRef {
  std::string name;
  bool splat = false;
};

struct ParamRef {
  std::string name;
};

struct StringLeaf {
  std::string text;
};

struct Template {
  std::variant<ConstructTemplate, CaptureRef, ParamRef, StringLeaf> node;
};

struct TemplateChild {
  std::optional<std::string> field;
  Template value;
};

bool operator==(const Template& a, const Template& b);
bool operator==(const TemplateChild& a, const TemplateChild& b);
bool operator==(const ConstructTemplate& a, const ConstructTemplate& b);
inline bool operator==(const CaptureRef& a, const CaptureRef& b) {
  return a.name == b.name && a.splat == b.splat;
}
inline bool operator==(const ParamRef& a, const ParamRef& b) { return a.name == b.name; }
inline bool operator==(const StringLeaf& a, const StringLeaf& b) { return a.text == b.text; }

Template make_construct(std::string name, std::vector<TemplateChild> children = {});
Template make_capture(std::string name);
Template make_string(std::string text);

std::string to_string(const Template& tmpl);

/// Names of captures referenced by the template (references and splice
/// bases), in order of appearance, without duplicates.
std::vector<std::string> referenced_captures(const Template& tmpl);

/// Turns CaptureRefs naming one of `parameters` into ParamRefs.
void resolve_parameters(Template& tmpl, const std::vector<std::string>& parameters);

/// One line of an application's `tree` clause.
struct RecordedTree {
  std::string type_name;
  Span span;
  std::optional<std::string> field;
  std::optional<std::string> capture;
  std::vector<RecordedTree> children;

  friend bool operator==(const RecordedTree&, const RecordedTree&) = default;
};

/// Spans recorded for each capture name, in document order.
std::vector<std::pair<std::string, std::vector<Span>>> recorded_captures(const RecordedTree& tree);

}  // namespace bugfix
