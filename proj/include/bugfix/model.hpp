#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bugfix {

// Identifiers (construct names, kinds, field labels, element ids) compare
// case-insensitively; the canonical form is ASCII uppercase.
std::string canonical(std::string_view identifier);
bool same_identifier(std::string_view a, std::string_view b);
std::string lowercase(std::string_view s);

/// Zero-based row and byte column.
struct Point {
  std::size_t row = 0;
  std::size_t col = 0;

  friend auto operator<=>(const Point&, const Point&) = default;
};

/// End-exclusive source range.
struct Span {
  Point start;
  Point end;

  friend bool operator==(const Span&, const Span&) = default;
};

std::string to_string(const Span& span);

struct Child;

/// Node of a universal (or concrete) syntax tree.
struct UNode {
  std::string name;
  std::vector<Child> children;
  std::optional<std::string> leaf;
  std::optional<Span> span;
};

struct Child {
  std::optional<std::string> field;
  UNode node;
};

UNode make_leaf(std::string name, std::string text, std::optional<Span> span = std::nullopt);
UNode make_node(std::string name, std::vector<Child> children, std::optional<Span> span = std::nullopt);

/// Tree equality ignoring spans. Names and field labels compare
/// case-insensitively, leaf text exactly.
bool structural_equals(const UNode& a, const UNode& b);
UNode strip_spans(UNode node);

/// Returns the node addressed by a child-index path, or nullptr.
const UNode* node_at(const UNode& root, std::span<const std::size_t> path);

enum class Multiplicity { Required, Optional, Star, Plus };

/// "", "?", "*" or "+".
std::string_view suffix(Multiplicity m);

struct FeatureDef {
  std::string name;
  Multiplicity multiplicity = Multiplicity::Required;
  std::string type_name;

  friend bool operator==(const FeatureDef&, const FeatureDef&) = default;
};

struct ConstructDef {
  std::string id;
  std::vector<std::string> kinds;
  std::vector<FeatureDef> features;
  std::string comment;

  friend bool operator==(const ConstructDef&, const ConstructDef&) = default;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string element_id;
  std::string feature;
  std::string message;
  std::string location;
};

std::string format_diagnostic(const Diagnostic& d);

/// Set of canonical construct names admitted by a language.
using ConstructSet = std::set<std::string>;

class Registry {
 public:
  Registry() = default;

  const ConstructDef* find_construct(std::string_view id) const;
  bool is_kind(std::string_view name) const;
  /// Keyed by canonical id.
  const std::map<std::string, ConstructDef>& constructs() const { return constructs_; }
  /// Canonical kind names.
  const std::set<std::string>& kinds() const { return kinds_; }
  /// Canonical ids of constructs declaring `kind`.
  std::vector<std::string> members_of(std::string_view kind) const;
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }
  std::vector<ConstructDef> definitions() const;

 private:
  friend Registry validate_registry(std::span<const ConstructDef> constructs);

  std::map<std::string, ConstructDef> constructs_;
  std::set<std::string> kinds_;
  std::vector<Diagnostic> diagnostics_;
};

/// Builds a registry, computing the implicit kind set. Diagnostic codes:
/// DuplicateConstruct, DuplicateFeature, UnknownFeatureType (warning; the
/// name is then treated as a kind), ConstructKindCollision.
Registry validate_registry(std::span<const ConstructDef> constructs);

bool node_has_kind(const Registry& registry, const UNode& node, std::string_view kind,
                   const ConstructSet* language_constructs = nullptr);

}  // namespace bugfix
