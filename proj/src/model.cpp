#include "bugfix/model.hpp"

#include <algorithm>
#include <cctype>

namespace bugfix {

std::string canonical(std::string_view identifier) {
  std::string out(identifier);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool same_identifier(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) ==
                  std::toupper(static_cast<unsigned char>(y));
         });
}

std::string to_string(const Span& span) {
  return "[" + std::to_string(span.start.row) + ", " + std::to_string(span.start.col) + "] - [" +
         std::to_string(span.end.row) + ", " + std::to_string(span.end.col) + "]";
}

UNode make_leaf(std::string name, std::string text, std::optional<Span> span) {
  UNode n;
  n.name = std::move(name);
  n.leaf = std::move(text);
  n.span = span;
  return n;
}

UNode make_node(std::string name, std::vector<Child> children, std::optional<Span> span) {
  UNode n;
  n.name = std::move(name);
  n.children = std::move(children);
  n.span = span;
  return n;
}

namespace {

bool same_label(const std::optional<std::string>& a, const std::optional<std::string>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || same_identifier(*a, *b);
}

}  // namespace

bool structural_equals(const UNode& a, const UNode& b) {
  if (!same_identifier(a.name, b.name) || a.leaf != b.leaf ||
      a.children.size() != b.children.size())
    return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!same_label(a.children[i].field, b.children[i].field) ||
        !structural_equals(a.children[i].node, b.children[i].node))
      return false;
  }
  return true;
}

UNode strip_spans(UNode node) {
  node.span.reset();
  for (Child& c : node.children) c.node = strip_spans(std::move(c.node));
  return node;
}

const UNode* node_at(const UNode& root, std::span<const std::size_t> path) {
  const UNode* cur = &root;
  for (std::size_t idx : path) {
    if (idx >= cur->children.size()) return nullptr;
    cur = &cur->children[idx].node;
  }
  return cur;
}

std::string_view suffix(Multiplicity m) {
  switch (m) {
    case Multiplicity::Optional: return "?";
    case Multiplicity::Star: return "*";
    case Multiplicity::Plus: return "+";
    case Multiplicity::Required: break;
  }
  return "";
}

std::string format_diagnostic(const Diagnostic& d) {
  std::string out = d.severity == Severity::Error ? "ERROR " : "WARNING ";
  out += d.element_id.empty() ? d.location : d.element_id;
  out += ": ";
  out += d.message;
  return out;
}

const ConstructDef* Registry::find_construct(std::string_view id) const {
  auto it = constructs_.find(canonical(id));
  return it == constructs_.end() ? nullptr : &it->second;
}

bool Registry::is_kind(std::string_view name) const { return kinds_.count(canonical(name)) > 0; }

std::vector<std::string> Registry::members_of(std::string_view kind) const {
  std::vector<std::string> out;
  for (const auto& [id, def] : constructs_) {
    if (std::any_of(def.kinds.begin(), def.kinds.end(),
                    [&](const std::string& k) { return same_identifier(k, kind); }))
      out.push_back(id);
  }
  return out;
}

std::vector<ConstructDef> Registry::definitions() const {
  std::vector<ConstructDef> out;
  for (const auto& [id, def] : constructs_) out.push_back(def);
  return out;
}

Registry validate_registry(std::span<const ConstructDef> constructs) {
  Registry reg;
  auto report = [&](Severity sev, std::string code, const std::string& id, std::string feature,
                    std::string message) {
    reg.diagnostics_.push_back({sev, std::move(code), id, std::move(feature), std::move(message), {}});
  };

  for (const ConstructDef& def : constructs) {
    const std::string key = canonical(def.id);
    if (reg.constructs_.count(key)) {
      report(Severity::Error, "DuplicateConstruct", def.id, {}, "duplicate construct " + def.id);
      continue;
    }
    std::set<std::string> seen;
    for (const FeatureDef& f : def.features) {
      if (!seen.insert(canonical(f.name)).second)
        report(Severity::Error, "DuplicateFeature", def.id, f.name, "duplicate feature " + f.name);
    }
    reg.constructs_.emplace(key, def);
  }

  for (const auto& [id, def] : reg.constructs_) {
    for (const std::string& k : def.kinds) {
      const std::string kind = canonical(k);
      if (reg.constructs_.count(kind)) {
        report(Severity::Error, "ConstructKindCollision", def.id, {},
               "kind " + k + " is also declared as a construct");
        continue;
      }
      reg.kinds_.insert(kind);
    }
  }

  std::set<std::string> declared = reg.kinds_;
  for (const auto& [id, def] : reg.constructs_) {
    for (const FeatureDef& f : def.features) {
      const std::string type = canonical(f.type_name);
      if (reg.constructs_.count(type) || declared.count(type)) continue;
      report(Severity::Warning, "UnknownFeatureType", def.id, f.name,
             "feature " + f.name + " has type " + f.type_name +
                 " which no construct declares as a kind");
      reg.kinds_.insert(type);
    }
  }
  return reg;
}

bool node_has_kind(const Registry& registry, const UNode& node, std::string_view kind,
                   const ConstructSet* language_constructs) {
  const ConstructDef* def = registry.find_construct(node.name);
  if (!def) return false;
  if (language_constructs && !language_constructs->count(canonical(node.name))) return false;
  return std::any_of(def->kinds.begin(), def->kinds.end(),
                     [&](const std::string& k) { return same_identifier(k, kind); });
}

}  // namespace bugfix
