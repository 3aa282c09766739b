#include "bugfix/mapper.hpp"

#include <algorithm>
#include <map>

#include "bugfix/matcher.hpp"
#include "bugfix/rewriter.hpp"

namespace bugfix {

ConstructSet LanguageDef::construct_set() const {
  ConstructSet out;
  for (const LanguageMappingSpec& m : mappings) out.insert(canonical(m.construct_name));
  return out;
}

std::vector<LanguageDef> group_languages(const std::vector<ElementSpec>& elements) {
  std::vector<LanguageDef> out;
  for (const ElementSpec& e : elements) {
    if (e.kind() != ElementKind::LanguageMapping) continue;
    const auto& m = e.as<LanguageMappingSpec>();
    auto it = std::find_if(out.begin(), out.end(), [&](const LanguageDef& l) { return same_identifier(l.id, m.language); });
    if (it == out.end()) it = out.insert(out.end(), LanguageDef{m.language, {}});
    it->mappings.push_back(m);
  }
  return out;
}

namespace {

class Translator {
 public:
  explicit Translator(const LanguageDef& language) : language_(language) {}

  UNode node(const UNode& n, const UNode* parent) {
    for (const LanguageMappingSpec& m : language_.mappings) {
      if (m.context && !context_holds(*m.context, parent)) continue;
      std::vector<MatchResult> found = match_at(m.source, n, concrete_);
      if (found.empty()) continue;
      universal_[&n] = m.construct_name;
      CaptureEnv env;
      for (const auto& [name, binding] : found.front().bindings) {
        auto& seq = env[name];
        for (const BoundNode& b : binding) {
          // A capture of the node itself would recurse forever; translate only its children.
          UNode t = b.node == &n ? pass_through(n, parent) : node(*b.node, parent_of(*b.node, n));
          seq.push_back(Child{b.field, std::move(t)});
        }
      }
      std::vector<Child> built;
      try {
        built = instantiate(m.construct, env, {});
      } catch (const RewriteError&) {
        universal_.erase(&n);
        continue;
      }
      if (built.size() != 1) {
        universal_.erase(&n);
        continue;
      }
      UNode out = std::move(built.front().node);
      if (!out.span) out.span = n.span;
      return out;
    }
    return pass_through(n, parent);
  }

 private:
  UNode pass_through(const UNode& n, const UNode*) {
    UNode out;
    out.name = n.name;
    out.leaf = n.leaf;
    out.span = n.span;
    for (const Child& c : n.children) out.children.push_back(Child{c.field, node(c.node, &n)});
    return out;
  }

  bool context_holds(const std::string& context, const UNode* parent) const {
    if (!parent) return false;
    if (same_identifier(context, parent->name)) return true;
    auto it = universal_.find(parent);
    return it != universal_.end() && same_identifier(context, it->second);
  }

  // Parent of `target` within the subtree rooted at `root`.
  static const UNode* parent_of(const UNode& target, const UNode& root) {
    for (const Child& c : root.children) {
      if (&c.node == &target) return &root;
      if (const UNode* p = parent_of(target, c.node)) return p;
    }
    return nullptr;
  }

  const LanguageDef& language_;
  const Registry concrete_;
  std::map<const UNode*, std::string> universal_;
};

bool same_pattern_text(const Pattern& a, const Pattern& b) { return canonical(to_string(a)) == canonical(to_string(b)); }

}  // namespace

UNode translate(const UNode& concrete, const LanguageDef& language, const Registry&) {
  return Translator(language).node(concrete, nullptr);
}

std::vector<Diagnostic> validate_language(const LanguageDef& language, const Registry& registry) {
  std::vector<Diagnostic> out;
  for (std::size_t i = 0; i < language.mappings.size(); ++i) {
    const LanguageMappingSpec& m = language.mappings[i];
    const std::string id = language.id + "_" + m.construct_name;
    if (!registry.find_construct(m.construct_name))
      out.push_back({Severity::Warning, "UnknownConstruct", id, m.construct_name,
                     "construct " + m.construct_name + " is not defined", {}});
    const std::vector<std::string> bound = captures(m.source);
    for (const std::string& name : referenced_captures(m.construct))
      if (std::find(bound.begin(), bound.end(), name) == bound.end())
        out.push_back({Severity::Error, "UnboundTemplateCapture", id, name,
                       "construct uses " + name + " which the source does not capture", {}});
    for (std::size_t j = 0; j < i; ++j) {
      const LanguageMappingSpec& prior = language.mappings[j];
      if (same_identifier(prior.construct_name, m.construct_name) && same_pattern_text(prior.source, m.source)) {
        out.push_back({Severity::Error, "DuplicateMapping", id, m.construct_name,
                       "mapping for " + m.construct_name + " repeats an earlier source pattern", {}});
        break;
      }
    }
  }
  return out;
}

}  // namespace bugfix
