#include "bugfix/matcher.hpp"

#include <functional>
#include <limits>
#include <set>

namespace bugfix {

namespace {

using Env = std::map<std::string, Binding>;
using Emit = std::function<void(const Env&)>;

class Matcher {
 public:
  Matcher(const Registry& registry, const ConstructSet* language)
      : registry_(registry), language_(language) {}

  // Calls `emit` once per way `pattern` matches `node`, extending `env`.
  void node(const Pattern& pattern, const UNode& node, const Env& env, const Emit& emit) const {
    if (!name_matches(pattern.name, node, registry_, language_)) return;
    if (pattern.children.empty()) {
      emit(env);
      return;
    }
    children(pattern.children, 0, node.children, 0, env, emit);
  }

 private:
  void children(const std::vector<PatternChild>& pcs, std::size_t i, const std::vector<Child>& kids,
                std::size_t j, const Env& env, const Emit& emit) const {
    if (i == pcs.size()) {
      if (j == kids.size()) emit(env);
      return;
    }
    const PatternChild& pc = pcs[i];
    const std::size_t min = (pc.quantifier == Multiplicity::Required || pc.quantifier == Multiplicity::Plus) ? 1 : 0;
    const std::size_t max = (pc.quantifier == Multiplicity::Required || pc.quantifier == Multiplicity::Optional)
                                ? 1
                                : std::numeric_limits<std::size_t>::max();
    // Later pattern children need at least this many nodes.
    std::size_t reserve = 0;
    for (std::size_t k = i + 1; k < pcs.size(); ++k)
      if (pcs[k].quantifier == Multiplicity::Required || pcs[k].quantifier == Multiplicity::Plus) ++reserve;
    if (j + reserve > kids.size()) return;
    const std::size_t available = kids.size() - j - reserve;
    for (std::size_t len = min; len <= max && len <= available; ++len) {
      run(pc, kids, j, j + len, j, env, [&](const Env& inner) {
        Env next = inner;
        if (pc.capture) {
          Binding& b = next[*pc.capture];
          for (std::size_t k = j; k < j + len; ++k) b.push_back({kids[k].field, &kids[k].node});
        }
        children(pcs, i + 1, kids, j + len, next, emit);
      });
    }
  }

  // Matches kids[at..end) one by one against the child's pattern.
  void run(const PatternChild& pc, const std::vector<Child>& kids, std::size_t begin, std::size_t end,
           std::size_t at, const Env& env, const Emit& emit) const {
    if (at == end) {
      emit(env);
      return;
    }
    const Child& kid = kids[at];
    if (pc.field && !(kid.field && same_identifier(*pc.field, *kid.field))) return;
    node(pc.pattern, kid.node, env, [&](const Env& e) { run(pc, kids, begin, end, at + 1, e, emit); });
  }

  const Registry& registry_;
  const ConstructSet* language_;
};

using Key = std::map<std::string, std::vector<const UNode*>>;

Key key_of(const Env& env) {
  Key k;
  for (const auto& [name, binding] : env) {
    auto& v = k[name];
    for (const BoundNode& b : binding) v.push_back(b.node);
  }
  return k;
}

void search(const Pattern& pattern, const UNode& node, const std::optional<std::string>& field,
            std::vector<std::size_t>& path, const Registry& registry, const ConstructSet* language,
            std::vector<MatchResult>& out) {
  for (MatchResult& m : match_at(pattern, node, registry, language)) {
    m.path = path;
    m.bindings[std::string(kBugCapture)].front().field = field;
    out.push_back(std::move(m));
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    path.push_back(i);
    search(pattern, node.children[i].node, node.children[i].field, path, registry, language, out);
    path.pop_back();
  }
}

}  // namespace

bool name_matches(std::string_view pattern_name, const UNode& node, const Registry& registry,
                  const ConstructSet* language_constructs) {
  if (pattern_name == kWildcard) return true;
  if (same_identifier(pattern_name, node.name)) return true;
  return node_has_kind(registry, node, pattern_name, language_constructs);
}

std::vector<MatchResult> match_at(const Pattern& pattern, const UNode& node, const Registry& registry,
                                  const ConstructSet* language_constructs) {
  Env init;
  for (const std::string& name : captures(pattern)) init[name];
  init[std::string(kBugCapture)] = {BoundNode{std::nullopt, &node}};
  if (pattern.capture && *pattern.capture != kBugCapture) init[*pattern.capture] = {BoundNode{std::nullopt, &node}};

  std::vector<MatchResult> out;
  std::set<Key> seen;
  Matcher(registry, language_constructs).node(pattern, node, init, [&](const Env& env) {
    if (!seen.insert(key_of(env)).second) return;
    MatchResult m;
    m.root = &node;
    m.bindings = env;
    out.push_back(std::move(m));
  });
  return out;
}

std::vector<MatchResult> find_matches(const Pattern& pattern, const UNode& tree, const Registry& registry,
                                      const ConstructSet* language_constructs) {
  std::vector<MatchResult> out;
  std::vector<std::size_t> path;
  search(pattern, tree, std::nullopt, path, registry, language_constructs, out);
  return out;
}

}  // namespace bugfix
