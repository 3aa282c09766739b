#include "bugfix/rewriter.hpp"

#include <algorithm>

namespace bugfix {

namespace {

using Code = RewriteError::Code;

const std::vector<Child>* lookup(const std::string& name, const CaptureEnv& captures) {
  auto it = captures.find(name);
  return it == captures.end() ? nullptr : &it->second;
}

// Single node bound to a splice source, looked up among captures then parameters.
UNode splice_source(const std::string& name, const CaptureEnv& captures, const ParamEnv& params) {
  if (const auto* seq = lookup(name, captures)) {
    if (seq->size() != 1)
      throw RewriteError(Code::SpliceOfNonNode, name,
                         "splice of " + name + " which is bound to " + std::to_string(seq->size()) + " nodes");
    return seq->front().node;
  }
  if (auto it = params.find(name); it != params.end()) return it->second;
  throw RewriteError(Code::UnboundCapture, name, "unbound capture " + name);
}

void relabel(std::vector<Child>& seq, const std::optional<std::string>& field) {
  if (!field) return;
  for (Child& c : seq) c.field = field;
}

std::vector<Child> build(const Template& tmpl, const CaptureEnv& captures, const ParamEnv& params);

UNode build_construct(const ConstructTemplate& c, const CaptureEnv& captures, const ParamEnv& params) {
  UNode out;
  out.name = c.name;
  if (c.children.size() == 1) {
    if (const auto* s = std::get_if<StringLeaf>(&c.children.front().value.node)) {
      if (c.name.empty()) throw RewriteError(Code::BadTemplate, {}, "leaf text needs a construct name");
      out.leaf = s->text;
      return out;
    }
  }
  if (c.splice_base) {
    UNode base = splice_source(*c.splice_base, captures, params);
    if (out.name.empty()) out.name = base.name;
    out.children = std::move(base.children);
    out.leaf = std::move(base.leaf);
    for (Child& kid : out.children) kid.node = strip_spans(std::move(kid.node));
  }
  if (out.name.empty()) throw RewriteError(Code::BadTemplate, {}, "construct template without a name");

  const std::size_t copied = out.children.size();
  std::vector<bool> keep(copied, true);
  std::vector<std::pair<std::size_t, std::vector<Child>>> overrides;  // position in copied list
  std::vector<Child> appended;
  for (const TemplateChild& child : c.children) {
    if (std::holds_alternative<StringLeaf>(child.value.node))
      throw RewriteError(Code::BadTemplate, {}, "leaf text must be the only content of a construct");
    std::vector<Child> seq = build(child.value, captures, params);
    relabel(seq, child.field);
    if (child.field) {
      std::size_t first = copied;
      for (std::size_t k = 0; k < copied; ++k) {
        if (keep[k] && out.children[k].field && same_identifier(*out.children[k].field, *child.field)) {
          keep[k] = false;
          first = std::min(first, k);
        }
      }
      auto existing = std::find_if(overrides.begin(), overrides.end(), [&](const auto& o) {
        return o.first < copied && !o.second.empty() && o.second.front().field &&
               same_identifier(*o.second.front().field, *child.field);
      });
      if (first < copied) {
        overrides.emplace_back(first, std::move(seq));
        continue;
      }
      if (existing != overrides.end()) {
        for (Child& s : seq) existing->second.push_back(std::move(s));
        continue;
      }
    }
    for (Child& s : seq) appended.push_back(std::move(s));
  }
  if (!c.splice_base) {
    out.children = std::move(appended);
    if (!out.children.empty()) out.leaf.reset();
    return out;
  }
  std::vector<Child> merged;
  for (std::size_t k = 0; k < copied; ++k) {
    for (auto& [pos, seq] : overrides)
      if (pos == k)
        for (Child& s : seq) merged.push_back(std::move(s));
    if (keep[k]) merged.push_back(std::move(out.children[k]));
  }
  for (Child& s : appended) merged.push_back(std::move(s));
  out.children = std::move(merged);
  if (!out.children.empty()) out.leaf.reset();
  return out;
}

std::vector<Child> build(const Template& tmpl, const CaptureEnv& captures, const ParamEnv& params) {
  if (const auto* c = std::get_if<ConstructTemplate>(&tmpl.node))
    return {Child{std::nullopt, build_construct(*c, captures, params)}};
  if (const auto* r = std::get_if<CaptureRef>(&tmpl.node)) {
    if (r->splat) {
      UNode base = splice_source(r->name, captures, params);
      return std::move(base.children);
    }
    if (const auto* seq = lookup(r->name, captures)) return *seq;
    throw RewriteError(Code::UnboundCapture, r->name, "unbound capture " + r->name);
  }
  if (const auto* p = std::get_if<ParamRef>(&tmpl.node)) {
    auto it = params.find(p->name);
    if (it == params.end()) throw RewriteError(Code::UnboundParameter, p->name, "unbound parameter " + p->name);
    return {Child{std::nullopt, it->second}};
  }
  throw RewriteError(Code::BadTemplate, {}, "leaf text outside a construct template");
}

}  // namespace

CaptureEnv capture_env(const MatchResult& match) {
  CaptureEnv env;
  for (const auto& [name, binding] : match.bindings) {
    auto& seq = env[name];
    for (const BoundNode& b : binding) seq.push_back(Child{b.field, *b.node});
  }
  return env;
}

std::vector<Child> instantiate(const Template& tmpl, const CaptureEnv& captures, const ParamEnv& params) {
  return build(tmpl, captures, params);
}

std::vector<Child> instantiate(const Template& tmpl, const MatchResult& match, const ParamEnv& params) {
  return build(tmpl, capture_env(match), params);
}

ParamEnv make_params(const std::map<std::string, Template>& bindings) {
  ParamEnv env;
  for (const auto& [name, tmpl] : bindings) {
    std::vector<Child> seq = build(tmpl, {}, {});
    if (seq.size() != 1)
      throw RewriteError(Code::SpliceOfNonNode, name, "parameter " + name + " must be a single node");
    env.emplace(name, std::move(seq.front().node));
  }
  return env;
}

UNode apply_fix(const UNode& tree, const MatchResult& match, const FixSpec& fix, const ParamEnv& params) {
  if (!node_at(tree, match.path)) throw RewriteError(Code::PathInvalid, {}, "match path does not address a node");
  std::vector<Child> replacement = instantiate(fix.then, match, params);
  if (match.path.empty()) {
    if (replacement.size() != 1)
      throw RewriteError(Code::SpliceOfNonNode, {}, "replacing the root requires exactly one node");
    return std::move(replacement.front().node);
  }
  UNode out = tree;
  UNode* parent = &out;
  for (std::size_t k = 0; k + 1 < match.path.size(); ++k) parent = &parent->children[match.path[k]].node;
  const std::size_t slot = match.path.back();
  const std::optional<std::string> label = parent->children[slot].field;
  for (Child& c : replacement)
    if (!c.field) c.field = label;
  auto pos = parent->children.erase(parent->children.begin() + static_cast<std::ptrdiff_t>(slot));
  parent->children.insert(pos, std::make_move_iterator(replacement.begin()),
                          std::make_move_iterator(replacement.end()));
  return out;
}

UNode apply_fix(const UNode& tree, const MatchResult& match, const ElementSpec& fix, const ParamEnv& params) {
  return apply_fix(tree, match, fix.as<FixSpec>(), params);
}

std::vector<Diagnostic> check_fix_captures(const ElementSpec& fix, const ElementSpec& bug) {
  const auto& f = fix.as<FixSpec>();
  std::vector<std::string> allowed = captures(bug.as<BugSpec>().where);
  for (const Parameter& p : f.parameters) allowed.push_back(p.name);
  std::vector<Diagnostic> out;
  for (const std::string& name : referenced_captures(f.then)) {
    if (std::find(allowed.begin(), allowed.end(), name) != allowed.end()) continue;
    out.push_back({Severity::Error, "UnknownCapture", fix.id, name,
                   "capture " + name + " is not defined by bug " + bug.id, {}});
  }
  return out;
}

}  // namespace bugfix
