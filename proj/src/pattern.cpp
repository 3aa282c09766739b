#include "bugfix/pattern.hpp"

#include <algorithm>

#include "bugfix/tree_format.hpp"

namespace bugfix {

bool operator==(const Pattern& a, const Pattern& b) {
  return a.name == b.name && a.capture == b.capture && a.children == b.children;
}

bool operator==(const PatternChild& a, const PatternChild& b) {
  return a.field == b.field && a.quantifier == b.quantifier && a.capture == b.capture &&
         a.pattern == b.pattern;
}

namespace {

void push_unique(std::vector<std::string>& names, const std::string& name) {
  if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
}

void collect_captures(const Pattern& p, std::vector<std::string>& out) {
  if (p.capture) push_unique(out, *p.capture);
  for (const PatternChild& c : p.children) {
    collect_captures(c.pattern, out);
    if (c.capture) push_unique(out, *c.capture);
  }
}

void print(const Pattern& p, std::string& out) {
  out += "(" + p.name;
  for (const PatternChild& c : p.children) {
    out += " ";
    if (c.field) out += *c.field + ": ";
    print(c.pattern, out);
    out += suffix(c.quantifier);
    if (c.capture) out += " " + *c.capture;
  }
  out += ")";
}

void print(const Template& t, std::string& out);

void print(const ConstructTemplate& c, std::string& out) {
  out += "(" + c.name;
  if (c.splice_base) out += (c.name.empty() ? "*" : " *") + *c.splice_base;
  for (const TemplateChild& child : c.children) {
    out += " ";
    if (child.field) out += *child.field + ": ";
    print(child.value, out);
  }
  out += ")";
}

void print(const Template& t, std::string& out) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ConstructTemplate>) print(v, out);
        else if constexpr (std::is_same_v<T, CaptureRef>) out += (v.splat ? "*" : "") + v.name;
        else if constexpr (std::is_same_v<T, ParamRef>) out += v.name;
        else out += quote(v.text);
      },
      t.node);
}

void collect_refs(const Template& t, std::vector<std::string>& out) {
  if (const auto* c = std::get_if<ConstructTemplate>(&t.node)) {
    if (c->splice_base) push_unique(out, *c->splice_base);
    for (const TemplateChild& child : c->children) collect_refs(child.value, out);
  } else if (const auto* r = std::get_if<CaptureRef>(&t.node)) {
    push_unique(out, r->name);
  }
}

void collect_recorded(const RecordedTree& t,
                      std::vector<std::pair<std::string, std::vector<Span>>>& out) {
  if (t.capture) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == *t.capture; });
    if (it == out.end()) out.push_back({*t.capture, {t.span}});
    else it->second.push_back(t.span);
  }
  for (const RecordedTree& c : t.children) collect_recorded(c, out);
}

}  // namespace

std::vector<std::string> captures(const Pattern& pattern) {
  std::vector<std::string> out{std::string(kBugCapture)};
  collect_captures(pattern, out);
  return out;
}

std::string to_string(const Pattern& pattern) {
  std::string out;
  print(pattern, out);
  if (pattern.capture) out += " " + *pattern.capture;
  return out;
}

bool operator==(const ConstructTemplate& a, const ConstructTemplate& b) {
  return a.name == b.name && a.splice_base == b.splice_base && a.children == b.children;
}

bool operator==(const Template& a, const Template& b) { return a.node == b.node; }

bool operator==(const TemplateChild& a, const TemplateChild& b) {
  return a.field == b.field && a.value == b.value;
}

Template make_construct(std::string name, std::vector<TemplateChild> children) {
  return Template{ConstructTemplate{std::move(name), std::nullopt, std::move(children)}};
}

Template make_capture(std::string name) { return Template{CaptureRef{std::move(name), false}}; }

Template make_string(std::string text) { return Template{StringLeaf{std::move(text)}}; }

std::string to_string(const Template& tmpl) {
  std::string out;
  print(tmpl, out);
  return out;
}

std::vector<std::string> referenced_captures(const Template& tmpl) {
  std::vector<std::string> out;
  collect_refs(tmpl, out);
  return out;
}

void resolve_parameters(Template& tmpl, const std::vector<std::string>& parameters) {
  if (auto* c = std::get_if<ConstructTemplate>(&tmpl.node)) {
    for (TemplateChild& child : c->children) resolve_parameters(child.value, parameters);
  } else if (auto* r = std::get_if<CaptureRef>(&tmpl.node)) {
    if (!r->splat && std::find(parameters.begin(), parameters.end(), r->name) != parameters.end())
      tmpl.node = ParamRef{r->name};
  }
}

std::vector<std::pair<std::string, std::vector<Span>>> recorded_captures(const RecordedTree& tree) {
  std::vector<std::pair<std::string, std::vector<Span>>> out;
  collect_recorded(tree, out);
  return out;
}

}  // namespace bugfix
