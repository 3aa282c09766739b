#include <sstream>

#include "bugfix/specparse.hpp"
#include "bugfix/tree_format.hpp"

namespace bugfix {

namespace {

constexpr std::size_t kLineWidth = 72;

std::string spaces(std::size_t n) { return std::string(n, ' '); }

std::string pattern_body(const Pattern& p, std::size_t indent) {
  Pattern bare = p;
  bare.capture.reset();
  std::string flat = to_string(bare);
  if (indent + flat.size() <= kLineWidth) return flat;
  std::string out = "(" + p.name;
  for (std::size_t i = 0; i < p.children.size(); ++i) {
    const PatternChild& c = p.children[i];
    out += "\n" + spaces(indent + 2);
    if (c.field) out += *c.field + ": ";
    out += pattern_body(c.pattern, indent + 2);
    out += suffix(c.quantifier);
    if (c.capture) out += " " + *c.capture;
  }
  return out + ")";
}

std::string template_body(const Template& t, std::size_t indent) {
  std::string flat = to_string(t);
  const auto* c = std::get_if<ConstructTemplate>(&t.node);
  if (!c || indent + flat.size() <= kLineWidth) return flat;
  std::string out = "(" + c->name;
  if (c->splice_base) out += (c->name.empty() ? "*" : " *") + *c->splice_base;
  for (const TemplateChild& child : c->children) {
    out += "\n" + spaces(indent + 2);
    if (child.field) out += *child.field + ": ";
    out += template_body(child.value, indent + 2);
  }
  return out + ")";
}

void tree_lines(const RecordedTree& t, std::size_t indent, std::string& out) {
  out += spaces(indent);
  if (t.field) out += *t.field + ": ";
  out += t.type_name + " " + to_string(t.span);
  if (t.capture) out += " " + *t.capture;
  out += "\n";
  for (const RecordedTree& c : t.children) tree_lines(c, indent + 2, out);
}

void comment_lines(const std::string& comment, std::ostringstream& out) {
  if (comment.empty()) return;
  std::istringstream in(comment);
  std::string line;
  while (std::getline(in, line)) out << (line.empty() ? "    --\n" : "    -- " + line + "\n");
  if (comment.back() == '\n') out << "    --\n";
}

void bindings(const std::map<std::string, Template>& params, std::ostringstream& out) {
  for (const auto& [name, value] : params)
    out << "  " << name << " = " << pretty(value, 2) << "\n";
}

void application_clauses(const InlineApplication& a, std::size_t ordinal, std::ostringstream& out) {
  out << "application";
  if (a.id != inline_application_id(a.fix_id, ordinal)) out << " " << a.id;
  out << "\n";
  bindings(a.parameters, out);
  if (a.example_id) out << "example\n  " << *a.example_id << "\n";
  if (a.tree) out << "tree\n" << pretty(*a.tree, 2);
}

std::string parameter_name(const std::string& name) {
  return !name.empty() && name.front() == '@' ? name.substr(1) : name;
}

}  // namespace

std::string pretty(const Pattern& pattern, std::size_t indent) {
  std::string out = pattern_body(pattern, indent);
  if (pattern.capture) out += " " + *pattern.capture;
  return out;
}

std::string pretty(const Template& tmpl, std::size_t indent) { return template_body(tmpl, indent); }

std::string pretty(const RecordedTree& tree, std::size_t indent) {
  std::string out;
  tree_lines(tree, indent, out);
  return out;
}

std::string serialize(const ElementSpec& e) {
  std::ostringstream out;
  if (e.kind() == ElementKind::LanguageMapping) out << "language " << e.as<LanguageMappingSpec>().language << "\n";
  else out << keyword(e.kind()) << " " << e.id << "\n";
  comment_lines(e.comment, out);

  switch (e.kind()) {
    case ElementKind::Bug: {
      const auto& b = e.as<BugSpec>();
      if (!b.parameters.empty()) {
        out << "parameter\n";
        for (const Parameter& p : b.parameters) out << "  " << p.name << ": " << p.type_name << "\n";
      }
      out << "where\n  " << pretty(b.where, 2) << "\n";
      for (const InlineFix& f : b.fixes) {
        out << "fix " << f.id << "\nthen\n  " << pretty(f.then, 2) << "\n";
        std::size_t ordinal = 0;
        for (const InlineApplication& a : b.applications)
          if (a.fix_id == f.id) application_clauses(a, ++ordinal, out);
      }
      break;
    }
    case ElementKind::Fix: {
      const auto& f = e.as<FixSpec>();
      out << "bug_id\n  " << f.bug_id << "\n";
      if (!f.parameters.empty()) {
        out << "parameter\n";
        for (const Parameter& p : f.parameters)
          out << "  " << parameter_name(p.name) << ": " << p.type_name << "\n";
      }
      out << "then\n  " << pretty(f.then, 2) << "\n";
      break;
    }
    case ElementKind::Application: {
      const auto& a = e.as<ApplicationSpec>();
      if (!a.example_id.empty()) out << "example\n  " << a.example_id << "\n";
      out << "fix\n  " << a.fix_id << "\n";
      if (a.tree) out << "tree\n" << pretty(*a.tree, 2);
      if (!a.parameters.empty()) {
        out << "parameter\n";
        bindings(a.parameters, out);
      }
      break;
    }
    case ElementKind::Example: {
      const auto& x = e.as<ExampleSpec>();
      out << "repository\n  " << x.repository << "\nbefore\n  " << x.before << "\nafter\n  " << x.after
          << "\nlanguage\n  " << x.language << "\nhunk\n" << x.hunk << "\n";
      break;
    }
    case ElementKind::Construct: {
      const auto& c = e.as<ConstructSpec>();
      if (!c.kinds.empty()) {
        out << "kind\n";
        for (const std::string& k : c.kinds) out << "  " << k << "\n";
      }
      if (!c.features.empty()) {
        out << "feature\n";
        for (const FeatureDef& f : c.features)
          out << "  " << f.name << suffix(f.multiplicity) << ": " << f.type_name << "\n";
      }
      break;
    }
    case ElementKind::LanguageMapping: {
      const auto& m = e.as<LanguageMappingSpec>();
      out << "construct_name\n  " << m.construct_name << "\nsource\n";
      if (m.context) out << "  " << *m.context << ":\n    " << pretty(m.source, 4) << "\n";
      else out << "  " << pretty(m.source, 2) << "\n";
      out << "construct\n  " << pretty(m.construct, 2) << "\n";
      break;
    }
  }
  out << "end\n";
  return out.str();
}

std::string serialize(const std::vector<ElementSpec>& elements) {
  std::string out;
  for (const ElementSpec& e : elements) {
    if (e.inline_of) continue;
    if (!out.empty()) out += "\n";
    out += serialize(e);
  }
  return out;
}

}  // namespace bugfix
