#include "bugfix/specparse.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "lexer.hpp"

namespace bugfix {

using detail::Lexer;
using detail::RawLine;
using detail::Tok;
using detail::Token;

std::string_view keyword(ElementKind kind) {
  switch (kind) {
    case ElementKind::Bug: return "bug";
    case ElementKind::Fix: return "fix";
    case ElementKind::Application: return "application";
    case ElementKind::Example: return "example";
    case ElementKind::Construct: return "construct";
    case ElementKind::LanguageMapping: return "language";
  }
  return "";
}

std::string_view collection(ElementKind kind) {
  switch (kind) {
    case ElementKind::Bug: return "bugs";
    case ElementKind::Fix: return "fixes";
    case ElementKind::Application: return "applications";
    case ElementKind::Example: return "examples";
    case ElementKind::Construct: return "constructs";
    case ElementKind::LanguageMapping: return "languages";
  }
  return "";
}

bool operator==(const ElementSpec& a, const ElementSpec& b) {
  return a.id == b.id && a.comment == b.comment && a.body == b.body;
}

ConstructDef to_construct_def(const ElementSpec& construct) {
  const auto& c = construct.as<ConstructSpec>();
  return ConstructDef{construct.id, c.kinds, c.features, construct.comment};
}

std::string inline_application_id(std::string_view fix_id, std::size_t ordinal) {
  return std::string(fix_id) + "_APPLICATION_" + std::to_string(ordinal);
}

namespace {

using KeywordSet = std::set<std::string_view>;

const KeywordSet kElementKeywords = {"bug", "fix", "application", "example", "construct", "language"};
const KeywordSet kBugKeywords = {"parameter", "where", "fix", "then", "application", "example", "tree", "end"};
const KeywordSet kFixKeywords = {"bug_id", "parameter", "then", "end"};
const KeywordSet kApplicationKeywords = {"example", "fix", "tree", "parameter", "end"};
const KeywordSet kExampleKeywords = {"repository", "before", "after", "language", "hunk", "end"};
const KeywordSet kConstructKeywords = {"kind", "feature", "end"};
const KeywordSet kLanguageKeywords = {"construct_name", "source", "construct", "end"};

Multiplicity quantifier_of(char c) {
  switch (c) {
    case '*': return Multiplicity::Star;
    case '+': return Multiplicity::Plus;
    case '?': return Multiplicity::Optional;
    default: return Multiplicity::Required;
  }
}

std::string join(const std::vector<std::string>& lines, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out += sep;
    out += lines[i];
  }
  return out;
}

// --- sexp grammars --------------------------------------------------------

Pattern pattern_node(Lexer& lex) {
  lex.expect(Tok::LParen, "'('");
  Pattern p;
  const Token& name = lex.peek();
  if (name.kind != Tok::Ident) lex.fail(name, "expected a construct name or '_'");
  p.name = lex.next().text;
  while (!lex.at(Tok::RParen)) {
    PatternChild c;
    if (lex.at(Tok::Label)) {
      Token label = lex.next();
      if (label.quant) lex.fail(label, "quantifiers follow the child pattern, not the field");
      c.field = label.text;
    }
    if (!lex.at(Tok::LParen)) {
      const Token& t = lex.peek();
      lex.fail(t, t.kind == Tok::End ? "unterminated pattern" : "expected '(' to start a child pattern");
    }
    c.pattern = pattern_node(lex);
    switch (lex.peek().kind) {
      case Tok::Star: lex.next(); c.quantifier = Multiplicity::Star; break;
      case Tok::Plus: lex.next(); c.quantifier = Multiplicity::Plus; break;
      case Tok::Question: lex.next(); c.quantifier = Multiplicity::Optional; break;
      default: break;
    }
    if (lex.at(Tok::Capture)) c.capture = lex.next().text;
    p.children.push_back(std::move(c));
  }
  lex.next();
  return p;
}

Pattern pattern_top(Lexer& lex) {
  Pattern p = pattern_node(lex);
  if (lex.at(Tok::Capture)) p.capture = lex.next().text;
  return p;
}

Template template_value(Lexer& lex);

Template template_node(Lexer& lex) {
  lex.expect(Tok::LParen, "'('");
  ConstructTemplate c;
  if (lex.at(Tok::Splice)) {
    c.splice_base = lex.next().text;
  } else {
    const Token& name = lex.peek();
    if (name.kind != Tok::Ident) lex.fail(name, "expected a construct name or a splice");
    c.name = lex.next().text;
    if (lex.at(Tok::Splice)) c.splice_base = lex.next().text;
  }
  while (!lex.at(Tok::RParen)) {
    const Token& t = lex.peek();
    if (t.kind == Tok::String) {
      if (!c.children.empty() || c.splice_base)
        lex.fail(t, "leaf text must be the only content of a construct");
      c.children.push_back({std::nullopt, make_string(lex.next().text)});
      if (!lex.at(Tok::RParen)) lex.fail(lex.peek(), "leaf text must be the only content of a construct");
      break;
    }
    if (!c.children.empty() && std::holds_alternative<StringLeaf>(c.children.front().value.node))
      lex.fail(t, "leaf text must be the only content of a construct");
    TemplateChild child;
    if (t.kind == Tok::Label) {
      Token label = lex.next();
      if (label.quant) lex.fail(label, "quantifiers are not allowed in templates");
      child.field = label.text;
    }
    const Token& v = lex.peek();
    if (v.kind == Tok::Splice) {
      child.value = Template{CaptureRef{lex.next().text, true}};
    } else if (v.kind == Tok::LParen || v.kind == Tok::Capture) {
      child.value = template_value(lex);
    } else if (v.kind == Tok::String) {
      lex.fail(v, "leaf text must be the only content of a construct");
    } else {
      lex.fail(v, v.kind == Tok::End ? "unterminated template" : "expected a child template");
    }
    c.children.push_back(std::move(child));
  }
  lex.next();
  return Template{std::move(c)};
}

Template template_value(Lexer& lex) {
  const Token& t = lex.peek();
  if (t.kind == Tok::Capture) return make_capture(lex.next().text);
  if (t.kind == Tok::LParen) return template_node(lex);
  lex.fail(t, "expected a template");
}

// --- recorded trees -------------------------------------------------------

RecordedTree recorded_line(const RawLine& line) {
  Lexer lex(line.text, line.line);
  RecordedTree node;
  if (lex.at(Tok::Label)) {
    Token label = lex.next();
    if (label.quant) lex.fail(label, "quantifiers are not allowed in recorded trees");
    node.field = label.text;
  }
  node.type_name = lex.expect(Tok::Ident, "node type").text;
  auto number = [&] { return static_cast<std::size_t>(std::stoul(lex.expect(Tok::Number, "number").text)); };
  auto point = [&] {
    lex.expect(Tok::LBracket, "'['");
    Point p;
    p.row = number();
    lex.expect(Tok::Comma, "','");
    p.col = number();
    lex.expect(Tok::RBracket, "']'");
    return p;
  };
  Token at = lex.peek();
  node.span.start = point();
  lex.expect(Tok::Dash, "'-'");
  node.span.end = point();
  if (node.span.end < node.span.start) lex.fail(at, "span ends before it starts");
  if (lex.at(Tok::Capture)) node.capture = lex.next().text;
  if (!lex.at(Tok::End)) lex.fail(lex.peek(), "unexpected input after the span");
  return node;
}

bool nests(const Span& inner, const Span& outer) {
  return !(inner.start < outer.start) && !(outer.end < inner.end);
}

RecordedTree recorded_tree(const std::vector<RawLine>& lines, std::size_t line_if_empty) {
  std::optional<RecordedTree> root;
  std::vector<RecordedTree*> stack;
  std::size_t base = 0;
  for (const RawLine& raw : lines) {
    std::string_view content = detail::strip_comment(raw.text);
    if (detail::trim(content).empty()) continue;
    std::size_t indent = 0;
    while (indent < content.size() && content[indent] == ' ') ++indent;
    if (content[indent] == '\t') throw SyntaxError(raw.line, indent + 1, "tabs are not allowed in tree indentation");
    if (!root) base = indent;
    if (indent < base || (indent - base) % 2 != 0)
      throw SyntaxError(raw.line, indent + 1, "inconsistent indentation");
    const std::size_t depth = (indent - base) / 2;
    RecordedTree node = recorded_line(raw);
    if (!root) {
      if (depth != 0) throw SyntaxError(raw.line, indent + 1, "inconsistent indentation");
      root = std::move(node);
      stack = {&*root};
      continue;
    }
    if (depth == 0) throw SyntaxError(raw.line, indent + 1, "a recorded tree has a single root");
    if (depth > stack.size()) throw SyntaxError(raw.line, indent + 1, "inconsistent indentation");
    stack.resize(depth);
    RecordedTree* parent = stack.back();
    if (!nests(node.span, parent->span))
      throw SyntaxError(raw.line, indent + 1, "span does not nest within its parent");
    parent->children.push_back(std::move(node));
    stack.push_back(&parent->children.back());
  }
  if (!root) throw SyntaxError(line_if_empty, 1, "empty tree");
  return std::move(*root);
}

std::vector<RawLine> split_lines(std::string_view text) {
  std::vector<RawLine> out;
  std::size_t line = 1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view s = text.substr(pos, end - pos);
    if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
    out.push_back({line++, std::string(s)});
    pos = end + 1;
  }
  return out;
}

// Line starts (after indentation) with one of the keywords and is not a tree line.
auto keyword_line(const KeywordSet& keywords) {
  return [&keywords](std::string_view line) {
    std::string_view s = detail::trim(detail::strip_comment(line));
    std::size_t n = 0;
    while (n < s.size() && (std::isalnum(static_cast<unsigned char>(s[n])) || s[n] == '_')) ++n;
    if (n == 0 || !keywords.count(s.substr(0, n))) return false;
    return s.find('[') == std::string_view::npos;
  };
}

// --- documents ------------------------------------------------------------

class DocumentParser {
 public:
  explicit DocumentParser(std::string_view text) : lex_(text) {}

  std::vector<ElementSpec> run() {
    while (true) {
      const Token& t = lex_.peek();
      if (t.kind == Tok::End) break;
      if (t.kind != Tok::Ident || !kElementKeywords.count(t.text))
        lex_.fail(t, t.kind == Tok::Ident ? "unknown keyword '" + t.text + "'"
                                          : "expected an element keyword");
      Token kw = take_keyword();
      if (kw.text == "bug") bug(kw);
      else if (kw.text == "fix") fix(kw);
      else if (kw.text == "application") application(kw);
      else if (kw.text == "example") example(kw);
      else if (kw.text == "construct") construct(kw);
      else language(kw);
    }
    return std::move(out_);
  }

 private:
  Token take_keyword() {
    lex_.clear_comments();
    return lex_.next();
  }

  void collect_comments(ElementSpec& e) {
    lex_.peek();
    for (std::string& c : lex_.take_comments()) {
      if (comment_started_) e.comment += "\n";
      e.comment += c;
      comment_started_ = true;
    }
  }

  ElementSpec start(const Token& kw, std::string id) {
    ElementSpec e;
    e.id = std::move(id);
    e.location.line = kw.line;
    comment_started_ = false;
    return e;
  }

  // Next clause keyword of the element; fails on end of input or stray tokens.
  Token clause(const KeywordSet& keywords, const Token& element_kw, std::string_view id) {
    skip_surplus_closers();
    const Token& t = lex_.peek();
    if (t.kind == Tok::End)
      lex_.fail(element_kw, "unterminated element '" + element_kw.text + " " + std::string(id) +
                                "' (missing 'end')");
    if (t.kind != Tok::Ident || !keywords.count(t.text)) {
      std::string what = t.kind == Tok::Ident ? "unknown keyword '" + t.text + "'"
                                              : "unexpected " + std::string(describe(t.kind));
      lex_.fail(t, what + " in " + element_kw.text + " element");
    }
    return take_keyword();
  }

  // A stray ')' after a complete sexp clause is tolerated.
  void skip_surplus_closers() {
    while (lex_.at(Tok::RParen)) lex_.next();
  }

  void once(std::set<std::string>& seen, const Token& kw) {
    if (!seen.insert(kw.text).second) lex_.fail(kw, "duplicate clause '" + kw.text + "'");
  }

  bool at_keyword(const KeywordSet& keywords) {
    const Token& t = lex_.peek();
    return t.kind == Tok::End || (t.kind == Tok::Ident && keywords.count(t.text));
  }

  std::string identifier(std::string_view what) { return lex_.expect(Tok::Ident, what).text; }

  std::vector<Parameter> parameter_decls(const KeywordSet& keywords) {
    std::vector<Parameter> params;
    while (!at_keyword(keywords)) {
      const Token t = lex_.peek();
      Parameter p;
      if (t.kind == Tok::Capture) {
        p.name = lex_.next().text;
        lex_.expect(Tok::Colon, "':'");
      } else if (t.kind == Tok::Label) {
        Token label = lex_.next();
        if (label.quant) lex_.fail(label, "parameters take no quantifier");
        p.name = "@" + label.text;
      } else {
        lex_.fail(t, "expected a parameter declaration 'name: TYPE'");
      }
      p.type_name = identifier("parameter type");
      if (std::any_of(params.begin(), params.end(), [&](const Parameter& q) { return q.name == p.name; }))
        lex_.fail(t, "duplicate parameter " + p.name);
      params.push_back(std::move(p));
    }
    return params;
  }

  void bindings(std::map<std::string, Template>& out) {
    while (lex_.at(Tok::Capture)) {
      Token name = lex_.next();
      lex_.expect(Tok::Equals, "'='");
      Template value = template_value(lex_);
      skip_surplus_closers();
      if (!out.emplace(name.text, std::move(value)).second)
        lex_.fail(name, "duplicate binding " + name.text);
    }
  }

  RecordedTree tree_clause(const Token& kw, const KeywordSet& keywords) {
    std::vector<RawLine> lines = lex_.read_lines_until(keyword_line(keywords));
    return recorded_tree(lines, kw.line);
  }

  [[noreturn]] void missing(const Token& end, const ElementSpec& e, std::string_view clause_name) {
    lex_.fail(end, "element " + e.id + " has no '" + std::string(clause_name) + "' clause");
  }

  void bug(const Token& kw) {
    ElementSpec e = start(kw, identifier("bug id"));
    collect_comments(e);
    BugSpec b;
    std::set<std::string> seen;
    // Per inline fix / application: clauses seen.
    std::vector<std::set<std::string>> fix_seen, app_seen;
    std::vector<bool> app_named;
    std::vector<std::size_t> app_fix;  // index into b.fixes, or npos until resolved
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    bool in_application = false;
    while (true) {
      Token c = clause(kBugKeywords, kw, e.id);
      if (c.text == "end") {
        if (!seen.count("where")) missing(c, e, "where");
        for (std::size_t i = 0; i < b.fixes.size(); ++i)
          if (!fix_seen[i].count("then")) lex_.fail(c, "inline fix " + b.fixes[i].id + " has no 'then' clause");
        if (!b.applications.empty() && b.fixes.empty())
          lex_.fail(c, "inline application in bug " + e.id + " without a fix");
        break;
      }
      if (c.text == "parameter") {
        once(seen, c);
        collect_comments(e);
        b.parameters = parameter_decls(kBugKeywords);
        in_application = false;
      } else if (c.text == "where") {
        once(seen, c);
        collect_comments(e);
        b.where = pattern_top(lex_);
        in_application = false;
      } else if (c.text == "fix") {
        InlineFix f;
        f.id = identifier("fix id");
        for (const InlineFix& other : b.fixes)
          if (same_identifier(other.id, f.id)) lex_.fail(c, "duplicate inline fix " + f.id);
        b.fixes.push_back(std::move(f));
        fix_seen.emplace_back();
        in_application = false;
      } else if (c.text == "then") {
        if (b.fixes.empty() || in_application) lex_.fail(c, "'then' must follow an inline 'fix' clause");
        once(fix_seen.back(), c);
        b.fixes.back().then = template_value(lex_);
      } else if (c.text == "application") {
        InlineApplication a;
        const Token& next = lex_.peek();
        const bool named = next.kind == Tok::Ident && next.line == c.line && !kBugKeywords.count(next.text);
        if (named) a.id = lex_.next().text;
        bindings(a.parameters);
        b.applications.push_back(std::move(a));
        app_seen.emplace_back();
        app_named.push_back(named);
        app_fix.push_back(b.fixes.empty() ? npos : b.fixes.size() - 1);
        in_application = true;
      } else if (c.text == "example" || c.text == "tree") {
        if (!in_application) lex_.fail(c, "'" + c.text + "' must follow an inline 'application' clause");
        once(app_seen.back(), c);
        if (c.text == "example") {
          b.applications.back().example_id = identifier("example id");
        } else {
          b.applications.back().tree = tree_clause(c, kBugKeywords);
        }
      }
    }

    std::vector<std::string> param_names;
    for (const Parameter& p : b.parameters) param_names.push_back(p.name);
    for (InlineFix& f : b.fixes) resolve_parameters(f.then, param_names);

    std::vector<std::size_t> ordinal(b.fixes.size(), 0);
    for (std::size_t i = 0; i < b.applications.size(); ++i) {
      std::size_t fi = app_fix[i] == npos ? 0 : app_fix[i];
      InlineApplication& a = b.applications[i];
      a.fix_id = b.fixes[fi].id;
      ++ordinal[fi];
      if (!app_named[i]) a.id = inline_application_id(a.fix_id, ordinal[fi]);
    }

    out_.push_back(e);
    out_.back().body = b;
    for (const InlineFix& f : b.fixes) {
      ElementSpec fe;
      fe.id = f.id;
      fe.inline_of = e.id;
      fe.location = e.location;
      fe.body = FixSpec{e.id, b.parameters, f.then};
      out_.push_back(std::move(fe));
    }
    for (const InlineApplication& a : b.applications) {
      ElementSpec ae;
      ae.id = a.id;
      ae.inline_of = e.id;
      ae.location = e.location;
      ae.body = ApplicationSpec{a.example_id.value_or(""), a.fix_id, a.tree, a.parameters};
      out_.push_back(std::move(ae));
    }
  }

  void fix(const Token& kw) {
    ElementSpec e = start(kw, identifier("fix id"));
    collect_comments(e);
    FixSpec f;
    std::set<std::string> seen;
    while (true) {
      Token c = clause(kFixKeywords, kw, e.id);
      if (c.text == "end") {
        if (!seen.count("bug_id")) missing(c, e, "bug_id");
        if (!seen.count("then")) missing(c, e, "then");
        break;
      }
      once(seen, c);
      collect_comments(e);
      if (c.text == "bug_id") f.bug_id = identifier("bug id");
      else if (c.text == "parameter") f.parameters = parameter_decls(kFixKeywords);
      else f.then = template_value(lex_);
    }
    std::vector<std::string> names;
    for (const Parameter& p : f.parameters) names.push_back(p.name);
    resolve_parameters(f.then, names);
    e.body = std::move(f);
    out_.push_back(std::move(e));
  }

  void application(const Token& kw) {
    ElementSpec e = start(kw, identifier("application id"));
    collect_comments(e);
    ApplicationSpec a;
    std::set<std::string> seen;
    while (true) {
      Token c = clause(kApplicationKeywords, kw, e.id);
      if (c.text == "end") {
        if (!seen.count("fix")) missing(c, e, "fix");
        if (seen.count("example") && !seen.count("tree")) missing(c, e, "tree");
        break;
      }
      once(seen, c);
      if (c.text == "example") {
        a.example_id = identifier("example id");
      } else if (c.text == "fix") {
        a.fix_id = identifier("fix id");
      } else if (c.text == "tree") {
        a.tree = tree_clause(c, kApplicationKeywords);
      } else {
        collect_comments(e);
        bindings(a.parameters);
      }
    }
    e.body = std::move(a);
    out_.push_back(std::move(e));
  }

  void example(const Token& kw) {
    ElementSpec e = start(kw, identifier("example id"));
    collect_comments(e);
    ExampleSpec x;
    std::set<std::string> seen;
    while (true) {
      Token c = clause(kExampleKeywords, kw, e.id);
      if (c.text == "end") {
        for (std::string_view required : {"repository", "before", "after", "language", "hunk"})
          if (!seen.count(std::string(required))) missing(c, e, required);
        break;
      }
      once(seen, c);
      if (c.text == "repository") x.repository = lex_.read_atom().text;
      else if (c.text == "before") x.before = lex_.read_atom().text;
      else if (c.text == "after") x.after = lex_.read_atom().text;
      else if (c.text == "language") x.language = identifier("language id");
      else x.hunk = hunk_clause();
    }
    e.body = std::move(x);
    out_.push_back(std::move(e));
  }

  std::string hunk_clause() {
    auto stop = [](std::string_view line) {
      std::size_t n = 0;
      while (n < line.size() && (std::isalnum(static_cast<unsigned char>(line[n])) || line[n] == '_')) ++n;
      if (n == 0 || !kExampleKeywords.count(line.substr(0, n))) return false;
      return n == line.size() || line[n] == ' ' || line[n] == '\t';
    };
    std::vector<RawLine> lines = lex_.read_lines_until(stop);
    while (!lines.empty() && detail::trim(lines.back().text).empty()) lines.pop_back();
    std::vector<std::string> text;
    for (RawLine& l : lines) text.push_back(std::move(l.text));
    return join(text, "\n");
  }

  void construct(const Token& kw) {
    ElementSpec e = start(kw, identifier("construct id"));
    collect_comments(e);
    ConstructSpec c;
    std::set<std::string> seen;
    while (true) {
      Token cl = clause(kConstructKeywords, kw, e.id);
      if (cl.text == "end") break;
      once(seen, cl);
      collect_comments(e);
      if (cl.text == "kind") {
        while (!at_keyword(kConstructKeywords)) c.kinds.push_back(identifier("kind name"));
      } else {
        while (!at_keyword(kConstructKeywords)) {
          Token label = lex_.expect(Tok::Label, "feature 'name: TYPE'");
          FeatureDef f{label.text, quantifier_of(label.quant), identifier("feature type")};
          c.features.push_back(std::move(f));
        }
      }
    }
    e.body = std::move(c);
    out_.push_back(std::move(e));
  }

  void language(const Token& kw) {
    LanguageMappingSpec m;
    m.language = identifier("language id");
    ElementSpec e = start(kw, "");
    collect_comments(e);
    std::set<std::string> seen;
    while (true) {
      Token c = clause(kLanguageKeywords, kw, m.language);
      if (c.text == "end") {
        for (std::string_view required : {"construct_name", "source", "construct"})
          if (!seen.count(std::string(required))) {
            lex_.fail(c, "language mapping for " + m.language + " has no '" + std::string(required) +
                             "' clause");
          }
        break;
      }
      once(seen, c);
      collect_comments(e);
      if (c.text == "construct_name") {
        m.construct_name = identifier("construct name");
      } else if (c.text == "source") {
        if (lex_.at(Tok::Label)) {
          Token ctx = lex_.next();
          if (ctx.quant) lex_.fail(ctx, "context takes no quantifier");
          m.context = ctx.text;
        }
        m.source = pattern_top(lex_);
      } else {
        m.construct = template_value(lex_);
      }
    }
    e.id = m.language + "_" + m.construct_name;
    std::size_t same = 0;
    for (const ElementSpec& prior : out_)
      if (prior.kind() == ElementKind::LanguageMapping && same_identifier(prior.as<LanguageMappingSpec>().language, m.language) &&
          same_identifier(prior.as<LanguageMappingSpec>().construct_name, m.construct_name))
        ++same;
    if (same) e.id += "_" + std::to_string(same + 1);
    e.body = std::move(m);
    out_.push_back(std::move(e));
  }

  Lexer lex_;
  std::vector<ElementSpec> out_;
  bool comment_started_ = false;
};

}  // namespace

std::vector<ElementSpec> parse_document(std::string_view text) { return DocumentParser(text).run(); }

Pattern parse_pattern(std::string_view text) {
  Lexer lex(text);
  Pattern p = pattern_top(lex);
  if (!lex.at(Tok::End)) lex.fail(lex.peek(), "unexpected input after the pattern");
  return p;
}

Template parse_template(std::string_view text) {
  Lexer lex(text);
  Template t = template_value(lex);
  if (!lex.at(Tok::End)) lex.fail(lex.peek(), "unexpected input after the template");
  return t;
}

RecordedTree parse_recorded_tree(std::string_view text) { return recorded_tree(split_lines(text), 1); }

std::map<std::string, Template> parse_bindings(std::string_view text) {
  Lexer lex(text);
  std::map<std::string, Template> out;
  while (lex.at(Tok::Capture)) {
    Token name = lex.next();
    lex.expect(Tok::Equals, "'='");
    Template value = template_value(lex);
    if (!out.emplace(name.text, std::move(value)).second) lex.fail(name, "duplicate binding " + name.text);
  }
  if (!lex.at(Tok::End)) lex.fail(lex.peek(), "expected a binding '@name = (sexp)'");
  return out;
}

}  // namespace bugfix
