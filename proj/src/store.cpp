#include "bugfix/store.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "bugfix/corpus.hpp"
#include "bugfix/rewriter.hpp"
#include "bugfix/specparse.hpp"

namespace bugfix {

namespace fs = std::filesystem;

const std::map<std::string, ElementSpec>& Database::elements(ElementKind kind) const {
  switch (kind) {
    case ElementKind::Bug: return bugs;
    case ElementKind::Fix: return fixes;
    case ElementKind::Application: return applications;
    case ElementKind::Example: return examples;
    case ElementKind::Construct: return constructs;
    case ElementKind::LanguageMapping: return mappings;
  }
  return bugs;
}

const ElementSpec* Database::find(ElementKind kind, std::string_view id) const {
  const auto& m = elements(kind);
  auto it = m.find(canonical(id));
  return it == m.end() ? nullptr : &it->second;
}

std::vector<std::string> Database::ids(std::string_view collection) const {
  std::vector<std::string> out;
  auto keys = [&](const auto& m) {
    for (const auto& entry : m) out.push_back(entry.first);
  };
  if (collection == "bugs") keys(bugs);
  else if (collection == "fixes") keys(fixes);
  else if (collection == "applications") keys(applications);
  else if (collection == "examples") keys(examples);
  else if (collection == "constructs") keys(constructs);
  else if (collection == "languages") keys(languages);
  else if (collection == "kinds") out.assign(registry.kinds().begin(), registry.kinds().end());
  return out;
}

bool Database::empty() const {
  return bugs.empty() && fixes.empty() && applications.empty() && examples.empty() && constructs.empty() &&
         mappings.empty() && languages.empty();
}

namespace {

std::string where(const ElementSpec& e) {
  if (e.location.file.empty()) return {};
  return e.location.file + ":" + std::to_string(e.location.line);
}

Diagnostic error(const ElementSpec& e, std::string code, std::string feature, std::string message) {
  return {Severity::Error, std::move(code), e.id, std::move(feature), std::move(message), where(e)};
}

Diagnostic warning(const ElementSpec& e, std::string code, std::string feature, std::string message) {
  return {Severity::Warning, std::move(code), e.id, std::move(feature), std::move(message), where(e)};
}

// Moves elements into `dest`, keeping the first of any repeated id.
void insert_unique(std::vector<ElementSpec>& items, std::map<std::string, ElementSpec>& dest,
                   std::vector<Diagnostic>& diags) {
  for (ElementSpec& e : items) {
    std::string key = canonical(e.id);
    if (dest.count(key)) {
      diags.push_back(error(e, "DuplicateId", {}, std::string(keyword(e.kind())) + " " + e.id + " is already defined"));
      continue;
    }
    dest.emplace(std::move(key), std::move(e));
  }
}

void add_link(std::map<std::string, std::vector<std::string>>& links, const std::string& from, const std::string& to) {
  auto& v = links[canonical(from)];
  const std::string id = canonical(to);
  if (std::find(v.begin(), v.end(), id) == v.end()) v.insert(std::upper_bound(v.begin(), v.end(), id), id);
}

bool mentions(const std::vector<Parameter>& params, const std::string& name) {
  return std::any_of(params.begin(), params.end(), [&](const Parameter& p) { return p.name == name; });
}

}  // namespace

Database build_database(std::vector<ElementSpec> elements, std::vector<Diagnostic>& diagnostics) {
  std::vector<ElementSpec> by_kind[6];
  for (ElementSpec& e : elements) by_kind[static_cast<int>(e.kind())].push_back(std::move(e));
  auto items = [&](ElementKind k) -> std::vector<ElementSpec>& { return by_kind[static_cast<int>(k)]; };

  Database db;
  insert_unique(items(ElementKind::Construct), db.constructs, diagnostics);
  std::vector<ConstructDef> defs;
  for (const auto& [id, e] : db.constructs) defs.push_back(to_construct_def(e));
  db.registry = validate_registry(defs);
  for (Diagnostic d : db.registry.diagnostics()) {
    if (const ElementSpec* e = db.find(ElementKind::Construct, d.element_id)) d.location = where(*e);
    diagnostics.push_back(std::move(d));
  }

  insert_unique(items(ElementKind::Bug), db.bugs, diagnostics);

  std::vector<ElementSpec> examples;
  for (ElementSpec& e : items(ElementKind::Example)) {
    std::vector<std::string> notes;
    try {
      example_hunks(e.as<ExampleSpec>(), &notes);
    } catch (const DiffSyntaxError& err) {
      diagnostics.push_back(error(e, "DiffSyntaxError", "hunk", err.what()));
      continue;
    }
    for (std::string& n : notes) diagnostics.push_back(warning(e, "MultiFileHunk", "hunk", std::move(n)));
    examples.push_back(std::move(e));
  }
  insert_unique(examples, db.examples, diagnostics);

  std::vector<ElementSpec> mappings = std::move(items(ElementKind::LanguageMapping));
  std::vector<ElementSpec> kept_mappings;
  for (const LanguageDef& lang : group_languages(mappings)) {
    std::vector<Diagnostic> found = validate_language(lang, db.registry);
    for (const ElementSpec& e : mappings) {
      const auto& m = e.as<LanguageMappingSpec>();
      if (!same_identifier(m.language, lang.id)) continue;
      bool rejected = false;
      for (const Diagnostic& d : found) {
        if (!same_identifier(d.element_id, m.language + "_" + m.construct_name)) continue;
        Diagnostic out = d;
        out.element_id = e.id;
        out.location = where(e);
        diagnostics.push_back(out);
        rejected = rejected || d.severity == Severity::Error;
      }
      if (!rejected) kept_mappings.push_back(e);
    }
  }
  insert_unique(kept_mappings, db.mappings, diagnostics);
  for (const auto& [id, e] : db.mappings) {
    const auto& m = e.as<LanguageMappingSpec>();
    LanguageDef& lang = db.languages[canonical(m.language)];
    if (lang.id.empty()) lang.id = m.language;
    lang.mappings.push_back(m);
  }
  for (const auto& [id, e] : db.examples) {
    const std::string& language = e.as<ExampleSpec>().language;
    if (language.empty()) continue;
    LanguageDef& lang = db.languages[canonical(language)];
    if (lang.id.empty()) lang.id = language;
    add_link(db.examples_of_language, language, e.id);
  }

  std::vector<ElementSpec> fixes;
  for (ElementSpec& e : items(ElementKind::Fix)) {
    const auto& f = e.as<FixSpec>();
    const ElementSpec* bug = db.find(ElementKind::Bug, f.bug_id);
    if (!bug) {
      diagnostics.push_back(error(e, "DanglingReference", "bug_id", "bug " + f.bug_id + " is not defined"));
      continue;
    }
    std::vector<Diagnostic> found = check_fix_captures(e, *bug);
    for (Diagnostic& d : found) {
      d.location = where(e);
      diagnostics.push_back(std::move(d));
    }
    if (found.empty()) fixes.push_back(std::move(e));
  }
  insert_unique(fixes, db.fixes, diagnostics);

  std::vector<ElementSpec> applications;
  for (ElementSpec& e : items(ElementKind::Application)) {
    const auto& a = e.as<ApplicationSpec>();
    const ElementSpec* fix = db.find(ElementKind::Fix, a.fix_id);
    if (!fix) {
      diagnostics.push_back(error(e, "DanglingReference", "fix", "fix " + a.fix_id + " is not defined"));
      continue;
    }
    if (!a.detached() && !db.find(ElementKind::Example, a.example_id)) {
      diagnostics.push_back(error(e, "DanglingReference", "example", "example " + a.example_id + " is not defined"));
      continue;
    }
    const auto& params = fix->as<FixSpec>().parameters;
    bool ok = true;
    for (const Parameter& p : params) {
      if (a.parameters.count(p.name)) continue;
      diagnostics.push_back(error(e, "MissingParameter", p.name, "no value for fix parameter " + p.name));
      ok = false;
    }
    for (const auto& [name, value] : a.parameters)
      if (!mentions(params, name))
        diagnostics.push_back(warning(e, "UnknownParameter", name, "fix " + fix->id + " declares no parameter " + name));
    try {
      make_params(a.parameters);
    } catch (const RewriteError& err) {
      diagnostics.push_back(error(e, "InvalidParameter", err.name(), err.what()));
      ok = false;
    }
    if (ok) applications.push_back(std::move(e));
  }
  insert_unique(applications, db.applications, diagnostics);

  for (const auto& [id, e] : db.bugs) db.fixes_of_bug[id];
  for (const auto& [id, e] : db.fixes) {
    add_link(db.fixes_of_bug, e.as<FixSpec>().bug_id, e.id);
    db.applications_of_fix[id];
  }
  for (const auto& [id, e] : db.examples) db.applications_of_example[id];
  for (const auto& [id, e] : db.applications) {
    const auto& a = e.as<ApplicationSpec>();
    add_link(db.applications_of_fix, a.fix_id, e.id);
    if (!a.detached()) add_link(db.applications_of_example, a.example_id, e.id);
  }
  return db;
}

Database load_repository(const fs::path& root, std::vector<Diagnostic>& diagnostics) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    diagnostics.push_back({Severity::Error, "IoError", {}, {}, "cannot read directory " + root.string(), root.string()});
    return {};
  }
  std::vector<fs::path> files;
  for (auto it = fs::recursive_directory_iterator(root, ec); !ec && it != fs::recursive_directory_iterator();
       it.increment(ec))
    if (it->is_regular_file() && it->path().extension() == ".bugfix") files.push_back(it->path());
  std::sort(files.begin(), files.end());

  std::vector<ElementSpec> elements;
  for (const fs::path& file : files) {
    const std::string name = file.lexically_relative(root).generic_string();
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      diagnostics.push_back({Severity::Error, "IoError", {}, {}, "cannot read " + name, name});
      continue;
    }
    std::ostringstream text;
    text << in.rdbuf();
    try {
      for (ElementSpec& e : parse_document(text.str())) {
        e.location.file = name;
        elements.push_back(std::move(e));
      }
    } catch (const SyntaxError& err) {
      diagnostics.push_back({Severity::Error, "SyntaxError", {}, {}, err.message(),
                             name + ":" + std::to_string(err.line()) + ":" + std::to_string(err.col())});
    }
  }
  return build_database(std::move(elements), diagnostics);
}

}  // namespace bugfix
