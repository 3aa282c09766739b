#include <fstream>

#include "bugfix/store.hpp"
#include "bugfix/specparse.hpp"
#include "json.hpp"

namespace bugfix {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json pattern_json(const Pattern& p) {
  json out = {{"type", p.name}};
  if (!p.children.empty()) {
    json kids = json::array();
    for (const PatternChild& c : p.children) {
      json k = {{"node", pattern_json(c.pattern)}};
      if (c.field) k["field"] = *c.field;
      if (c.capture) k["name"] = *c.capture;
      if (c.quantifier != Multiplicity::Required) k["quantifier"] = std::string(suffix(c.quantifier));
      kids.push_back(std::move(k));
    }
    out["children"] = std::move(kids);
  }
  if (p.capture) out["name"] = *p.capture;
  return out;
}

json template_json(const Template& t) {
  if (const auto* r = std::get_if<CaptureRef>(&t.node)) return {{r->splat ? "splice" : "capture", r->name}};
  if (const auto* p = std::get_if<ParamRef>(&t.node)) return {{"parameter", p->name}};
  if (const auto* s = std::get_if<StringLeaf>(&t.node)) return {{"text", s->text}};
  const auto& c = std::get<ConstructTemplate>(t.node);
  json out = json::object();
  if (!c.name.empty()) out["type"] = c.name;
  if (c.splice_base) out["splice"] = *c.splice_base;
  if (c.children.size() == 1 && std::holds_alternative<StringLeaf>(c.children.front().value.node)) {
    out["text"] = std::get<StringLeaf>(c.children.front().value.node).text;
    return out;
  }
  if (!c.children.empty()) {
    json kids = json::array();
    for (const TemplateChild& child : c.children) {
      json k = {{"node", template_json(child.value)}};
      if (child.field) k["field"] = *child.field;
      kids.push_back(std::move(k));
    }
    out["children"] = std::move(kids);
  }
  return out;
}

json tree_json(const RecordedTree& t) {
  json out = {{"type", t.type_name},
              {"span", {{t.span.start.row, t.span.start.col}, {t.span.end.row, t.span.end.col}}}};
  if (t.field) out["field"] = *t.field;
  if (t.capture) out["name"] = *t.capture;
  if (!t.children.empty()) {
    json kids = json::array();
    for (const RecordedTree& c : t.children) kids.push_back(tree_json(c));
    out["children"] = std::move(kids);
  }
  return out;
}

json id_list(const std::vector<std::string>& ids) {
  json out = json::array();
  for (const std::string& id : ids) out.push_back(lowercase(id));
  return out;
}

const std::vector<std::string>& links(const std::map<std::string, std::vector<std::string>>& m, const std::string& key) {
  static const std::vector<std::string> none;
  auto it = m.find(canonical(key));
  return it == m.end() ? none : it->second;
}

json parameters_json(const std::vector<Parameter>& params) {
  json out = json::array();
  for (const Parameter& p : params) out.push_back({{"name", p.name}, {"type", lowercase(p.type_name)}});
  return out;
}

void add_common(json& out, const ElementSpec& e) {
  out["id"] = lowercase(e.id);
  if (!e.comment.empty()) out["comment"] = e.comment;
}

json bug_json(const Database& db, const ElementSpec& e) {
  const auto& b = e.as<BugSpec>();
  json out;
  add_common(out, e);
  if (!b.parameters.empty()) out["parameters"] = parameters_json(b.parameters);
  out["where"] = pattern_json(b.where);
  out["where_raw"] = to_string(b.where);
  out["fixes"] = id_list(links(db.fixes_of_bug, e.id));
  return out;
}

json fix_json(const Database& db, const ElementSpec& e) {
  const auto& f = e.as<FixSpec>();
  json out;
  add_common(out, e);
  out["bug_id"] = lowercase(f.bug_id);
  if (!f.parameters.empty()) out["parameters"] = parameters_json(f.parameters);
  out["then"] = template_json(f.then);
  out["then_raw"] = to_string(f.then);
  out["applications"] = id_list(links(db.applications_of_fix, e.id));
  return out;
}

json application_json(const ElementSpec& e) {
  const auto& a = e.as<ApplicationSpec>();
  json out;
  add_common(out, e);
  out["fix"] = lowercase(a.fix_id);
  if (!a.detached()) out["example"] = lowercase(a.example_id);
  if (a.tree) {
    out["tree"] = tree_json(*a.tree);
    out["tree_raw"] = pretty(*a.tree, 0);
  }
  if (!a.parameters.empty()) {
    json params = json::object(), raw = json::object();
    for (const auto& [name, value] : a.parameters) {
      params[name] = template_json(value);
      raw[name] = to_string(value);
    }
    out["parameters"] = std::move(params);
    out["parameters_raw"] = std::move(raw);
  }
  return out;
}

json example_json(const Database& db, const ElementSpec& e) {
  const auto& x = e.as<ExampleSpec>();
  json out;
  add_common(out, e);
  if (!x.repository.empty()) out["repository"] = x.repository;
  if (!x.before.empty()) out["before"] = x.before;
  if (!x.after.empty()) out["after"] = x.after;
  if (!x.language.empty()) out["language"] = lowercase(x.language);
  if (!x.hunk.empty()) out["hunk"] = x.hunk;
  out["applications"] = id_list(links(db.applications_of_example, e.id));
  return out;
}

json construct_json(const ElementSpec& e) {
  const auto& c = e.as<ConstructSpec>();
  json out;
  add_common(out, e);
  out["kinds"] = id_list(c.kinds);
  json features = json::array();
  for (const FeatureDef& f : c.features) {
    json j = {{"name", f.name}, {"type", lowercase(f.type_name)}};
    if (f.multiplicity != Multiplicity::Required) j["multiplicity"] = std::string(suffix(f.multiplicity));
    features.push_back(std::move(j));
  }
  out["features"] = std::move(features);
  return out;
}

json kind_json(const Database& db, const std::string& kind) {
  return {{"id", lowercase(kind)}, {"constructs", id_list(db.registry.members_of(kind))}};
}

json mapping_json(const Database& db, const LanguageMappingSpec& m) {
  json out = {{"construct_name", m.construct_name},
              {"source", pattern_json(m.source)},
              {"source_raw", to_string(m.source)},
              {"construct", template_json(m.construct)},
              {"construct_raw", to_string(m.construct)}};
  if (db.registry.find_construct(m.construct_name)) out["construct_id"] = lowercase(m.construct_name);
  if (m.context) out["context"] = *m.context;
  return out;
}

json language_json(const Database& db, const LanguageDef& lang, bool full) {
  json out = {{"id", lowercase(lang.id)}};
  json constructs = json::array();
  for (const std::string& c : lang.construct_set())
    if (db.registry.find_construct(c)) constructs.push_back(lowercase(c));
  out["constructs"] = std::move(constructs);
  out["examples"] = id_list(links(db.examples_of_language, lang.id));
  if (full) {
    json mappings = json::array();
    for (const LanguageMappingSpec& m : lang.mappings) mappings.push_back(mapping_json(db, m));
    out["mappings"] = std::move(mappings);
  }
  return out;
}

// Index entries keep the id, the first comment line and the reference fields.
json summary(json full) {
  static const char* const kept[] = {"id", "bug_id", "fix", "example", "fixes", "applications", "language",
                                     "kinds", "constructs", "examples"};
  json out = json::object();
  for (const char* key : kept)
    if (full.contains(key)) out[key] = full[key];
  if (full.contains("comment")) {
    std::string c = full["comment"];
    out["comment"] = c.substr(0, c.find('\n'));
  }
  return out;
}

void write(const fs::path& root, const std::string& rel, const json& value, std::vector<std::string>& manifest) {
  const fs::path path = root / rel;
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << value.dump(2) << "\n";
  if (!out) throw std::runtime_error("cannot write " + path.string());
  manifest.push_back(rel);
}

}  // namespace

std::vector<std::string> emit_json(const Database& db, const fs::path& out_dir) {
  std::vector<std::string> manifest;
  for (std::string_view name : kCollections) {
    const std::string collection(name);
    json index = json::object();
    for (const std::string& id : db.ids(collection)) {
      json full;
      if (collection == "bugs") full = bug_json(db, db.bugs.at(id));
      else if (collection == "fixes") full = fix_json(db, db.fixes.at(id));
      else if (collection == "applications") full = application_json(db.applications.at(id));
      else if (collection == "examples") full = example_json(db, db.examples.at(id));
      else if (collection == "constructs") full = construct_json(db.constructs.at(id));
      else if (collection == "kinds") full = kind_json(db, id);
      else full = language_json(db, db.languages.at(id), true);
      const std::string key = lowercase(id);
      index[key] = summary(full);
      write(out_dir, collection + "/" + key + ".json", full, manifest);
    }
    write(out_dir, collection + ".json", index, manifest);
  }
  std::sort(manifest.begin(), manifest.end());
  return manifest;
}

}  // namespace bugfix
