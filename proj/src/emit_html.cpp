#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include "bugfix/specparse.hpp"
#include "bugfix/store.hpp"

namespace bugfix {

namespace fs = std::filesystem;

namespace {

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Site {
 public:
  explicit Site(const Database& db) {
    for (std::string_view collection : kCollections)
      for (const std::string& id : db.ids(collection)) targets_.emplace(id, std::string(collection));
  }

  // Page path of an id, relative to the output root; empty when unknown.
  std::string href(std::string_view id) const {
    auto it = targets_.find(canonical(id));
    return it == targets_.end() ? std::string() : it->second + "/" + lowercase(id) + ".html";
  }

  // Escaped spec text with ids, construct names and captures linked.
  std::string linkify(std::string_view text, const std::string& prefix) const {
    std::string out;
    std::set<std::string> anchored;
    std::size_t i = 0;
    while (i < text.size()) {
      const bool capture = text[i] == '@' && i + 1 < text.size() && ident_char(text[i + 1]);
      if (!capture && !ident_char(text[i])) {
        out += escape(text.substr(i, 1));
        ++i;
        continue;
      }
      std::size_t j = capture ? i + 1 : i;
      while (j < text.size() && ident_char(text[j])) ++j;
      const std::string_view word = text.substr(i, j - i);
      if (capture) {
        const std::string anchor = "capture-" + lowercase(word.substr(1));
        if (anchored.insert(anchor).second)
          out += "<span id=\"" + anchor + "\">" + escape(word) + "</span>";
        else
          out += "<a href=\"#" + anchor + "\">" + escape(word) + "</a>";
      } else if (std::string target = href(word); !target.empty() && word != "_") {
        out += "<a href=\"" + prefix + target + "\">" + escape(word) + "</a>";
      } else {
        out += escape(word);
      }
      i = j;
    }
    return out;
  }

  std::string link_list(const std::string& heading, const std::vector<std::string>& ids,
                        const std::string& prefix) const {
    std::string out = "<h2>" + escape(heading) + "</h2>\n<ul>\n";
    for (const std::string& id : ids) {
      const std::string target = href(id);
      out += target.empty() ? "<li>" + escape(lowercase(id)) + "</li>\n"
                            : "<li><a href=\"" + prefix + target + "\">" + escape(lowercase(id)) + "</a></li>\n";
    }
    return out + "</ul>\n";
  }

 private:
  std::map<std::string, std::string> targets_;  // canonical id -> collection (first wins)
};

std::string page(const std::string& title, const std::string& prefix, const std::string& body) {
  return "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>" + escape(title) +
         "</title>\n</head>\n<body>\n<p><a href=\"" + prefix + "index.html\">index</a></p>\n<h1>" + escape(title) +
         "</h1>\n" + body + "</body>\n</html>\n";
}

const std::vector<std::string>& links(const std::map<std::string, std::vector<std::string>>& m, const std::string& key) {
  static const std::vector<std::string> none;
  auto it = m.find(canonical(key));
  return it == m.end() ? none : it->second;
}

void write(const fs::path& root, const std::string& rel, const std::string& html, std::vector<std::string>& manifest) {
  const fs::path path = root / rel;
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << html;
  if (!out) throw std::runtime_error("cannot write " + path.string());
  manifest.push_back(rel);
}

std::string element_body(const Database& db, const Site& site, std::string_view collection, const std::string& id) {
  const std::string up = "../";
  auto spec = [&](const ElementSpec& e) { return "<pre>" + site.linkify(serialize(e), up) + "</pre>\n"; };
  if (collection == "bugs") {
    const ElementSpec& e = db.bugs.at(id);
    return spec(e) + site.link_list("Fixes", links(db.fixes_of_bug, id), up);
  }
  if (collection == "fixes") {
    const ElementSpec& e = db.fixes.at(id);
    return spec(e) + site.link_list("Bug", {e.as<FixSpec>().bug_id}, up) +
           site.link_list("Applications", links(db.applications_of_fix, id), up);
  }
  if (collection == "applications") {
    const ElementSpec& e = db.applications.at(id);
    const auto& a = e.as<ApplicationSpec>();
    std::string body = spec(e) + site.link_list("Fix", {a.fix_id}, up);
    if (!a.detached()) body += site.link_list("Example", {a.example_id}, up);
    return body;
  }
  if (collection == "examples") {
    const ElementSpec& e = db.examples.at(id);
    return spec(e) + site.link_list("Applications", links(db.applications_of_example, id), up);
  }
  if (collection == "constructs") return spec(db.constructs.at(id));
  if (collection == "kinds") return site.link_list("Constructs", db.registry.members_of(id), up);
  std::string body;
  for (const auto& [mid, e] : db.mappings)
    if (same_identifier(e.as<LanguageMappingSpec>().language, id)) body += spec(e);
  return body + site.link_list("Examples", links(db.examples_of_language, id), up);
}

}  // namespace

std::vector<std::string> emit_html(const Database& db, const fs::path& out_dir) {
  const Site site(db);
  std::vector<std::string> manifest;
  std::string index = "<ul>\n";
  for (std::string_view name : kCollections) {
    const std::string collection(name);
    const std::vector<std::string> ids = db.ids(collection);
    index += "<li><a href=\"" + collection + ".html\">" + collection + "</a> (" + std::to_string(ids.size()) + ")</li>\n";
    std::string list = "<ul>\n";
    for (const std::string& id : ids) {
      const std::string rel = collection + "/" + lowercase(id) + ".html";
      list += "<li><a href=\"" + rel + "\">" + escape(lowercase(id)) + "</a></li>\n";
      write(out_dir, rel, page(lowercase(id), "../", element_body(db, site, collection, id)), manifest);
    }
    list += "</ul>\n";
    write(out_dir, collection + ".html", page(collection, "", list), manifest);
  }
  index += "</ul>\n";
  write(out_dir, "index.html", page("Bugfix catalog", "", index), manifest);
  std::sort(manifest.begin(), manifest.end());
  return manifest;
}

}  // namespace bugfix
