#pragma once

// Independent reference implementations and generators used by the tests.

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bugfix/matcher.hpp"
#include "bugfix/model.hpp"
#include "bugfix/pattern.hpp"
#include "json.hpp"

namespace oracle {

using bugfix::Child;
using bugfix::Multiplicity;
using bugfix::Pattern;
using bugfix::PatternChild;
using bugfix::UNode;

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// ---- brute-force matcher ----------------------------------------------------

using Assignment = std::map<std::string, std::vector<const UNode*>>;

inline Assignment merge(Assignment a, const Assignment& b) {
  for (const auto& [k, v] : b) a[k].insert(a[k].end(), v.begin(), v.end());
  return a;
}

inline bool same_name(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::toupper(static_cast<unsigned char>(a[i])) != std::toupper(static_cast<unsigned char>(b[i]))) return false;
  return true;
}

std::vector<Assignment> node_matches(const Pattern& p, const UNode& n);

// Every way kids[j..] splits into consecutive runs, one per pattern child.
inline std::vector<Assignment> split_matches(const std::vector<PatternChild>& pcs, std::size_t i,
                                             const std::vector<Child>& kids, std::size_t j) {
  if (i == pcs.size()) return j == kids.size() ? std::vector<Assignment>{{}} : std::vector<Assignment>{};
  const PatternChild& pc = pcs[i];
  std::size_t lo = 0, hi = kids.size() - j;
  if (pc.quantifier == Multiplicity::Required) lo = hi = 1;
  if (pc.quantifier == Multiplicity::Optional) hi = std::min<std::size_t>(hi, 1);
  if (pc.quantifier == Multiplicity::Plus) lo = 1;
  std::vector<Assignment> out;
  for (std::size_t len = lo; len <= hi && j + len <= kids.size(); ++len) {
    // Cartesian product of per-element matches in this run.
    std::vector<Assignment> run = {{}};
    for (std::size_t k = j; k < j + len && !run.empty(); ++k) {
      if (pc.field && !(kids[k].field && same_name(*pc.field, *kids[k].field))) {
        run.clear();
        break;
      }
      std::vector<Assignment> next;
      for (const Assignment& a : run)
        for (const Assignment& b : node_matches(pc.pattern, kids[k].node)) next.push_back(merge(a, b));
      run = std::move(next);
    }
    for (Assignment& a : run) {
      if (pc.capture)
        for (std::size_t k = j; k < j + len; ++k) a[*pc.capture].push_back(&kids[k].node);
      for (const Assignment& rest : split_matches(pcs, i + 1, kids, j + len)) out.push_back(merge(a, rest));
    }
  }
  return out;
}

// Names only: the random trees use no registry kinds.
inline std::vector<Assignment> node_matches(const Pattern& p, const UNode& n) {
  if (p.name != "_" && !same_name(p.name, n.name)) return {};
  if (p.children.empty()) return {{}};
  return split_matches(p.children, 0, n.children, 0);
}

// Complete capture assignments at `n`, with every capture present and @bug bound.
inline std::set<Assignment> brute_force_at(const Pattern& p, const UNode& n) {
  std::set<Assignment> out;
  for (Assignment a : node_matches(p, n)) {
    for (const std::string& c : bugfix::captures(p)) a[c];
    a["@bug"] = {&n};
    if (p.capture && *p.capture != "@bug") a[*p.capture] = {&n};
    out.insert(std::move(a));
  }
  return out;
}

inline Assignment assignment_of(const bugfix::MatchResult& m) {
  Assignment a;
  for (const auto& [name, binding] : m.bindings)
    for (const bugfix::BoundNode& b : binding) a[name].push_back(b.node);
  for (const auto& [name, binding] : m.bindings) a[name];
  return a;
}

// ---- generators ---------------------------------------------------------------

struct TreeShape {
  std::size_t max_depth = 4;
  std::size_t max_fanout = 5;
  std::vector<std::string> names = {"a", "b", "c"};
  std::vector<std::string> fields = {"left", "right"};
  bool spans = false;
};

class Generator {
 public:
  explicit Generator(std::uint32_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <typename T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

  UNode tree(const TreeShape& shape, std::size_t depth = 1) {
    UNode n;
    n.name = pick(shape.names);
    if (chance(0.5)) n.name = bugfix::canonical(n.name);
    if (shape.spans) n.span = bugfix::Span{{below(50), below(50)}, {50 + below(50), below(50)}};
    const std::size_t fanout = depth >= shape.max_depth ? 0 : below(shape.max_fanout + 1);
    if (fanout == 0) {
      if (chance(0.5)) n.leaf = "t" + std::to_string(below(3));
      return n;
    }
    for (std::size_t i = 0; i < fanout; ++i) {
      Child c;
      if (chance(0.3)) c.field = pick(shape.fields);
      c.node = tree(shape, depth + 1);
      n.children.push_back(std::move(c));
    }
    return n;
  }

  // Pattern over the same alphabet with at most `max_quantified` quantified children overall.
  Pattern pattern(const TreeShape& shape, std::size_t depth, std::size_t& quantified, std::size_t& captures) {
    Pattern p;
    p.name = chance(0.3) ? "_" : pick(shape.names);
    if (depth >= 3 || chance(0.3)) return p;
    const std::size_t count = 1 + below(4);
    for (std::size_t i = 0; i < count; ++i) {
      PatternChild c;
      if (chance(0.2)) c.field = pick(shape.fields);
      if (quantified < 3 && chance(0.5)) {
        static const Multiplicity qs[] = {Multiplicity::Optional, Multiplicity::Star, Multiplicity::Plus};
        c.quantifier = qs[below(3)];
        ++quantified;
      }
      if (chance(0.5)) c.capture = "@c" + std::to_string(captures++);
      c.pattern = pattern(shape, depth + 1, quantified, captures);
      p.children.push_back(std::move(c));
    }
    return p;
  }

  Pattern pattern(const TreeShape& shape) {
    std::size_t quantified = 0, captures = 0;
    return pattern(shape, 1, quantified, captures);
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

// ---- output crawler -----------------------------------------------------------

// Every relative href in the HTML files and every id referenced from the JSON
// files must name an emitted file. Returns the dangling references.
inline std::vector<std::string> dangling_links(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  using nlohmann::json;
  std::vector<std::string> bad;
  auto exists = [&](const std::string& collection, const std::string& id) {
    return fs::is_regular_file(root / collection / (id + ".json"));
  };
  static const std::map<std::string, std::string> reference_keys = {
      {"fixes", "fixes"},       {"applications", "applications"}, {"examples", "examples"},
      {"constructs", "constructs"}, {"kinds", "kinds"},           {"bug_id", "bugs"},
      {"fix", "fixes"},         {"example", "examples"},          {"language", "languages"},
      {"construct_id", "constructs"}};
  std::function<void(const json&, const std::string&)> scan = [&](const json& j, const std::string& where) {
    if (j.is_array()) {
      for (const json& x : j) scan(x, where);
      return;
    }
    if (!j.is_object()) return;
    for (const auto& [key, value] : j.items()) {
      auto ref = reference_keys.find(key);
      if (ref != reference_keys.end()) {
        std::vector<std::string> ids;
        if (value.is_string()) ids.push_back(value.get<std::string>());
        if (value.is_array())
          for (const json& x : value)
            if (x.is_string()) ids.push_back(x.get<std::string>());
        for (const std::string& id : ids)
          if (!exists(ref->second, id)) bad.push_back(where + ": " + key + " -> " + id);
      }
      if ((key == "features" || key == "parameters") && value.is_array())
        for (const json& f : value)
          if (f.contains("type") && !exists("constructs", f["type"]) && !exists("kinds", f["type"]))
            bad.push_back(where + ": type -> " + f["type"].get<std::string>());
      scan(value, where);
    }
  };
  static const std::regex href(R"re(href="([^"#]*)(#([^"]*))?")re");
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    const fs::path path = entry.path();
    const std::string rel = path.lexically_relative(root).generic_string();
    const std::string text = slurp(path);
    if (path.extension() == ".json") {
      const json j = json::parse(text);
      scan(j, rel);
      if (path.parent_path() == root)
        for (const auto& [id, value] : j.items())
          if (!exists(path.stem().string(), id)) bad.push_back(rel + ": key " + id);
    } else if (path.extension() == ".html") {
      for (std::sregex_iterator it(text.begin(), text.end(), href), end; it != end; ++it) {
        const std::string file = (*it)[1];
        const fs::path target = file.empty() ? path : path.parent_path() / file;
        if (!fs::is_regular_file(target)) {
          bad.push_back(rel + ": href " + file);
          continue;
        }
        if ((*it)[2].matched && slurp(target).find("id=\"" + (*it)[3].str() + "\"") == std::string::npos)
          bad.push_back(rel + ": anchor " + (*it)[0].str());
      }
    }
  }
  return bad;
}

}  // namespace oracle
