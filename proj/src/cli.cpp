#include "bugfix/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "bugfix/corpus.hpp"
#include "bugfix/matcher.hpp"
#include "bugfix/rewriter.hpp"
#include "bugfix/specparse.hpp"
#include "bugfix/store.hpp"
#include "bugfix/tree_format.hpp"
#include "bugfix/verify.hpp"
#include "json.hpp"

namespace bugfix {

namespace fs = std::filesystem;

namespace {

// Usage or I/O problem; reported on the error stream with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

fs::path repo_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("BUGFIX_REPO"); env && *env) return env;
  return ".";
}

Database load(const fs::path& repo, std::vector<Diagnostic>& diags) {
  if (!fs::is_directory(repo)) throw UsageError("not a directory: " + repo.string());
  return load_repository(repo, diags);
}

const ElementSpec& require(const Database& db, ElementKind kind, const std::string& id) {
  if (const ElementSpec* e = db.find(kind, id)) return *e;
  throw UsageError(std::string(keyword(kind)) + " " + id + " not found");
}

nlohmann::json span_json(const std::optional<Span>& span) {
  if (!span) return nullptr;
  return {{span->start.row, span->start.col}, {span->end.row, span->end.col}};
}

nlohmann::json match_json(const MatchResult& m) {
  nlohmann::json captures = nlohmann::json::object();
  for (const auto& [name, binding] : m.bindings) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const BoundNode& b : binding) nodes.push_back({{"type", b.node->name}, {"span", span_json(b.node->span)}});
    captures[name] = std::move(nodes);
  }
  return {{"path", m.path}, {"captures", std::move(captures)}};
}

void shift_rows(UNode& node, std::size_t rows) {
  if (node.span) {
    node.span->start.row += rows;
    node.span->end.row += rows;
  }
  for (Child& c : node.children) shift_rows(c.node, rows);
}

std::optional<fs::path> find_tree_file(const fs::path& dir, const std::string& name) {
  std::error_code ec;
  std::optional<fs::path> best;
  for (auto it = fs::recursive_directory_iterator(dir, ec); !ec && it != fs::recursive_directory_iterator();
       it.increment(ec))
    if (it->is_regular_file() && same_identifier(it->path().filename().string(), name) && (!best || it->path() < *best))
      best = it->path();
  return best;
}

// Before or after tree of an example, from a tree file or the parser plugin.
std::optional<UNode> example_tree(const ElementSpec& example, bool after, const fs::path& trees,
                                  const std::string& parser) {
  const std::string file = example.id + (after ? ".after.tree" : ".before.tree");
  if (auto path = find_tree_file(trees, file)) return parse_tree(read_file(*path));
  if (parser.empty()) return std::nullopt;
  const auto& x = example.as<ExampleSpec>();
  std::vector<Hunk> hunks = example_hunks(x);
  if (hunks.empty()) return std::nullopt;
  const Fragment fragment = after ? after_fragment(hunks.front()) : before_fragment(hunks.front());
  UNode tree = run_parser_plugin(parser, x.language, fragment.text);
  shift_rows(tree, fragment.start_row);
  return tree;
}

int print_diagnostics(const std::vector<Diagnostic>& diags, std::ostream& out) {
  for (const Diagnostic& d : diags) out << format_diagnostic(d) << "\n";
  return diags.empty() ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bugfix specification toolkit", "bugfix"};
  app.require_subcommand(1);

  std::string repo, tree_file, params_file, bug_id, fix_id, out_dir, trees_dir, parser, validate_dir;
  std::size_t match_index = 0;
  bool no_html = false;
  std::vector<std::string> app_ids;

  CLI::App* validate = app.add_subcommand("validate", "Load a repository and report diagnostics");
  validate->add_option("dir", validate_dir, "Repository directory");
  validate->add_option("--repo", repo, "Repository directory");

  CLI::App* match = app.add_subcommand("match", "Print the matches of a bug pattern as JSON lines");
  match->add_option("--bug", bug_id, "Bug id")->required();
  match->add_option("--tree", tree_file, "Tree file")->required();
  match->add_option("--repo", repo, "Repository directory");

  CLI::App* apply = app.add_subcommand("apply", "Apply a fix at a match and print the rewritten tree");
  apply->add_option("--fix", fix_id, "Fix id")->required();
  apply->add_option("--tree", tree_file, "Tree file")->required();
  apply->add_option("--params", params_file, "File of `@name = (sexp)` bindings");
  apply->add_option("--match", match_index, "Index of the match to rewrite");
  apply->add_option("--repo", repo, "Repository directory");

  CLI::App* verify = app.add_subcommand("verify", "Replay recorded applications");
  verify->add_option("ids", app_ids, "Application ids (default: all)");
  verify->add_option("--repo", repo, "Repository directory");
  verify->add_option("--trees", trees_dir, "Directory holding <example>.before.tree / .after.tree");
  verify->add_option("--parser", parser, "Parser plugin command");

  CLI::App* build = app.add_subcommand("build", "Emit the JSON API and HTML catalog");
  build->add_option("--repo", repo, "Repository directory");
  build->add_option("--out", out_dir, "Output directory")->required();
  build->add_flag("--no-html", no_html, "Emit JSON only");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    std::vector<Diagnostic> diags;
    if (*validate) {
      load(repo_dir(validate_dir.empty() ? repo : validate_dir), diags);
      return print_diagnostics(diags, out);
    }
    if (*match) {
      const Database db = load(repo_dir(repo), diags);
      const ElementSpec& bug = require(db, ElementKind::Bug, bug_id);
      const UNode tree = parse_tree(read_file(tree_file));
      for (const MatchResult& m : find_matches(bug.as<BugSpec>().where, tree, db.registry))
        out << match_json(m).dump() << "\n";
      return 0;
    }
    if (*apply) {
      const Database db = load(repo_dir(repo), diags);
      const ElementSpec& fix = require(db, ElementKind::Fix, fix_id);
      const ElementSpec& bug = require(db, ElementKind::Bug, fix.as<FixSpec>().bug_id);
      const UNode tree = parse_tree(read_file(tree_file));
      const ParamEnv params = make_params(params_file.empty() ? std::map<std::string, Template>{}
                                                              : parse_bindings(read_file(params_file)));
      const std::vector<MatchResult> matches = find_matches(bug.as<BugSpec>().where, tree, db.registry);
      if (match_index >= matches.size()) {
        err << "bug " << bug.id << " has " << matches.size() << " match(es); no match " << match_index << "\n";
        return 1;
      }
      out << write_tree(apply_fix(tree, matches[match_index], fix, params));
      return 0;
    }
    if (*verify) {
      const fs::path root = repo_dir(repo);
      const Database db = load(root, diags);
      const fs::path trees = trees_dir.empty() ? root : fs::path(trees_dir);
      std::vector<std::string> ids;
      for (const std::string& id : app_ids) ids.push_back(require(db, ElementKind::Application, id).id);
      if (app_ids.empty())
        for (const auto& [id, e] : db.applications) ids.push_back(e.id);
      bool failed = false;
      for (const std::string& id : ids) {
        const ElementSpec& a = *db.find(ElementKind::Application, id);
        const ElementSpec& fix = *db.find(ElementKind::Fix, a.as<ApplicationSpec>().fix_id);
        const ElementSpec& bug = *db.find(ElementKind::Bug, fix.as<FixSpec>().bug_id);
        std::optional<UNode> before, after;
        if (const ElementSpec* example = db.find(ElementKind::Example, a.as<ApplicationSpec>().example_id)) {
          before = example_tree(*example, false, trees, parser);
          after = example_tree(*example, true, trees, parser);
        }
        const VerifyReport report = verify_application(a, bug, fix, before ? &*before : nullptr,
                                                       after ? &*after : nullptr, db.registry);
        out << format_report(report);
        for (const StageResult& s : report.stages) failed = failed || s.status == StageStatus::Fail;
      }
      return failed ? 1 : 0;
    }
    if (*build) {
      const Database db = load(repo_dir(repo), diags);
      emit_json(db, out_dir);
      if (!no_html) emit_html(db, out_dir);
      return print_diagnostics(diags, err);
    }
  } catch (const std::exception& e) {
    err << "bugfix: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace bugfix
