#include "doctest.h"

#include <cstdlib>
#include <sstream>

#include "bugfix/cli.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = bugfix::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("bugfix-cli-" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const std::string kCorpus = fixture::kCorpus.string();

}  // namespace

TEST_CASE("validate") {
  TempDir empty("empty");
  const Outcome quiet = run_cli({"validate", empty.path.string()});
  CHECK(quiet.code == 0);
  CHECK(quiet.out.empty());

  CHECK(run_cli({"validate", "--repo", kCorpus}).code == 0);

  const Outcome listings = run_cli({"validate", (fixture::kData / "listings").string()});
  CHECK(listings.code == 1);
  CHECK(listings.out.find("@initial") != std::string::npos);
  CHECK(listings.out.find("@final") != std::string::npos);

  CHECK(run_cli({"validate", (empty.path / "absent").string()}).code == 2);
}

TEST_CASE("BUGFIX_REPO is the fallback repository") {
  ::setenv("BUGFIX_REPO", (fixture::kData / "listings").c_str(), 1);
  CHECK(run_cli({"validate"}).code == 1);
  ::setenv("BUGFIX_REPO", kCorpus.c_str(), 1);
  CHECK(run_cli({"validate"}).code == 0);
  ::unsetenv("BUGFIX_REPO");
}

TEST_CASE("match and apply") {
  TempDir dir("match");
  const fs::path tree = dir.path / "five_args.tree";
  std::ofstream(tree) << bugfix::write_tree(fixture::argument_list(5));

  const Outcome m = run_cli({"match", "--bug", "wrong_argument_in_call_1", "--tree", tree.string(), "--repo", kCorpus});
  CHECK(m.code == 0);
  CHECK(line_count(m.out) == 5);
  const auto first = nlohmann::json::parse(m.out.substr(0, m.out.find('\n')));
  CHECK(first["path"] == nlohmann::json::array());
  CHECK(first["captures"]["@pre"].empty());
  CHECK(first["captures"]["@wrong_arg"].size() == 1);

  const fs::path params = dir.path / "params";
  std::ofstream(params) << "@correct_arg = (identifier \"fixed\")\n";
  const Outcome a = run_cli({"apply", "--fix", "CORRECT_ARGUMENT_IN_CALL_1", "--tree", tree.string(), "--params",
                             params.string(), "--match", "2", "--repo", kCorpus});
  CHECK(a.code == 0);
  const bugfix::UNode fixed = bugfix::parse_tree(a.out);
  REQUIRE(fixed.children.size() == 5);
  CHECK(fixed.children[2].node.leaf == "fixed");
  CHECK(fixed.children[1].node.leaf == "x1");

  CHECK(run_cli({"apply", "--fix", "CORRECT_ARGUMENT_IN_CALL_1", "--tree", tree.string(), "--params", params.string(),
                 "--match", "9", "--repo", kCorpus})
            .code == 1);
  CHECK(run_cli({"match", "--bug", "NO_SUCH_BUG", "--tree", tree.string(), "--repo", kCorpus}).code == 2);
}

TEST_CASE("verify") {
  const Outcome all = run_cli({"verify", "--repo", kCorpus});
  CHECK(all.code == 0);
  CHECK(all.out.find("CORRECT_ARGUMENT_IN_CALL_1_CLOSURE_14 AFTER_EQUAL PASS") != std::string::npos);

  TempDir none("no-trees");
  const Outcome missing = run_cli({"verify", "correct_argument_in_call_1_closure_14", "--repo", kCorpus, "--trees",
                                   none.path.string()});
  CHECK(missing.code == 1);
  CHECK(missing.out.find("SPAN_MATCH FAIL") != std::string::npos);

  // The test plugin emits a tree that cannot match, so the plugin path is exercised and fails honestly.
  const Outcome plugin = run_cli({"verify", "correct_argument_in_call_1_closure_14", "--repo", kCorpus, "--trees",
                                  none.path.string(), "--parser", "sh " + (fixture::kData / "plugin/echo_tree.sh").string()});
  CHECK(plugin.code == 1);
  CHECK(plugin.out.find("SPAN_MATCH FAIL") != std::string::npos);
}

TEST_CASE("build") {
  TempDir out("build");
  const Outcome json_only = run_cli({"build", "--repo", kCorpus, "--out", out.path.string(), "--no-html"});
  CHECK(json_only.code == 0);
  CHECK(fs::is_regular_file(out.path / "bugs.json"));
  CHECK_FALSE(fs::exists(out.path / "index.html"));

  CHECK(run_cli({"build", "--repo", kCorpus, "--out", out.path.string()}).code == 0);
  CHECK(fs::is_regular_file(out.path / "index.html"));
  CHECK(oracle::dangling_links(out.path).empty());
}

TEST_CASE("usage errors") {
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"match", "--bug", "X"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}
