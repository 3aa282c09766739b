#include "doctest.h"

#include "bugfix/corpus.hpp"
#include "bugfix/specparse.hpp"
#include "fixtures.hpp"

using namespace bugfix;

namespace {

ExampleSpec closure_example() {
  return parse_document(fixture::listing("example_closure_14.bugfix")).front().as<ExampleSpec>();
}

Hunk closure_hunk() {
  const auto files = parse_unified_diff(closure_example().hunk);
  REQUIRE(files.size() == 1);
  REQUIRE(files[0].hunks.size() == 1);
  return files[0].hunks[0];
}

std::size_t count(const Hunk& h, LineTag tag) {
  return static_cast<std::size_t>(std::count_if(h.lines.begin(), h.lines.end(), [&](const HunkLine& l) { return l.tag == tag; }));
}

// Line at a 0-based file row, read from the fragment text.
std::string row_of(const Fragment& f, std::size_t row) {
  const auto lines = split_lines(f.text);
  REQUIRE(row >= f.start_row);
  REQUIRE(row - f.start_row < lines.size());
  return lines[row - f.start_row];
}

}  // namespace

TEST_CASE("CLOSURE_14 hunk") {
  const auto files = parse_unified_diff(closure_example().hunk);
  REQUIRE(files.size() == 1);
  CHECK(files[0].old_path == "a/src/com/google/javascript/jscomp/ControlFlowAnalysis.java");
  CHECK(files[0].new_path == "b/src/com/google/javascript/jscomp/ControlFlowAnalysis.java");
  const Hunk h = closure_hunk();
  CHECK(h.old_start == 764);
  CHECK(h.old_count == 7);
  CHECK(h.new_start == 764);
  CHECK(h.new_count == 7);
  CHECK(count(h, LineTag::Delete) == 1);
  CHECK(count(h, LineTag::Add) == 1);
}

TEST_CASE("fragments") {
  const Hunk h = closure_hunk();
  const Fragment before = before_fragment(h);
  const Fragment after = after_fragment(h);
  CHECK(before.start_row == 763);
  CHECK(row_of(before, 766).find("Branch.UNCOND") != std::string::npos);
  CHECK(row_of(after, 766).find("Branch.ON_EX") != std::string::npos);
  CHECK(split_lines(before.text).size() == h.old_count);
  CHECK(split_lines(after.text).size() == h.new_count);

  Hunk adds;
  adds.old_start = 5;
  adds.old_count = 0;
  adds.new_start = 6;
  adds.new_count = 1;
  adds.lines = {{LineTag::Add, "x"}};
  CHECK(before_fragment(adds).text.empty());
  CHECK(before_fragment(adds).start_row == 4);
}

TEST_CASE("span slice of the before fragment") {
  const Fragment before = before_fragment(closure_hunk());
  const std::string arguments = slice(before, Span{{766, 28}, {766, 66}});
  CHECK(arguments == "(fromNode, Branch.UNCOND, finallyNode)");
  CHECK(arguments.size() == 38);
  CHECK(slice(before, Span{{766, 29}, {766, 37}}) == "fromNode");
  CHECK(slice(before, Span{{766, 46}, {766, 52}}) == "UNCOND");
  CHECK_THROWS_AS(slice(before, Span{{800, 0}, {800, 1}}), std::out_of_range);
}

TEST_CASE("apply_hunk") {
  const Hunk h = closure_hunk();
  const std::string before = before_fragment(h).text;
  CHECK(apply_hunk(before, rebase(h)) == after_fragment(h).text);

  CHECK(apply_hunk("anything\nat all\n", Hunk{}) == "anything\nat all\n");
  CHECK(apply_hunk("", Hunk{}).empty());

  std::string mutated = before;
  mutated[mutated.find("parent")] = 'P';
  CHECK_THROWS_AS(apply_hunk(mutated, rebase(h)), ContextMismatch);

  // Without a trailing newline the output keeps that convention.
  const std::vector<std::string> a = {"one", "two"}, b = {"one", "2"};
  CHECK(apply_hunk("one\ntwo", make_hunk(a, b)) == "one\n2");
}

TEST_CASE("diff syntax errors") {
  const std::string hunk = closure_example().hunk;
  std::vector<std::string> lines = split_lines(hunk);
  // Drop one context line: the header still claims seven old lines.
  auto context = std::find_if(lines.begin() + 5, lines.end(), [](const std::string& l) { return !l.empty() && l[0] == ' '; });
  lines.erase(context);
  CHECK_THROWS_AS(parse_unified_diff(join_lines(lines)), DiffSyntaxError);

  CHECK_THROWS_AS(parse_unified_diff("@@ -1,1 +1,1 @@\n-a\n+b\n"), DiffSyntaxError);
  CHECK_THROWS_AS(parse_unified_diff("--- a\n+++ b\n@@ -1,1 +1,1 @@\n-a\n+b\n+c\n"), DiffSyntaxError);
  CHECK_THROWS_AS(parse_unified_diff("--- a\n+++ b\n@@ -x +1 @@\n"), DiffSyntaxError);

  const auto headers_only = parse_unified_diff("diff --git a/f b/f\n--- a/f\n+++ b/f\n");
  REQUIRE(headers_only.size() == 1);
  CHECK(headers_only[0].hunks.empty());

  const auto short_counts = parse_unified_diff("--- a\n+++ b\n@@ -3 +3 @@ trailing words\n-a\n+b\n");
  CHECK(short_counts[0].hunks[0].old_count == 1);
  CHECK(short_counts[0].hunks[0].old_start == 3);
}

TEST_CASE("multi-file diffs keep the first file and warn") {
  ExampleSpec x;
  x.hunk = "--- a/f\n+++ b/f\n@@ -1 +1 @@\n-a\n+b\n--- a/g\n+++ b/g\n@@ -1 +1 @@\n-c\n+d\n";
  std::vector<std::string> warnings;
  const auto hunks = example_hunks(x, &warnings);
  REQUIRE(hunks.size() == 1);
  CHECK(hunks[0].lines[0].text == "a");
  CHECK(warnings.size() == 1);
}

TEST_CASE("random single-edit hunks round-trip") {
  oracle::Generator gen(42);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> before;
    for (std::size_t k = 0, n = gen.below(12); k < n; ++k) before.push_back("line " + std::to_string(gen.below(6)));
    std::vector<std::string> after = before;
    const std::size_t at = gen.below(after.size() + 1);
    const std::size_t removed = std::min(after.size() - at, gen.below(4));
    after.erase(after.begin() + static_cast<std::ptrdiff_t>(at), after.begin() + static_cast<std::ptrdiff_t>(at + removed));
    for (std::size_t k = 0, n = gen.below(4); k < n; ++k)
      after.insert(after.begin() + static_cast<std::ptrdiff_t>(at), "new " + std::to_string(gen.below(6)));
    const Hunk h = make_hunk(before, after, gen.below(4));
    CHECK(apply_hunk(join_lines(before), h) == join_lines(after));
    CHECK(count(h, LineTag::Context) + count(h, LineTag::Delete) == h.old_count);
    CHECK(count(h, LineTag::Context) + count(h, LineTag::Add) == h.new_count);
  }
}
