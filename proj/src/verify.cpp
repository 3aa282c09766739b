#include "bugfix/verify.hpp"

#include <limits>

#include "bugfix/matcher.hpp"
#include "bugfix/rewriter.hpp"

namespace bugfix {

std::string_view name(Stage stage) {
  switch (stage) {
    case Stage::SpanMatch: return "SPAN_MATCH";
    case Stage::CaptureSpans: return "CAPTURE_SPANS";
    case Stage::FixApply: return "FIX_APPLY";
    case Stage::AfterEqual: return "AFTER_EQUAL";
  }
  return "?";
}

std::string_view name(StageStatus status) {
  switch (status) {
    case StageStatus::Pass: return "PASS";
    case StageStatus::Fail: return "FAIL";
    case StageStatus::Skipped: return "SKIPPED";
  }
  return "?";
}

bool VerifyReport::passed() const {
  for (const StageResult& s : stages)
    if (s.status != StageStatus::Pass) return false;
  return !stages.empty();
}

std::string format_report(const VerifyReport& report) {
  std::string out;
  for (const StageResult& s : report.stages) {
    out += report.application_id + " " + std::string(name(s.stage)) + " " + std::string(name(s.status));
    if (!s.detail.empty()) out += " " + s.detail;
    out += "\n";
  }
  return out;
}

namespace {

class Report {
 public:
  explicit Report(std::string id) { report_.application_id = std::move(id); }

  void pass(Stage s, std::string detail = {}) { add(s, StageStatus::Pass, std::move(detail)); }
  // Records the failure and skips every later stage.
  VerifyReport fail(Stage s, std::string detail) {
    add(s, StageStatus::Fail, std::move(detail));
    return finish();
  }
  VerifyReport skip_all(const std::string& detail) {
    while (report_.stages.size() < 4) add(next(), StageStatus::Skipped, detail);
    return report_;
  }
  VerifyReport finish() {
    while (report_.stages.size() < 4) add(next(), StageStatus::Skipped, {});
    return report_;
  }

 private:
  Stage next() const { return static_cast<Stage>(report_.stages.size()); }
  void add(Stage s, StageStatus status, std::string detail) { report_.stages.push_back({s, status, std::move(detail)}); }

  VerifyReport report_;
};

std::string span_list(const std::vector<Span>& spans) {
  std::string out = "{";
  for (std::size_t i = 0; i < spans.size(); ++i) out += (i ? ", " : "") + to_string(spans[i]);
  return out + "}";
}

// Capture names whose matched spans differ from the recorded ones, with details.
std::vector<std::string> capture_mismatches(const MatchResult& m, const Pattern& where, const RecordedTree& tree) {
  const auto recorded = recorded_captures(tree);
  std::vector<std::string> out;
  for (const std::string& capture : captures(where)) {
    if (capture == kBugCapture) continue;
    std::vector<Span> want;
    for (const auto& [name, spans] : recorded)
      if (name == capture) want = spans;
    std::vector<Span> got;
    bool complete = true;
    for (const BoundNode& b : m.at(capture)) {
      if (b.node->span)
        got.push_back(*b.node->span);
      else
        complete = false;
    }
    if (!complete || got != want)
      out.push_back(capture + " recorded " + span_list(want) + " but matched " + (complete ? span_list(got) : "unspanned nodes"));
  }
  return out;
}

}  // namespace

VerifyReport verify_application(const ElementSpec& application, const ElementSpec& bug, const ElementSpec& fix,
                                const UNode* before, const UNode* after, const Registry& registry,
                                const ConstructSet* language_constructs) {
  Report report(application.id);
  const auto& app = application.as<ApplicationSpec>();
  if (app.detached() || !app.tree) return report.skip_all("detached application");
  if (!before || !after) return report.fail(Stage::SpanMatch, "missing before/after tree for example " + app.example_id);

  const Pattern& where = bug.as<BugSpec>().where;
  const Span root_span = app.tree->span;
  std::vector<MatchResult> anchored;
  for (MatchResult& m : find_matches(where, *before, registry, language_constructs)) {
    const UNode* node = m.at(std::string(kBugCapture)).front().node;
    if (node->span && *node->span == root_span) anchored.push_back(std::move(m));
  }
  if (anchored.empty()) return report.fail(Stage::SpanMatch, "no match of " + bug.id + " at " + to_string(root_span));
  report.pass(Stage::SpanMatch, std::to_string(anchored.size()) + " match(es) at " + to_string(root_span));

  const MatchResult* chosen = nullptr;
  std::vector<std::string> nearest;
  std::size_t fewest = std::numeric_limits<std::size_t>::max();
  for (const MatchResult& m : anchored) {
    std::vector<std::string> misses = capture_mismatches(m, where, *app.tree);
    if (misses.empty()) {
      chosen = &m;
      break;
    }
    if (misses.size() < fewest) {
      fewest = misses.size();
      nearest = std::move(misses);
    }
  }
  if (!chosen) {
    std::string detail;
    for (const std::string& miss : nearest) detail += (detail.empty() ? "" : "; ") + miss;
    return report.fail(Stage::CaptureSpans, detail);
  }
  report.pass(Stage::CaptureSpans);

  UNode fixed;
  try {
    fixed = apply_fix(*before, *chosen, fix, make_params(app.parameters));
  } catch (const RewriteError& e) {
    return report.fail(Stage::FixApply, e.what());
  }
  report.pass(Stage::FixApply);

  const UNode* got = node_at(fixed, chosen->path);
  const UNode* want = node_at(*after, chosen->path);
  if (!want) return report.fail(Stage::AfterEqual, "after tree has no node at the match position");
  if (!got || !structural_equals(*got, *want)) return report.fail(Stage::AfterEqual, "fixed subtree differs from the after tree");
  report.pass(Stage::AfterEqual);
  return report.finish();
}

}  // namespace bugfix
