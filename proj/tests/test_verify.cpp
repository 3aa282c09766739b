#include "doctest.h"

#include "bugfix/specparse.hpp"
#include "bugfix/store.hpp"
#include "bugfix/verify.hpp"
#include "fixtures.hpp"

using namespace bugfix;

namespace {

struct Closure {
  Database db;
  const ElementSpec* app = nullptr;
  const ElementSpec* bug = nullptr;
  const ElementSpec* fix = nullptr;
  UNode before = fixture::closure_before();
  UNode after = fixture::closure_after();

  Closure() {
    std::vector<Diagnostic> diags;
    db = load_repository(fixture::kCorpus, diags);
    REQUIRE(diags.empty());
    app = db.find(ElementKind::Application, "CORRECT_ARGUMENT_IN_CALL_1_CLOSURE_14");
    REQUIRE(app);
    fix = db.find(ElementKind::Fix, app->as<ApplicationSpec>().fix_id);
    REQUIRE(fix);
    bug = db.find(ElementKind::Bug, fix->as<FixSpec>().bug_id);
    REQUIRE(bug);
  }

  VerifyReport run(const ElementSpec& application) const {
    return verify_application(application, *bug, *fix, &before, &after, db.registry);
  }
};

std::vector<StageStatus> statuses(const VerifyReport& r) {
  std::vector<StageStatus> out;
  for (const StageResult& s : r.stages) out.push_back(s.status);
  return out;
}

constexpr StageStatus P = StageStatus::Pass, F = StageStatus::Fail, S = StageStatus::Skipped;

}  // namespace

TEST_CASE("CLOSURE_14 verifies end to end") {
  const Closure c;
  const VerifyReport r = c.run(*c.app);
  CHECK(r.application_id == "CORRECT_ARGUMENT_IN_CALL_1_CLOSURE_14");
  CHECK(statuses(r) == std::vector<StageStatus>{P, P, P, P});
  CHECK(r.passed());
  CHECK(r.stages[0].stage == Stage::SpanMatch);
  CHECK(r.stages[3].stage == Stage::AfterEqual);
}

TEST_CASE("identity parameter fails AFTER_EQUAL") {
  const Closure c;
  ElementSpec mutated = *c.app;
  mutated.as<ApplicationSpec>().parameters["@correct_arg"] =
      parse_template("(field_access object: (identifier \"Branch\") field: (identifier \"UNCOND\"))");
  const VerifyReport r = c.run(mutated);
  CHECK(statuses(r) == std::vector<StageStatus>{P, P, P, F});
  CHECK_FALSE(r.passed());
}

TEST_CASE("shifted root span fails SPAN_MATCH") {
  const Closure c;
  ElementSpec mutated = *c.app;
  mutated.as<ApplicationSpec>().tree->span.start.col += 1;
  CHECK(statuses(c.run(mutated)) == std::vector<StageStatus>{F, S, S, S});
}

TEST_CASE("wrong capture span fails CAPTURE_SPANS") {
  const Closure c;
  ElementSpec mutated = *c.app;
  mutated.as<ApplicationSpec>().tree->children[0].span.end.col = 36;
  const VerifyReport r = c.run(mutated);
  CHECK(statuses(r) == std::vector<StageStatus>{P, F, S, S});
  CHECK(r.at(Stage::CaptureSpans).detail.find("@pre") != std::string::npos);
}

TEST_CASE("missing parameter fails FIX_APPLY") {
  const Closure c;
  ElementSpec mutated = *c.app;
  mutated.as<ApplicationSpec>().parameters.clear();
  CHECK(statuses(c.run(mutated)) == std::vector<StageStatus>{P, P, F, S});
}

TEST_CASE("missing trees and detached applications never pass") {
  const Closure c;
  const VerifyReport missing = verify_application(*c.app, *c.bug, *c.fix, nullptr, nullptr, c.db.registry);
  CHECK(statuses(missing) == std::vector<StageStatus>{F, S, S, S});

  const ElementSpec* detached = c.db.find(ElementKind::Application, "CORRECT_ARGUMENT_IN_CALL_2_APPLICATION_1");
  REQUIRE(detached);
  const ElementSpec& fix = *c.db.find(ElementKind::Fix, "CORRECT_ARGUMENT_IN_CALL_2");
  const ElementSpec& bug = *c.db.find(ElementKind::Bug, "WRONG_ARGUMENT_IN_CALL_2");
  const VerifyReport r = verify_application(*detached, bug, fix, &c.before, &c.after, c.db.registry);
  CHECK(statuses(r) == std::vector<StageStatus>{S, S, S, S});
  CHECK_FALSE(r.passed());
}

TEST_CASE("verify is deterministic and an all-pass report implies the after tree") {
  const Closure c;
  const VerifyReport a = c.run(*c.app), b = c.run(*c.app);
  CHECK(format_report(a) == format_report(b));
  CHECK(format_report(a).find("AFTER_EQUAL PASS") != std::string::npos);
}
