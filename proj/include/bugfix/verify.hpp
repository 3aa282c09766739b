#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bugfix/model.hpp"
#include "bugfix/spec.hpp"

namespace bugfix {

enum class Stage { SpanMatch, CaptureSpans, FixApply, AfterEqual };
enum class StageStatus { Pass, Fail, Skipped };

std::string_view name(Stage stage);
std::string_view name(StageStatus status);

struct StageResult {
  Stage stage;
  StageStatus status;
  std::string detail;
};

struct VerifyReport {
  std::string application_id;
  std::vector<StageResult> stages;  // always all four, in order

  bool passed() const;
  const StageResult& at(Stage stage) const { return stages.at(static_cast<std::size_t>(stage)); }
};

/// Replays an application against the parsed before/after fragments of its
/// example. Null trees or a detached application give a report without any
/// PASS. Failures never throw; they are recorded in the report.
VerifyReport verify_application(const ElementSpec& application, const ElementSpec& bug, const ElementSpec& fix,
                                const UNode* before, const UNode* after, const Registry& registry,
                                const ConstructSet* language_constructs = nullptr);

/// One line per stage: `ID STAGE STATUS detail`.
std::string format_report(const VerifyReport& report);

}  // namespace bugfix
