#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bugfix/matcher.hpp"
#include "bugfix/model.hpp"
#include "bugfix/pattern.hpp"
#include "bugfix/spec.hpp"

namespace bugfix {

class RewriteError : public std::runtime_error {
 public:
  enum class Code { UnboundCapture, UnboundParameter, SpliceOfNonNode, PathInvalid, BadTemplate };

  RewriteError(Code code, std::string name, const std::string& message)
      : std::runtime_error(message), code_(code), name_(std::move(name)) {}

  Code code() const { return code_; }
  /// Offending capture or parameter name, if any.
  const std::string& name() const { return name_; }

 private:
  Code code_;
  std::string name_;
};

/// Capture name -> bound nodes (with their field labels), by value.
using CaptureEnv = std::map<std::string, std::vector<Child>>;
/// Parameter name (with '@') -> concrete tree.
using ParamEnv = std::map<std::string, UNode>;

CaptureEnv capture_env(const MatchResult& match);

/// Builds the node sequence described by `tmpl`. Captured nodes keep their
/// spans; nodes built from construct templates carry none.
std::vector<Child> instantiate(const Template& tmpl, const CaptureEnv& captures, const ParamEnv& params);
std::vector<Child> instantiate(const Template& tmpl, const MatchResult& match, const ParamEnv& params);

/// Instantiates ground parameter templates (no capture references allowed).
ParamEnv make_params(const std::map<std::string, Template>& bindings);

/// Returns a copy of `tree` with the node at `match.path` replaced by the fix's
/// `then` template. Below the root the template may yield any number of
/// nodes; unlabeled ones take the replaced node's field label.
UNode apply_fix(const UNode& tree, const MatchResult& match, const FixSpec& fix, const ParamEnv& params);
UNode apply_fix(const UNode& tree, const MatchResult& match, const ElementSpec& fix, const ParamEnv& params);

/// One UnknownCapture diagnostic per capture the fix's template uses that is
/// neither captured by the bug's pattern, `@bug`, nor a fix parameter.
std::vector<Diagnostic> check_fix_captures(const ElementSpec& fix, const ElementSpec& bug);

}  // namespace bugfix
