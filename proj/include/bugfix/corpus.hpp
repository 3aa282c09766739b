#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bugfix/model.hpp"
#include "bugfix/spec.hpp"

namespace bugfix {

class DiffSyntaxError : public std::runtime_error {
 public:
  DiffSyntaxError(std::size_t line, const std::string& message)
      : std::runtime_error("diff line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ContextMismatch : public std::runtime_error {
 public:
  explicit ContextMismatch(std::size_t row)
      : std::runtime_error("hunk context does not match at line " + std::to_string(row)), row_(row) {}
  /// 1-based line of the first mismatch.
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

enum class LineTag { Context, Delete, Add };

struct HunkLine {
  LineTag tag = LineTag::Context;
  std::string text;

  friend bool operator==(const HunkLine&, const HunkLine&) = default;
};

struct Hunk {
  std::size_t old_start = 1;
  std::size_t old_count = 0;
  std::size_t new_start = 1;
  std::size_t new_count = 0;
  std::vector<HunkLine> lines;

  friend bool operator==(const Hunk&, const Hunk&) = default;
};

struct FileDiff {
  std::string old_path;
  std::string new_path;
  std::vector<Hunk> hunks;
};

/// Parses unified diff text (`diff --git` and `index` lines optional).
/// Throws DiffSyntaxError on count mismatches or hunks without file headers.
std::vector<FileDiff> parse_unified_diff(std::string_view text);

/// A run of source lines; `text` holds each line followed by '\n'.
struct Fragment {
  std::size_t start_row = 0;  // 0-based row of the first line
  std::string text;
};

Fragment before_fragment(const Hunk& hunk);
Fragment after_fragment(const Hunk& hunk);

/// Moves the hunk so it applies to its own before fragment (both starts at 1).
Hunk rebase(Hunk hunk);

/// Applies one hunk to text whose first line is line 1. Throws ContextMismatch.
std::string apply_hunk(std::string_view before_text, const Hunk& hunk);

/// Single-region hunk turning `before` into `after`, with up to `context`
/// lines of context on each side.
Hunk make_hunk(std::span<const std::string> before, std::span<const std::string> after,
               std::size_t context = 3);

std::vector<std::string> split_lines(std::string_view text);
std::string join_lines(std::span<const std::string> lines);

/// Bytes covered by `span` in a fragment whose first line is `fragment.start_row`.
/// Throws std::out_of_range if the span leaves the fragment.
std::string slice(const Fragment& fragment, const Span& span);

/// Hunks of the first file of an example's diff; `warnings` receives a note
/// when the diff names more than one file.
std::vector<Hunk> example_hunks(const ExampleSpec& example, std::vector<std::string>* warnings = nullptr);

}  // namespace bugfix
