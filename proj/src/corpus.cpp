#include "bugfix/corpus.hpp"

#include <algorithm>
#include <charconv>

namespace bugfix {

namespace {

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

std::string header_path(std::string_view line) {
  std::string_view rest = line.substr(4);
  if (auto tab = rest.find('\t'); tab != std::string_view::npos) rest = rest.substr(0, tab);
  return std::string(rest);
}

// Parses "a,b" or "a" (count 1) after the leading '-' or '+'.
bool parse_range(std::string_view s, std::size_t& start, std::size_t& count) {
  auto comma = s.find(',');
  std::string_view a = s.substr(0, comma);
  if (std::from_chars(a.data(), a.data() + a.size(), start).ec != std::errc{} || a.empty()) return false;
  count = 1;
  if (comma == std::string_view::npos) return true;
  std::string_view b = s.substr(comma + 1);
  return !b.empty() && std::from_chars(b.data(), b.data() + b.size(), count).ec == std::errc{};
}

Hunk parse_hunk_header(std::string_view line, std::size_t line_no) {
  // @@ -old[,count] +new[,count] @@ section
  auto close = line.find(" @@", 2);
  if (close == std::string_view::npos) throw DiffSyntaxError(line_no, "malformed hunk header");
  std::string_view ranges = line.substr(3, close - 3);
  auto space = ranges.find(' ');
  if (space == std::string_view::npos || ranges.empty() || ranges[0] != '-' || ranges.size() < space + 2 ||
      ranges[space + 1] != '+')
    throw DiffSyntaxError(line_no, "malformed hunk header");
  Hunk h;
  if (!parse_range(ranges.substr(1, space - 1), h.old_start, h.old_count) ||
      !parse_range(ranges.substr(space + 2), h.new_start, h.new_count))
    throw DiffSyntaxError(line_no, "malformed hunk range");
  return h;
}

bool ignorable_header(std::string_view l) {
  for (std::string_view p : {"index ", "new file mode", "deleted file mode", "similarity index", "rename from",
                             "rename to", "old mode", "new mode", "Binary files", "dissimilarity index", "copy from",
                             "copy to"})
    if (starts_with(l, p)) return true;
  return false;
}

std::string join_tagged(const Hunk& hunk, LineTag skip) {
  std::string out;
  for (const HunkLine& l : hunk.lines)
    if (l.tag != skip) out += l.text + "\n";
  return out;
}

}  // namespace

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.emplace_back(line);
    pos = end + 1;
  }
  return out;
}

std::string join_lines(std::span<const std::string> lines) {
  std::string out;
  for (const std::string& l : lines) out += l + "\n";
  return out;
}

std::vector<FileDiff> parse_unified_diff(std::string_view text) {
  const std::vector<std::string> lines = split_lines(text);
  std::vector<FileDiff> files;
  bool have_headers = false;
  std::size_t i = 0;
  while (i < lines.size()) {
    const std::string& l = lines[i];
    const std::size_t line_no = i + 1;
    if (starts_with(l, "diff ")) {
      files.emplace_back();
      have_headers = false;
      ++i;
    } else if (starts_with(l, "--- ") && i + 1 < lines.size() && starts_with(lines[i + 1], "+++ ")) {
      if (files.empty() || have_headers) files.emplace_back();
      files.back().old_path = header_path(l);
      files.back().new_path = header_path(lines[i + 1]);
      have_headers = true;
      i += 2;
    } else if (starts_with(l, "@@ ")) {
      if (!have_headers) throw DiffSyntaxError(line_no, "hunk without '---'/'+++' file headers");
      Hunk h = parse_hunk_header(l, line_no);
      std::size_t old_seen = 0, new_seen = 0;
      ++i;
      while (old_seen < h.old_count || new_seen < h.new_count) {
        if (i >= lines.size())
          throw DiffSyntaxError(i, "hunk ends early: expected " + std::to_string(h.old_count) + " old and " +
                                       std::to_string(h.new_count) + " new lines");
        const std::string& body = lines[i];
        const char tag = body.empty() ? ' ' : body[0];
        std::string content = body.empty() ? std::string() : body.substr(1);
        if (tag == '\\') {
          ++i;
          continue;
        }
        if (tag == ' ') {
          ++old_seen;
          ++new_seen;
          h.lines.push_back({LineTag::Context, std::move(content)});
        } else if (tag == '-') {
          ++old_seen;
          h.lines.push_back({LineTag::Delete, std::move(content)});
        } else if (tag == '+') {
          ++new_seen;
          h.lines.push_back({LineTag::Add, std::move(content)});
        } else {
          throw DiffSyntaxError(i + 1, "hunk ends early: unexpected line inside hunk");
        }
        if (old_seen > h.old_count || new_seen > h.new_count)
          throw DiffSyntaxError(i + 1, "hunk line counts exceed its header");
        ++i;
      }
      while (i < lines.size() && starts_with(lines[i], "\\")) ++i;
      if (i < lines.size()) {
        const std::string& after = lines[i];
        const bool next_header = starts_with(after, "--- ") && i + 1 < lines.size() && starts_with(lines[i + 1], "+++ ");
        if (!after.empty() && (after[0] == ' ' || after[0] == '+' || (after[0] == '-' && !next_header)))
          throw DiffSyntaxError(i + 1, "hunk is longer than its header states");
      }
      files.back().hunks.push_back(std::move(h));
    } else if (ignorable_header(l) || l.empty()) {
      ++i;
    } else {
      throw DiffSyntaxError(line_no, "unexpected line outside a hunk");
    }
  }
  return files;
}

Fragment before_fragment(const Hunk& hunk) {
  return {hunk.old_start == 0 ? 0 : hunk.old_start - 1, join_tagged(hunk, LineTag::Add)};
}

Fragment after_fragment(const Hunk& hunk) {
  return {hunk.new_start == 0 ? 0 : hunk.new_start - 1, join_tagged(hunk, LineTag::Delete)};
}

Hunk rebase(Hunk hunk) {
  hunk.old_start = hunk.old_count == 0 ? 0 : 1;
  hunk.new_start = hunk.new_count == 0 ? 0 : 1;
  return hunk;
}

std::string apply_hunk(std::string_view before_text, const Hunk& hunk) {
  if (hunk.lines.empty()) return std::string(before_text);
  std::vector<std::string> lines = split_lines(before_text);
  const bool trailing_newline = before_text.empty() || before_text.back() == '\n';
  const std::size_t first = hunk.old_count == 0 ? hunk.old_start : hunk.old_start - 1;
  if (first > lines.size()) throw ContextMismatch(first + 1);

  std::vector<std::string> out(lines.begin(), lines.begin() + static_cast<std::ptrdiff_t>(first));
  std::size_t cursor = first;
  for (const HunkLine& l : hunk.lines) {
    if (l.tag == LineTag::Add) {
      out.push_back(l.text);
      continue;
    }
    if (cursor >= lines.size() || lines[cursor] != l.text) throw ContextMismatch(cursor + 1);
    if (l.tag == LineTag::Context) out.push_back(l.text);
    ++cursor;
  }
  out.insert(out.end(), lines.begin() + static_cast<std::ptrdiff_t>(cursor), lines.end());
  std::string text = join_lines(out);
  if (!trailing_newline && !text.empty()) text.pop_back();
  return text;
}

Hunk make_hunk(std::span<const std::string> before, std::span<const std::string> after, std::size_t context) {
  std::size_t prefix = 0;
  while (prefix < before.size() && prefix < after.size() && before[prefix] == after[prefix]) ++prefix;
  std::size_t tail = 0;
  while (tail < before.size() - prefix && tail < after.size() - prefix &&
         before[before.size() - 1 - tail] == after[after.size() - 1 - tail])
    ++tail;
  const std::size_t lead = std::min(context, prefix);
  const std::size_t trail = std::min(context, tail);

  Hunk h;
  for (std::size_t k = prefix - lead; k < prefix; ++k) h.lines.push_back({LineTag::Context, before[k]});
  for (std::size_t k = prefix; k < before.size() - tail; ++k) h.lines.push_back({LineTag::Delete, before[k]});
  for (std::size_t k = prefix; k < after.size() - tail; ++k) h.lines.push_back({LineTag::Add, after[k]});
  for (std::size_t k = before.size() - tail; k < before.size() - tail + trail; ++k)
    h.lines.push_back({LineTag::Context, before[k]});
  h.old_count = lead + (before.size() - tail - prefix) + trail;
  h.new_count = lead + (after.size() - tail - prefix) + trail;
  h.old_start = h.old_count == 0 ? prefix - lead : prefix - lead + 1;
  h.new_start = h.new_count == 0 ? prefix - lead : prefix - lead + 1;
  return h;
}

std::string slice(const Fragment& fragment, const Span& span) {
  const std::vector<std::string> lines = split_lines(fragment.text);
  if (span.start.row < fragment.start_row || span.end.row >= fragment.start_row + lines.size())
    throw std::out_of_range("span rows lie outside the fragment");
  const std::size_t first = span.start.row - fragment.start_row;
  const std::size_t last = span.end.row - fragment.start_row;
  if (span.start.col > lines[first].size() || span.end.col > lines[last].size())
    throw std::out_of_range("span columns lie outside the line");
  if (first == last) return lines[first].substr(span.start.col, span.end.col - span.start.col);
  std::string out = lines[first].substr(span.start.col) + "\n";
  for (std::size_t r = first + 1; r < last; ++r) out += lines[r] + "\n";
  return out + lines[last].substr(0, span.end.col);
}

std::vector<Hunk> example_hunks(const ExampleSpec& example, std::vector<std::string>* warnings) {
  std::vector<FileDiff> files = parse_unified_diff(example.hunk);
  if (files.empty()) return {};
  if (files.size() > 1 && warnings)
    warnings->push_back("diff names " + std::to_string(files.size()) + " files; only " + files.front().new_path +
                        " is used");
  return std::move(files.front().hunks);
}

}  // namespace bugfix
