#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bugfix/errors.hpp"

namespace bugfix::detail {

enum class Tok {
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Dash,
  Colon,
  Equals,
  Star,
  Plus,
  Question,
  Ident,     // [A-Za-z_][A-Za-z0-9_]*
  Label,     // ident immediately followed by ':' (or by one of *+? then ':')
  Capture,   // @ident, text includes '@'
  Splice,    // *@ident, text is the '@ident' part
  String,    // text is unescaped
  Number,
  End,
};

std::string_view describe(Tok t);

struct Token {
  Tok kind = Tok::End;
  std::string text;
  char quant = 0;  // multiplicity suffix carried by a Label, if any
  std::size_t offset = 0;
  std::size_t line = 1;
  std::size_t col = 1;
  bool line_start = false;
};

struct RawLine {
  std::size_t line;
  std::string text;
};

/// On-demand lexer for Bugfix text. `--` starts a comment; comments that
/// occupy a whole line are buffered and can be collected by the parser.
class Lexer {
 public:
  explicit Lexer(std::string_view text, std::size_t first_line = 1);

  const Token& peek();
  Token next();
  /// Drops the lookahead token and rewinds to where it was lexed from.
  void unpeek();

  bool at(Tok kind) { return peek().kind == kind; }
  bool at_ident(std::string_view text);
  Token expect(Tok kind, std::string_view what);

  std::vector<std::string> take_comments();
  void clear_comments() { comments_.clear(); }

  /// Skips blanks and comments, then returns the next run of non-blank bytes.
  Token read_atom();
  /// Returns lines starting at the line after the current position, up to
  /// (not including) the first line for which `stop` holds. The lexer is left
  /// at the start of the stopping line.
  std::vector<RawLine> read_lines_until(const std::function<bool(std::string_view)>& stop);

  [[noreturn]] void fail(const Token& at, const std::string& message) const;
  [[noreturn]] void fail_here(const std::string& message) const;

 private:
  Token lex();
  void skip_blanks_and_comments();
  std::size_t column_of(std::size_t offset) const;
  bool first_on_line(std::size_t offset) const;

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_begin_ = 0;
  std::optional<Token> peeked_;
  std::size_t peek_pos_ = 0;
  std::size_t peek_line_ = 1;
  std::size_t peek_line_begin_ = 0;
  std::vector<std::string> comments_;
};

/// Strips a trailing `--` comment, respecting double-quoted strings.
std::string_view strip_comment(std::string_view line);
std::string_view trim(std::string_view s);

}  // namespace bugfix::detail
