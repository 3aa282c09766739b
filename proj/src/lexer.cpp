#include "lexer.hpp"

#include <cctype>

namespace bugfix::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

}  // namespace

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Dash: return "'-'";
    case Tok::Colon: return "':'";
    case Tok::Equals: return "'='";
    case Tok::Star: return "'*'";
    case Tok::Plus: return "'+'";
    case Tok::Question: return "'?'";
    case Tok::Ident: return "identifier";
    case Tok::Label: return "field label";
    case Tok::Capture: return "capture name";
    case Tok::Splice: return "splice";
    case Tok::String: return "string";
    case Tok::Number: return "number";
    case Tok::End: return "end of input";
  }
  return "token";
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (blank(s.front()) || s.front() == '\n')) s.remove_prefix(1);
  while (!s.empty() && (blank(s.back()) || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

std::string_view strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
    } else if (c == '"') {
      in_string = true;
    } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '-') {
      return line.substr(0, i);
    }
  }
  return line;
}

Lexer::Lexer(std::string_view text, std::size_t first_line) : text_(text), line_(first_line) {}

std::size_t Lexer::column_of(std::size_t offset) const { return offset - line_begin_ + 1; }

bool Lexer::first_on_line(std::size_t offset) const {
  for (std::size_t i = line_begin_; i < offset; ++i)
    if (!blank(text_[i])) return false;
  return true;
}

void Lexer::skip_blanks_and_comments() {
  while (pos_ < text_.size()) {
    char c = text_[pos_];
    if (c == '\n') {
      ++pos_;
      ++line_;
      line_begin_ = pos_;
    } else if (blank(c)) {
      ++pos_;
    } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
      const bool whole_line = first_on_line(pos_);
      std::size_t end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      if (whole_line) {
        std::string_view body = text_.substr(pos_ + 2, end - pos_ - 2);
        if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
        while (!body.empty() && blank(body.back())) body.remove_suffix(1);
        comments_.emplace_back(body);
      }
      pos_ = end;
    } else {
      break;
    }
  }
}

Token Lexer::lex() {
  skip_blanks_and_comments();
  Token t;
  t.offset = pos_;
  t.line = line_;
  t.col = column_of(pos_);
  t.line_start = first_on_line(pos_);
  if (pos_ >= text_.size()) {
    t.kind = Tok::End;
    return t;
  }
  const char c = text_[pos_];
  auto single = [&](Tok k) {
    t.kind = k;
    t.text = std::string(1, c);
    ++pos_;
    return t;
  };
  switch (c) {
    case '(': return single(Tok::LParen);
    case ')': return single(Tok::RParen);
    case '[': return single(Tok::LBracket);
    case ']': return single(Tok::RBracket);
    case ',': return single(Tok::Comma);
    case '-': return single(Tok::Dash);
    case ':': return single(Tok::Colon);
    case '=': return single(Tok::Equals);
    case '+': return single(Tok::Plus);
    case '?': return single(Tok::Question);
    default: break;
  }
  if (c == '*') {
    if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '@') {
      std::size_t start = pos_ + 1;
      std::size_t p = start + 1;
      if (p >= text_.size() || !ident_start(text_[p])) fail(t, "expected name after '*@'");
      while (p < text_.size() && ident_char(text_[p])) ++p;
      t.kind = Tok::Splice;
      t.text = std::string(text_.substr(start, p - start));
      pos_ = p;
      return t;
    }
    return single(Tok::Star);
  }
  if (c == '@') {
    std::size_t p = pos_ + 1;
    if (p >= text_.size() || !ident_start(text_[p])) fail(t, "expected name after '@'");
    while (p < text_.size() && ident_char(text_[p])) ++p;
    t.kind = Tok::Capture;
    t.text = std::string(text_.substr(pos_, p - pos_));
    pos_ = p;
    return t;
  }
  if (c == '"') {
    std::string value;
    std::size_t p = pos_ + 1;
    while (true) {
      if (p >= text_.size() || text_[p] == '\n') fail(t, "unterminated string");
      char d = text_[p];
      if (d == '"') break;
      if (d == '\\') {
        if (p + 1 >= text_.size() || (text_[p + 1] != '"' && text_[p + 1] != '\\')) {
          Token at = t;
          at.col = column_of(p);
          fail(at, "unsupported escape sequence");
        }
        value += text_[p + 1];
        p += 2;
        continue;
      }
      value += d;
      ++p;
    }
    t.kind = Tok::String;
    t.text = std::move(value);
    pos_ = p + 1;
    return t;
  }
  if (std::isdigit(static_cast<unsigned char>(c))) {
    std::size_t p = pos_;
    while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
    t.kind = Tok::Number;
    t.text = std::string(text_.substr(pos_, p - pos_));
    pos_ = p;
    return t;
  }
  if (ident_start(c)) {
    std::size_t p = pos_;
    while (p < text_.size() && ident_char(text_[p])) ++p;
    t.text = std::string(text_.substr(pos_, p - pos_));
    t.kind = Tok::Ident;
    if (p < text_.size() && text_[p] == ':') {
      t.kind = Tok::Label;
      ++p;
    } else if (p + 1 < text_.size() && (text_[p] == '*' || text_[p] == '+' || text_[p] == '?') &&
               text_[p + 1] == ':') {
      t.kind = Tok::Label;
      t.quant = text_[p];
      p += 2;
    }
    pos_ = p;
    return t;
  }
  fail(t, std::string("unexpected character '") + c + "'");
}

const Token& Lexer::peek() {
  if (!peeked_) {
    peek_pos_ = pos_;
    peek_line_ = line_;
    peek_line_begin_ = line_begin_;
    peeked_ = lex();
  }
  return *peeked_;
}

Token Lexer::next() {
  peek();
  Token t = std::move(*peeked_);
  peeked_.reset();
  return t;
}

void Lexer::unpeek() {
  if (!peeked_) return;
  peeked_.reset();
  pos_ = peek_pos_;
  line_ = peek_line_;
  line_begin_ = peek_line_begin_;
}

bool Lexer::at_ident(std::string_view text) {
  const Token& t = peek();
  return t.kind == Tok::Ident && t.text == text;
}

Token Lexer::expect(Tok kind, std::string_view what) {
  const Token& t = peek();
  if (t.kind != kind) {
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    fail(t, "expected " + std::string(what) + ", found " + got);
  }
  return next();
}

std::vector<std::string> Lexer::take_comments() {
  std::vector<std::string> out;
  out.swap(comments_);
  return out;
}

Token Lexer::read_atom() {
  unpeek();
  skip_blanks_and_comments();
  Token t;
  t.offset = pos_;
  t.line = line_;
  t.col = column_of(pos_);
  t.line_start = first_on_line(pos_);
  if (pos_ >= text_.size()) fail(t, "expected a value, found end of input");
  std::size_t p = pos_;
  while (p < text_.size() && !blank(text_[p]) && text_[p] != '\n') ++p;
  t.kind = Tok::Ident;
  t.text = std::string(text_.substr(pos_, p - pos_));
  pos_ = p;
  return t;
}

std::vector<RawLine> Lexer::read_lines_until(const std::function<bool(std::string_view)>& stop) {
  unpeek();
  std::size_t eol = text_.find('\n', pos_);
  if (eol == std::string_view::npos) eol = text_.size();
  std::string_view rest = trim(strip_comment(text_.substr(pos_, eol - pos_)));
  if (!rest.empty()) {
    Token at;
    at.line = line_;
    at.col = column_of(pos_);
    fail(at, "expected a line break before the clause body");
  }
  if (eol == text_.size()) {
    pos_ = eol;
    return {};
  }
  pos_ = eol + 1;
  ++line_;
  line_begin_ = pos_;

  std::vector<RawLine> lines;
  while (pos_ < text_.size()) {
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    std::string_view line = text_.substr(pos_, end - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (stop(line)) break;
    lines.push_back({line_, std::string(line)});
    if (end == text_.size()) {
      pos_ = end;
      break;
    }
    pos_ = end + 1;
    ++line_;
    line_begin_ = pos_;
  }
  return lines;
}

void Lexer::fail(const Token& at, const std::string& message) const {
  throw SyntaxError(at.line, at.col, message);
}

void Lexer::fail_here(const std::string& message) const {
  throw SyntaxError(line_, column_of(pos_), message);
}

}  // namespace bugfix::detail
