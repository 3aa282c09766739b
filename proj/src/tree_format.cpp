#include "bugfix/tree_format.hpp"

#include "lexer.hpp"

namespace bugfix {

using detail::Lexer;
using detail::Tok;

namespace {

std::size_t parse_number(Lexer& lex) {
  auto t = lex.expect(Tok::Number, "number");
  return std::stoul(t.text);
}

Point parse_point(Lexer& lex) {
  lex.expect(Tok::LBracket, "'['");
  Point p;
  p.row = parse_number(lex);
  lex.expect(Tok::Comma, "','");
  p.col = parse_number(lex);
  lex.expect(Tok::RBracket, "']'");
  return p;
}

Span parse_span(Lexer& lex) {
  auto at = lex.peek();
  Span s;
  s.start = parse_point(lex);
  lex.expect(Tok::Dash, "'-'");
  s.end = parse_point(lex);
  if (s.end < s.start) lex.fail(at, "span ends before it starts");
  return s;
}

UNode parse_node(Lexer& lex) {
  lex.expect(Tok::LParen, "'('");
  UNode node;
  node.name = lex.expect(Tok::Ident, "node name").text;
  if (lex.at(Tok::LBracket)) node.span = parse_span(lex);
  while (!lex.at(Tok::RParen)) {
    const auto& t = lex.peek();
    if (t.kind == Tok::String) {
      if (!node.children.empty()) lex.fail(t, "a node with children cannot carry leaf text");
      node.leaf = lex.next().text;
      if (!lex.at(Tok::RParen)) lex.fail(lex.peek(), "leaf text must close its node");
      break;
    }
    Child child;
    if (t.kind == Tok::Label) {
      if (t.quant) lex.fail(t, "quantifiers are not allowed in trees");
      child.field = lex.next().text;
    }
    if (!lex.at(Tok::LParen)) lex.fail(lex.peek(), "expected '(' to start a child node");
    child.node = parse_node(lex);
    node.children.push_back(std::move(child));
  }
  lex.expect(Tok::RParen, "')'");
  return node;
}

std::string point_text(const Point& p) {
  return "[" + std::to_string(p.row) + "," + std::to_string(p.col) + "]";
}

void write(const UNode& n, std::size_t indent, std::string& out) {
  out += "(" + n.name;
  if (n.span) out += " " + point_text(n.span->start) + "-" + point_text(n.span->end);
  if (n.leaf) out += " " + quote(*n.leaf);
  for (const Child& c : n.children) {
    out += "\n" + std::string(indent + 2, ' ');
    if (c.field) out += *c.field + ": ";
    write(c.node, indent + 2, out);
  }
  out += ")";
}

}  // namespace

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

UNode parse_tree(std::string_view text) {
  Lexer lex(text);
  UNode root = parse_node(lex);
  if (!lex.at(Tok::End)) lex.fail(lex.peek(), "unexpected input after the tree");
  return root;
}

std::string write_tree(const UNode& node) {
  std::string out;
  write(node, 0, out);
  out += "\n";
  return out;
}

}  // namespace bugfix
