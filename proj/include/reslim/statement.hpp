#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "reslim/error.hpp"
#include "reslim/expression.hpp"

namespace reslim {

/// Propositional formula over world atoms. Immutable; copies share
/// structure.
///
/// Text grammar (whitespace insignificant):
///
///     S := atom | '!' S | '(' S '&' S ')' | '(' S '|' S ')' | '(' S '->' S ')'
///     atom := [A-Za-z_][A-Za-z0-9_]* ( '[' any-but-']' ']' )?
///
/// The rendered length L(S) counts glyphs: every atom, connective and
/// parenthesis is one symbol.
class Statement {
 public:
  enum class Kind : std::uint8_t { Atom, Not, And, Or, Implies };

  static Statement atom(std::string id) {
    if (id.empty()) throw InvalidValue("empty atom id");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->atom = std::move(id);
    n->length = 1;
    return Statement(std::move(n));
  }
  static Statement negation(const Statement& s) { return unary(s); }
  static Statement conjunction(const Statement& a, const Statement& b) { return binary(Kind::And, a, b); }
  static Statement disjunction(const Statement& a, const Statement& b) { return binary(Kind::Or, a, b); }
  static Statement implication(const Statement& a, const Statement& b) { return binary(Kind::Implies, a, b); }

  static Statement parse(std::string_view text);

  Kind kind() const noexcept { return node_->kind; }
  bool is_atom() const noexcept { return kind() == Kind::Atom; }
  const std::string& atom_id() const { return node_->atom; }
  const Statement& operand() const { return node_->children.at(0); }
  const Statement& lhs() const { return node_->children.at(0); }
  const Statement& rhs() const { return node_->children.at(1); }

  /// Rendered length in glyphs.
  std::size_t length() const noexcept { return node_->length; }

  /// Canonical text, e.g. "(A -> !B)".
  std::string render() const {
    std::string out;
    render_into(out);
    return out;
  }

  /// Glyph sequence of the rendering.
  std::vector<std::string> glyphs() const {
    std::vector<std::string> out;
    out.reserve(length());
    glyphs_into(out);
    return out;
  }

  /// Distinct atom ids, sorted.
  std::set<std::string> atoms() const {
    std::set<std::string> out;
    collect_atoms(out);
    return out;
  }

  /// Classical evaluation under `truth`.
  bool evaluate(const std::function<bool(const std::string&)>& truth) const {
    switch (kind()) {
      case Kind::Atom: return truth(atom_id());
      case Kind::Not: return !operand().evaluate(truth);
      case Kind::And: return lhs().evaluate(truth) && rhs().evaluate(truth);
      case Kind::Or: return lhs().evaluate(truth) || rhs().evaluate(truth);
      case Kind::Implies: return !lhs().evaluate(truth) || rhs().evaluate(truth);
    }
    return false;
  }

  friend bool operator==(const Statement& a, const Statement& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.length() != b.length()) return false;
    if (a.is_atom()) return a.atom_id() == b.atom_id();
    const auto& ca = a.node_->children;
    const auto& cb = b.node_->children;
    for (std::size_t i = 0; i < ca.size(); ++i)
      if (!(ca[i] == cb[i])) return false;
    return true;
  }

  /// Canonical order: shorter first, then by glyph sequence.
  friend std::strong_ordering operator<=>(const Statement& a, const Statement& b) {
    if (auto c = a.length() <=> b.length(); c != 0) return c;
    if (a == b) return std::strong_ordering::equal;
    const auto ga = a.glyphs();
    const auto gb = b.glyphs();
    return ga <=> gb;
  }

 private:
  struct Node {
    Kind kind{Kind::Atom};
    std::string atom;
    std::vector<Statement> children;
    std::size_t length{0};
  };

  explicit Statement(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Statement unary(const Statement& s) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Not;
    n->children = {s};
    n->length = s.length() + 1;
    return Statement(std::move(n));
  }

  static Statement binary(Kind k, const Statement& a, const Statement& b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->children = {a, b};
    n->length = a.length() + b.length() + 3;
    return Statement(std::move(n));
  }

  static const char* connective(Kind k) {
    switch (k) {
      case Kind::And: return "&";
      case Kind::Or: return "|";
      case Kind::Implies: return "->";
      default: return "";
    }
  }

  void render_into(std::string& out) const {
    switch (kind()) {
      case Kind::Atom: out += atom_id(); return;
      case Kind::Not:
        out += '!';
        operand().render_into(out);
        return;
      default:
        out += '(';
        lhs().render_into(out);
        out += ' ';
        out += connective(kind());
        out += ' ';
        rhs().render_into(out);
        out += ')';
    }
  }

  void glyphs_into(std::vector<std::string>& out) const {
    switch (kind()) {
      case Kind::Atom: out.push_back(atom_id()); return;
      case Kind::Not:
        out.emplace_back("!");
        operand().glyphs_into(out);
        return;
      default:
        out.emplace_back("(");
        lhs().glyphs_into(out);
        out.emplace_back(connective(kind()));
        rhs().glyphs_into(out);
        out.emplace_back(")");
    }
  }

  void collect_atoms(std::set<std::string>& out) const {
    if (is_atom()) {
      out.insert(atom_id());
      return;
    }
    for (const auto& c : node_->children) c.collect_atoms(out);
  }

  std::shared_ptr<const Node> node_;
};

/// Glyphs shared by every statement alphabet, in their fixed order.
inline const std::vector<std::string>& connective_glyphs() {
  static const std::vector<std::string> g{"(", ")", "!", "&", "|", "->"};
  return g;
}

/// Connectives followed by the given atoms in order.
inline Alphabet statement_alphabet(const std::vector<std::string>& atoms) {
  Alphabet a(connective_glyphs());
  for (const auto& id : atoms) a.add(id);
  return a;
}

inline Expression to_expression(const Statement& s, const Alphabet& alphabet) {
  return Expression::from_glyphs(alphabet, s.glyphs());
}

namespace detail {

class StatementParser {
 public:
  explicit StatementParser(std::string_view text, bool patterns = false) : text_(text), patterns_(patterns) {}

  Statement parse_all() {
    Statement s = parse();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("statement '" + std::string(text_) + "': " + why + " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(std::string_view tok) {
    skip_space();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  Statement parse() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (consume("!")) return Statement::negation(parse());
    if (consume("(")) {
      Statement a = parse();
      Statement::Kind k;
      if (consume("&")) k = Statement::Kind::And;
      else if (consume("|")) k = Statement::Kind::Or;
      else if (consume("->")) k = Statement::Kind::Implies;
      else fail("expected '&', '|' or '->'");
      Statement b = parse();
      if (!consume(")")) fail("expected ')'");
      switch (k) {
        case Statement::Kind::And: return Statement::conjunction(a, b);
        case Statement::Kind::Or: return Statement::disjunction(a, b);
        default: return Statement::implication(a, b);
      }
    }
    return parse_atom();
  }

  Statement parse_atom() {
    auto ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    const std::size_t start = pos_;
    if (patterns_ && text_[pos_] == '?') ++pos_;
    if (pos_ >= text_.size() || (!ident_start(text_[pos_]) && !(patterns_ && pos_ > start))) fail("expected an atom");
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '[') {
      auto close = text_.find(']', pos_);
      if (close == std::string_view::npos) fail("unterminated '['");
      pos_ = close + 1;
    }
    return Statement::atom(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  bool patterns_;
  std::size_t pos_{0};
};

// Like Statement::parse, but also accepts metavariables "?name".
inline Statement parse_pattern(std::string_view text) { return StatementParser(text, true).parse_all(); }

}  // namespace detail

inline Statement Statement::parse(std::string_view text) { return detail::StatementParser(text).parse_all(); }

/// Right-nested conjunction S1 & (S2 & (...)). Requires a nonempty list.
inline Statement conjoin(const std::vector<Statement>& parts) {
  if (parts.empty()) throw EmptyInput("conjunction of nothing");
  Statement acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = Statement::conjunction(parts[i], acc);
  return acc;
}

/// Every statement over `atoms` with rendered length at most `max_len`,
/// in canonical order.
inline std::vector<Statement> enumerate_statements(const std::vector<std::string>& atoms, std::size_t max_len) {
  std::vector<std::vector<Statement>> by_len(max_len + 1);
  for (std::size_t n = 1; n <= max_len; ++n) {
    auto& out = by_len[n];
    if (n == 1)
      for (const auto& a : atoms) out.push_back(Statement::atom(a));
    for (const auto& x : by_len[n - 1]) out.push_back(Statement::negation(x));
    for (std::size_t l = 1; n >= 3 && l + 1 <= n - 3; ++l)
      for (const auto& a : by_len[l])
        for (const auto& b : by_len[n - 3 - l]) {
          out.push_back(Statement::conjunction(a, b));
          out.push_back(Statement::disjunction(a, b));
          out.push_back(Statement::implication(a, b));
        }
    std::sort(out.begin(), out.end());
  }
  std::vector<Statement> all;
  for (auto& v : by_len) all.insert(all.end(), v.begin(), v.end());
  return all;
}

}  // namespace reslim
