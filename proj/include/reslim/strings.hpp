#pragma once

// Built-in string terms over the digits of a numeral base, usable inside
// atoms as Str[<term>=<term>]:
//   numeral      a nonempty digit string, e.g. 0110
//   cat(t,u)     concatenation
//   at(t,i)      the i-th symbol of t, 1-based; i is decimal
//   sub(t,a,b)   t with every symbol a replaced by b
//   len(t)       number of symbols of t, as a numeral in the base
//   val(t)       t without leading zeros ("0" for all zeros)
// Such an atom's truth is computed, never declared.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "reslim/error.hpp"

namespace reslim::strings {

inline constexpr std::string_view atom_prefix = "Str[";

inline bool is_string_atom(std::string_view id) {
  return id.size() > atom_prefix.size() && id.substr(0, atom_prefix.size()) == atom_prefix && id.back() == ']';
}

inline std::string to_numeral(std::size_t n, int base) {
  if (n == 0) return "0";
  std::string out;
  for (; n > 0; n /= base) out.insert(out.begin(), static_cast<char>('0' + n % base));
  return out;
}

namespace detail {

class TermEvaluator {
 public:
  TermEvaluator(std::string_view text, int base) : text_(text), base_(base) {
    if (base < 2 || base > 10) throw InvalidValue("string terms need a numeral base in [2, 10]");
  }

  std::string term() {
    if (pos_ < text_.size() && is_digit(text_[pos_])) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
      return std::string(text_.substr(start, pos_ - start));
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::islower(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string op(text_.substr(start, pos_ - start));
    expect('(');
    std::string out;
    if (op == "cat") {
      out = term();
      expect(',');
      out += term();
    } else if (op == "at") {
      const auto t = term();
      expect(',');
      const auto i = index();
      if (i < 1 || i > t.size()) fail("index " + std::to_string(i) + " outside a string of length " + std::to_string(t.size()));
      out = t.substr(i - 1, 1);
    } else if (op == "sub") {
      out = term();
      expect(',');
      const char a = symbol();
      expect(',');
      const char b = symbol();
      for (auto& c : out)
        if (c == a) c = b;
    } else if (op == "len") {
      out = to_numeral(term().size(), base_);
    } else if (op == "val") {
      const auto t = term();
      const auto nz = t.find_first_not_of('0');
      out = nz == std::string::npos ? "0" : t.substr(nz);
    } else {
      fail(op.empty() ? "expected a numeral or an operation" : "unknown operation '" + op + "'");
    }
    expect(')');
    return out;
  }

  bool equation() {
    const auto lhs = term();
    expect('=');
    const auto rhs = term();
    if (pos_ != text_.size()) fail("trailing input");
    return lhs == rhs;
  }

  std::string whole_term() {
    auto t = term();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  bool is_digit(char c) const { return c >= '0' && c < '0' + base_; }

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("string term '" + std::string(text_) + "' at " + std::to_string(pos_) + ": " + why);
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  char symbol() {
    if (pos_ >= text_.size() || !is_digit(text_[pos_])) fail("expected one symbol of the base");
    return text_[pos_++];
  }

  std::size_t index() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start || pos_ - start > 9) fail("expected a decimal index");
    return std::stoul(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  int base_;
  std::size_t pos_{0};
};

}  // namespace detail

/// Value of a term such as "cat(01,len(10))".
inline std::string evaluate(std::string_view term, int base) { return detail::TermEvaluator(term, base).whole_term(); }

/// Truth of "t=u" or of the atom "Str[t=u]".
inline bool holds(std::string_view equation, int base) {
  if (is_string_atom(equation))
    equation = equation.substr(atom_prefix.size(), equation.size() - atom_prefix.size() - 1);
  return detail::TermEvaluator(equation, base).equation();
}

/// The atom id for an equation, with whitespace removed.
inline std::string atom_id(std::string_view equation) {
  std::string out(atom_prefix);
  for (char c : equation)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out + "]";
}

}  // namespace reslim::strings
