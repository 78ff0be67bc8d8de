#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "reslim/error.hpp"
#include "reslim/expression.hpp"

namespace reslim {

/// Fixed-width positional code: symbol i of the alphabet becomes i written
/// in base b, left-padded to the width needed for the largest index.
/// A code is the concatenation of symbol codes, so decoding splits it
/// into width-sized chunks. Digits past 9 use lowercase letters.
class GodelMap {
 public:
  GodelMap(Alphabet alphabet, int base) : alphabet_(std::move(alphabet)), base_(base) {
    alphabet_.require_usable();
    if (base < 2 || base > 36) throw InvalidValue("numeral base must be in [2, 36]");
    width_ = 1;
    std::size_t capacity = static_cast<std::size_t>(base);
    while (capacity < alphabet_.size()) {
      capacity *= static_cast<std::size_t>(base);
      ++width_;
    }
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int base() const noexcept { return base_; }
  std::size_t width() const noexcept { return width_; }

  std::string encode(const Expression& x) const {
    std::string out;
    out.reserve(x.length() * width_);
    for (auto s : x.symbols()) {
      if (s >= alphabet_.size()) throw InvalidValue("symbol index out of range");
      std::string digits(width_, '0');
      for (std::size_t k = width_; k-- > 0;) {
        digits[k] = digit_char(static_cast<int>(s % static_cast<std::size_t>(base_)));
        s /= static_cast<std::size_t>(base_);
      }
      out += digits;
    }
    return out;
  }

  Expression decode(std::string_view code) const {
    if (code.size() % width_ != 0)
      throw MalformedCode("code length " + std::to_string(code.size()) + " is not a multiple of " +
                          std::to_string(width_));
    std::vector<std::size_t> symbols;
    symbols.reserve(code.size() / width_);
    for (std::size_t pos = 0; pos < code.size(); pos += width_) {
      std::size_t value = 0;
      for (std::size_t k = 0; k < width_; ++k) {
        const int v = digit_value(code[pos + k]);
        if (v < 0 || v >= base_)
          throw MalformedCode("character '" + std::string(1, code[pos + k]) + "' is not a base-" +
                              std::to_string(base_) + " digit");
        value = value * static_cast<std::size_t>(base_) + static_cast<std::size_t>(v);
      }
      if (value >= alphabet_.size())
        throw MalformedCode("chunk at offset " + std::to_string(pos) + " names no symbol");
      symbols.push_back(value);
    }
    return Expression(std::move(symbols));
  }

 private:
  static char digit_char(int v) { return static_cast<char>(v < 10 ? '0' + v : 'a' + (v - 10)); }
  static int digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    return -1;
  }

  Alphabet alphabet_;
  int base_;
  std::size_t width_{1};
};

}  // namespace reslim
