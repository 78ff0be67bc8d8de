#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "reslim/error.hpp"
#include "reslim/rational.hpp"
#include "reslim/resource_vector.hpp"

namespace reslim {

/// Ordered set of glyphs. A glyph is an identifier, not necessarily a
/// single character ("->" and "Thm[...]" are glyphs of the statement
/// alphabet).
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> glyphs) {
    for (auto& g : glyphs) add(std::move(g));
  }

  /// Appends a glyph; a duplicate is ignored. Returns its index.
  std::size_t add(std::string glyph) {
    if (glyph.empty()) throw InvalidValue("empty glyph");
    if (auto it = index_.find(glyph); it != index_.end()) return it->second;
    index_.emplace(glyph, glyphs_.size());
    glyphs_.push_back(std::move(glyph));
    return glyphs_.size() - 1;
  }

  std::size_t size() const noexcept { return glyphs_.size(); }
  const std::string& glyph(std::size_t i) const { return glyphs_.at(i); }
  const std::vector<std::string>& glyphs() const noexcept { return glyphs_; }

  std::optional<std::size_t> index_of(std::string_view glyph) const {
    auto it = index_.find(std::string(glyph));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(std::string_view glyph) const { return index_of(glyph).has_value(); }

  /// Alphabets with fewer than two glyphs cannot carry a numeral system.
  void require_usable() const {
    if (size() < 2) throw InvalidValue("alphabet needs at least 2 symbols");
  }

 private:
  std::vector<std::string> glyphs_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// A finite symbol string over an alphabet, stored as glyph indices.
class Expression {
 public:
  Expression() = default;
  explicit Expression(std::vector<std::size_t> symbols) : symbols_(std::move(symbols)) {}

  /// Builds from glyph names; every glyph must belong to `alphabet`.
  static Expression from_glyphs(const Alphabet& alphabet, const std::vector<std::string>& glyphs) {
    std::vector<std::size_t> out;
    out.reserve(glyphs.size());
    for (const auto& g : glyphs) {
      auto i = alphabet.index_of(g);
      if (!i) throw ParseError("symbol '" + g + "' is not in the alphabet");
      out.push_back(*i);
    }
    return Expression(std::move(out));
  }

  /// Tokenizes plain text by greedy longest glyph match.
  static Expression parse(const Alphabet& alphabet, std::string_view text) {
    std::size_t longest = 0;
    for (const auto& g : alphabet.glyphs()) longest = std::max(longest, g.size());
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
      bool matched = false;
      for (std::size_t len = std::min(longest, text.size() - pos); len > 0; --len) {
        if (auto i = alphabet.index_of(text.substr(pos, len))) {
          out.push_back(*i);
          pos += len;
          matched = true;
          break;
        }
      }
      if (!matched)
        throw ParseError("text '" + std::string(text) + "' has a symbol outside the alphabet at offset " +
                         std::to_string(pos));
    }
    return Expression(std::move(out));
  }

  std::size_t length() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  const std::vector<std::size_t>& symbols() const noexcept { return symbols_; }

  std::string render(const Alphabet& alphabet) const {
    std::string out;
    for (auto s : symbols_) out += alphabet.glyph(s);
    return out;
  }

  friend bool operator==(const Expression&, const Expression&) = default;

 private:
  std::vector<std::size_t> symbols_;
};

/// Per-symbol creation/display cost, maintenance energy and the affine
/// per-length overhead of the fixed creation path.
struct CostParameters {
  ResourceVector delta;          // cost of creating (or displaying) one symbol
  Rational delta_energy{0};      // energy per symbol per unit time of maintenance
  ResourceVector overhead_base;  // overhead(n) = base + slope * n
  ResourceVector overhead_slope;

  static CostParameters uniform(std::size_t d, const Rational& delta, const Rational& delta_energy) {
    return CostParameters{ResourceVector::uniform(d, delta), delta_energy, ResourceVector::zero(d),
                          ResourceVector::zero(d)};
  }

  std::size_t dimension() const { return delta.dimension(); }

  void validate() const {
    detail::require_same_dimension(delta, overhead_base);
    detail::require_same_dimension(delta, overhead_slope);
    if (delta_energy < 0) throw InvalidValue("delta_energy is negative");
  }

  Rational overhead(std::size_t i, const Rational& length) const {
    return overhead_base[i] + overhead_slope[i] * length;
  }
};

/// Resources needed to create, display and maintain `x` for `m` time
/// intervals. The instruction string is bounded by L(X), so creation and
/// display each contribute L(X)·Δ; maintenance lands on energy only.
inline ResourceVector expression_cost(std::size_t length, std::size_t m, const CostParameters& cp) {
  const Rational len(length);
  std::vector<Rational> c(cp.delta.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = len * cp.delta[i] + cp.overhead(i, len) + len * cp.delta[i];
    if (i == cp.delta.energy_index()) c[i] += Rational(m) * len * cp.delta_energy;
  }
  return ResourceVector(std::move(c));
}

inline ResourceVector expression_cost(const Expression& x, std::size_t m, const CostParameters& cp) {
  return expression_cost(x.length(), m, cp);
}

/// Maximum expression length, or no finite bound.
class LengthBound {
 public:
  static LengthBound unbounded() { return LengthBound(); }
  static LengthBound finite(std::size_t n) { return LengthBound(n); }

  bool is_finite() const noexcept { return n_.has_value(); }
  std::size_t value() const { return n_.value(); }

  bool admits(std::size_t length) const { return !n_ || length <= *n_; }

  /// Caps an unbounded or larger value at `limit`.
  std::size_t clamp(std::size_t limit) const { return n_ ? std::min(*n_, limit) : limit; }

  std::string str() const { return n_ ? std::to_string(*n_) : std::string("unbounded"); }

  friend bool operator==(const LengthBound&, const LengthBound&) = default;

  /// Unbounded is the top element.
  friend bool operator<=(const LengthBound& a, const LengthBound& b) {
    if (!b.n_) return true;
    if (!a.n_) return false;
    return *a.n_ <= *b.n_;
  }

  friend LengthBound min(const LengthBound& a, const LengthBound& b) { return a <= b ? a : b; }

 private:
  LengthBound() = default;
  explicit LengthBound(std::size_t n) : n_(n) {}
  std::optional<std::size_t> n_;
};

namespace detail {

// Largest n >= 0 with pred(n), given pred is monotone decreasing
// (true then false). Returns nullopt when pred never fails below the
// search ceiling, which callers only reach for genuinely unbounded inputs.
template <class Pred>
std::optional<std::size_t> largest_satisfying(Pred pred) {
  if (!pred(1)) return 0;
  std::size_t lo = 1, hi = 2;
  constexpr std::size_t ceiling = std::size_t(1) << 62;
  while (pred(hi)) {
    lo = hi;
    if (hi >= ceiling) return std::nullopt;
    hi *= 2;
  }
  while (hi - lo > 1) {
    std::size_t mid = lo + (hi - lo) / 2;
    (pred(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace detail

/// N_i: the largest n with n·Δ_i + overhead_i(n) + duration·n·δ_E·[i is energy] <= r_i.
/// Returns 0 when even n = 1 does not fit; unbounded when component i
/// costs nothing per symbol.
inline LengthBound max_length_component(std::size_t i, const ResourceVector& r, const Rational& duration,
                                        const CostParameters& cp) {
  detail::require_same_dimension(r, cp.delta);
  const bool energy = i == r.energy_index();
  const Rational per_symbol = cp.delta[i] + cp.overhead_slope[i] + (energy ? duration * cp.delta_energy : Rational(0));
  if (cp.overhead_base[i] > r[i]) return LengthBound::finite(0);
  if (per_symbol == 0) return LengthBound::unbounded();
  // Affine in n: closed form.
  return LengthBound::finite(
      static_cast<std::size_t>(floor_rational((r[i] - cp.overhead_base[i]) / per_symbol)));
}

inline LengthBound max_length_component(std::size_t i, const ResourceVector& r, const CostParameters& cp) {
  return max_length_component(i, r, r[r.time_index()], cp);
}

/// min_i N_i with the maintenance duration fixed at `duration`.
inline LengthBound max_length_at_horizon(const ResourceVector& r, const Rational& duration,
                                         const CostParameters& cp) {
  LengthBound n = LengthBound::unbounded();
  for (std::size_t i = 0; i < r.size(); ++i) n = min(n, max_length_component(i, r, duration, cp));
  return n;
}

/// N(r): the longest expression renderable with at most r resources.
///
/// Maintenance lasts for the time allotted, but a holder of r may use any
/// smaller allotment, so the bound is the best over sub-budgets r'' <= r
/// of min_i N_i(r''). The optimum maintains the expression for exactly
/// its own creation time, which gives the per-n test below. The bound is
/// monotone in r; at the full horizon it agrees with
/// max_length_at_horizon whenever time is not the slack component.
inline LengthBound max_length(const ResourceVector& r, const CostParameters& cp) {
  detail::require_same_dimension(r, cp.delta);
  const std::size_t t = r.time_index();
  const std::size_t e = r.energy_index();
  auto component_cost = [&](std::size_t i, const Rational& n) {
    return n * cp.delta[i] + cp.overhead(i, n);
  };
  auto fits = [&](std::size_t n_int) {
    const Rational n(n_int);
    for (std::size_t i = 0; i < r.size(); ++i) {
      Rational need = component_cost(i, n);
      if (i == e) need += component_cost(t, n) * n * cp.delta_energy;
      if (need > r[i]) return false;
    }
    return true;
  };
  if (!fits(0)) return LengthBound::finite(0);
  bool grows = false;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (cp.delta[i] + cp.overhead_slope[i] != 0) grows = true;
  if (!grows) return LengthBound::unbounded();
  auto n = detail::largest_satisfying(fits);
  return n ? LengthBound::finite(*n) : LengthBound::unbounded();
}

inline bool in_language(std::size_t length, const ResourceVector& r, const CostParameters& cp) {
  return max_length(r, cp).admits(length);
}

inline bool in_language(const Expression& x, const ResourceVector& r, const CostParameters& cp) {
  return in_language(x.length(), r, cp);
}

/// Number of distinct expressions of length at most n over k symbols.
inline BigInt expression_count(std::size_t k, std::size_t n) {
  BigInt total = 0, power = 1;
  for (std::size_t len = 0; len <= n; ++len) {
    total += power;
    power *= k;
  }
  return total;
}

}  // namespace reslim
