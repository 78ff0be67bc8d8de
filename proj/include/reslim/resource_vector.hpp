#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "reslim/error.hpp"
#include "reslim/rational.hpp"

namespace reslim {

/// A budget (or spend) of space, time, momentum and energy.
///
/// Layout for dimension d is 2d+2 components: indices [0, d) are space,
/// d is time, [d+1, 2d] momentum and 2d+1 energy. Every component is a
/// nonnegative exact rational. d = 0 is permitted and gives the
/// two-component (time, energy) plane used in worked examples.
class ResourceVector {
 public:
  /// Zero vector of dimension d.
  explicit ResourceVector(std::size_t d = 1) : c_(2 * d + 2) {}

  explicit ResourceVector(std::vector<Rational> components) : c_(std::move(components)) {
    validate();
  }

  ResourceVector(std::initializer_list<Rational> components) : c_(components) { validate(); }

  static ResourceVector zero(std::size_t d) { return ResourceVector(d); }

  /// Every component set to `value`.
  static ResourceVector uniform(std::size_t d, const Rational& value) {
    return ResourceVector(std::vector<Rational>(2 * d + 2, value));
  }

  std::size_t size() const noexcept { return c_.size(); }
  std::size_t dimension() const noexcept { return c_.size() / 2 - 1; }
  std::size_t time_index() const noexcept { return dimension(); }
  std::size_t energy_index() const noexcept { return c_.size() - 1; }

  const Rational& operator[](std::size_t i) const { return c_.at(i); }
  const std::vector<Rational>& components() const noexcept { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
  }

  /// Componentwise, with `value` replacing component i.
  ResourceVector with(std::size_t i, const Rational& value) const {
    auto copy = c_;
    copy.at(i) = value;
    return ResourceVector(std::move(copy));
  }

  friend bool operator==(const ResourceVector&, const ResourceVector&) = default;

  /// Lexicographic order over components. Used only for canonical output
  /// ordering; the resource order is `leq`.
  friend bool lex_less(const ResourceVector& a, const ResourceVector& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
  }

 private:
  void validate() const {
    if (c_.size() < 2 || c_.size() % 2 != 0)
      throw DimensionMismatch("resource vector needs 2d+2 components, got " +
                              std::to_string(c_.size()));
    for (const auto& q : c_)
      if (q < 0) throw InvalidValue("resource component is negative: " + format_rational(q));
  }

  std::vector<Rational> c_;
};

enum class OrderRelation { LessEq, GreaterEq, Equal, Incomparable };

inline const char* to_string(OrderRelation r) {
  switch (r) {
    case OrderRelation::LessEq: return "LessEq";
    case OrderRelation::GreaterEq: return "GreaterEq";
    case OrderRelation::Equal: return "Equal";
    case OrderRelation::Incomparable: return "Incomparable";
  }
  return "?";
}

namespace detail {

inline void require_same_dimension(const ResourceVector& a, const ResourceVector& b) {
  if (a.size() != b.size())
    throw DimensionMismatch("resource vectors of different dimension (" +
                            std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
}

template <class Op>
ResourceVector zip(const ResourceVector& a, const ResourceVector& b, Op op) {
  require_same_dimension(a, b);
  std::vector<Rational> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(op(a[i], b[i]));
  return ResourceVector(std::move(out));
}

}  // namespace detail

/// a <= b in every component.
inline bool leq(const ResourceVector& a, const ResourceVector& b) {
  detail::require_same_dimension(a, b);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

/// leq(a, b) and a != b.
inline bool strictly_less(const ResourceVector& a, const ResourceVector& b) {
  return leq(a, b) && a != b;
}

inline OrderRelation compare(const ResourceVector& a, const ResourceVector& b) {
  const bool le = leq(a, b);
  const bool ge = leq(b, a);
  if (le && ge) return OrderRelation::Equal;
  if (le) return OrderRelation::LessEq;
  if (ge) return OrderRelation::GreaterEq;
  return OrderRelation::Incomparable;
}

inline ResourceVector add(const ResourceVector& a, const ResourceVector& b) {
  return detail::zip(a, b, [](const Rational& x, const Rational& y) { return Rational(x + y); });
}

/// a - b, clamped at zero per component.
inline ResourceVector sub_saturating(const ResourceVector& a, const ResourceVector& b) {
  return detail::zip(a, b, [](const Rational& x, const Rational& y) {
    return x > y ? Rational(x - y) : Rational(0);
  });
}

inline ResourceVector join(const ResourceVector& a, const ResourceVector& b) {
  return detail::zip(a, b, [](const Rational& x, const Rational& y) { return std::max(x, y); });
}

inline ResourceVector meet(const ResourceVector& a, const ResourceVector& b) {
  return detail::zip(a, b, [](const Rational& x, const Rational& y) { return std::min(x, y); });
}

inline ResourceVector operator+(const ResourceVector& a, const ResourceVector& b) { return add(a, b); }

/// Pareto-minimal members of `vs`: those not strictly dominated by any
/// other member. Duplicates collapse. Output is sorted lexicographically
/// so the result is canonical.
inline std::vector<ResourceVector> pareto_min(const std::vector<ResourceVector>& vs) {
  if (vs.empty()) throw EmptyInput("pareto_min of an empty set");
  for (const auto& v : vs) detail::require_same_dimension(vs.front(), v);
  std::vector<ResourceVector> sorted = vs;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return lex_less(a, b); });
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  // A dominator of v is lexicographically smaller, so one forward pass
  // against the accepted front suffices.
  std::vector<ResourceVector> front;
  for (const auto& v : sorted) {
    bool dominated = std::any_of(front.begin(), front.end(),
                                 [&](const ResourceVector& f) { return leq(f, v); });
    if (!dominated) front.push_back(v);
  }
  return front;
}

/// True when some member of `frontier` fits under `budget`.
inline bool any_fits(const std::vector<ResourceVector>& frontier, const ResourceVector& budget) {
  return std::any_of(frontier.begin(), frontier.end(),
                     [&](const ResourceVector& f) { return leq(f, budget); });
}

/// "[1, 3/2, 0, 4]"
inline std::string format_vector(const ResourceVector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_rational(v[i]);
  }
  return out + "]";
}

/// Compact form used inside identifiers: "1,3/2,0,4".
inline std::string format_vector_compact(const ResourceVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_rational(v[i]);
  }
  return out;
}

inline ResourceVector parse_vector(const std::vector<std::string>& parts) {
  std::vector<Rational> c;
  c.reserve(parts.size());
  for (const auto& p : parts) c.push_back(parse_rational(p));
  return ResourceVector(std::move(c));
}

}  // namespace reslim
