#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <string>
#include <utility>
#include <vector>

#include "reslim/error.hpp"
#include "reslim/expression.hpp"
#include "reslim/resource_vector.hpp"
#include "reslim/theory.hpp"

namespace reslim {

/// Position of T_r' relative to T_r in the budget plane.
enum class Quadrant { Extension, Restriction, Equal, Unrelated };

inline const char* to_string(Quadrant q) {
  switch (q) {
    case Quadrant::Extension: return "Extension";
    case Quadrant::Restriction: return "Restriction";
    case Quadrant::Equal: return "Equal";
    case Quadrant::Unrelated: return "Unrelated";
  }
  return "?";
}

inline Quadrant classify_pair(const ResourceVector& r, const ResourceVector& r2) {
  switch (compare(r, r2)) {
    case OrderRelation::LessEq: return Quadrant::Extension;
    case OrderRelation::GreaterEq: return Quadrant::Restriction;
    case OrderRelation::Equal: return Quadrant::Equal;
    case OrderRelation::Incomparable: return Quadrant::Unrelated;
  }
  return Quadrant::Unrelated;
}

/// A sampled family of theories sharing everything but the budget.
class TheoryGrid {
 public:
  TheoryGrid(std::vector<ResourceVector> points, const Theory& prototype) : points_(std::move(points)) {
    if (points_.empty()) throw EmptyInput("empty grid");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      detail::require_same_dimension(points_[0], points_[i]);
      for (std::size_t j = 0; j < i; ++j)
        if (points_[i] == points_[j]) throw InvalidValue("duplicate grid point " + format_vector(points_[i]));
    }
    theories_.reserve(points_.size());
    for (const auto& p : points_) theories_.push_back(prototype.with_budget(p));
  }

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<ResourceVector>& points() const noexcept { return points_; }
  const ResourceVector& point(std::size_t i) const { return points_.at(i); }
  const Theory& theory(std::size_t i) const { return theories_.at(i); }

 private:
  std::vector<ResourceVector> points_;
  std::vector<Theory> theories_;
};

using Edge = std::pair<std::size_t, std::size_t>;

/// Hasse diagram of the grid under the resource order: i -> j when
/// T_j extends T_i with no grid point strictly between.
inline std::vector<Edge> extension_edges(const std::vector<ResourceVector>& points) {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (!strictly_less(points[i], points[j])) continue;
      bool covered = true;
      for (std::size_t k = 0; k < points.size() && covered; ++k)
        if (strictly_less(points[i], points[k]) && strictly_less(points[k], points[j])) covered = false;
      if (covered) out.emplace_back(i, j);
    }
  return out;
}

inline std::vector<Edge> extension_edges(const TheoryGrid& g) { return extension_edges(g.points()); }

/// Theorem sets per grid point, computed independently (concurrently
/// when asked) and returned in grid order.
inline std::vector<std::vector<Statement>> theorem_sets(const TheoryGrid& g, std::size_t size_bound,
                                                        bool parallel = false) {
  std::vector<std::vector<Statement>> out(g.size());
  if (!parallel) {
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = theorems_up_to(g.theory(i), size_bound);
    return out;
  }
  std::vector<std::future<std::vector<Statement>>> jobs;
  for (std::size_t i = 0; i < g.size(); ++i)
    jobs.push_back(std::async(std::launch::async, [&g, i, size_bound] { return theorems_up_to(g.theory(i), size_bound); }));
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = jobs[i].get();
  return out;
}

struct MonotonicityViolation {
  Edge edge;
  Statement lost;  // a theorem at the tail missing at the head
};

/// Every theorem at an edge's tail must be a theorem at its head.
inline std::vector<MonotonicityViolation> monotonicity_violations(const std::vector<Edge>& edges,
                                                                  const std::vector<std::vector<Statement>>& sets) {
  std::vector<MonotonicityViolation> out;
  for (const auto& e : edges) {
    const auto& head = sets.at(e.second);
    for (const auto& s : sets.at(e.first))
      if (!std::binary_search(head.begin(), head.end(), s)) out.push_back({e, s});
  }
  return out;
}

/// The two grid-relative first appearances of S: minimal points where it
/// is a theorem, and minimal points where it is merely expressible.
struct FirstAppearance {
  std::vector<ResourceVector> theorem;
  std::vector<ResourceVector> expressible;
};

inline FirstAppearance first_appearance(const Statement& s, const TheoryGrid& g) {
  std::vector<ResourceVector> th, ex;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Theory& t = g.theory(i);
    if (!t.language_bound().admits(s.length())) continue;
    ex.push_back(g.point(i));
    if (is_theorem(t, s)) th.push_back(g.point(i));
  }
  FirstAppearance out;
  if (!th.empty()) out.theorem = pareto_min(th);
  if (!ex.empty()) out.expressible = pareto_min(ex);
  return out;
}

/// N(r) and how many expressions over `alphabet_size` symbols fit in it.
struct LanguageSize {
  LengthBound n = LengthBound::unbounded();
  std::string expressions;  // decimal count, or "unbounded"
};

inline LanguageSize language_size(const ResourceVector& r, const CostParameters& cp, std::size_t alphabet_size) {
  LanguageSize out;
  out.n = max_length(r, cp);
  out.expressions = out.n.is_finite() ? expression_count(alphabet_size, out.n.value()).str() : "unbounded";
  return out;
}

}  // namespace reslim
