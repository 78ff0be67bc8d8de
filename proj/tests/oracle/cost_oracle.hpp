#pragma once

// Reference verification cost: enumerate every subset of the procedure
// registry, keep those that determine each atom, charge each procedure
// once and each piece of equipment once, then drop dominated totals.

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "reslim/world.hpp"

namespace oracle {

inline std::vector<std::vector<reslim::Rational>> subset_costs(const reslim::World& w,
                                                               const std::set<std::string>& atoms) {
  const auto& ids = w.procedure_ids();
  const std::size_t k = w.dimension() * 2 + 2;
  std::vector<std::vector<reslim::Rational>> out;
  for (unsigned long mask = 0; mask < (1ul << ids.size()); ++mask) {
    std::set<std::string> covered, equipment;
    std::vector<reslim::Rational> c(k);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (!(mask >> i & 1)) continue;
      const auto& p = w.procedure(ids[i]);
      for (std::size_t j = 0; j < k; ++j) c[j] += p.implementation_cost[j];
      equipment.insert(p.equipment.begin(), p.equipment.end());
      if (const auto* t = w.true_purpose(ids[i]).truth_target()) covered.insert(*t);
    }
    bool ok = true;
    for (const auto& a : atoms) ok = ok && covered.count(a);
    if (!ok) continue;
    for (const auto& e : equipment)
      for (std::size_t j = 0; j < k; ++j) c[j] += w.equipment(e).construction_cost[j];
    out.push_back(c);
  }
  return out;
}

inline bool dominated_or_equal(const std::vector<reslim::Rational>& a, const std::vector<reslim::Rational>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] > a[i]) return false;
  return true;
}

/// Minimal elements, deduplicated, in lexicographic order.
inline std::vector<std::vector<reslim::Rational>> frontier(const reslim::World& w, const std::set<std::string>& atoms) {
  const auto all = subset_costs(w, atoms);
  std::set<std::vector<reslim::Rational>> keep;
  for (const auto& a : all) {
    bool minimal = true;
    for (const auto& b : all)
      if (b != a && dominated_or_equal(a, b)) minimal = false;
    if (minimal) keep.insert(a);
  }
  return {keep.begin(), keep.end()};
}

}  // namespace oracle
