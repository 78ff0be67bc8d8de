#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "reslim/expression.hpp"
#include "reslim/resource_vector.hpp"
#include "reslim/statement.hpp"
#include "reslim/verification.hpp"
#include "reslim/world.hpp"

namespace reslim::checks {

using Rng = std::mt19937_64;

/// Components are k/den with k in [0, max*den]; small denominators make
/// ties and equal components common.
inline ResourceVector random_vector(Rng& rng, std::size_t d, int max, int den = 2) {
  std::uniform_int_distribution<int> k(0, max * den);
  std::vector<Rational> c(2 * d + 2);
  for (auto& q : c) q = Rational(k(rng), den);
  return ResourceVector(std::move(c));
}

inline Statement random_statement(Rng& rng, const std::vector<std::string>& atoms, int depth) {
  std::uniform_int_distribution<int> kind(0, depth > 0 ? 4 : 0);
  std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
  switch (kind(rng)) {
    case 0: return Statement::atom(atoms[pick(rng)]);
    case 1: return Statement::negation(random_statement(rng, atoms, depth - 1));
    case 2: return Statement::conjunction(random_statement(rng, atoms, depth - 1), random_statement(rng, atoms, depth - 1));
    case 3: return Statement::disjunction(random_statement(rng, atoms, depth - 1), random_statement(rng, atoms, depth - 1));
    default: return Statement::implication(random_statement(rng, atoms, depth - 1), random_statement(rng, atoms, depth - 1));
  }
}

struct Tally {
  std::size_t cases{0};
  std::size_t violations{0};
  std::vector<std::string> examples;  // first few violations

  void record(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    ++violations;
    if (examples.size() < 5) examples.push_back(what);
  }
};

/// Reflexivity, antisymmetry, transitivity of leq and the lattice laws
/// for join and meet, over random triples.
inline Tally order_laws(Rng& rng, std::size_t trials, std::size_t d) {
  Tally t;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto a = random_vector(rng, d, 3), b = random_vector(rng, d, 3), c = random_vector(rng, d, 3);
    const std::string tag = format_vector(a) + " " + format_vector(b) + " " + format_vector(c);
    bool ok = leq(a, a);
    ok = ok && (!(leq(a, b) && leq(b, a)) || a == b);
    ok = ok && (!(leq(a, b) && leq(b, c)) || leq(a, c));
    ok = ok && join(a, meet(a, b)) == a && meet(a, join(a, b)) == a;
    ok = ok && join(a, b) == join(b, a) && meet(a, b) == meet(b, a);
    ok = ok && join(a, a) == a && meet(a, a) == a;
    ok = ok && leq(meet(a, b), a) && leq(a, join(a, b));
    ok = ok && (compare(a, b) == OrderRelation::Equal) == (leq(a, b) && leq(b, a));
    t.record(ok, tag);
  }
  return t;
}

/// max(r(S), r(T)) <= r(S op T) <= r(S) + r(T) for op in {&, |}, per
/// covering strategy and at the level of frontiers.
inline Tally connective_bounds(const Statement& s, const Statement& t, const World& w) {
  Tally tally;
  const auto conj = Statement::conjunction(s, t);
  const auto disj = Statement::disjunction(s, t);
  for (const auto& strat : detail::all_strategies(w, conj.atoms())) {
    const auto cs = strategy_cost(s, strat, w), ct = strategy_cost(t, strat, w);
    for (const auto& both : {conj, disj}) {
      const auto c = strategy_cost(both, strat, w);
      tally.record(leq(join(cs, ct), c) && leq(c, add(cs, ct)), both.render());
    }
  }
  const auto fs = min_cost(s, w).frontier, ft = min_cost(t, w).frontier;
  for (const auto& both : {conj, disj}) {
    const auto fb = min_cost(both, w).frontier;
    for (const auto& p : fb)
      tally.record(any_fits(fs, p) && any_fits(ft, p), "lower " + both.render());
    for (const auto& a : fs)
      for (const auto& b : ft) tally.record(any_fits(fb, add(a, b)), "upper " + both.render());
  }
  return tally;
}

inline bool negation_invariant(const Statement& s, const World& w) {
  return min_cost(s, w).frontier == min_cost(Statement::negation(s), w).frontier;
}

/// N(r) <= N(r') and L_r subset of L_r' for random r <= r'.
inline Tally length_monotonicity(Rng& rng, std::size_t trials, const CostParameters& cp) {
  Tally t;
  const std::size_t d = cp.dimension();
  std::uniform_int_distribution<std::size_t> len(0, 40);
  for (std::size_t i = 0; i < trials; ++i) {
    const auto r = random_vector(rng, d, 20, 1);
    const auto r2 = add(r, random_vector(rng, d, 10, 1));
    const auto n = max_length(r, cp), n2 = max_length(r2, cp);
    bool ok = n <= n2;
    for (int k = 0; k < 5; ++k) {
      const std::size_t l = len(rng);
      ok = ok && (!in_language(l, r, cp) || in_language(l, r2, cp));
    }
    t.record(ok, format_vector(r) + " <= " + format_vector(r2));
  }
  return t;
}

}  // namespace reslim::checks
