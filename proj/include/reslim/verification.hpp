#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "reslim/error.hpp"
#include "reslim/resource_vector.hpp"
#include "reslim/statement.hpp"
#include "reslim/world.hpp"

namespace reslim {

/// Which procedure verifies each atom. Equipment in `prebuilt` is taken
/// as already constructed (the sharing context).
struct VerificationStrategy {
  std::map<std::string, std::string> procedure_for;
  std::set<std::string> prebuilt;

  friend bool operator==(const VerificationStrategy&, const VerificationStrategy&) = default;
};

/// r(S): the Pareto frontier of verification costs, with one witness
/// strategy per frontier point (same index).
struct CostResult {
  std::vector<ResourceVector> frontier;
  std::vector<VerificationStrategy> witnesses;
};

namespace detail {

inline SpendLedger ledger_with(const World& w, const std::set<std::string>& prebuilt) {
  SpendLedger ledger(w.dimension());
  for (const auto& e : prebuilt) ledger.mark_built(e);
  return ledger;
}

// Cost of running the strategy's procedures for `atoms` on `ledger`,
// each distinct atom once, equipment built at most once.
inline ResourceVector replay(const World& w, const std::set<std::string>& atoms, const VerificationStrategy& strat,
                             SpendLedger& ledger) {
  ResourceVector total = ResourceVector::zero(w.dimension());
  for (const auto& a : atoms) {
    auto it = strat.procedure_for.find(a);
    if (it == strat.procedure_for.end()) throw UncoveredAtom("strategy does not cover atom '" + a + "'");
    const auto* target = w.true_purpose(it->second).truth_target();
    if (!target || *target != a)
      throw InvalidValue("procedure '" + it->second + "' does not determine the truth of '" + a + "'");
    total = add(total, procedure_cost(w, it->second, ledger));
  }
  return total;
}

// Every covering strategy for `atoms`, in registration order of the
// verifying procedures (first atom varies slowest).
inline std::vector<VerificationStrategy> all_strategies(const World& w, const std::set<std::string>& atoms) {
  std::vector<std::pair<std::string, std::vector<std::string>>> choices;
  for (const auto& a : atoms) {
    if (!w.has_atom(a)) throw UnknownAtom("unknown atom '" + a + "'");
    auto procs = w.verifiers_of_atom(a);
    if (procs.empty()) throw NoStrategy("no procedure determines the truth of '" + a + "'");
    choices.emplace_back(a, std::move(procs));
  }
  std::vector<VerificationStrategy> out;
  VerificationStrategy current;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == choices.size()) {
      out.push_back(current);
      return;
    }
    for (const auto& p : choices[i].second) {
      current.procedure_for[choices[i].first] = p;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace detail

/// r(S, P): resources to verify or refute S with the given procedures.
/// Depends only on the distinct atoms of S, so negation is free and
/// repeated subformulas are counted once.
inline ResourceVector strategy_cost(const Statement& s, const VerificationStrategy& strat, const World& w) {
  SpendLedger ledger = detail::ledger_with(w, strat.prebuilt);
  return detail::replay(w, s.atoms(), strat, ledger);
}

/// r(S) as a frontier, exhaustive over the procedure registry.
inline CostResult min_cost(const Statement& s, const World& w, const std::set<std::string>& prebuilt = {}) {
  const auto atoms = s.atoms();
  auto strategies = detail::all_strategies(w, atoms);
  std::vector<ResourceVector> costs;
  costs.reserve(strategies.size());
  for (auto& strat : strategies) {
    strat.prebuilt = prebuilt;
    costs.push_back(strategy_cost(s, strat, w));
  }
  CostResult result;
  result.frontier = pareto_min(costs);
  for (const auto& f : result.frontier) {
    for (std::size_t i = 0; i < costs.size(); ++i) {
      if (costs[i] == f) {
        result.witnesses.push_back(strategies[i]);
        break;
      }
    }
  }
  return result;
}

struct DomainVerdict {
  bool member{false};
  std::string diagnostic;  // empty unless the statement cannot be costed
};

/// S ∈ D_r: some frontier point of r(S) fits under r.
inline DomainVerdict in_domain_explained(const Statement& s, const ResourceVector& r, const World& w) {
  try {
    return DomainVerdict{any_fits(min_cost(s, w).frontier, r), {}};
  } catch (const NoStrategy& e) {
    return DomainVerdict{false, e.what()};
  } catch (const UnknownAtom& e) {
    return DomainVerdict{false, e.what()};
  }
}

inline bool in_domain(const Statement& s, const ResourceVector& r, const World& w) {
  return in_domain_explained(s, r, w).member;
}

enum class Verdict { True, False, InsufficientResources };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::InsufficientResources: return "insufficient_resources";
  }
  return "?";
}

struct VerifyResult {
  Verdict verdict{Verdict::InsufficientResources};
  ResourceVector debit;
  std::optional<VerificationStrategy> strategy;
};

/// Determines the truth of S by running procedures, spending from
/// `ledger`. Picks, among strategies whose incremental cost keeps the
/// ledger under its cap and under `budget`, the Pareto-minimal one that
/// is lexicographically smallest. Truth comes from the chosen
/// procedures' outputs ("1" is true). When nothing fits the ledger is
/// untouched.
inline VerifyResult verify(const Statement& s, const std::optional<ResourceVector>& budget, const World& w,
                           SpendLedger& ledger) {
  const auto atoms = s.atoms();
  std::vector<VerificationStrategy> strategies;
  try {
    strategies = detail::all_strategies(w, atoms);
  } catch (const NoStrategy&) {
    return VerifyResult{Verdict::InsufficientResources, ResourceVector::zero(w.dimension()), std::nullopt};
  }
  std::optional<std::size_t> best;
  ResourceVector best_cost = ResourceVector::zero(w.dimension());
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    SpendLedger trial = ledger;
    const ResourceVector cost = detail::replay(w, atoms, strategies[i], trial);
    if (!ledger.can_afford(cost)) continue;
    if (budget && !leq(add(ledger.spent(), cost), *budget)) continue;
    // Pareto-minimal then lexicographic: the lexicographic minimum of a
    // set is always on its Pareto frontier.
    if (!best || lex_less(cost, best_cost)) {
      best = i;
      best_cost = cost;
    }
  }
  if (!best) return VerifyResult{Verdict::InsufficientResources, ResourceVector::zero(w.dimension()), std::nullopt};

  auto& chosen = strategies[*best];
  chosen.prebuilt = ledger.built();
  const ResourceVector debit = detail::replay(w, atoms, chosen, ledger);
  ledger.debit(debit);
  const Location here = Location::origin(w.dimension());
  const bool value = s.evaluate([&](const std::string& atom) {
    return w.output_of(chosen.procedure_for.at(atom), here) == "1";
  });
  return VerifyResult{value ? Verdict::True : Verdict::False, debit, chosen};
}

/// Two statements each in D_r whose conjunction is not.
struct NonClosureWitness {
  Statement first;
  Statement second;
  std::vector<ResourceVector> conjunction_frontier;
};

/// Exhaustive search over pairs of world atoms in registration order.
inline std::optional<NonClosureWitness> non_closure_witness(const ResourceVector& r, const World& w) {
  const auto& atoms = w.atoms();
  std::vector<bool> member(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) member[i] = in_domain(Statement::atom(atoms[i]), r, w);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!member[i]) continue;
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      if (!member[j]) continue;
      const auto s = Statement::atom(atoms[i]);
      const auto t = Statement::atom(atoms[j]);
      const auto both = Statement::conjunction(s, t);
      if (!in_domain(both, r, w)) return NonClosureWitness{s, t, min_cost(both, w).frontier};
    }
  }
  return std::nullopt;
}

}  // namespace reslim
