#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "reslim/error.hpp"
#include "reslim/lattice.hpp"
#include "reslim/statement.hpp"
#include "reslim/verification.hpp"
#include "reslim/world.hpp"

namespace reslim {

struct VerifyAction {
  Statement statement;
};

struct ImplementAction {
  std::string procedure;
  std::string space_time;
  Location at;
};

using ObserverAction = std::variant<VerifyAction, ImplementAction>;

inline std::string describe(const ObserverAction& a) {
  if (auto* v = std::get_if<VerifyAction>(&a)) return "verify " + v->statement.render();
  const auto& im = std::get<ImplementAction>(a);
  return "implement " + im.procedure + " with " + im.space_time + " at " + im.at.key();
}

struct ObserverScript {
  std::string name;
  std::vector<ObserverAction> actions;
  std::optional<ResourceVector> cap;
};

struct KnowledgeEntry {
  Statement statement;
  bool truth{false};
  ResourceVector delta;
};

struct TraceRow {
  std::size_t t{0};
  std::string action;
  ResourceVector delta;
  ResourceVector spent;  // p(t) after the action
  std::string outcome;   // true, false, an output string, or refused:<reason>
};

/// One observer: its ledger, what it has learned and the path it took.
struct ObserverState {
  std::size_t t{0};
  SpendLedger ledger;
  std::vector<KnowledgeEntry> knowledge;
  std::vector<TraceRow> trace;

  explicit ObserverState(std::size_t d) : ledger(d) {}
  ObserverState(std::size_t d, const std::optional<ResourceVector>& cap) : ledger(cap ? SpendLedger(d, *cap) : SpendLedger(d)) {}

  const ResourceVector& spent() const noexcept { return ledger.spent(); }
};

/// Performs one action. Spent resources stay spent; a refused action
/// leaves the path where it was and is logged with a zero increment.
inline void step(ObserverState& state, const ObserverAction& action, const World& w) {
  const std::size_t d = w.dimension();
  TraceRow row{state.t + 1, describe(action), ResourceVector::zero(d), state.spent(), {}};
  if (auto* v = std::get_if<VerifyAction>(&action)) {
    const auto res = verify(v->statement, std::nullopt, w, state.ledger);
    if (res.verdict == Verdict::InsufficientResources) {
      row.outcome = "refused:insufficient_resources";
    } else {
      row.delta = res.debit;
      row.outcome = to_string(res.verdict);
      state.knowledge.push_back({v->statement, res.verdict == Verdict::True, res.debit});
    }
  } else {
    const auto& im = std::get<ImplementAction>(action);
    try {
      const auto out = implement(w, im.procedure, im.space_time, im.at, state.ledger);
      row.delta = out.debit;
      row.outcome = out.output;
    } catch (const InsufficientResources&) {
      row.outcome = "refused:insufficient_resources";
    }
  }
  row.spent = state.spent();
  state.trace.push_back(std::move(row));
  ++state.t;
}

inline ObserverState run(const ObserverScript& script, const World& w) {
  ObserverState state(w.dimension(), script.cap);
  for (const auto& a : script.actions) step(state, a, w);
  return state;
}

/// The conjunction of everything verified or refused, refuted statements
/// negated, in the order learned.
inline Statement knowledge_statement(const ObserverState& state) {
  if (state.knowledge.empty()) throw EmptyKnowledge("observer has not verified anything");
  std::vector<Statement> parts;
  for (const auto& k : state.knowledge) parts.push_back(k.truth ? k.statement : Statement::negation(k.statement));
  return conjoin(parts);
}

/// Sum of the per-step increments; equals p(t) exactly when the books
/// balance.
inline ResourceVector total_increments(const ObserverState& state, std::size_t d) {
  ResourceVector sum = ResourceVector::zero(d);
  for (const auto& row : state.trace) sum = add(sum, row.delta);
  return sum;
}

inline bool path_is_monotone(const std::vector<TraceRow>& trace, const ResourceVector& start) {
  const ResourceVector* prev = &start;
  for (const auto& row : trace) {
    if (!leq(*prev, row.spent)) return false;
    prev = &row.spent;
  }
  return true;
}

/// Minimal grid points whose budgets cover what the observer has spent.
inline std::vector<ResourceVector> locate_in_lattice(const ObserverState& state, const TheoryGrid& g) {
  std::vector<ResourceVector> above;
  for (const auto& p : g.points())
    if (leq(state.spent(), p)) above.push_back(p);
  if (above.empty()) return {};
  return pareto_min(above);
}

}  // namespace reslim
