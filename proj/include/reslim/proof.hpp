#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reslim/error.hpp"
#include "reslim/expression.hpp"
#include "reslim/resource_vector.hpp"
#include "reslim/statement.hpp"

namespace reslim {

/// Logical axiom schemas, numbered from 1. Schema variables are the
/// atoms "?0", "?1", "?2" (no world atom can start with '?').
///
///   1  (p -> (q -> p))
///   2  ((p -> (q -> r)) -> ((p -> q) -> (p -> r)))
///   3  ((!q -> !p) -> (p -> q))
///   4  ((p & q) -> p)
///   5  ((p & q) -> q)
///   6  (p -> (q -> (p & q)))
///   7  (p -> (p | q))
///   8  (q -> (p | q))
///   9  ((p -> r) -> ((q -> r) -> ((p | q) -> r)))
///
/// Modus ponens is the only rule.
inline const std::vector<Statement>& logical_schemas() {
  static const std::vector<Statement> schemas = [] {
    std::vector<Statement> out;
    for (const char* text : {
             "(?0 -> (?1 -> ?0))",
             "((?0 -> (?1 -> ?2)) -> ((?0 -> ?1) -> (?0 -> ?2)))",
             "((!?1 -> !?0) -> (?0 -> ?1))",
             "((?0 & ?1) -> ?0)",
             "((?0 & ?1) -> ?1)",
             "(?0 -> (?1 -> (?0 & ?1)))",
             "(?0 -> (?0 | ?1))",
             "(?1 -> (?0 | ?1))",
             "((?0 -> ?2) -> ((?1 -> ?2) -> ((?0 | ?1) -> ?2)))",
         })
      out.push_back(detail::parse_pattern(text));
    return out;
  }();
  return schemas;
}

inline bool is_metavariable(const Statement& s) { return s.is_atom() && s.atom_id()[0] == '?'; }

/// One-way matching of a concrete statement against a schema pattern.
inline bool match_pattern(const Statement& pattern, const Statement& s, std::map<std::string, Statement>& bindings) {
  if (is_metavariable(pattern)) {
    auto [it, fresh] = bindings.emplace(pattern.atom_id(), s);
    return fresh || it->second == s;
  }
  if (pattern.kind() != s.kind()) return false;
  switch (s.kind()) {
    case Statement::Kind::Atom: return pattern.atom_id() == s.atom_id();
    case Statement::Kind::Not: return match_pattern(pattern.operand(), s.operand(), bindings);
    default: return match_pattern(pattern.lhs(), s.lhs(), bindings) && match_pattern(pattern.rhs(), s.rhs(), bindings);
  }
}

/// Number (1-based) of the first schema `s` instantiates, or 0.
inline int schema_of(const Statement& s) {
  const auto& schemas = logical_schemas();
  for (std::size_t k = 0; k < schemas.size(); ++k) {
    std::map<std::string, Statement> b;
    if (match_pattern(schemas[k], s, b)) return static_cast<int>(k + 1);
  }
  return 0;
}

inline bool is_schema_instance(const Statement& s, int schema) {
  const auto& schemas = logical_schemas();
  if (schema < 1 || schema > static_cast<int>(schemas.size())) return false;
  std::map<std::string, Statement> b;
  return match_pattern(schemas[static_cast<std::size_t>(schema - 1)], s, b);
}

struct Justification {
  enum class Kind { Schema, Axiom, ModusPonens };
  Kind kind{Kind::Axiom};
  int schema{0};           // Schema
  std::string axiom;       // Axiom: the nonlogical axiom's name
  std::size_t minor{0};    // ModusPonens: index of p
  std::size_t major{0};    // ModusPonens: index of (p -> q)

  static Justification by_schema(int k) { return {Kind::Schema, k, {}, 0, 0}; }
  static Justification by_axiom(std::string name) { return {Kind::Axiom, 0, std::move(name), 0, 0}; }
  static Justification by_mp(std::size_t minor, std::size_t major) { return {Kind::ModusPonens, 0, {}, minor, major}; }

  /// "schema 1", "axiom ab", "mp 1 2" (1-based step numbers).
  std::string str() const {
    switch (kind) {
      case Kind::Schema: return "schema " + std::to_string(schema);
      case Kind::Axiom: return "axiom " + axiom;
      case Kind::ModusPonens: return "mp " + std::to_string(minor + 1) + " " + std::to_string(major + 1);
    }
    return "?";
  }
};

struct ProofStep {
  Statement statement;
  Justification why;
  ResourceVector cost;        // this step's expression cost
  ResourceVector cumulative;  // running total through this step
};

/// A checkable proof record. Each step is an expression held until the
/// proof is complete, so step i of n is maintained for n-1-i intervals.
struct Proof {
  std::vector<ProofStep> steps;
  ResourceVector cost;

  const Statement& conclusion() const { return steps.back().statement; }
  std::size_t size() const noexcept { return steps.size(); }
};

/// A nonlogical axiom as the prover sees it.
struct NamedAxiom {
  std::string name;
  Statement statement;
};

/// Cost of holding statements of these lengths, in this order, as a proof.
inline std::vector<ResourceVector> step_costs(const std::vector<std::size_t>& lengths, const CostParameters& cp) {
  std::vector<ResourceVector> out;
  out.reserve(lengths.size());
  for (std::size_t i = 0; i < lengths.size(); ++i)
    out.push_back(expression_cost(lengths[i], lengths.size() - 1 - i, cp));
  return out;
}

inline ResourceVector proof_cost(const std::vector<std::size_t>& lengths, const CostParameters& cp) {
  ResourceVector total = ResourceVector::zero(cp.dimension());
  for (const auto& c : step_costs(lengths, cp)) total = add(total, c);
  return total;
}

/// Fills in per-step and total costs from the statements.
inline Proof make_proof(std::vector<std::pair<Statement, Justification>> steps, const CostParameters& cp) {
  if (steps.empty()) throw EmptyInput("proof with no steps");
  std::vector<std::size_t> lengths;
  for (const auto& s : steps) lengths.push_back(s.first.length());
  const auto costs = step_costs(lengths, cp);
  Proof p;
  ResourceVector running = ResourceVector::zero(cp.dimension());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    running = add(running, costs[i]);
    p.steps.push_back(ProofStep{std::move(steps[i].first), std::move(steps[i].second), costs[i], running});
  }
  p.cost = running;
  return p;
}

/// Independent step checker. Validates every justification against the
/// schemas and `axioms`, recomputes every cost, and enforces the length
/// bound when given. Returns the recomputed total.
inline ResourceVector check_proof(const Proof& proof, const std::vector<NamedAxiom>& axioms, const CostParameters& cp,
                                  std::optional<LengthBound> bound = std::nullopt) {
  if (proof.steps.empty()) throw InvalidProof("proof has no steps");
  auto fail = [](std::size_t i, const std::string& why) -> void {
    throw InvalidProof("step " + std::to_string(i + 1) + ": " + why);
  };
  std::vector<std::size_t> lengths;
  for (std::size_t i = 0; i < proof.steps.size(); ++i) {
    const auto& step = proof.steps[i];
    if (bound && !bound->admits(step.statement.length()))
      fail(i, "statement longer than the bound " + bound->str());
    lengths.push_back(step.statement.length());
    const auto& j = step.why;
    switch (j.kind) {
      case Justification::Kind::Schema:
        if (!is_schema_instance(step.statement, j.schema)) fail(i, "not an instance of schema " + std::to_string(j.schema));
        break;
      case Justification::Kind::Axiom: {
        bool found = false;
        for (const auto& a : axioms) found = found || (a.name == j.axiom && a.statement == step.statement);
        if (!found) fail(i, "'" + step.statement.render() + "' is not axiom '" + j.axiom + "'");
        break;
      }
      case Justification::Kind::ModusPonens: {
        if (j.minor >= i || j.major >= i) fail(i, "modus ponens cites a later step");
        const auto& major = proof.steps[j.major].statement;
        if (major.kind() != Statement::Kind::Implies || !(major.lhs() == proof.steps[j.minor].statement) ||
            !(major.rhs() == step.statement))
          fail(i, "modus ponens premises do not fit");
        break;
      }
    }
  }
  const auto costs = step_costs(lengths, cp);
  ResourceVector running = ResourceVector::zero(cp.dimension());
  for (std::size_t i = 0; i < costs.size(); ++i) {
    running = add(running, costs[i]);
    if (proof.steps[i].cost != costs[i] || proof.steps[i].cumulative != running) fail(i, "recorded cost is wrong");
  }
  if (proof.cost != running) throw InvalidProof("recorded total cost is wrong");
  return running;
}

}  // namespace reslim
