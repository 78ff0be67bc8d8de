#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reslim/error.hpp"
#include "reslim/godel.hpp"
#include "reslim/statement.hpp"
#include "reslim/theory.hpp"
#include "reslim/world.hpp"

namespace reslim {

/// Alphabet for coding statements of a world: connectives, the world's
/// atoms, then any other atoms of `s` in sorted order.
inline Alphabet coding_alphabet(const World& w, const Statement& s) {
  Alphabet a = statement_alphabet(w.atoms());
  for (const auto& id : s.atoms()) a.add(id);
  return a;
}

inline std::string godel_code(const World& w, const Statement& s) {
  const GodelMap g(coding_alphabet(w, s), w.numeral_base());
  return g.encode(to_expression(s, g.alphabet()));
}

/// The provability atom Th_r(G(S)), named "Thm[<r>;<code>]".
inline Statement provability_atom(const ResourceVector& r, const std::string& code) {
  return Statement::atom("Thm[" + format_vector_compact(r) + ";" + code + "]");
}

/// Val_r(G(S)) = (Thm[r;code(S)] -> S).
inline Statement val_statement(const Statement& s, const ResourceVector& r, const World& w) {
  return Statement::implication(provability_atom(r, godel_code(w, s)), s);
}

struct ReflectOptions {
  std::string thm_name{"thm"};
  std::string val_name{"val"};
  bool drop_original{false};  // keep only the added axioms
  bool drop_val{false};
};

struct ReflectionStep {
  ResourceVector base_budget;
  ResourceVector budget;
  Statement target;
  Statement thm;
  Statement val;
  bool base_proves{false};
  std::optional<Proof> base_proof;
  std::shared_ptr<const Theory> extension;
};

/// Extends T_r to r' by internalizing the prover's verdict on S. The new
/// world has the atom Thm[r;code(S)], true exactly when T_r proves S, and
/// a procedure that establishes it at the cost of the proof (or of r when
/// the search fails). Val and, if true, the Thm atom become verified
/// axioms, admitted afresh at r'.
inline ReflectionStep reflect_extend(const Theory& base, const Statement& s, const ResourceVector& r2,
                                     const ReflectOptions& opt = {}) {
  if (!strictly_less(base.budget(), r2))
    throw BudgetNotLarger("extension budget " + format_vector(r2) + " does not strictly dominate " +
                          format_vector(base.budget()));
  ReflectionStep step{base.budget(), r2, s, s, s, false, std::nullopt, nullptr};
  step.base_proof = prove(base, s);
  step.base_proves = step.base_proof.has_value();

  const World& w0 = base.world();
  step.thm = provability_atom(base.budget(), godel_code(w0, s));
  step.val = Statement::implication(step.thm, s);
  const std::string& thm_id = step.thm.atom_id();

  auto world = std::make_shared<World>(w0);
  if (world->has_atom(thm_id)) throw InvalidValue("provability atom '" + thm_id + "' already exists");
  world->add_atom(thm_id, step.base_proves);
  Procedure prover;
  prover.id = "prover:" + thm_id;
  prover.implementation_cost = step.base_proves ? step.base_proof->cost : base.budget();
  prover.declared_purpose = Purpose::truth_of(thm_id);
  prover.output = OutputSpec::reads_atom(thm_id);
  world->add_procedure(std::move(prover));

  std::vector<AxiomCandidate> candidates;
  if (!opt.drop_original) candidates = base.candidates();
  if (step.base_proves) candidates.push_back({opt.thm_name, step.thm, AxiomBasis::VerifiedInWorld});
  if (!opt.drop_val) candidates.push_back({opt.val_name, step.val, AxiomBasis::VerifiedInWorld});

  auto ext = std::make_shared<Theory>(r2, std::move(candidates), base.cost_parameters(), world, base.limits());
  for (const auto& rej : ext->axioms().rejected)
    if (rej.name == opt.thm_name || rej.name == opt.val_name)
      throw AxiomRejected("axiom '" + rej.name + "' not admitted at " + format_vector(r2) + ": " + rej.code + ": " +
                          rej.reason);
  step.extension = std::move(ext);
  return step;
}

struct ChainStage {
  std::size_t index{0};  // 1-based
  ReflectionStep step;
  bool proves_target{false};          // in the full extension
  bool proves_target_isolated{false}; // from {thm, val} alone
  bool val_from_logic_alone{false};   // must stay false
  bool val_without_val_axiom{false};  // informational
  std::size_t target_proof_steps{0};
  SoundnessReport soundness;
};

struct ReflectionChain {
  std::vector<ChainStage> stages;
  // The chain stops only because of the stage cap: the last validity
  // statement would need yet another extension.
  Statement next_target;
  bool non_terminating{true};
};

/// Iterates reflect_extend n times. Stage 1 targets S; stage k > 1
/// targets the validity statement added at stage k-1. Budgets grow by
/// `budget_step` per stage.
inline ReflectionChain reflection_chain(const Theory& t0, const Statement& s, std::size_t n,
                                        const ResourceVector& budget_step, std::size_t soundness_bound = 5) {
  if (n < 1) throw InvalidValue("reflection chain needs at least one stage");
  ReflectionChain chain{{}, s, true};
  std::shared_ptr<const Theory> current = std::make_shared<Theory>(t0);
  Statement target = s;
  for (std::size_t k = 1; k <= n; ++k) {
    ReflectOptions opt;
    opt.thm_name = "thm" + std::to_string(k);
    opt.val_name = "val" + std::to_string(k);
    const ResourceVector r2 = add(current->budget(), budget_step);
    ChainStage st{k, reflect_extend(*current, target, r2, opt), false, false, false, false, 0, {}};
    const Theory& ext = *st.step.extension;

    if (auto p = prove(ext, target)) {
      st.proves_target = true;
      st.target_proof_steps = p->size();
    }
    ReflectOptions iso = opt;
    iso.drop_original = true;
    st.proves_target_isolated = is_theorem(*reflect_extend(*current, target, r2, iso).extension, target);
    st.val_from_logic_alone = is_theorem(ext.with_candidates({}), st.step.val);
    std::vector<AxiomCandidate> without_val;
    for (const auto& c : ext.candidates())
      if (c.name != opt.val_name) without_val.push_back(c);
    st.val_without_val_axiom = is_theorem(ext.with_candidates(std::move(without_val)), st.step.val);
    st.soundness = soundness_check(ext, soundness_bound);

    target = st.step.val;
    current = st.step.extension;
    chain.stages.push_back(std::move(st));
  }
  chain.next_target = target;
  return chain;
}

}  // namespace reslim
