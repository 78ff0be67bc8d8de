#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reslim/error.hpp"
#include "reslim/expression.hpp"
#include "reslim/proof.hpp"
#include "reslim/statement.hpp"
#include "reslim/verification.hpp"
#include "reslim/world.hpp"

namespace reslim {

enum class AxiomBasis { VerifiedInWorld, Postulated };

inline const char* to_string(AxiomBasis b) {
  return b == AxiomBasis::VerifiedInWorld ? "verified" : "postulated";
}

struct AxiomCandidate {
  std::string name;
  Statement statement;
  AxiomBasis basis{AxiomBasis::VerifiedInWorld};
};

struct Rejection {
  std::string name;
  std::string code;  // STATEMENT_TOO_LONG, NOT_IN_DOMAIN, FALSE_IN_WORLD
  std::string reason;
};

/// Ax_r: the candidates that survived admission at one budget.
struct AxiomSet {
  std::vector<NamedAxiom> admitted;
  std::vector<AxiomBasis> basis;  // parallel to admitted
  std::vector<Rejection> rejected;

  bool admits(const std::string& name) const {
    return std::any_of(admitted.begin(), admitted.end(), [&](const NamedAxiom& a) { return a.name == name; });
  }
};

/// Keeps candidates renderable within N(r). Verified candidates must also
/// be verifiable within r and true in `w`; postulated ones are taken on
/// faith (that is what the soundness check is for).
inline AxiomSet admit_axioms(const std::vector<AxiomCandidate>& candidates, const ResourceVector& r, const World& w,
                             const CostParameters& cp) {
  AxiomSet out;
  const LengthBound n = max_length(r, cp);
  for (const auto& c : candidates) {
    if (!n.admits(c.statement.length())) {
      out.rejected.push_back({c.name, "STATEMENT_TOO_LONG",
                              "length " + std::to_string(c.statement.length()) + " exceeds N(r) = " + n.str()});
      continue;
    }
    if (c.basis == AxiomBasis::VerifiedInWorld) {
      auto verdict = in_domain_explained(c.statement, r, w);
      if (!verdict.member) {
        out.rejected.push_back({c.name, "NOT_IN_DOMAIN",
                                verdict.diagnostic.empty() ? "verification needs more than the budget" : verdict.diagnostic});
        continue;
      }
      if (!c.statement.evaluate([&](const std::string& a) { return w.truth(a); })) {
        out.rejected.push_back({c.name, "FALSE_IN_WORLD", "'" + c.statement.render() + "' is false"});
        continue;
      }
    }
    out.admitted.push_back({c.name, c.statement});
    out.basis.push_back(c.basis);
  }
  return out;
}

struct SearchLimits {
  std::size_t max_steps{4};
  std::size_t max_len{11};
};

/// T_r: a budget, the axiom candidates it filters, cost parameters and the
/// world. Immutable; changing the budget gives a new theory.
class Theory {
 public:
  Theory(ResourceVector budget, std::vector<AxiomCandidate> candidates, CostParameters cp,
         std::shared_ptr<const World> world, SearchLimits limits = {})
      : budget_(std::move(budget)),
        candidates_(std::move(candidates)),
        cp_(std::move(cp)),
        world_(std::move(world)),
        limits_(limits),
        cache_(std::make_shared<Cache>()) {
    if (!world_) throw InvalidValue("theory without a world");
    cp_.validate();
    detail::require_same_dimension(budget_, cp_.delta);
    axioms_ = admit_axioms(candidates_, budget_, *world_, cp_);
    n_ = max_length(budget_, cp_);
  }

  const ResourceVector& budget() const noexcept { return budget_; }
  const std::vector<AxiomCandidate>& candidates() const noexcept { return candidates_; }
  const AxiomSet& axioms() const noexcept { return axioms_; }
  const CostParameters& cost_parameters() const noexcept { return cp_; }
  const World& world() const noexcept { return *world_; }
  const std::shared_ptr<const World>& world_ptr() const noexcept { return world_; }
  const SearchLimits& limits() const noexcept { return limits_; }

  /// N(r), the length bound every statement of the theory obeys.
  const LengthBound& language_bound() const noexcept { return n_; }

  /// Length bound on proof steps: N(r) capped by the search limit.
  std::size_t step_length_bound() const { return n_.clamp(limits_.max_len); }

  Theory with_budget(ResourceVector r) const { return Theory(std::move(r), candidates_, cp_, world_, limits_); }
  Theory with_candidates(std::vector<AxiomCandidate> c) const { return Theory(budget_, std::move(c), cp_, world_, limits_); }

 private:
  friend struct TheoryCacheAccess;
  struct Cache {
    std::mutex mu;
    std::map<std::string, std::optional<Proof>> proofs;
  };

  ResourceVector budget_;
  std::vector<AxiomCandidate> candidates_;
  CostParameters cp_;
  std::shared_ptr<const World> world_;
  SearchLimits limits_;
  AxiomSet axioms_;
  LengthBound n_ = LengthBound::unbounded();
  std::shared_ptr<Cache> cache_;
};

namespace detail {

// Backward proof search over partially known formulas. Unknown
// subformulas are metavariables "?N"; goals are closed by unifying with
// an axiom, a schema, or another node of the proof, or split by modus
// ponens into (X -> goal) and X. At a leaf the remaining metavariables
// become a single atom (the shortest filler) and the distinct formulas
// are ordered to minimize maintenance energy.
class ProofSearch {
 public:
  ProofSearch(const Theory& t, const Statement& goal) : t_(t), goal_(goal) {
    const auto& atoms = t.world().atoms();
    filler_ = atoms.empty() ? *goal.atoms().begin() : atoms.front();
    bound_ = t.step_length_bound();
    const auto& cp = t.cost_parameters();
    // Order-independent part of a step's cost is affine in its length.
    per_length_ = add(add(cp.delta, cp.delta), cp.overhead_slope);
    base_ = cp.overhead_base;
    for (std::size_t k = 0; k < logical_schemas().size(); ++k) schema_vars_.push_back(max_var(logical_schemas()[k]) + 1);
  }

  std::optional<Proof> run() {
    for (std::size_t n = 1; n <= t_.limits().max_steps; ++n) {
      depth_ = n;
      State s;
      s.nodes.push_back(Node{goal_});
      s.goals.push_back(0);
      s.live = 1;
      dfs(s);
      if (best_) return best_;
    }
    return std::nullopt;
  }

 private:
  enum class How { Open, Schema, Axiom, Mp, Merged };
  struct Node {
    Statement formula;
    How how{How::Open};
    std::size_t ref{0};   // schema number, axiom index, or merge target
    std::size_t minor{0}, major{0};
  };
  struct State {
    std::vector<Node> nodes;
    std::vector<std::optional<Statement>> subst;
    std::vector<std::size_t> goals;  // FIFO
    std::size_t head{0};
    std::size_t live{0};
  };

  static std::size_t var_id(const Statement& s) { return std::stoul(s.atom_id().substr(1)); }

  static std::size_t max_var(const Statement& s) {
    if (is_metavariable(s)) return var_id(s);
    if (s.is_atom()) return 0;
    if (s.kind() == Statement::Kind::Not) return max_var(s.operand());
    return std::max(max_var(s.lhs()), max_var(s.rhs()));
  }

  static Statement fresh(State& s) {
    s.subst.emplace_back();
    return Statement::atom("?" + std::to_string(s.subst.size() - 1));
  }

  // Renames the schema variables ?k to fresh metavariables.
  static Statement rename(const Statement& p, std::size_t offset) {
    if (is_metavariable(p)) return Statement::atom("?" + std::to_string(var_id(p) + offset));
    switch (p.kind()) {
      case Statement::Kind::Atom: return p;
      case Statement::Kind::Not: return Statement::negation(rename(p.operand(), offset));
      case Statement::Kind::And: return Statement::conjunction(rename(p.lhs(), offset), rename(p.rhs(), offset));
      case Statement::Kind::Or: return Statement::disjunction(rename(p.lhs(), offset), rename(p.rhs(), offset));
      case Statement::Kind::Implies: return Statement::implication(rename(p.lhs(), offset), rename(p.rhs(), offset));
    }
    return p;
  }

  static const Statement& walk(const Statement& t, const State& s) {
    const Statement* cur = &t;
    while (is_metavariable(*cur)) {
      const auto& b = s.subst[var_id(*cur)];
      if (!b) break;
      cur = &*b;
    }
    return *cur;
  }

  static Statement resolve(const Statement& t, const State& s) {
    const Statement& w = walk(t, s);
    switch (w.kind()) {
      case Statement::Kind::Atom: return w;
      case Statement::Kind::Not: return Statement::negation(resolve(w.operand(), s));
      case Statement::Kind::And: return Statement::conjunction(resolve(w.lhs(), s), resolve(w.rhs(), s));
      case Statement::Kind::Or: return Statement::disjunction(resolve(w.lhs(), s), resolve(w.rhs(), s));
      case Statement::Kind::Implies: return Statement::implication(resolve(w.lhs(), s), resolve(w.rhs(), s));
    }
    return w;
  }

  static bool occurs(std::size_t v, const Statement& t, const State& s) {
    const Statement& w = walk(t, s);
    if (is_metavariable(w)) return var_id(w) == v;
    if (w.is_atom()) return false;
    if (w.kind() == Statement::Kind::Not) return occurs(v, w.operand(), s);
    return occurs(v, w.lhs(), s) || occurs(v, w.rhs(), s);
  }

  static bool unify(const Statement& a0, const Statement& b0, State& s) {
    const Statement a = walk(a0, s);
    const Statement b = walk(b0, s);
    if (is_metavariable(a)) {
      if (is_metavariable(b) && var_id(a) == var_id(b)) return true;
      if (occurs(var_id(a), b, s)) return false;
      s.subst[var_id(a)] = b;
      return true;
    }
    if (is_metavariable(b)) return unify(b, a, s);
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Statement::Kind::Atom: return a.atom_id() == b.atom_id();
      case Statement::Kind::Not: return unify(a.operand(), b.operand(), s);
      default: return unify(a.lhs(), b.lhs(), s) && unify(a.rhs(), b.rhs(), s);
    }
  }

  static bool ground(const Statement& t) {
    if (t.is_atom()) return !is_metavariable(t);
    if (t.kind() == Statement::Kind::Not) return ground(t.operand());
    return ground(t.lhs()) && ground(t.rhs());
  }

  // Cheapest possible cost of the live nodes given current knowledge.
  bool feasible(const State& s) const {
    std::size_t count = 0, total = 0;
    for (const auto& n : s.nodes) {
      if (n.how == How::Merged) continue;
      const std::size_t len = resolve(n.formula, s).length();
      if (len > bound_) return false;
      ++count;
      total += len;
    }
    auto key = std::make_pair(count, total);
    if (auto it = fits_memo_.find(key); it != fits_memo_.end()) return it->second;
    std::vector<Rational> c(per_length_.size());
    for (std::size_t i = 0; i < c.size(); ++i)
      c[i] = per_length_[i] * Rational(total) + base_[i] * Rational(count);
    const bool ok = leq(ResourceVector(std::move(c)), t_.budget());
    fits_memo_.emplace(key, ok);
    return ok;
  }

  void dfs(State& s) {
    if (s.live > depth_ || !feasible(s)) return;
    while (s.head < s.goals.size() && s.nodes[s.goals[s.head]].how != How::Open) ++s.head;
    if (s.head == s.goals.size()) {
      leaf(s);
      return;
    }
    const std::size_t g = s.goals[s.head];
    const Statement t = resolve(s.nodes[g].formula, s);
    const auto& axioms = t_.axioms().admitted;
    const auto& schemas = logical_schemas();

    auto branch = [&](auto&& apply) {
      State next = s;
      ++next.head;
      if (apply(next)) dfs(next);
    };

    if (ground(t)) {
      for (std::size_t i = 0; i < axioms.size(); ++i)
        if (axioms[i].statement == t) {
          branch([&](State& n) { n.nodes[g].how = How::Axiom, n.nodes[g].ref = i; return true; });
          return;
        }
      if (int k = schema_of(t)) {
        branch([&](State& n) { n.nodes[g].how = How::Schema, n.nodes[g].ref = static_cast<std::size_t>(k); return true; });
        return;
      }
    } else {
      for (std::size_t i = 0; i < axioms.size(); ++i)
        branch([&](State& n) {
          if (!unify(n.nodes[g].formula, axioms[i].statement, n)) return false;
          n.nodes[g].how = How::Axiom, n.nodes[g].ref = i;
          return true;
        });
      for (std::size_t k = 0; k < schemas.size(); ++k)
        branch([&](State& n) {
          const std::size_t offset = n.subst.size();
          n.subst.resize(offset + schema_vars_[k]);
          if (!unify(n.nodes[g].formula, rename(schemas[k], offset), n)) return false;
          n.nodes[g].how = How::Schema, n.nodes[g].ref = k + 1;
          return true;
        });
    }
    for (std::size_t u = 0; u < s.nodes.size(); ++u) {
      if (u == g || s.nodes[u].how == How::Merged) continue;
      branch([&](State& n) {
        if (!unify(n.nodes[g].formula, n.nodes[u].formula, n)) return false;
        n.nodes[g].how = How::Merged, n.nodes[g].ref = u;
        --n.live;
        return true;
      });
    }
    if (s.live + 2 <= depth_) {
      branch([&](State& n) {
        const Statement x = fresh(n);
        const std::size_t major = n.nodes.size();
        n.nodes.push_back(Node{Statement::implication(x, n.nodes[g].formula)});
        n.nodes.push_back(Node{x});
        n.nodes[g].how = How::Mp, n.nodes[g].minor = major + 1, n.nodes[g].major = major;
        n.goals.push_back(major);
        n.goals.push_back(major + 1);
        n.live += 2;
        return true;
      });
    }
  }

  std::size_t representative(const State& s, std::size_t i) const {
    while (s.nodes[i].how == How::Merged) i = s.nodes[i].ref;
    return i;
  }

  Statement instantiate(const Statement& t, const State& s) const {
    const Statement& w = walk(t, s);
    if (is_metavariable(w)) return Statement::atom(filler_);
    switch (w.kind()) {
      case Statement::Kind::Atom: return w;
      case Statement::Kind::Not: return Statement::negation(instantiate(w.operand(), s));
      case Statement::Kind::And: return Statement::conjunction(instantiate(w.lhs(), s), instantiate(w.rhs(), s));
      case Statement::Kind::Or: return Statement::disjunction(instantiate(w.lhs(), s), instantiate(w.rhs(), s));
      case Statement::Kind::Implies: return Statement::implication(instantiate(w.lhs(), s), instantiate(w.rhs(), s));
    }
    return w;
  }

  // Collapses equal formulas, then picks the ordering of a dependency-closed
  // subset ending in the goal with the least maintenance energy.
  void leaf(const State& s) {
    struct Way {
      How how;
      std::size_t ref, minor, major;  // minor/major index into `formulas`
    };
    std::vector<Statement> formulas;
    std::vector<std::vector<Way>> ways;
    std::vector<std::size_t> slot(s.nodes.size());
    std::vector<Statement> inst(s.nodes.size(), goal_);
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
      if (s.nodes[i].how == How::Merged) continue;
      inst[i] = instantiate(s.nodes[i].formula, s);
      auto it = std::find(formulas.begin(), formulas.end(), inst[i]);
      slot[i] = static_cast<std::size_t>(it - formulas.begin());
      if (it == formulas.end()) {
        formulas.push_back(inst[i]);
        ways.emplace_back();
      }
    }
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
      const auto& n = s.nodes[i];
      if (n.how == How::Merged) continue;
      Way w{n.how, n.ref, 0, 0};
      if (n.how == How::Mp) {
        w.minor = slot[representative(s, n.minor)];
        w.major = slot[representative(s, n.major)];
      }
      ways[slot[i]].push_back(w);
    }
    const std::size_t m = formulas.size();
    const std::size_t goal_slot = slot[0];
    const std::size_t full = std::size_t(1) << m;
    const auto& cp = t_.cost_parameters();

    // energy[mask]: least maintenance energy so far with `mask` placed.
    std::vector<std::optional<Rational>> energy(full);
    std::vector<std::pair<std::size_t, std::size_t>> parent(full);  // (formula, way)
    std::vector<std::size_t> lensum(full, 0);
    for (std::size_t mask = 1; mask < full; ++mask)
      for (std::size_t f = 0; f < m; ++f)
        if (mask >> f & 1) {
          lensum[mask] = lensum[mask & ~(std::size_t(1) << f)] + formulas[f].length();
          break;
        }
    energy[0] = Rational(0);
    for (std::size_t mask = 0; mask < full; ++mask) {
      if (!energy[mask] || (mask >> goal_slot & 1)) continue;
      const Rational hold = cp.delta_energy * Rational(lensum[mask]);
      for (std::size_t f = 0; f < m; ++f) {
        if (mask >> f & 1) continue;
        for (std::size_t k = 0; k < ways[f].size(); ++k) {
          const auto& w = ways[f][k];
          if (w.how == How::Mp && !((mask >> w.minor & 1) && (mask >> w.major & 1))) continue;
          const std::size_t next = mask | (std::size_t(1) << f);
          const Rational e = *energy[mask] + hold;
          if (!energy[next] || e < *energy[next]) {
            energy[next] = e;
            parent[next] = {f, k};
          }
          break;
        }
      }
    }
    for (std::size_t mask = 0; mask < full; ++mask) {
      if (!energy[mask] || !(mask >> goal_slot & 1)) continue;
      // The goal must be the last step placed.
      if (parent[mask].first != goal_slot) continue;
      std::vector<std::size_t> order;
      for (std::size_t cur = mask; cur; cur &= ~(std::size_t(1) << parent[cur].first)) order.push_back(parent[cur].first);
      std::reverse(order.begin(), order.end());
      std::vector<std::size_t> lengths;
      for (auto f : order) lengths.push_back(formulas[f].length());
      const ResourceVector cost = proof_cost(lengths, cp);
      if (!leq(cost, t_.budget())) continue;
      if (best_ && !lex_less(cost, best_->cost)) continue;

      std::vector<std::size_t> position(m, 0);
      std::vector<std::pair<Statement, Justification>> steps;
      for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
      std::size_t cur = mask;
      std::vector<std::size_t> way_of(m, 0);
      while (cur) {
        way_of[parent[cur].first] = parent[cur].second;
        cur &= ~(std::size_t(1) << parent[cur].first);
      }
      for (auto f : order) {
        const auto& w = ways[f][way_of[f]];
        Justification j;
        if (w.how == How::Axiom) j = Justification::by_axiom(t_.axioms().admitted[w.ref].name);
        else if (w.how == How::Schema) j = Justification::by_schema(static_cast<int>(w.ref));
        else j = Justification::by_mp(position[w.minor], position[w.major]);
        steps.emplace_back(formulas[f], std::move(j));
      }
      best_ = make_proof(std::move(steps), cp);
    }
  }

  const Theory& t_;
  Statement goal_;
  std::string filler_;
  std::size_t bound_{0};
  std::size_t depth_{0};
  ResourceVector per_length_, base_;
  std::vector<std::size_t> schema_vars_;
  mutable std::map<std::pair<std::size_t, std::size_t>, bool> fits_memo_;
  std::optional<Proof> best_;
};

}  // namespace detail

struct TheoryCacheAccess {
  static std::optional<std::optional<Proof>> get(const Theory& t, const std::string& key) {
    std::lock_guard lock(t.cache_->mu);
    auto it = t.cache_->proofs.find(key);
    if (it == t.cache_->proofs.end()) return std::nullopt;
    return it->second;
  }
  static void put(const Theory& t, const std::string& key, const std::optional<Proof>& p) {
    std::lock_guard lock(t.cache_->mu);
    t.cache_->proofs.emplace(key, p);
  }
};

struct ProveResult {
  std::optional<Proof> proof;
  std::string reason;  // why there is no proof, when there is none
};

/// Searches for the proof of S found first by iterative deepening on the
/// number of steps. At the first depth with any proof inside the budget,
/// returns the one with the lexicographically least cost (earliest found
/// on ties). Throws StatementTooLong when S itself is outside L_r.
inline ProveResult prove_explained(const Theory& t, const Statement& s) {
  if (!t.language_bound().admits(s.length()))
    throw StatementTooLong("'" + s.render() + "' has length " + std::to_string(s.length()) + " > N(r) = " +
                           t.language_bound().str());
  if (s.length() > t.step_length_bound())
    return {std::nullopt, "length " + std::to_string(s.length()) + " exceeds the search limit " +
                              std::to_string(t.step_length_bound())};
  const std::string key = s.render();
  std::optional<Proof> proof;
  if (auto hit = TheoryCacheAccess::get(t, key)) {
    proof = *hit;
  } else {
    proof = detail::ProofSearch(t, s).run();
    TheoryCacheAccess::put(t, key, proof);
  }
  if (proof) return {proof, {}};
  return {std::nullopt, "no proof of at most " + std::to_string(t.limits().max_steps) + " steps fits the budget"};
}

inline std::optional<Proof> prove(const Theory& t, const Statement& s) { return prove_explained(t, s).proof; }

/// Th_r(S). Statements outside L_r are not theorems.
inline bool is_theorem(const Theory& t, const Statement& s) {
  if (!t.language_bound().admits(s.length())) return false;
  return prove(t, s).has_value();
}

/// Theorems over the world's atoms with rendered length at most
/// `size_bound`, in canonical order.
inline std::vector<Statement> theorems_up_to(const Theory& t, std::size_t size_bound) {
  std::vector<Statement> out;
  for (const auto& s : enumerate_statements(t.world().atoms(), size_bound))
    if (is_theorem(t, s)) out.push_back(s);
  return out;
}

struct SoundnessReport {
  std::size_t theorems_checked{0};
  std::vector<std::string> false_axioms;   // admitted axioms false in the world
  std::vector<Statement> false_theorems;   // enumerated theorems false in the world

  bool ok() const { return false_axioms.empty() && false_theorems.empty(); }
};

/// Evaluates every admitted axiom and every theorem up to `size_bound`
/// against ground truth.
inline SoundnessReport soundness_check(const Theory& t, std::size_t size_bound) {
  SoundnessReport r;
  auto truth = [&](const std::string& a) { return t.world().truth(a); };
  for (const auto& a : t.axioms().admitted)
    if (!a.statement.evaluate(truth)) r.false_axioms.push_back(a.name);
  for (const auto& s : theorems_up_to(t, size_bound)) {
    ++r.theorems_checked;
    if (!s.evaluate(truth)) r.false_theorems.push_back(s);
  }
  return r;
}

}  // namespace reslim
