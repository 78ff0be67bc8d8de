#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "reslim/error.hpp"
#include "reslim/resource_vector.hpp"
#include "reslim/strings.hpp"

namespace reslim {

// ---------------------------------------------------------------------------
// Purposes

/// What a procedure, piece of equipment or instruction string is for.
/// Phrases about observables and states are opaque names here.
struct Purpose {
  struct MeasureProperty {
    std::string property;
    int figures{1};
    friend bool operator==(const MeasureProperty&, const MeasureProperty&) = default;
  };
  struct ComputePrediction {
    std::string property;
    int figures{1};
    friend bool operator==(const ComputePrediction&, const ComputePrediction&) = default;
  };
  struct MeasureSpaceTime {
    int figures{1};
    friend bool operator==(const MeasureSpaceTime&, const MeasureSpaceTime&) = default;
  };
  struct DetermineTruth {
    std::string atom;
    friend bool operator==(const DetermineTruth&, const DetermineTruth&) = default;
  };
  struct NoPurpose {
    friend bool operator==(const NoPurpose&, const NoPurpose&) = default;
  };
  struct Opaque {
    std::string text;
    friend bool operator==(const Opaque&, const Opaque&) = default;
  };

  using Value = std::variant<NoPurpose, MeasureProperty, ComputePrediction, MeasureSpaceTime, DetermineTruth, Opaque>;
  Value value{NoPurpose{}};

  static Purpose none() { return {NoPurpose{}}; }
  static Purpose measure(std::string property, int figures) { return checked({MeasureProperty{std::move(property), figures}}); }
  static Purpose compute(std::string property, int figures) { return checked({ComputePrediction{std::move(property), figures}}); }
  static Purpose space_time(int figures) { return checked({MeasureSpaceTime{figures}}); }
  static Purpose truth_of(std::string atom) { return {DetermineTruth{std::move(atom)}}; }
  static Purpose opaque(std::string text) { return {Opaque{std::move(text)}}; }

  bool is_space_time() const { return std::holds_alternative<MeasureSpaceTime>(value); }

  /// Atom whose truth this purpose determines, if any.
  const std::string* truth_target() const {
    if (auto* t = std::get_if<DetermineTruth>(&value)) return &t->atom;
    return nullptr;
  }

  /// Text form, also accepted by parse(): "none", "measure:<prop>:<n>",
  /// "compute:<prop>:<n>", "spacetime:<n>", "truth:<atom>", "opaque:<text>".
  std::string str() const {
    return std::visit(
        [](const auto& p) -> std::string {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, NoPurpose>) return "none";
          else if constexpr (std::is_same_v<T, MeasureProperty>) return "measure:" + p.property + ":" + std::to_string(p.figures);
          else if constexpr (std::is_same_v<T, ComputePrediction>) return "compute:" + p.property + ":" + std::to_string(p.figures);
          else if constexpr (std::is_same_v<T, MeasureSpaceTime>) return "spacetime:" + std::to_string(p.figures);
          else if constexpr (std::is_same_v<T, DetermineTruth>) return "truth:" + p.atom;
          else return "opaque:" + p.text;
        },
        value);
  }

  static Purpose parse(const std::string& text) {
    auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto figures = [&](const std::string& s) {
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("purpose '" + text + "': figure count must be a positive integer");
      return std::stoi(s);
    };
    auto split_last = [&]() {
      auto c = rest.rfind(':');
      if (c == std::string::npos || c == 0) throw ParseError("purpose '" + text + "': expected <property>:<figures>");
      return std::make_pair(rest.substr(0, c), figures(rest.substr(c + 1)));
    };
    if (head == "none" && rest.empty()) return none();
    if (head == "measure") {
      auto [p, n] = split_last();
      return measure(p, n);
    }
    if (head == "compute") {
      auto [p, n] = split_last();
      return compute(p, n);
    }
    if (head == "spacetime") return space_time(figures(rest));
    if (head == "truth" && !rest.empty()) return truth_of(rest);
    if (head == "opaque") return opaque(rest);
    throw ParseError("unknown purpose '" + text + "'");
  }

  friend bool operator==(const Purpose&, const Purpose&) = default;

 private:
  static Purpose checked(Purpose p) {
    std::visit(
        [](const auto& v) {
          if constexpr (requires { v.figures; })
            if (v.figures < 1) throw InvalidValue("n_figures must be at least 1");
        },
        p.value);
    return p;
  }
};

// ---------------------------------------------------------------------------
// Locations

/// A (d+1)-tuple of n-figure numeral strings.
struct Location {
  std::vector<std::string> coordinates;

  /// Origin with one figure per coordinate.
  static Location origin(std::size_t d) { return Location{std::vector<std::string>(d + 1, "0")}; }

  void validate(std::size_t d, int base) const {
    if (coordinates.size() != d + 1)
      throw DimensionMismatch("location needs " + std::to_string(d + 1) + " coordinates");
    for (const auto& c : coordinates) {
      if (c.empty()) throw InvalidValue("empty location coordinate");
      for (char ch : c)
        if (ch < '0' || ch >= '0' + base)
          throw InvalidValue("coordinate '" + c + "' is not a base-" + std::to_string(base) + " numeral");
    }
  }

  std::string key() const {
    std::string out;
    for (std::size_t i = 0; i < coordinates.size(); ++i) {
      if (i) out += ",";
      out += coordinates[i];
    }
    return out;
  }

  friend bool operator==(const Location&, const Location&) = default;
};

// ---------------------------------------------------------------------------
// Equipment and procedures

struct Equipment {
  std::string id;
  ResourceVector construction_cost;
  Purpose purpose;
};

/// Deterministic output of a procedure as a function of ground truth and
/// location. Rules are tried in order; the first whose conditions hold
/// gives the output string, otherwise `fallback`.
struct OutputRule {
  std::map<std::string, bool> when;  // atom -> required truth value
  std::optional<std::string> at;     // location key, if location-specific
  std::string output;
};

struct OutputSpec {
  std::vector<OutputRule> rules;
  std::string fallback;

  static OutputSpec constant(std::string out) { return OutputSpec{{}, std::move(out)}; }

  /// "1" when the atom is true, "0" otherwise.
  static OutputSpec reads_atom(const std::string& atom) {
    return OutputSpec{{OutputRule{{{atom, true}}, std::nullopt, "1"}}, "0"};
  }
};

struct Procedure {
  std::string id;
  std::vector<std::string> equipment;  // E_P
  std::string instructions;            // I_P, over the scenario alphabet
  ResourceVector implementation_cost;  // one Im, without construction
  Purpose declared_purpose;
  OutputSpec output;
};

// ---------------------------------------------------------------------------
// World

/// The domain a metatheory observer inspects: registries, ground truth and
/// the purposes things actually have. Immutable once built; extension
/// produces a new world.
class World {
 public:
  explicit World(std::size_t dimension = 1, int numeral_base = 2) : d_(dimension), base_(numeral_base) {}

  std::size_t dimension() const noexcept { return d_; }
  int numeral_base() const noexcept { return base_; }

  void add_atom(const std::string& id, bool truth) {
    if (strings::is_string_atom(id) && strings::holds(id, base_) != truth)
      throw InvalidValue("atom '" + id + "' is computed to be " + (truth ? "false" : "true"));
    if (!truth_.emplace(id, truth).second) throw InvalidValue("duplicate atom '" + id + "'");
    atom_order_.push_back(id);
  }

  /// Registers Str[<equation>] with its computed truth; returns the id.
  std::string add_string_atom(const std::string& equation) {
    const auto id = strings::atom_id(equation);
    add_atom(id, strings::holds(id, base_));
    return id;
  }

  void add_equipment(Equipment e) {
    if (e.construction_cost.size() != 2 * d_ + 2)
      throw DimensionMismatch("equipment '" + e.id + "' cost has wrong dimension");
    if (equipment_.count(e.id) || procedures_.count(e.id))
      throw InvalidValue("duplicate id '" + e.id + "'");
    equipment_.emplace(e.id, std::move(e));
  }

  void add_procedure(Procedure p) {
    if (p.implementation_cost.size() != 2 * d_ + 2)
      throw DimensionMismatch("procedure '" + p.id + "' cost has wrong dimension");
    if (equipment_.count(p.id) || procedures_.count(p.id))
      throw InvalidValue("duplicate id '" + p.id + "'");
    for (const auto& e : p.equipment)
      if (!equipment_.count(e)) throw UnknownSubject("procedure '" + p.id + "' uses unknown equipment '" + e + "'");
    procedure_order_.push_back(p.id);
    procedures_.emplace(p.id, std::move(p));
  }

  void set_true_purpose(const std::string& subject, Purpose a) {
    if (!has_subject(subject)) throw UnknownSubject("true purpose for unknown subject '" + subject + "'");
    true_purposes_[subject] = std::move(a);
  }

  /// Declares that `verifier` checks `subject`. The relation must stay
  /// acyclic; see verifier_cycle().
  void add_verifier(const std::string& verifier, const std::string& subject) {
    if (!has_subject(verifier)) throw UnknownSubject("unknown verifier '" + verifier + "'");
    if (!has_subject(subject)) throw UnknownSubject("unknown verified subject '" + subject + "'");
    verifier_of_.emplace(verifier, subject);
  }

  bool has_atom(const std::string& id) const { return truth_.count(id) != 0; }
  bool has_procedure(const std::string& id) const { return procedures_.count(id) != 0; }
  bool has_subject(const std::string& id) const { return equipment_.count(id) || procedures_.count(id); }

  bool truth(const std::string& atom) const {
    auto it = truth_.find(atom);
    if (it == truth_.end()) throw UnknownAtom("unknown atom '" + atom + "'");
    return it->second;
  }

  const std::vector<std::string>& atoms() const noexcept { return atom_order_; }
  const std::vector<std::string>& procedure_ids() const noexcept { return procedure_order_; }

  const Procedure& procedure(const std::string& id) const {
    auto it = procedures_.find(id);
    if (it == procedures_.end()) throw UnknownProcedure("unknown procedure '" + id + "'");
    return it->second;
  }

  const Equipment& equipment(const std::string& id) const {
    auto it = equipment_.find(id);
    if (it == equipment_.end()) throw UnknownSubject("unknown equipment '" + id + "'");
    return it->second;
  }

  const std::map<std::string, Equipment>& all_equipment() const noexcept { return equipment_; }

  /// Actual purpose; falls back to the declared one (procedures) or the
  /// registered one (equipment) when none is recorded.
  const Purpose& true_purpose(const std::string& subject) const {
    if (auto it = true_purposes_.find(subject); it != true_purposes_.end()) return it->second;
    if (auto p = procedures_.find(subject); p != procedures_.end()) return p->second.declared_purpose;
    if (auto e = equipment_.find(subject); e != equipment_.end()) return e->second.purpose;
    throw UnknownSubject("unknown subject '" + subject + "'");
  }

  /// Procedures whose true purpose is to determine the truth of `atom`,
  /// in registration order.
  std::vector<std::string> verifiers_of_atom(const std::string& atom) const {
    std::vector<std::string> out;
    for (const auto& id : procedure_order_) {
      const auto* t = true_purpose(id).truth_target();
      if (t && *t == atom) out.push_back(id);
    }
    return out;
  }

  /// Ou(Im(P, ·, x)): the output string of P at x.
  std::string output_of(const std::string& procedure_id, const Location& x) const {
    const auto& p = procedure(procedure_id);
    const std::string key = x.key();
    for (const auto& rule : p.output.rules) {
      if (rule.at && *rule.at != key) continue;
      bool ok = std::all_of(rule.when.begin(), rule.when.end(),
                            [&](const auto& kv) { return truth(kv.first) == kv.second; });
      if (ok) return rule.output;
    }
    return p.output.fallback;
  }

  /// A cycle in the verifier-of relation, as a list of ids, or empty.
  std::vector<std::string> verifier_cycle() const {
    std::map<std::string, int> state;  // 0 new, 1 on stack, 2 done
    std::vector<std::string> stack;
    std::vector<std::string> cycle;
    std::function<bool(const std::string&)> visit = [&](const std::string& v) {
      state[v] = 1;
      stack.push_back(v);
      auto [lo, hi] = verifier_of_.equal_range(v);
      for (auto it = lo; it != hi; ++it) {
        const auto& w = it->second;
        if (state[w] == 1) {
          auto from = std::find(stack.begin(), stack.end(), w);
          cycle.assign(from, stack.end());
          cycle.push_back(w);
          return true;
        }
        if (state[w] == 0 && visit(w)) return true;
      }
      stack.pop_back();
      state[v] = 2;
      return false;
    };
    for (const auto& [v, _] : verifier_of_)
      if (state[v] == 0 && visit(v)) return cycle;
    return {};
  }

  const std::multimap<std::string, std::string>& verifier_relation() const noexcept { return verifier_of_; }

 private:
  std::size_t d_;
  int base_;
  std::map<std::string, bool> truth_;
  std::vector<std::string> atom_order_;
  std::map<std::string, Equipment> equipment_;
  std::map<std::string, Procedure> procedures_;
  std::vector<std::string> procedure_order_;
  std::map<std::string, Purpose> true_purposes_;
  std::multimap<std::string, std::string> verifier_of_;
};

// ---------------------------------------------------------------------------
// Spending

/// Running spend of one actor: what has been debited, which equipment has
/// already been built, and an optional cap. Single owner.
class SpendLedger {
 public:
  explicit SpendLedger(std::size_t d) : spent_(ResourceVector::zero(d)) {}
  SpendLedger(std::size_t d, ResourceVector cap) : spent_(ResourceVector::zero(d)), cap_(std::move(cap)) {
    detail::require_same_dimension(spent_, *cap_);
  }

  const ResourceVector& spent() const noexcept { return spent_; }
  const std::optional<ResourceVector>& cap() const noexcept { return cap_; }
  bool is_built(const std::string& equipment) const { return built_.count(equipment) != 0; }
  const std::set<std::string>& built() const noexcept { return built_; }

  bool can_afford(const ResourceVector& cost) const { return !cap_ || leq(add(spent_, cost), *cap_); }

  void mark_built(const std::string& equipment) { built_.insert(equipment); }
  void debit(const ResourceVector& cost) { spent_ = add(spent_, cost); }

 private:
  ResourceVector spent_;
  std::optional<ResourceVector> cap_;
  std::set<std::string> built_;
};

/// Implementation cost of P plus construction of any equipment in E_P
/// the ledger has not built yet; marks that equipment built.
inline ResourceVector procedure_cost(const World& w, const Procedure& p, SpendLedger& ledger) {
  ResourceVector cost = p.implementation_cost;
  for (const auto& e : p.equipment) {
    if (ledger.is_built(e)) continue;
    cost = add(cost, w.equipment(e).construction_cost);
    ledger.mark_built(e);
  }
  return cost;
}

inline ResourceVector procedure_cost(const World& w, const std::string& procedure_id, SpendLedger& ledger) {
  return procedure_cost(w, w.procedure(procedure_id), ledger);
}

/// Result of one Im: the output string and what it cost.
struct Outcome {
  std::string output;
  ResourceVector debit;
};

/// Im(P, P_st, x) followed by Ou. Debits the ledger by the cost of both
/// procedures; on InsufficientResources the ledger is left untouched.
inline Outcome implement(const World& w, const std::string& procedure_id, const std::string& space_time_id,
                         const Location& x, SpendLedger& ledger) {
  const auto& p = w.procedure(procedure_id);
  const auto& st = w.procedure(space_time_id);
  if (!st.declared_purpose.is_space_time())
    throw NotSpaceTimeProcedure("procedure '" + space_time_id + "' is not declared to measure space and time");
  x.validate(w.dimension(), w.numeral_base());
  SpendLedger trial = ledger;
  ResourceVector cost = add(procedure_cost(w, p, trial), procedure_cost(w, st, trial));
  if (!ledger.can_afford(cost))
    throw InsufficientResources("implementing '" + procedure_id + "' needs " + format_vector(cost));
  trial.debit(cost);
  ledger = std::move(trial);
  return Outcome{w.output_of(procedure_id, x), cost};
}

/// F(subject, A): A is what the subject actually does.
inline bool purpose_holds(const World& w, const std::string& subject, const Purpose& a) {
  return w.true_purpose(subject) == a;
}

/// F(E_P, A_P): every piece of equipment of P works as registered.
inline bool equipment_purposes_hold(const World& w, const std::string& procedure_id) {
  const auto& p = w.procedure(procedure_id);
  return std::all_of(p.equipment.begin(), p.equipment.end(),
                     [&](const std::string& e) { return purpose_holds(w, e, w.equipment(e).purpose); });
}

/// One theory-versus-experiment setup: the three procedures, where the
/// experiment and the computation run, and the purposes they must have.
struct ExperimentSetup {
  std::string experiment;    // P_ex
  std::string theory;        // P_th
  std::string space_time;    // P_st
  Location at_experiment;
  Location at_theory;
  Purpose experiment_purpose;
  Purpose theory_purpose;
  Purpose space_time_purpose;
};

/// Ag: both implementations produce the same string.
inline bool agreement(const World& w, const ExperimentSetup& s, SpendLedger& ledger) {
  const auto ex = implement(w, s.experiment, s.space_time, s.at_experiment, ledger);
  const auto th = implement(w, s.theory, s.space_time, s.at_theory, ledger);
  return ex.output == th.output;
}

/// Pur: all three procedures have their intended purposes.
inline bool pur(const World& w, const ExperimentSetup& s) {
  return purpose_holds(w, s.experiment, s.experiment_purpose) &&
         purpose_holds(w, s.space_time, s.space_time_purpose) &&
         purpose_holds(w, s.theory, s.theory_purpose);
}

/// Ag ∧ Pur on one shared ledger. Agreement of outputs alone is not
/// enough.
inline bool theory_experiment_test(const World& w, const ExperimentSetup& s, SpendLedger& ledger) {
  const bool ag = agreement(w, s, ledger);
  return ag && pur(w, s);
}

}  // namespace reslim
