#pragma once

#include <yaml-cpp/yaml.h>

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "reslim/error.hpp"
#include "reslim/expression.hpp"
#include "reslim/observer.hpp"
#include "reslim/resource_vector.hpp"
#include "reslim/statement.hpp"
#include "reslim/theory.hpp"
#include "reslim/world.hpp"

namespace reslim {

/// All validation problems of one scenario file. code() is the code of
/// the first; what() lists every one, one per line.
class ScenarioError : public Error {
 public:
  ScenarioError(std::vector<std::pair<std::string, std::string>> problems)
      : Error(problems.front().first, join(problems)), problems_(std::move(problems)) {}

  const std::vector<std::pair<std::string, std::string>>& problems() const noexcept { return problems_; }

 private:
  static std::string join(const std::vector<std::pair<std::string, std::string>>& ps) {
    std::string out;
    for (const auto& [code, msg] : ps) {
      if (!out.empty()) out += "\n";
      out += code + ": " + msg;
    }
    return out;
  }
  std::vector<std::pair<std::string, std::string>> problems_;
};

struct NamedExperiment {
  std::string name;
  ExperimentSetup setup;
};

struct ReflectQuery {
  Statement target;
  ResourceVector budget;
  ResourceVector step;
  std::size_t stages{1};
};

struct BudgetedStatements {
  ResourceVector budget;
  std::vector<Statement> statements;
};

struct Scenario {
  int schema_version{1};
  std::size_t dimension{1};
  int numeral_base{2};
  Alphabet alphabet;  // for plain expression queries
  CostParameters cost;
  std::shared_ptr<const World> world;
  std::vector<AxiomCandidate> axioms;
  std::vector<ResourceVector> grid;
  SearchLimits limits;
  std::size_t size_bound{7};

  std::vector<std::string> expression_queries;
  std::vector<Statement> cost_queries;
  std::optional<BudgetedStatements> domain;
  std::optional<BudgetedStatements> prove;
  std::optional<ReflectQuery> reflect;
  std::vector<ObserverScript> observers;
  std::vector<NamedExperiment> experiments;

  Theory theory_at(const ResourceVector& r) const { return Theory(r, axioms, cost, world, limits); }
};

namespace detail {

class ScenarioReader {
 public:
  explicit ScenarioReader(const YAML::Node& root) : root_(root) {}

  Scenario read() {
    Scenario sc;
    if (!root_.IsMap()) {
      problem(root_, "PARSE_ERROR", "top level must be a mapping");
      finish();
    }
    sc.schema_version = scalar<int>(root_, "schema_version").value_or(0);
    if (sc.schema_version != 1) problem(root_, "PARSE_ERROR", "schema_version must be 1");
    sc.dimension = scalar<std::size_t>(root_, "dimension").value_or(1);
    sc.numeral_base = optional_scalar<int>(root_, "numeral_base").value_or(2);
    if (sc.numeral_base < 2 || sc.numeral_base > 10) problem(root_["numeral_base"], "INVALID_VALUE", "numeral_base must be in [2, 10]");
    d_ = sc.dimension;

    if (auto a = root_["alphabet"]) {
      for (const auto& g : a) sc.alphabet.add(g.as<std::string>());
    } else {
      for (int i = 0; i < sc.numeral_base; ++i) sc.alphabet.add(std::to_string(i));
    }
    if (sc.alphabet.size() < 2) problem(root_, "INVALID_VALUE", "alphabet needs at least 2 symbols");

    read_cost(sc);
    auto world = std::make_shared<World>(sc.dimension, sc.numeral_base);
    read_world(*world);
    sc.world = world;
    read_axioms(sc, *world);
    if (auto g = root_["grid"]) {
      for (const auto& p : g)
        if (auto v = vec(p)) {
          for (const auto& q : sc.grid)
            if (q == *v) problem(p, "INVALID_VALUE", "duplicate grid point " + format_vector(*v));
          sc.grid.push_back(*v);
        }
    }
    if (auto s = root_["search"]) {
      sc.limits.max_steps = optional_scalar<std::size_t>(s, "max_steps").value_or(sc.limits.max_steps);
      sc.limits.max_len = optional_scalar<std::size_t>(s, "max_len").value_or(sc.limits.max_len);
      sc.size_bound = optional_scalar<std::size_t>(s, "size_bound").value_or(sc.size_bound);
    }
    read_queries(sc, *world);
    read_observers(sc, *world);
    read_experiments(sc, *world);
    finish();
    return sc;
  }

 private:
  void problem(const YAML::Node& at, const std::string& code, const std::string& msg) {
    const auto mark = at.Mark();
    std::string where = mark.line >= 0 ? "line " + std::to_string(mark.line + 1) + ": " : "";
    problems_.emplace_back(code, where + msg);
  }

  void finish() {
    if (!problems_.empty()) throw ScenarioError(problems_);
  }

  template <class T>
  std::optional<T> optional_scalar(const YAML::Node& parent, const std::string& key) {
    auto n = parent[key];
    if (!n) return std::nullopt;
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      problem(n, "PARSE_ERROR", "'" + key + "' has the wrong type");
      return std::nullopt;
    }
  }

  template <class T>
  std::optional<T> scalar(const YAML::Node& parent, const std::string& key) {
    if (!parent[key]) {
      problem(parent, "PARSE_ERROR", "missing '" + key + "'");
      return std::nullopt;
    }
    return optional_scalar<T>(parent, key);
  }

  std::optional<Rational> rational(const YAML::Node& n) {
    try {
      return parse_rational(n.as<std::string>());
    } catch (const Error& e) {
      problem(n, e.code(), e.what());
    } catch (const YAML::Exception&) {
      problem(n, "PARSE_ERROR", "expected a number");
    }
    return std::nullopt;
  }

  // A list of 2d+2 numbers, or one number meaning all components.
  std::optional<ResourceVector> vec(const YAML::Node& n) {
    if (!n) return std::nullopt;
    try {
      if (n.IsScalar()) {
        auto q = rational(n);
        if (!q) return std::nullopt;
        return ResourceVector::uniform(d_, *q);
      }
      std::vector<Rational> c;
      for (const auto& x : n) {
        auto q = rational(x);
        if (!q) return std::nullopt;
        c.push_back(*q);
      }
      if (c.size() != 2 * d_ + 2) {
        problem(n, "DIMENSION_MISMATCH",
                "expected " + std::to_string(2 * d_ + 2) + " components, got " + std::to_string(c.size()));
        return std::nullopt;
      }
      return ResourceVector(std::move(c));
    } catch (const Error& e) {
      problem(n, e.code(), e.what());
    }
    return std::nullopt;
  }

  std::optional<Statement> statement(const YAML::Node& n, const World& w) {
    try {
      auto s = Statement::parse(n.as<std::string>());
      for (const auto& a : s.atoms())
        if (!w.has_atom(a)) {
          problem(n, "DANGLING_REFERENCE", "unknown atom '" + a + "'");
          return std::nullopt;
        }
      return s;
    } catch (const Error& e) {
      problem(n, e.code(), e.what());
    } catch (const YAML::Exception&) {
      problem(n, "PARSE_ERROR", "expected a statement string");
    }
    return std::nullopt;
  }

  std::optional<Purpose> purpose(const YAML::Node& n) {
    if (!n) return Purpose::none();
    try {
      return Purpose::parse(n.as<std::string>());
    } catch (const Error& e) {
      problem(n, e.code(), e.what());
    }
    return std::nullopt;
  }

  void read_cost(Scenario& sc) {
    auto cm = root_["cost_model"];
    if (!cm) {
      problem(root_, "MISSING_SECTION", "missing 'cost_model'");
      return;
    }
    const auto zero = ResourceVector::zero(d_);
    sc.cost.delta = vec(cm["delta"]).value_or(zero);
    if (!cm["delta"]) problem(cm, "PARSE_ERROR", "missing 'delta'");
    if (auto e = cm["delta_energy"]) sc.cost.delta_energy = rational(e).value_or(Rational(0));
    sc.cost.overhead_base = cm["overhead_base"] ? vec(cm["overhead_base"]).value_or(zero) : zero;
    sc.cost.overhead_slope = cm["overhead_slope"] ? vec(cm["overhead_slope"]).value_or(zero) : zero;
    if (sc.cost.delta_energy < 0) problem(cm["delta_energy"], "INVALID_VALUE", "delta_energy is negative");
  }

  void read_world(World& w) {
    auto wn = root_["world"];
    if (!wn) {
      problem(root_, "MISSING_SECTION", "missing 'world'");
      return;
    }
    for (const auto& kv : wn["atoms"]) {
      const auto id = kv.first.as<std::string>();
      try {
        if (Statement::parse(id).kind() != Statement::Kind::Atom) throw ParseError("'" + id + "' is not an atom name");
        w.add_atom(id, kv.second.as<bool>());
      } catch (const Error& e) {
        problem(kv.first, e.code(), e.what());
      } catch (const YAML::Exception&) {
        problem(kv.second, "PARSE_ERROR", "truth of '" + id + "' must be true or false");
      }
    }
    for (const auto& sn : wn["strings"]) {
      try {
        w.add_string_atom(sn.as<std::string>());
      } catch (const Error& e) {
        problem(sn, e.code(), e.what());
      } catch (const YAML::Exception&) {
        problem(sn, "PARSE_ERROR", "string equations must be scalars");
      }
    }
    for (const auto& e : wn["equipment"]) {
      auto id = scalar<std::string>(e, "id");
      auto cost = vec(e["cost"]);
      if (!e["cost"]) problem(e, "PARSE_ERROR", "missing 'cost'");
      auto p = purpose(e["purpose"]);
      if (!id || !cost || !p) continue;
      check_truth_target(*p, w, e["purpose"]);
      try {
        w.add_equipment(Equipment{*id, *cost, *p});
      } catch (const Error& err) {
        problem(e, err.code(), err.what());
      }
    }
    for (const auto& pn : wn["procedures"]) read_procedure(pn, w);
    if (auto tp = wn["true_purposes"]) {
      for (const auto& kv : tp) {
        const auto id = kv.first.as<std::string>();
        auto p = purpose(kv.second);
        if (!p) continue;
        if (!w.has_subject(id)) {
          problem(kv.first, "DANGLING_REFERENCE", "true purpose for unknown subject '" + id + "'");
          continue;
        }
        check_truth_target(*p, w, kv.second);
        w.set_true_purpose(id, *p);
      }
    }
    if (auto vs = wn["verifiers"]) {
      for (const auto& pair : vs) {
        if (!pair.IsSequence() || pair.size() != 2) {
          problem(pair, "PARSE_ERROR", "verifier entry must be [verifier, subject]");
          continue;
        }
        const auto a = pair[0].as<std::string>(), b = pair[1].as<std::string>();
        bool ok = true;
        for (const auto& id : {a, b})
          if (!w.has_subject(id)) {
            problem(pair, "DANGLING_REFERENCE", "unknown verifier subject '" + id + "'");
            ok = false;
          }
        if (ok) w.add_verifier(a, b);
      }
      auto cycle = w.verifier_cycle();
      if (!cycle.empty()) {
        std::string path;
        for (const auto& id : cycle) path += (path.empty() ? "" : " -> ") + id;
        problem(vs, "CYCLIC_VERIFIER", "verifier relation has a cycle: " + path);
      }
    }
  }

  void check_truth_target(const Purpose& p, const World& w, const YAML::Node& at) {
    if (const auto* t = p.truth_target(); t && !w.has_atom(*t))
      problem(at, "DANGLING_REFERENCE", "purpose names unknown atom '" + *t + "'");
  }

  void read_procedure(const YAML::Node& pn, World& w) {
    auto id = scalar<std::string>(pn, "id");
    if (!id) return;
    Procedure p;
    p.id = *id;
    bool ok = true;
    for (const auto& e : pn["equipment"]) {
      const auto eid = e.as<std::string>();
      if (!w.all_equipment().count(eid)) {
        problem(e, "DANGLING_REFERENCE", "procedure '" + p.id + "' uses unknown equipment '" + eid + "'");
        ok = false;
      }
      p.equipment.push_back(eid);
    }
    p.instructions = optional_scalar<std::string>(pn, "instructions").value_or("");
    auto cost = vec(pn["cost"]);
    if (!pn["cost"]) problem(pn, "PARSE_ERROR", "procedure '" + p.id + "' has no 'cost'");
    auto pur = purpose(pn["purpose"]);
    if (pur) check_truth_target(*pur, w, pn["purpose"]);
    if (!cost || !pur) return;
    p.implementation_cost = *cost;
    p.declared_purpose = *pur;
    if (auto out = pn["output"]) {
      if (out["const"]) {
        p.output = OutputSpec::constant(out["const"].as<std::string>());
      } else if (out["atom"]) {
        const auto a = out["atom"].as<std::string>();
        if (!w.has_atom(a)) {
          problem(out["atom"], "DANGLING_REFERENCE", "output reads unknown atom '" + a + "'");
          ok = false;
        }
        p.output = OutputSpec::reads_atom(a);
      } else if (out["table"]) {
        for (const auto& rn : out["table"]) {
          OutputRule rule;
          for (const auto& kv : rn["when"]) {
            const auto a = kv.first.as<std::string>();
            if (!w.has_atom(a)) {
              problem(kv.first, "DANGLING_REFERENCE", "output table names unknown atom '" + a + "'");
              ok = false;
            }
            rule.when[a] = kv.second.as<bool>();
          }
          if (rn["at"]) rule.at = rn["at"].as<std::string>();
          rule.output = optional_scalar<std::string>(rn, "output").value_or("");
          p.output.rules.push_back(std::move(rule));
        }
        p.output.fallback = optional_scalar<std::string>(out, "fallback").value_or("");
      } else {
        problem(out, "PARSE_ERROR", "output needs one of 'const', 'atom', 'table'");
      }
    } else if (const auto* t = p.declared_purpose.truth_target(); t && w.has_atom(*t)) {
      p.output = OutputSpec::reads_atom(*t);
    }
    if (!ok) return;
    try {
      w.add_procedure(std::move(p));
    } catch (const Error& e) {
      problem(pn, e.code(), e.what());
    }
  }

  void read_axioms(Scenario& sc, const World& w) {
    std::set<std::string> names;
    for (const auto& an : root_["axioms"]) {
      auto name = scalar<std::string>(an, "name");
      auto s = an["statement"] ? statement(an["statement"], w) : std::nullopt;
      if (!an["statement"]) problem(an, "PARSE_ERROR", "axiom without 'statement'");
      const auto basis = optional_scalar<std::string>(an, "basis").value_or("verified");
      if (basis != "verified" && basis != "postulated")
        problem(an["basis"], "PARSE_ERROR", "basis must be 'verified' or 'postulated'");
      if (!name || !s) continue;
      if (!names.insert(*name).second) problem(an, "INVALID_VALUE", "duplicate axiom name '" + *name + "'");
      sc.axioms.push_back({*name, *s, basis == "postulated" ? AxiomBasis::Postulated : AxiomBasis::VerifiedInWorld});
    }
  }

  std::optional<BudgetedStatements> budgeted(const YAML::Node& n, const World& w) {
    if (!n) return std::nullopt;
    auto b = vec(n["budget"]);
    if (!n["budget"]) problem(n, "PARSE_ERROR", "missing 'budget'");
    BudgetedStatements out{b.value_or(ResourceVector::zero(d_)), {}};
    for (const auto& s : n["statements"])
      if (auto st = statement(s, w)) out.statements.push_back(*st);
    return out;
  }

  void read_queries(Scenario& sc, const World& w) {
    auto q = root_["queries"];
    if (!q) return;
    for (const auto& e : q["expressions"]) sc.expression_queries.push_back(e.as<std::string>());
    for (const auto& s : q["cost"])
      if (auto st = statement(s, w)) sc.cost_queries.push_back(*st);
    sc.domain = budgeted(q["domain"], w);
    sc.prove = budgeted(q["prove"], w);
    if (auto r = q["reflect"]) {
      auto target = r["target"] ? statement(r["target"], w) : std::nullopt;
      auto budget = vec(r["budget"]);
      auto stepv = vec(r["step"]);
      auto stages = optional_scalar<std::size_t>(r, "stages").value_or(1);
      if (!target || !budget || !stepv) {
        problem(r, "PARSE_ERROR", "reflect needs 'target', 'budget' and 'step'");
        return;
      }
      sc.reflect = ReflectQuery{*target, *budget, *stepv, stages};
    }
  }

  std::optional<Location> location(const YAML::Node& n) {
    if (!n || !n.IsSequence()) {
      problem(n, "PARSE_ERROR", "location must be a list of numeral strings");
      return std::nullopt;
    }
    Location x;
    for (const auto& c : n) x.coordinates.push_back(c.as<std::string>());
    return x;
  }

  void read_observers(Scenario& sc, const World& w) {
    for (const auto& on : root_["observers"]) {
      ObserverScript script;
      script.name = scalar<std::string>(on, "name").value_or("");
      if (on["cap"]) script.cap = vec(on["cap"]);
      for (const auto& an : on["actions"]) {
        if (an["verify"]) {
          if (auto s = statement(an["verify"], w)) script.actions.push_back(VerifyAction{*s});
        } else if (an["implement"]) {
          ImplementAction im;
          im.procedure = an["implement"].as<std::string>();
          im.space_time = optional_scalar<std::string>(an, "space_time").value_or("");
          for (const auto& id : {im.procedure, im.space_time})
            if (!w.has_procedure(id))
              problem(an, "DANGLING_REFERENCE", "unknown procedure '" + id + "'");
          auto x = location(an["at"]);
          if (!x) continue;
          im.at = *x;
          script.actions.push_back(std::move(im));
        } else {
          problem(an, "PARSE_ERROR", "action needs 'verify' or 'implement'");
        }
      }
      sc.observers.push_back(std::move(script));
    }
  }

  void read_experiments(Scenario& sc, const World& w) {
    for (const auto& en : root_["experiments"]) {
      NamedExperiment ex;
      ex.name = scalar<std::string>(en, "name").value_or("");
      auto& s = ex.setup;
      s.experiment = scalar<std::string>(en, "experiment").value_or("");
      s.theory = scalar<std::string>(en, "theory").value_or("");
      s.space_time = scalar<std::string>(en, "space_time").value_or("");
      bool ok = true;
      for (const auto& id : {s.experiment, s.theory, s.space_time})
        if (!id.empty() && !w.has_procedure(id)) {
          problem(en, "DANGLING_REFERENCE", "unknown procedure '" + id + "'");
          ok = false;
        }
      auto xe = location(en["at_experiment"]);
      auto xt = location(en["at_theory"]);
      auto pn = en["purposes"];
      auto pe = purpose(pn["experiment"]);
      auto pt = purpose(pn["theory"]);
      auto ps = purpose(pn["space_time"]);
      if (!ok || !xe || !xt || !pe || !pt || !ps) continue;
      s.at_experiment = *xe;
      s.at_theory = *xt;
      s.experiment_purpose = *pe;
      s.theory_purpose = *pt;
      s.space_time_purpose = *ps;
      sc.experiments.push_back(std::move(ex));
    }
  }

  YAML::Node root_;
  std::size_t d_{1};
  std::vector<std::pair<std::string, std::string>> problems_;
};

}  // namespace detail

/// Parses and validates scenario text. Throws ScenarioError listing every
/// problem found.
inline Scenario parse_scenario(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ScenarioError({{"PARSE_ERROR", "line " + std::to_string(e.mark.line + 1) + ": " + e.msg}});
  }
  return detail::ScenarioReader(root).read();
}

inline Scenario load_scenario(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::BadFile&) {
    throw ScenarioError({{"IO_ERROR", "cannot read '" + path + "'"}});
  } catch (const YAML::ParserException& e) {
    throw ScenarioError({{"PARSE_ERROR", path + ": line " + std::to_string(e.mark.line + 1) + ": " + e.msg}});
  }
  return detail::ScenarioReader(root).read();
}

}  // namespace reslim
