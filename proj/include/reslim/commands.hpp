#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "reslim/checks.hpp"
#include "reslim/error.hpp"
#include "reslim/godel.hpp"
#include "reslim/lattice.hpp"
#include "reslim/observer.hpp"
#include "reslim/reflection.hpp"
#include "reslim/scenario.hpp"
#include "reslim/theory.hpp"
#include "reslim/verification.hpp"

namespace reslim {

using Json = nlohmann::ordered_json;

struct CommandOptions {
  std::filesystem::path out{"."};
  std::uint64_t seed{1};
  std::optional<std::size_t> max_steps;
  std::optional<std::size_t> max_len;
};

struct CommandResult {
  int exit_code{0};
  std::vector<std::string> files;  // written, relative to the output directory
  std::string summary;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"cost", "domain", "prove", "lattice", "observe", "reflect", "check"};
  return names;
}

namespace report {

inline Json vec(const ResourceVector& v) {
  Json a = Json::array();
  for (const auto& q : v.components()) a.push_back(format_rational(q));
  return a;
}

inline Json vecs(const std::vector<ResourceVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(vec(v));
  return a;
}

inline Json strategy(const VerificationStrategy& s) {
  Json o = Json::object();
  for (const auto& [atom, proc] : s.procedure_for) o[atom] = proc;
  return o;
}

inline Json proof(const Proof& p) {
  Json steps = Json::array();
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const auto& s = p.steps[i];
    steps.push_back(Json{{"step", i + 1},
                         {"statement", s.statement.render()},
                         {"justification", s.why.str()},
                         {"cost", vec(s.cost)},
                         {"cumulative", vec(s.cumulative)}});
  }
  return Json{{"steps", steps}, {"cost", vec(p.cost)}};
}

inline Json axioms(const AxiomSet& ax) {
  Json admitted = Json::array(), rejected = Json::array();
  for (std::size_t i = 0; i < ax.admitted.size(); ++i)
    admitted.push_back(Json{{"name", ax.admitted[i].name},
                            {"statement", ax.admitted[i].statement.render()},
                            {"basis", to_string(ax.basis[i])}});
  for (const auto& r : ax.rejected) rejected.push_back(Json{{"name", r.name}, {"code", r.code}, {"reason", r.reason}});
  return Json{{"admitted", admitted}, {"rejected", rejected}};
}

inline Json tally(const checks::Tally& t) {
  return Json{{"cases", t.cases}, {"violations", t.violations}, {"examples", t.examples}};
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path) : out_(path) {
    if (!out_) throw IoError("cannot write '" + path.string() + "'");
  }
  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out_ << (i ? "," : "") << csv_field(fields[i]);
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

inline std::vector<std::string> vector_columns(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline void append(std::vector<std::string>& row, const ResourceVector& v) {
  for (const auto& q : v.components()) row.push_back(format_rational(q));
}

inline void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << j.dump(2) << "\n";
}

}  // namespace report

namespace detail {

inline const BudgetedStatements& require(const std::optional<BudgetedStatements>& q, const char* name) {
  if (!q) throw MissingSection(std::string("scenario has no queries.") + name + " section");
  return *q;
}

inline Json domain_report(const Scenario& sc, const BudgetedStatements& q) {
  const World& w = *sc.world;
  Json items = Json::array();
  for (const auto& s : q.statements) {
    Json item{{"statement", s.render()}};
    const auto verdict = in_domain_explained(s, q.budget, w);
    item["in_domain"] = verdict.member;
    if (verdict.diagnostic.empty()) {
      const auto cr = min_cost(s, w);
      item["frontier"] = report::vecs(cr.frontier);
    } else {
      item["diagnostic"] = verdict.diagnostic;
    }
    items.push_back(item);
  }
  Json j{{"budget", report::vec(q.budget)}, {"statements", items}};
  if (auto wit = non_closure_witness(q.budget, w)) {
    j["non_closure_witness"] = Json{{"first", wit->first.render()},
                                    {"second", wit->second.render()},
                                    {"conjunction", Statement::conjunction(wit->first, wit->second).render()},
                                    {"conjunction_frontier", report::vecs(wit->conjunction_frontier)}};
  } else {
    j["non_closure_witness"] = nullptr;
  }
  return j;
}

inline Json prove_report(const Theory& t, const std::vector<Statement>& statements, std::size_t& proved) {
  Json items = Json::array();
  proved = 0;
  for (const auto& s : statements) {
    Json item{{"statement", s.render()}};
    try {
      auto res = prove_explained(t, s);
      if (res.proof) {
        check_proof(*res.proof, t.axioms().admitted, t.cost_parameters(), LengthBound::finite(t.step_length_bound()));
        item["proved"] = true;
        item["proof"] = report::proof(*res.proof);
        ++proved;
      } else {
        item["proved"] = false;
        item["reason"] = res.reason;
      }
    } catch (const StatementTooLong& e) {
      item["proved"] = false;
      item["reason"] = std::string(e.code()) + ": " + e.what();
    }
    items.push_back(item);
  }
  return Json{{"budget", report::vec(t.budget())},
              {"language_bound", t.language_bound().str()},
              {"step_length_bound", t.step_length_bound()},
              {"max_steps", t.limits().max_steps},
              {"axioms", report::axioms(t.axioms())},
              {"statements", items}};
}

}  // namespace detail

inline CommandResult cmd_cost(const Scenario& sc, const CommandOptions& opt) {
  const World& w = *sc.world;
  const std::size_t k = sc.cost.dimension() * 2 + 2;
  Json expressions = Json::array(), statements = Json::array(), budgets = Json::array();
  report::CsvWriter csv(opt.out / "cost.csv");
  std::vector<std::string> header{"kind", "text", "length"};
  for (auto& c : report::vector_columns("cost_", k)) header.push_back(c);
  csv.row(header);

  for (const auto& text : sc.expression_queries) {
    const auto x = Expression::parse(sc.alphabet, text);
    const auto c = expression_cost(x, 0, sc.cost);
    expressions.push_back(Json{{"text", text}, {"length", x.length()}, {"cost_m0", report::vec(c)}});
    std::vector<std::string> row{"expression", text, std::to_string(x.length())};
    report::append(row, c);
    csv.row(row);
  }
  for (const auto& s : sc.cost_queries) {
    const auto render_cost = expression_cost(s.length(), 0, sc.cost);
    Json item{{"statement", s.render()}, {"length", s.length()}, {"render_cost_m0", report::vec(render_cost)}};
    std::vector<std::string> row{"statement_render", s.render(), std::to_string(s.length())};
    report::append(row, render_cost);
    csv.row(row);
    try {
      const auto cr = min_cost(s, w);
      Json pts = Json::array();
      for (std::size_t i = 0; i < cr.frontier.size(); ++i) {
        pts.push_back(Json{{"cost", report::vec(cr.frontier[i])}, {"strategy", report::strategy(cr.witnesses[i])}});
        std::vector<std::string> vrow{"statement_verify", s.render(), std::to_string(s.length())};
        report::append(vrow, cr.frontier[i]);
        csv.row(vrow);
      }
      item["verification_frontier"] = pts;
    } catch (const NoStrategy& e) {
      item["verification_frontier"] = nullptr;
      item["diagnostic"] = e.what();
    }
    statements.push_back(item);
  }
  for (const auto& r : sc.grid) {
    const auto n = max_length(r, sc.cost);
    budgets.push_back(Json{{"budget", report::vec(r)}, {"max_length", n.str()}});
  }
  report::write_json(opt.out / "cost.json",
                     Json{{"expressions", expressions}, {"statements", statements}, {"language_bounds", budgets}});
  return {0, {"cost.json", "cost.csv"},
          std::to_string(sc.expression_queries.size() + sc.cost_queries.size()) + " cost queries"};
}

inline CommandResult cmd_domain(const Scenario& sc, const CommandOptions& opt) {
  const auto& q = detail::require(sc.domain, "domain");
  const Json j = detail::domain_report(sc, q);
  report::write_json(opt.out / "domain.json", j);
  std::string summary = "non-closure witness: ";
  if (j["non_closure_witness"].is_null()) summary += "none";
  else summary += j["non_closure_witness"]["first"].get<std::string>() + ", " +
                  j["non_closure_witness"]["second"].get<std::string>();
  return {0, {"domain.json"}, summary};
}

inline CommandResult cmd_prove(const Scenario& sc, const CommandOptions& opt) {
  const auto& q = detail::require(sc.prove, "prove");
  std::size_t proved = 0;
  const Json j = detail::prove_report(sc.theory_at(q.budget), q.statements, proved);
  report::write_json(opt.out / "prove.json", j);
  return {0, {"prove.json"}, std::to_string(proved) + "/" + std::to_string(q.statements.size()) + " proved"};
}

inline CommandResult cmd_lattice(const Scenario& sc, const CommandOptions& opt, bool parallel = true) {
  if (sc.grid.empty()) throw MissingSection("scenario has no grid");
  const TheoryGrid grid(sc.grid, sc.theory_at(sc.grid.front()));
  const auto edges = extension_edges(grid);
  const auto sets = theorem_sets(grid, sc.size_bound, parallel);
  const auto violations = monotonicity_violations(edges, sets);
  const std::size_t k = sc.cost.dimension() * 2 + 2;
  const std::size_t alphabet_size = statement_alphabet(sc.world->atoms()).size();

  report::CsvWriter points(opt.out / "lattice_points.csv");
  std::vector<std::string> header{"index"};
  for (auto& c : report::vector_columns("r_", k)) header.push_back(c);
  for (const char* c : {"max_length", "expressions", "admitted_axioms", "theorems"}) header.push_back(c);
  points.row(header);
  Json pts = Json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto lang = language_size(grid.point(i), sc.cost, alphabet_size);
    std::vector<std::string> row{std::to_string(i)};
    report::append(row, grid.point(i));
    row.push_back(lang.n.str());
    row.push_back(lang.expressions);
    row.push_back(std::to_string(grid.theory(i).axioms().admitted.size()));
    row.push_back(std::to_string(sets[i].size()));
    points.row(row);
    pts.push_back(Json{{"index", i},
                       {"budget", report::vec(grid.point(i))},
                       {"max_length", lang.n.str()},
                       {"expressions", lang.expressions},
                       {"admitted_axioms", grid.theory(i).axioms().admitted.size()},
                       {"theorems", sets[i].size()}});
  }
  report::CsvWriter edge_csv(opt.out / "lattice_edges.csv");
  edge_csv.row({"from", "to"});
  Json ej = Json::array();
  for (const auto& e : edges) {
    edge_csv.row({std::to_string(e.first), std::to_string(e.second)});
    ej.push_back(Json::array({e.first, e.second}));
  }
  Json vj = Json::array();
  for (const auto& v : violations)
    vj.push_back(Json{{"from", v.edge.first}, {"to", v.edge.second}, {"lost", v.lost.render()}});

  Json pairs = Json::array();
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i + 1; j < grid.size(); ++j)
      pairs.push_back(Json{{"a", i}, {"b", j}, {"quadrant", to_string(classify_pair(grid.point(i), grid.point(j)))}});

  Json fa = Json::array();
  std::vector<Statement> probes;
  if (sc.prove) probes = sc.prove->statements;
  for (const auto& s : probes) {
    const auto f = first_appearance(s, grid);
    fa.push_back(Json{{"statement", s.render()}, {"theorem", report::vecs(f.theorem)}, {"expressible", report::vecs(f.expressible)}});
  }
  report::write_json(opt.out / "lattice.json", Json{{"size_bound", sc.size_bound},
                                                    {"points", pts},
                                                    {"edges", ej},
                                                    {"pairs", pairs},
                                                    {"monotonicity_violations", vj},
                                                    {"first_appearance", fa}});
  return {violations.empty() ? 0 : 1,
          {"lattice.json", "lattice_points.csv", "lattice_edges.csv"},
          "monotonicity: " + std::to_string(violations.size()) + " violations over " + std::to_string(edges.size()) +
              " edges"};
}

inline CommandResult cmd_observe(const Scenario& sc, const CommandOptions& opt) {
  const World& w = *sc.world;
  const std::size_t k = sc.cost.dimension() * 2 + 2;
  const auto zero = ResourceVector::zero(sc.dimension);
  std::optional<TheoryGrid> grid;
  if (!sc.grid.empty()) grid.emplace(sc.grid, sc.theory_at(sc.grid.front()));
  Json observers = Json::array();
  CommandResult result;
  for (std::size_t n = 0; n < sc.observers.size(); ++n) {
    const auto& script = sc.observers[n];
    const auto state = run(script, w);
    const std::string name = script.name.empty() ? "observer" + std::to_string(n) : script.name;
    const std::string file = "trace_" + name + ".csv";
    report::CsvWriter csv(opt.out / file);
    std::vector<std::string> header{"t", "action", "outcome"};
    for (auto& c : report::vector_columns("delta_", k)) header.push_back(c);
    for (auto& c : report::vector_columns("p_", k)) header.push_back(c);
    csv.row(header);
    for (const auto& row : state.trace) {
      std::vector<std::string> r{std::to_string(row.t), row.action, row.outcome};
      report::append(r, row.delta);
      report::append(r, row.spent);
      csv.row(r);
    }
    result.files.push_back(file);
    Json o{{"name", name},
           {"steps", state.trace.size()},
           {"spent", report::vec(state.spent())},
           {"monotone", path_is_monotone(state.trace, zero)},
           {"accounting_balanced", total_increments(state, sc.dimension) == state.spent()}};
    if (!state.knowledge.empty()) {
      const auto ks = knowledge_statement(state);
      o["knowledge"] = ks.render();
      const auto frontier = min_cost(ks, w).frontier;
      o["knowledge_frontier"] = report::vecs(frontier);
      o["spent_on_frontier"] = std::find(frontier.begin(), frontier.end(), state.spent()) != frontier.end();
      Json gaps = Json::array();
      for (const auto& f : frontier) gaps.push_back(report::vec(sub_saturating(state.spent(), f)));
      o["gap_to_frontier"] = gaps;
    } else {
      o["knowledge"] = nullptr;
    }
    if (grid) o["located_at"] = report::vecs(locate_in_lattice(state, *grid));
    observers.push_back(o);
  }
  report::write_json(opt.out / "observe.json", Json{{"observers", observers}});
  result.files.insert(result.files.begin(), "observe.json");
  result.summary = std::to_string(sc.observers.size()) + " observer traces";
  return result;
}

inline Json chain_report(const ReflectionChain& chain) {
  Json stages = Json::array();
  for (const auto& st : chain.stages) {
    Json added = Json::array();
    if (st.step.base_proves) added.push_back(st.step.thm.render());
    added.push_back(st.step.val.render());
    stages.push_back(Json{{"stage", st.index},
                          {"base_budget", report::vec(st.step.base_budget)},
                          {"budget", report::vec(st.step.budget)},
                          {"target", st.step.target.render()},
                          {"base_proves_target", st.step.base_proves},
                          {"added_axioms", added},
                          {"proves_target", st.proves_target},
                          {"target_proof_steps", st.target_proof_steps},
                          {"proves_target_from_thm_and_val_alone", st.proves_target_isolated},
                          {"val_from_logic_alone", st.val_from_logic_alone},
                          {"val_without_val_axiom", st.val_without_val_axiom},
                          {"sound", st.soundness.ok()},
                          {"theorems_checked", st.soundness.theorems_checked}});
  }
  return Json{{"stages", stages},
              {"terminated_by", "stage_cap"},
              {"marker", chain.non_terminating ? "NonTerminating" : "Closed"},
              {"next_target", chain.next_target.render()}};
}

inline CommandResult cmd_reflect(const Scenario& sc, const CommandOptions& opt) {
  if (!sc.reflect) throw MissingSection("scenario has no queries.reflect section");
  const auto& q = *sc.reflect;
  const auto chain = reflection_chain(sc.theory_at(q.budget), q.target, q.stages, q.step);
  report::write_json(opt.out / "reflect.json", chain_report(chain));
  std::size_t ok = 0;
  for (const auto& st : chain.stages) ok += st.proves_target ? 1 : 0;
  return {0, {"reflect.json"}, std::to_string(ok) + "/" + std::to_string(chain.stages.size()) + " stages prove their target"};
}

/// Runs every invariant the scenario supports. Exit 1 when any fails.
inline CommandResult cmd_check(const Scenario& sc, const CommandOptions& opt) {
  const World& w = *sc.world;
  checks::Rng rng(opt.seed);
  Json j = Json::object();
  std::size_t failures = 0;
  auto count = [&](const checks::Tally& t) {
    failures += t.violations;
    return report::tally(t);
  };

  j["order_laws"] = count(checks::order_laws(rng, 1000, sc.dimension));
  j["language_monotonicity"] = count(checks::length_monotonicity(rng, 200, sc.cost));

  // Statements over atoms that have a verifier, so r(S) exists.
  std::vector<std::string> costable;
  for (const auto& a : w.atoms())
    if (!w.verifiers_of_atom(a).empty()) costable.push_back(a);
  checks::Tally bounds, negation, godel;
  if (!costable.empty()) {
    for (int i = 0; i < 200; ++i) {
      const auto s = checks::random_statement(rng, costable, 2);
      const auto t = checks::random_statement(rng, costable, 2);
      const auto b = checks::connective_bounds(s, t, w);
      bounds.cases += b.cases;
      bounds.violations += b.violations;
      for (const auto& e : b.examples)
        if (bounds.examples.size() < 5) bounds.examples.push_back(e);
      negation.record(checks::negation_invariant(s, w), s.render());
    }
  }
  const GodelMap g(statement_alphabet(w.atoms()), w.numeral_base());
  for (const auto& s : enumerate_statements(w.atoms(), 5)) {
    const auto x = to_expression(s, g.alphabet());
    godel.record(g.decode(g.encode(x)) == x, s.render());
  }
  j["connective_bounds"] = count(bounds);
  j["negation_invariance"] = count(negation);
  j["godel_round_trip"] = count(godel);

  Json soundness = Json::array();
  std::vector<ResourceVector> budgets = sc.grid;
  if (sc.prove) budgets.push_back(sc.prove->budget);
  for (const auto& r : budgets) {
    const auto rep = soundness_check(sc.theory_at(r), sc.size_bound);
    failures += rep.false_axioms.size() + rep.false_theorems.size();
    Json fts = Json::array();
    for (const auto& s : rep.false_theorems) fts.push_back(s.render());
    soundness.push_back(Json{{"budget", report::vec(r)},
                             {"theorems_checked", rep.theorems_checked},
                             {"false_axioms", rep.false_axioms},
                             {"false_theorems", fts}});
  }
  j["soundness"] = soundness;

  if (sc.prove) {
    const Theory t = sc.theory_at(sc.prove->budget);
    checks::Tally rechecked;
    for (const auto& s : sc.prove->statements) {
      if (!t.language_bound().admits(s.length())) continue;
      if (auto p = prove(t, s)) {
        bool ok = true;
        try {
          ok = check_proof(*p, t.axioms().admitted, t.cost_parameters(), LengthBound::finite(t.step_length_bound())) ==
                   p->cost &&
               leq(p->cost, t.budget()) && p->conclusion() == s;
        } catch (const InvalidProof&) {
          ok = false;
        }
        rechecked.record(ok, s.render());
      }
    }
    j["proof_recheck"] = count(rechecked);
  }

  if (!sc.grid.empty()) {
    const TheoryGrid grid(sc.grid, sc.theory_at(sc.grid.front()));
    const auto edges = extension_edges(grid);
    const auto v = monotonicity_violations(edges, theorem_sets(grid, sc.size_bound, true));
    failures += v.size();
    j["theory_monotonicity"] = Json{{"edges", edges.size()}, {"violations", v.size()}};
  }

  checks::Tally accounting;
  for (const auto& script : sc.observers) {
    const auto state = run(script, w);
    accounting.record(path_is_monotone(state.trace, ResourceVector::zero(sc.dimension)) &&
                          total_increments(state, sc.dimension) == state.spent(),
                      script.name);
  }
  j["observer_accounting"] = count(accounting);

  Json experiments = Json::array();
  for (const auto& ex : sc.experiments) {
    SpendLedger ledger(sc.dimension);
    Json e{{"name", ex.name}};
    try {
      SpendLedger probe(sc.dimension);
      const bool ag = agreement(w, ex.setup, probe);
      const bool pu = pur(w, ex.setup);
      e["agreement"] = ag;
      e["purposes_hold"] = pu;
      e["test"] = theory_experiment_test(w, ex.setup, ledger);
      e["spent"] = report::vec(ledger.spent());
    } catch (const Error& err) {
      e["error"] = std::string(err.code()) + ": " + err.what();
    }
    experiments.push_back(e);
  }
  j["experiments"] = experiments;
  j["failures"] = failures;
  report::write_json(opt.out / "check.json", j);
  return {failures == 0 ? 0 : 1, {"check.json"}, std::to_string(failures) + " invariant violations"};
}

inline CommandResult run_command(const std::string& name, Scenario sc, const CommandOptions& opt) {
  if (opt.max_steps) sc.limits.max_steps = *opt.max_steps;
  if (opt.max_len) sc.limits.max_len = *opt.max_len;
  std::error_code ec;
  std::filesystem::create_directories(opt.out, ec);
  if (ec) throw IoError("cannot create '" + opt.out.string() + "': " + ec.message());
  if (name == "cost") return cmd_cost(sc, opt);
  if (name == "domain") return cmd_domain(sc, opt);
  if (name == "prove") return cmd_prove(sc, opt);
  if (name == "lattice") return cmd_lattice(sc, opt);
  if (name == "observe") return cmd_observe(sc, opt);
  if (name == "reflect") return cmd_reflect(sc, opt);
  if (name == "check") return cmd_check(sc, opt);
  throw InvalidValue("unknown command '" + name + "'");
}

}  // namespace reslim
