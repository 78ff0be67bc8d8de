#pragma once

#include <memory>
#include <string>
#include <vector>

#include "reslim.hpp"
#include "reslim/checks.hpp"

namespace testing_support {

using namespace reslim;

inline ResourceVector U(long v) { return ResourceVector::uniform(1, Rational(v)); }
inline ResourceVector V(std::initializer_list<Rational> c) { return ResourceVector(c); }
inline Statement S(const char* text) { return Statement::parse(text); }

inline Procedure reader(const std::string& atom, std::vector<std::string> equipment, ResourceVector cost,
                        std::string id = {}) {
  Procedure p;
  p.id = id.empty() ? "read_" + atom : id;
  p.equipment = std::move(equipment);
  p.implementation_cost = std::move(cost);
  p.declared_purpose = Purpose::truth_of(atom);
  p.output = OutputSpec::reads_atom(atom);
  return p;
}

/// A and B true, read off one shared scope; C false, in its own lab.
inline std::shared_ptr<World> abc_world() {
  auto w = std::make_shared<World>(1, 2);
  w->add_atom("A", true);
  w->add_atom("B", true);
  w->add_atom("C", false);
  w->add_equipment({"scope", U(1), Purpose::measure("light", 2)});
  w->add_equipment({"lab", U(2), Purpose::measure("charge", 2)});
  w->add_procedure(reader("A", {"scope"}, U(1)));
  w->add_procedure(reader("B", {"scope"}, U(1)));
  w->add_procedure(reader("C", {"lab"}, U(1)));
  return w;
}

inline CostParameters half_quarter() { return CostParameters::uniform(1, Rational(1, 2), Rational(1, 4)); }

inline std::vector<AxiomCandidate> a_ab() {
  return {{"a", S("A"), AxiomBasis::VerifiedInWorld}, {"ab", S("(A -> B)"), AxiomBasis::VerifiedInWorld}};
}

inline Theory a_ab_theory(long budget, SearchLimits limits = {}) {
  return Theory(U(budget), a_ab(), half_quarter(), abc_world(), limits);
}

}  // namespace testing_support
