// Builds a two-claim world by hand, proves B from {A, A -> B} at a few
// budgets and reflects once.
#include <iostream>
#include <memory>

#include "reslim.hpp"

using namespace reslim;

int main() {
  auto w = std::make_shared<World>(1, 2);
  w->add_atom("A", true);
  w->add_atom("B", true);
  w->add_equipment({"scope", ResourceVector::uniform(1, Rational(1)), Purpose::parse("measure:light:2")});
  for (const char* id : {"A", "B"}) {
    Procedure p;
    p.id = std::string("read_") + id;
    p.equipment = {"scope"};
    p.implementation_cost = ResourceVector::uniform(1, Rational(1));
    p.declared_purpose = Purpose::truth_of(id);
    p.output = OutputSpec::reads_atom(id);
    w->add_procedure(std::move(p));
  }

  const auto cp = CostParameters::uniform(1, Rational(1, 2), Rational(1, 4));
  const auto a = Statement::parse("A"), b = Statement::parse("B"), ab = Statement::parse("(A -> B)");

  std::cout << "r(A & B) frontier:";
  for (const auto& v : min_cost(Statement::conjunction(a, b), *w).frontier) std::cout << ' ' << format_vector(v);
  std::cout << "\n\n";

  const std::vector<AxiomCandidate> axioms{{"a", a, AxiomBasis::VerifiedInWorld},
                                           {"ab", ab, AxiomBasis::VerifiedInWorld}};
  for (int k : {6, 9, 12}) {
    const Theory t(ResourceVector::uniform(1, Rational(k)), axioms, cp, w);
    std::cout << "budget " << k << ": N(r) = " << t.language_bound().str() << ", admitted "
              << t.axioms().admitted.size() << ", B ";
    if (auto p = prove(t, b)) {
      std::cout << "proved at cost " << format_vector(p->cost) << "\n";
      for (std::size_t i = 0; i < p->steps.size(); ++i)
        std::cout << "  " << i + 1 << ". " << p->steps[i].statement.render() << "   [" << p->steps[i].why.str()
                  << "]\n";
    } else {
      std::cout << "not proved\n";
    }
  }

  const Theory t0(ResourceVector::uniform(1, Rational(12)), axioms, cp, w);
  const auto step = reflect_extend(t0, b, ResourceVector::uniform(1, Rational(18)));
  std::cout << "\nreflection adds\n  " << step.thm.render() << "\n  " << step.val.render() << "\n";
  return 0;
}
