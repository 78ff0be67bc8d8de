#include <gtest/gtest.h>

#include "oracle/cost_oracle.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

ResourceVector v2(int a, int b) { return V({a, b}); }

World plane() {
  World w(0, 2);
  w.add_atom("A", true);
  w.add_atom("B", false);
  w.add_atom("Z", true);
  w.add_equipment({"shared", v2(1, 1), Purpose::none()});
  w.add_procedure(reader("A", {"shared"}, v2(2, 2)));
  w.add_procedure(reader("B", {"shared"}, v2(2, 2)));
  w.add_procedure(reader("Z", {}, v2(0, 0)));
  return w;
}

World two_ways() {
  World w(0, 2);
  w.add_atom("A", true);
  w.add_procedure(reader("A", {}, v2(1, 3), "fast"));
  w.add_procedure(reader("A", {}, v2(3, 1), "frugal"));
  return w;
}

// Random world: atoms X0..X(n-1), a few equipment pieces, one to three
// verifiers per atom with random equipment subsets.
World random_world(checks::Rng& rng, std::size_t atoms) {
  World w(1, 2);
  std::uniform_int_distribution<int> coin(0, 1), count(1, 3);
  for (std::size_t i = 0; i < atoms; ++i) w.add_atom("X" + std::to_string(i), coin(rng));
  for (int e = 0; e < 3; ++e) w.add_equipment({"e" + std::to_string(e), checks::random_vector(rng, 1, 2), Purpose::none()});
  int id = 0;
  for (std::size_t i = 0; i < atoms; ++i)
    for (int k = count(rng); k > 0; --k) {
      std::vector<std::string> eq;
      for (int e = 0; e < 3; ++e)
        if (coin(rng) && coin(rng)) eq.push_back("e" + std::to_string(e));
      w.add_procedure(reader("X" + std::to_string(i), eq, checks::random_vector(rng, 1, 2), "p" + std::to_string(id++)));
    }
  return w;
}

std::vector<std::vector<Rational>> components(const std::vector<ResourceVector>& vs) {
  std::vector<std::vector<Rational>> out;
  for (const auto& v : vs) out.push_back(v.components());
  return out;
}

}  // namespace

TEST(StrategyCost, Examples) {
  World w(0, 2);
  w.add_atom("A", true);
  w.add_equipment({"e", v2(1, 1), Purpose::none()});
  w.add_procedure(reader("A", {"e"}, v2(2, 2)));
  const VerificationStrategy strat{{{"A", "read_A"}}, {}};
  EXPECT_EQ(strategy_cost(S("A"), strat, w), v2(3, 3));
  EXPECT_EQ(strategy_cost(S("!A"), strat, w), v2(3, 3));

  const World p = plane();
  const VerificationStrategy both{{{"A", "read_A"}, {"B", "read_B"}}, {}};
  EXPECT_EQ(strategy_cost(S("(A & B)"), both, p), v2(5, 5));
  EXPECT_THROW(strategy_cost(S("(A & B)"), strat, p), UncoveredAtom);
}

TEST(MinCost, Examples) {
  const World w = two_ways();
  EXPECT_EQ(min_cost(S("A"), w).frontier, (std::vector<ResourceVector>{v2(1, 3), v2(3, 1)}));
  EXPECT_EQ(min_cost(S("A"), w).witnesses.size(), 2u);
  EXPECT_EQ(min_cost(S("(A & A)"), w).frontier, min_cost(S("A"), w).frontier);
  EXPECT_EQ(min_cost(S("(A & B)"), plane()).frontier, std::vector<ResourceVector>{v2(5, 5)});
  EXPECT_THROW(min_cost(S("Q"), w), UnknownAtom);
}

TEST(MinCost, PrebuiltEquipmentIsFree) {
  EXPECT_EQ(min_cost(S("A"), plane(), {"shared"}).frontier, std::vector<ResourceVector>{v2(2, 2)});
}

TEST(InDomain, Examples) {
  const World w = two_ways();
  EXPECT_TRUE(in_domain(S("A"), v2(2, 3), w));
  EXPECT_FALSE(in_domain(S("A"), v2(2, 2), w));
  EXPECT_TRUE(in_domain(S("(Z | !Z)"), v2(0, 0), plane()));

  World orphan(0, 2);
  orphan.add_atom("A", true);
  const auto verdict = in_domain_explained(S("A"), v2(9, 9), orphan);
  EXPECT_FALSE(verdict.member);
  EXPECT_NE(verdict.diagnostic.find("no procedure"), std::string::npos);
}

TEST(Verify, Examples) {
  const World w = plane();
  SpendLedger ledger(0);
  auto r = verify(S("A"), std::nullopt, w, ledger);
  EXPECT_EQ(r.verdict, Verdict::True);
  EXPECT_EQ(r.debit, v2(3, 3));
  EXPECT_EQ(ledger.spent(), v2(3, 3));

  SpendLedger broke(0);
  r = verify(S("A"), v2(0, 0), w, broke);
  EXPECT_EQ(r.verdict, Verdict::InsufficientResources);
  EXPECT_TRUE(broke.spent().is_zero());

  SpendLedger fresh(0);
  EXPECT_EQ(verify(S("(A & B)"), std::nullopt, w, fresh).verdict, Verdict::False);
  SpendLedger again(0);
  EXPECT_EQ(verify(S("(A & !B)"), std::nullopt, w, again).verdict, Verdict::True);
}

TEST(Verify, PicksCheapestAffordable) {
  const World w = two_ways();
  SpendLedger capped(0, v2(3, 2));
  const auto r = verify(S("A"), std::nullopt, w, capped);
  EXPECT_EQ(r.verdict, Verdict::True);
  EXPECT_EQ(r.debit, v2(3, 1));
  EXPECT_EQ(r.strategy->procedure_for.at("A"), "frugal");
}

TEST(NonClosure, Examples) {
  World w(0, 2);
  w.add_atom("P", true);
  w.add_atom("Q", true);
  w.add_equipment({"ep", v2(1, 1), Purpose::none()});
  w.add_equipment({"eq", v2(1, 1), Purpose::none()});
  w.add_procedure(reader("P", {"ep"}, v2(1, 1)));
  w.add_procedure(reader("Q", {"eq"}, v2(1, 1)));
  const auto witness = non_closure_witness(v2(3, 3), w);
  ASSERT_TRUE(witness);
  EXPECT_EQ(witness->first.render(), "P");
  EXPECT_EQ(witness->second.render(), "Q");
  EXPECT_EQ(witness->conjunction_frontier, std::vector<ResourceVector>{v2(4, 4)});

  World single(0, 2);
  single.add_atom("Z", true);
  single.add_procedure(reader("Z", {}, v2(0, 0)));
  EXPECT_FALSE(non_closure_witness(v2(0, 0), single));

  World shared = plane();  // A & B costs [5,5]; both atoms fit [5,5] too
  EXPECT_FALSE(non_closure_witness(v2(5, 5), shared));
}

TEST(MinCost, AgreesWithSubsetOracle) {
  checks::Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const World w = random_world(rng, 3);
    std::vector<std::string> atoms{"X0", "X1", "X2"};
    for (int k = 0; k < 5; ++k) {
      const auto s = checks::random_statement(rng, atoms, 2);
      EXPECT_EQ(components(min_cost(s, w).frontier), oracle::frontier(w, s.atoms())) << s.render();
    }
  }
}

TEST(MinCost, ConnectiveBoundsAndNegation) {
  checks::Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const World w = random_world(rng, 3);
    const std::vector<std::string> atoms{"X0", "X1", "X2"};
    const auto s = checks::random_statement(rng, atoms, 2), t = checks::random_statement(rng, atoms, 2);
    EXPECT_EQ(checks::connective_bounds(s, t, w).violations, 0u);
    EXPECT_TRUE(checks::negation_invariant(s, w));
  }
}
