#include <gtest/gtest.h>

#include <future>

#include "oracle/brute_force_prover.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

std::vector<NamedAxiom> admitted(const Theory& t) { return t.axioms().admitted; }

}  // namespace

TEST(Prove, ModusPonensProof) {
  const auto t = a_ab_theory(12);
  const auto p = prove(t, S("B"));
  ASSERT_TRUE(p);
  ASSERT_EQ(p->size(), 3u);
  EXPECT_EQ(p->conclusion(), S("B"));
  EXPECT_EQ(p->steps[2].why.kind, Justification::Kind::ModusPonens);
  EXPECT_EQ(p->cost, V({7, 7, 7, Rational(35, 4)}));
  EXPECT_EQ(check_proof(*p, admitted(t), t.cost_parameters(), LengthBound::finite(t.step_length_bound())), p->cost);
}

TEST(Prove, BudgetJustBelowTheProof) {
  const auto exact = Theory(V({7, 7, 7, Rational(35, 4)}), a_ab(), half_quarter(), abc_world());
  EXPECT_TRUE(prove(exact, S("B")));
  for (std::size_t i = 0; i < 4; ++i) {
    const Rational lower = exact.budget()[i] - (i == 3 ? Rational(1, 4) : Rational(1));
    const auto t = exact.with_budget(exact.budget().with(i, lower));
    EXPECT_EQ(t.axioms().admitted.size(), 2u);
    EXPECT_FALSE(prove(t, S("B"))) << format_vector(t.budget());
  }
}

TEST(Prove, AxiomIsOneStep) {
  const auto p = prove(a_ab_theory(12), S("(A -> B)"));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->size(), 1u);
  EXPECT_EQ(p->steps[0].why.str(), "axiom ab");
}

TEST(Prove, TooLongForTheLanguage) {
  const auto t = a_ab_theory(4);  // N(r) = 4
  EXPECT_EQ(t.language_bound(), LengthBound::finite(4));
  EXPECT_THROW(prove(t, S("(A -> B)")), StatementTooLong);
  EXPECT_FALSE(is_theorem(t, S("(A -> B)")));
}

TEST(Prove, LongerThanTheSearchLimit) {
  const auto t = a_ab_theory(40, SearchLimits{4, 5});
  const auto r = prove_explained(t, S("(A -> (B -> A))"));
  EXPECT_FALSE(r.proof);
  EXPECT_NE(r.reason.find("search limit"), std::string::npos);
}

TEST(IsTheorem, Examples) {
  const auto t = a_ab_theory(40);
  EXPECT_TRUE(is_theorem(t, S("B")));
  EXPECT_TRUE(is_theorem(t, S("A")));
  EXPECT_FALSE(is_theorem(t, S("C")));
  EXPECT_TRUE(is_theorem(t, S("(A -> (B -> A))")));
  EXPECT_TRUE(is_theorem(t, S("(B -> (C -> B))")));
  EXPECT_FALSE(is_theorem(t, S("(C -> B)")));  // three steps for B, two more after it
}

TEST(IsTheorem, DepthLimitBites) {
  // C needs A, (A -> (B -> C)), (B -> C), B, C: five steps.
  const std::vector<AxiomCandidate> ax{{"a", S("A")}, {"b", S("B")}, {"abc", S("(A -> (B -> C))")}};
  auto w = abc_world();
  const Theory t(U(60), ax, half_quarter(), w);
  EXPECT_EQ(t.axioms().admitted.size(), 2u);  // C is false, so (A -> (B -> C)) is rejected
  std::vector<AxiomCandidate> post = ax;
  for (auto& c : post) c.basis = AxiomBasis::Postulated;
  const Theory p(U(60), post, half_quarter(), w);
  EXPECT_TRUE(is_theorem(p, S("(B -> C)")));
  EXPECT_FALSE(is_theorem(p, S("C")));
  const Theory deeper(U(60), post, half_quarter(), w, SearchLimits{5, 11});
  EXPECT_TRUE(is_theorem(deeper, S("C")));
}

TEST(TheoremsUpTo, LogicAloneGivesSchemaInstances) {
  const Theory t(U(60), {}, half_quarter(), abc_world());
  const auto th = theorems_up_to(t, 9);
  ASSERT_FALSE(th.empty());
  for (const auto& s : th) EXPECT_NE(schema_of(s), 0) << s.render();
  EXPECT_NE(std::find(th.begin(), th.end(), S("(C -> (A -> C))")), th.end());
}

TEST(TheoremsUpTo, ContainsAxiomsAndConsequence) {
  const auto th = theorems_up_to(a_ab_theory(40), 5);
  for (const char* s : {"A", "B", "(A -> B)"}) EXPECT_NE(std::find(th.begin(), th.end(), S(s)), th.end()) << s;
  EXPECT_TRUE(std::is_sorted(th.begin(), th.end(),
                             [](const Statement& a, const Statement& b) { return a.length() < b.length(); }));
}

TEST(AdmitAxioms, Rules) {
  auto w = abc_world();
  w->add_atom("Z", true);
  w->add_procedure(reader("Z", {}, U(0)));
  const std::vector<AxiomCandidate> c{{"z", S("Z")},
                                      {"a", S("A")},
                                      {"c", S("C")},
                                      {"long", S("(A -> (B -> A))")},
                                      {"post", S("C"), AxiomBasis::Postulated}};
  const auto zero = admit_axioms(c, U(0), *w, half_quarter());
  ASSERT_EQ(zero.admitted.size(), 0u);  // N(0) = 0 rejects even atoms
  const auto small = admit_axioms(c, U(1), *w, half_quarter());
  EXPECT_TRUE(small.admits("z"));
  EXPECT_FALSE(small.admits("a"));  // needs [2,2,2,2]
  const auto mid = admit_axioms(c, U(6), *w, half_quarter());
  EXPECT_TRUE(mid.admits("a"));
  EXPECT_TRUE(mid.admits("post"));
  std::map<std::string, std::string> why;
  for (const auto& r : mid.rejected) why[r.name] = r.code;
  EXPECT_EQ(why["c"], "FALSE_IN_WORLD");
  EXPECT_EQ(why["long"], "STATEMENT_TOO_LONG");
  for (const auto& r : small.rejected)
    if (r.name == "a") {
      EXPECT_EQ(r.code, "NOT_IN_DOMAIN");
    }
}

TEST(Soundness, TrueAxiomsAndNegativeControl) {
  EXPECT_TRUE(soundness_check(a_ab_theory(40), 5).ok());
  auto bad = a_ab();
  bad.push_back({"lie", S("C"), AxiomBasis::Postulated});
  const auto report = soundness_check(Theory(U(40), bad, half_quarter(), abc_world()), 5);
  EXPECT_FALSE(report.ok());
  EXPECT_EQ(report.false_axioms, std::vector<std::string>{"lie"});
  EXPECT_FALSE(report.false_theorems.empty());
}

TEST(Oracle, AgreesOnSmallTheory) {
  const auto t = a_ab_theory(20);
  ASSERT_EQ(t.step_length_bound(), 10u);
  const oracle::CostModel m{4, oracle::Q(1, 2), oracle::Q(1, 4)};
  const auto expected = oracle::theorems({"A", "B", "C"}, {oracle::atom("A"), oracle::imp(oracle::atom("A"), oracle::atom("B"))},
                                         10, 4, m, std::vector<oracle::Q>(4, oracle::Q(20)));
  for (const auto& s : enumerate_statements({"A", "B", "C"}, 7))
    EXPECT_EQ(is_theorem(t, s), expected.count(s.render()) > 0) << s.render();
}

TEST(Cache, ConcurrentQueriesAgree) {
  const auto t = a_ab_theory(40);
  const auto statements = enumerate_statements({"A", "B", "C"}, 5);
  std::vector<std::future<std::vector<bool>>> jobs;
  for (int k = 0; k < 4; ++k)
    jobs.push_back(std::async(std::launch::async, [&] {
      std::vector<bool> out;
      for (const auto& s : statements) out.push_back(is_theorem(t, s));
      return out;
    }));
  const auto first = jobs[0].get();
  for (std::size_t k = 1; k < jobs.size(); ++k) EXPECT_EQ(jobs[k].get(), first);
}
