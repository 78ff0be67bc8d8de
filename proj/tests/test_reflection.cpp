#include <gtest/gtest.h>

#include "support.hpp"

using namespace testing_support;

namespace {

bool proves_with(const Theory& ext, std::vector<std::string> keep, const Statement& s) {
  std::vector<AxiomCandidate> c;
  for (const auto& a : ext.candidates())
    if (std::find(keep.begin(), keep.end(), a.name) != keep.end()) c.push_back(a);
  return is_theorem(ext.with_candidates(std::move(c)), s);
}

}  // namespace

TEST(Val, Construction) {
  const auto w = abc_world();
  // Nine symbols in base 2 need four digits; A is symbol 6, '!' symbol 2.
  EXPECT_EQ(godel_code(*w, S("A")), "0110");
  EXPECT_EQ(godel_code(*w, S("!A")), "00100110");
  EXPECT_EQ(val_statement(S("A"), U(12), *w).render(), "(Thm[12,12,12,12;0110] -> A)");
  EXPECT_EQ(val_statement(S("!A"), U(12), *w).render(), "(Thm[12,12,12,12;00100110] -> !A)");

  const GodelMap g(coding_alphabet(*w, S("(A -> B)")), 2);
  EXPECT_EQ(godel_code(*w, S("(A -> B)")), g.encode(to_expression(S("(A -> B)"), g.alphabet())));
  EXPECT_EQ(Statement::parse(g.decode(godel_code(*w, S("(A -> B)"))).render(g.alphabet())), S("(A -> B)"));
}

TEST(ReflectExtend, ProvesTargetFromThmAndVal) {
  const auto t = a_ab_theory(12);
  const auto step = reflect_extend(t, S("B"), U(18));
  ASSERT_TRUE(step.base_proves);
  const Theory& ext = *step.extension;
  EXPECT_TRUE(ext.axioms().admits("thm"));
  EXPECT_TRUE(ext.axioms().admits("val"));
  EXPECT_TRUE(ext.world().truth(step.thm.atom_id()));

  const auto iso = reflect_extend(t, S("B"), U(18), ReflectOptions{"thm", "val", true, false});
  const auto p = prove(*iso.extension, S("B"));
  ASSERT_TRUE(p);
  ASSERT_EQ(p->size(), 3u);
  EXPECT_EQ(p->steps[0].statement, step.thm);
  EXPECT_EQ(p->steps[1].statement, step.val);
  EXPECT_EQ(p->steps[2].why.str(), "mp 1 2");
}

TEST(ReflectExtend, Ablations) {
  const auto step = reflect_extend(a_ab_theory(12), S("B"), U(18));
  const Theory& ext = *step.extension;
  EXPECT_TRUE(proves_with(ext, {"a", "ab", "thm"}, S("B")));  // without Val the old axioms still give B
  EXPECT_FALSE(proves_with(ext, {"a", "thm"}, S("B")));       // without (A -> B) and Val
  EXPECT_TRUE(proves_with(ext, {"thm", "val"}, S("B")));
  EXPECT_FALSE(is_theorem(ext.with_candidates({}), step.val));
}

TEST(ReflectExtend, ProverCostIsTheProofCost) {
  const auto step = reflect_extend(a_ab_theory(12), S("B"), U(18));
  const auto& w = step.extension->world();
  const auto id = step.thm.atom_id();
  EXPECT_EQ(w.procedure("prover:" + id).implementation_cost, V({7, 7, 7, Rational(35, 4)}));
  EXPECT_EQ(min_cost(step.val, w).frontier, std::vector<ResourceVector>{V({9, 9, 9, Rational(43, 4)})});
}

TEST(ReflectExtend, Errors) {
  const auto t = a_ab_theory(12);
  EXPECT_THROW(reflect_extend(t, S("B"), U(12)), BudgetNotLarger);
  EXPECT_THROW(reflect_extend(t, S("B"), V({13, 13, 13, 10})), BudgetNotLarger);
  EXPECT_THROW(reflection_chain(t, S("B"), 1, U(0)), BudgetNotLarger);
  // Val costs [9,9,9,43/4] to verify, more than the extension allows.
  const Theory tight(V({7, 7, 7, Rational(35, 4)}), a_ab(), half_quarter(), abc_world());
  EXPECT_THROW(reflect_extend(tight, S("B"), V({8, 8, 8, 9})), AxiomRejected);
}

TEST(ReflectExtend, UnprovedTargetGivesFalseThm) {
  const auto step = reflect_extend(a_ab_theory(12), S("C"), U(18));
  EXPECT_FALSE(step.base_proves);
  EXPECT_FALSE(step.extension->world().truth(step.thm.atom_id()));
  EXPECT_FALSE(step.extension->axioms().admits("thm"));
  EXPECT_TRUE(step.extension->axioms().admits("val"));  // vacuously true
  EXPECT_FALSE(is_theorem(*step.extension, S("C")));
}

TEST(ReflectionChain, SingleStageMatchesExtend) {
  const auto t = a_ab_theory(12);
  const auto chain = reflection_chain(t, S("B"), 1, U(6));
  ASSERT_EQ(chain.stages.size(), 1u);
  EXPECT_EQ(chain.stages[0].step.val, reflect_extend(t, S("B"), U(18)).val);
  EXPECT_EQ(chain.next_target, chain.stages[0].step.val);
}

TEST(ReflectionChain, ThreeStages) {
  const auto chain = reflection_chain(a_ab_theory(12, SearchLimits{4, 13}), S("B"), 3, U(6));
  ASSERT_EQ(chain.stages.size(), 3u);
  Statement target = S("B");
  for (const auto& st : chain.stages) {
    EXPECT_EQ(st.step.target, target);
    EXPECT_TRUE(st.proves_target) << st.index;
    EXPECT_TRUE(st.proves_target_isolated) << st.index;
    EXPECT_FALSE(st.val_from_logic_alone) << st.index;
    EXPECT_TRUE(st.soundness.ok()) << st.index;
    target = st.step.val;
  }
  EXPECT_EQ(chain.stages[2].step.val.length(), 13u);
  EXPECT_TRUE(chain.non_terminating);
  EXPECT_EQ(chain.next_target, chain.stages[2].step.val);
}
