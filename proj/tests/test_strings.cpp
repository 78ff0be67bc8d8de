#include <gtest/gtest.h>

#include "support.hpp"

using namespace testing_support;

TEST(StringTerms, Operations) {
  EXPECT_EQ(strings::evaluate("cat(01,10)", 2), "0110");
  EXPECT_EQ(strings::evaluate("at(0110,2)", 2), "1");
  EXPECT_EQ(strings::evaluate("sub(0110,1,0)", 2), "0000");
  EXPECT_EQ(strings::evaluate("len(0110)", 2), "100");
  EXPECT_EQ(strings::evaluate("len(0123012301)", 4), "22");  // ten symbols
  EXPECT_EQ(strings::evaluate("val(0011)", 2), "11");
  EXPECT_EQ(strings::evaluate("val(000)", 2), "0");
  EXPECT_EQ(strings::evaluate("cat(at(10,1),len(cat(1,1)))", 2), "110");
}

TEST(StringTerms, Equations) {
  EXPECT_TRUE(strings::holds("cat(01,10)=0110", 2));
  EXPECT_TRUE(strings::holds("Str[len(0110)=100]", 2));
  EXPECT_FALSE(strings::holds("len(0110)=11", 2));
  EXPECT_FALSE(strings::holds("val(01)=01", 2));
}

TEST(StringTerms, Malformed) {
  EXPECT_THROW(strings::evaluate("at(01,3)", 2), ParseError);
  EXPECT_THROW(strings::evaluate("cat(01,12)", 2), ParseError);  // 2 is not a base-2 digit
  EXPECT_THROW(strings::evaluate("rev(01)", 2), ParseError);
  EXPECT_THROW(strings::holds("01", 2), ParseError);
  EXPECT_THROW(strings::holds("01=01)", 2), ParseError);
}

TEST(StringAtoms, TruthIsComputed) {
  World w(1, 2);
  const auto id = w.add_string_atom("cat(0, 1) = 01");
  EXPECT_EQ(id, "Str[cat(0,1)=01]");
  EXPECT_TRUE(w.truth(id));
  EXPECT_FALSE(w.truth(w.add_string_atom("at(01,1)=1")));
  EXPECT_THROW(w.add_atom("Str[len(1)=0]", true), InvalidValue);
  EXPECT_NO_THROW(w.add_atom("Str[len(1)=1]", true));
}

TEST(StringAtoms, ParseAsOneGlyph) {
  const auto s = S("(A -> Str[cat(01,10)=0110])");
  EXPECT_EQ(s.length(), 5u);
  EXPECT_EQ(s.render(), "(A -> Str[cat(01,10)=0110])");
}

TEST(StringAtoms, ConcatenationOfGodelCodes) {
  // Alphabet ( ) ! & | -> A B C, width 4: ! is 0010, A is 0110.
  const auto w = abc_world();
  EXPECT_EQ(godel_code(*w, S("!A")), "00100110");
  EXPECT_TRUE(strings::holds("cat(0010,0110)=00100110", 2));
}

TEST(StringAtoms, ProvedLikeAnyAtom) {
  auto w = std::make_shared<World>(1, 2);
  const auto id = w->add_string_atom("len(0110)=100");
  w->add_equipment({"abacus", U(1), Purpose::compute("strings", 4)});
  w->add_procedure(reader(id, {"abacus"}, U(1), "count"));
  const Theory t(U(30), {{"len", Statement::atom(id), AxiomBasis::VerifiedInWorld}}, half_quarter(), w);
  EXPECT_TRUE(t.axioms().rejected.empty());
  EXPECT_TRUE(is_theorem(t, Statement::atom(id)));
  EXPECT_EQ(min_cost(Statement::atom(id), *w).frontier, std::vector<ResourceVector>{U(2)});
  EXPECT_TRUE(soundness_check(t, 3).ok());
}
