#include <gtest/gtest.h>

#include "reslim/scenario.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

std::string fixture(const char* name) { return std::string(RESLIM_FIXTURES) + "/" + name; }
std::string data(const char* name) { return std::string(RESLIM_TEST_DATA) + "/" + name; }

ScenarioError load_error(const std::string& path) {
  try {
    load_scenario(path);
  } catch (const ScenarioError& e) {
    return e;
  }
  ADD_FAILURE() << path << " loaded without error";
  return ScenarioError(std::vector<std::pair<std::string, std::string>>{{"NONE", ""}});
}

ScenarioError parse_error(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e;
  }
  ADD_FAILURE() << "parsed without error";
  return ScenarioError(std::vector<std::pair<std::string, std::string>>{{"NONE", ""}});
}

const char* kSmall = R"(
schema_version: 1
dimension: 1
cost_model: {delta: 1}
world:
  atoms: {A: true}
  procedures:
    - {id: p, cost: 1, purpose: "truth:A"}
)";

}  // namespace

TEST(Scenario, MinimalFixture) {
  const auto sc = load_scenario(fixture("minimal.scn"));
  EXPECT_EQ(sc.world->atoms().size(), 1u);
  EXPECT_EQ(sc.world->procedure_ids().size(), 1u);
  EXPECT_EQ(sc.cost.delta, U(1));
  EXPECT_EQ(sc.cost.delta_energy, Rational(1, 2));
  EXPECT_EQ(sc.axioms.size(), 1u);
}

TEST(Scenario, StandardFixture) {
  const auto sc = load_scenario(fixture("standard.scn"));
  EXPECT_EQ(sc.world->atoms(), (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(sc.grid.size(), 9u);
  EXPECT_EQ(sc.limits.max_len, 13u);
  EXPECT_EQ(sc.size_bound, 7u);
  EXPECT_EQ(sc.observers.size(), 3u);
  EXPECT_EQ(sc.experiments.size(), 2u);
  ASSERT_TRUE(sc.reflect);
  EXPECT_EQ(sc.reflect->stages, 3u);
  EXPECT_FALSE(sc.world->verifier_relation().empty());
  EXPECT_EQ(sc.world->true_purpose("guess_a"), Purpose::none());
  EXPECT_EQ(sc.world->output_of("measure_a", Location::origin(1)), "1");
  EXPECT_EQ(sc.world->output_of("read_c", Location::origin(1)), "0");
}

TEST(Scenario, AllShippedFixturesLoad) {
  for (const char* f : {"minimal.scn", "standard.scn", "nonclosure.scn", "negative_control.scn", "strings.scn"})
    EXPECT_NO_THROW(load_scenario(fixture(f))) << f;
}

TEST(Scenario, StringsFixture) {
  const auto sc = load_scenario(fixture("strings.scn"));
  EXPECT_EQ(sc.world->atoms().size(), 4u);
  EXPECT_TRUE(sc.world->truth("Str[cat(0010,0110)=00100110]"));
  EXPECT_TRUE(sc.world->truth("Str[len(00100110)=1000]"));
  EXPECT_FALSE(sc.world->truth("Str[at(0110,1)=1]"));
  EXPECT_EQ(godel_code(*sc.world, S("!A")), "00100110");
  EXPECT_EQ(parse_error(std::string(kSmall) + "  strings: [\"len(1)=12\"]\n").code(), "PARSE_ERROR");
}

TEST(Scenario, ScalarsAndDefaults) {
  const auto sc = parse_scenario(kSmall);
  EXPECT_EQ(sc.world->procedure("p").implementation_cost, U(1));
  EXPECT_EQ(sc.world->output_of("p", Location::origin(1)), "1");  // reads its atom
  EXPECT_EQ(sc.limits.max_steps, 4u);
  EXPECT_EQ(sc.numeral_base, 2);
}

TEST(Scenario, DanglingReferenceNamesTheId) {
  const auto e = load_error(data("dangling.scn"));
  EXPECT_EQ(e.code(), "DANGLING_REFERENCE");
  EXPECT_NE(std::string(e.what()).find("ghost"), std::string::npos);
  // Every problem is reported, not just the first.
  std::set<std::string> codes;
  for (const auto& [code, msg] : e.problems()) codes.insert(code);
  EXPECT_TRUE(codes.count("DIMENSION_MISMATCH"));
  EXPECT_GE(e.problems().size(), 3u);
}

TEST(Scenario, CyclicVerifier) {
  const auto e = load_error(data("cyclic.scn"));
  EXPECT_EQ(e.code(), "CYCLIC_VERIFIER");
  EXPECT_NE(std::string(e.what()).find("->"), std::string::npos);
}

TEST(Scenario, StructuralErrors) {
  EXPECT_EQ(parse_error("schema_version: 1\ndimension: 1\n").code(), "MISSING_SECTION");
  EXPECT_EQ(parse_error("a: [1, 2").code(), "PARSE_ERROR");
  std::string v2 = kSmall;
  v2.replace(v2.find("schema_version: 1"), 17, "schema_version: 2");
  EXPECT_EQ(parse_error(v2).code(), "PARSE_ERROR");
  EXPECT_EQ(parse_error(std::string(kSmall) + "axioms: [{name: x, statement: \"(A &\"}]\n").code(), "PARSE_ERROR");
  EXPECT_EQ(parse_error(std::string(kSmall) + "axioms: [{name: x, statement: Q}]\n").code(), "DANGLING_REFERENCE");
  EXPECT_EQ(parse_error(std::string(kSmall) + "grid: [[1, 2]]\n").code(), "DIMENSION_MISMATCH");
  EXPECT_EQ(load_error(data("no_such_file.scn")).code(), "IO_ERROR");
}

TEST(Scenario, ErrorsCarryLineNumbers) {
  const auto e = parse_error(std::string(kSmall) + "grid: [[1, 2]]\n");
  EXPECT_NE(std::string(e.what()).find("line 9"), std::string::npos) << e.what();
}
