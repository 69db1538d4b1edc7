#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "literepair/error.hpp"
#include "literepair/query.hpp"

using namespace literepair;
using namespace literepair::testing;

namespace {

std::set<std::string> member_texts(const std::vector<RewrittenQuery>& rw) {
  std::set<std::string> out;
  for (const auto& q : rw) out.insert(q.to_string());
  return out;
}

std::vector<AnswerTuple> ask(const std::string& query, const TBox& t, const AssertionSet& x) {
  return evaluate(parse_query(query), t, x);
}

}  // namespace

TEST(ConjunctiveQueries, KindsAndValidation) {
  Symbol x("x");
  EXPECT_THROW(ConjunctiveQuery(Symbol("q"), {Term::var(x)}, {QueryAtom{Symbol("A"), {Term::var(Symbol("y"))}}}),
               UsageError);
  EXPECT_THROW(ConjunctiveQuery(Symbol("q"), {}, {}), UsageError);
  EXPECT_EQ(parse_query("q(?x) :- A(?x)").kind(), QueryKind::kInstance);
  EXPECT_EQ(parse_query("q() :- R(a, b), A(a)").kind(), QueryKind::kGround);
  EXPECT_EQ(parse_query("q(?x, ?y) :- R(?x, ?y)").kind(), QueryKind::kInstance);
  EXPECT_EQ(parse_query("q(?x, ?y) :- R(?x, ?y), A(?y)").kind(), QueryKind::kConjunctive);
  EXPECT_STREQ(to_string(QueryKind::kGround), "ground");
}

TEST(Rewrite, NothingBelowR) {
  auto rw = rewrite(ex_query(), ex_tbox());
  EXPECT_EQ(member_texts(rw), (std::set<std::string>{"q(?x) :- R(?x, z)"}));
}

TEST(Rewrite, RoleInclusionStep) {
  auto rw = rewrite(parse_query("q(?x) :- P(?x, z)"), ex_tbox());
  EXPECT_EQ(member_texts(rw), (std::set<std::string>{"q(?x) :- P(?x, z)", "q(?x) :- R(?x, z)"}));
}

TEST(Rewrite, ConceptInclusionStep) {
  auto rw = rewrite(parse_query("q(?x) :- D(?x)"), ex_tbox());
  EXPECT_EQ(member_texts(rw), (std::set<std::string>{"q(?x) :- D(?x)", "q(?x) :- E(?x)"}));
}

TEST(Rewrite, ExistentialOnTheLeft) {
  TBox t{ConceptInclusion{some("P"), atom("A"), false}, ConceptInclusion{some("P", true), atom("B"), false}};
  auto rw = rewrite(parse_query("q(?x) :- A(?x)"), t);
  ASSERT_EQ(rw.size(), 2u);
  auto p = std::find_if(rw.begin(), rw.end(), [](const RewrittenQuery& q) { return q.body[0].predicate == Symbol("P"); });
  ASSERT_NE(p, rw.end());
  EXPECT_EQ(p->body[0].args[0], Term::var(Symbol("x")));
  EXPECT_TRUE(p->body[0].args[1].variable);
  EXPECT_NE(p->body[0].args[1], Term::var(Symbol("x")));
  auto rb = rewrite(parse_query("q(?x) :- B(?x)"), t);
  ASSERT_EQ(rb.size(), 2u);
}

TEST(Rewrite, ExistentialOnTheRightNeedsUnboundVariable) {
  TBox t{ConceptInclusion{atom("A"), some("P"), false}};
  EXPECT_EQ(rewrite(parse_query("q(?x) :- P(?x, ?y)"), t).size(), 2u);
  // ?y is an answer variable: A(x) says nothing about which y.
  EXPECT_EQ(rewrite(parse_query("q(?x, ?y) :- P(?x, ?y)"), t).size(), 1u);
  EXPECT_EQ(rewrite(parse_query("q(?x) :- P(?x, b)"), t).size(), 1u);
}

TEST(Rewrite, ReduceEnablesExistentialStep) {
  // P(x,y), P(x,z) unifies to P(x,y), after which A <= exists P applies.
  TBox t{ConceptInclusion{atom("A"), some("P"), false}};
  auto texts = member_texts(rewrite(parse_query("q(?x) :- P(?x, ?y), P(?x, ?z)"), t));
  EXPECT_TRUE(texts.contains("q(?x) :- A(?x)")) << ::testing::PrintToString(texts);
}

TEST(Rewrite, InverseRoleInclusion) {
  TBox t{RoleInclusion{role("S", true), role("R"), false}};
  auto texts = member_texts(rewrite(parse_query("q(?x) :- R(?x, c)"), t));
  EXPECT_EQ(texts, (std::set<std::string>{"q(?x) :- R(?x, c)", "q(?x) :- S(c, ?x)"}));
}

TEST(Rewrite, CyclicTBoxTerminates) {
  TBox t{ConceptInclusion{atom("A"), atom("B"), false}, ConceptInclusion{atom("B"), atom("A"), false},
         ConceptInclusion{atom("A"), some("P"), false}, ConceptInclusion{some("P", true), atom("A"), false}};
  auto rw = rewrite(parse_query("q(?x) :- A(?x)"), t);
  EXPECT_GE(rw.size(), 3u);
  EXPECT_LE(rw.size(), 10u);
}

TEST(Evaluate, FirstStratum) { EXPECT_EQ(evaluate(ex_query(), ex_tbox(), ex_strata()[0]), unary({"a"})); }

TEST(Evaluate, FifthStratum) { EXPECT_EQ(evaluate(ex_query(), ex_tbox(), ex_strata()[4]), unary({"e", "c"})); }

TEST(Evaluate, EmptyAssertions) {
  EXPECT_TRUE(evaluate(ex_query(), ex_tbox(), AssertionSet{}).empty());
  EXPECT_TRUE(ask("q() :- A(a)", ex_tbox(), AssertionSet{}).empty());
}

TEST(Evaluate, BooleanQueries) {
  EXPECT_EQ(ask("q() :- A(a)", ex_tbox(), abox("A(a)")), std::vector<AnswerTuple>{AnswerTuple{}});
  EXPECT_EQ(ask("q() :- D(e)", ex_tbox(), abox("E(e)")), std::vector<AnswerTuple>{AnswerTuple{}});
  EXPECT_TRUE(ask("q() :- D(a)", ex_tbox(), abox("E(e)")).empty());
}

TEST(Evaluate, EntailedViaRoleInclusion) { EXPECT_EQ(ask("q(?x) :- P(?x, z)", ex_tbox(), abox("R(a,z)")), unary({"a"})); }

TEST(Evaluate, AnonymousWitnesses) {
  TBox t{ConceptInclusion{atom("A"), some("P"), false}, ConceptInclusion{some("P", true), atom("B"), false}};
  EXPECT_EQ(ask("q(?x) :- P(?x, ?y), B(?y)", t, abox("A(a); A(b)")), unary({"a", "b"}));
  EXPECT_TRUE(ask("q(?x, ?y) :- P(?x, ?y)", t, abox("A(a)")).empty());
  EXPECT_TRUE(ask("q(?y) :- P(?x, ?y)", t, abox("A(a)")).empty());
  EXPECT_EQ(ask("q() :- P(?x, ?y)", t, abox("A(a)")), std::vector<AnswerTuple>{AnswerTuple{}});
}

TEST(Evaluate, JoinsAndRepeatedVariables) {
  TBox none;
  AssertionSet x = abox("P(a,b); P(b,c); P(c,c); A(c)");
  EXPECT_EQ(ask("q(?x, ?z) :- P(?x, ?y), P(?y, ?z)", none, x),
            (std::vector<AnswerTuple>{tuple({"a", "c"}), tuple({"b", "c"}), tuple({"c", "c"})}));
  EXPECT_EQ(ask("q(?x) :- P(?x, ?x)", none, x), unary({"c"}));
  EXPECT_EQ(ask("q(?x) :- P(?x, ?y), A(?y)", none, x), unary({"b", "c"}));
  EXPECT_EQ(ask("q(?x, ?x) :- A(?x)", none, x), (std::vector<AnswerTuple>{tuple({"c", "c"})}));
}

TEST(Evaluate, MonotoneOnExample) {
  auto small = evaluate(ex_query(), ex_tbox(), ex_strata()[0]);
  auto big = evaluate(ex_query(), ex_tbox(), ex_ps().union_all());
  EXPECT_TRUE(std::includes(big.begin(), big.end(), small.begin(), small.end()));
  EXPECT_EQ(big, unary({"a", "b", "c", "e"}));
}

TEST(Evaluate, FilterHidesAssertions) {
  AssertionSet x = abox("R(a,z); R(b,z)");
  PreparedQuery p(ex_query(), ex_tbox());
  AssertionStore store(x);
  EXPECT_EQ(evaluate(p.rewriting, store), unary({"a", "b"}));
  EXPECT_EQ(evaluate(p.rewriting, store, [](const Assertion& a) { return a.subject() == Symbol("b"); }), unary({"b"}));
}

TEST(AnswerProfile, AboutAnswersPerStratum) {
  AnswerProfile prof = answer_profile(ex_query(), ex_kb());
  ASSERT_EQ(prof.strata.size(), 5u);
  EXPECT_EQ(prof.strata[2].answers, unary({"a"}));
  EXPECT_EQ(prof.strata[2].support, (AssertionSet{C("B", "a")}));
  EXPECT_EQ(prof.strata[3].answers, unary({"e"}));
  EXPECT_EQ(prof.strata[3].support, (AssertionSet{C("E", "e")}));
  EXPECT_EQ(prof.supports().strata(), ex_qps().strata());
  EXPECT_EQ(prof.all_answers(), unary({"a", "b", "c", "e"}));
}

TEST(AnswerProfile, StratumWithoutAnswers) {
  PrioritizedKB kb = PrioritizedKB::build(ex_tbox(), {{C("A", "a")}, {R("R", "a", "z"), C("A", "a")}});
  AnswerProfile prof = answer_profile(ex_query(), kb);
  EXPECT_TRUE(prof.strata[0].answers.empty());
  EXPECT_TRUE(prof.strata[0].support.empty());
  EXPECT_EQ(prof.strata[1].support, (AssertionSet{C("A", "a")}));
}

TEST(AnswerProfile, InstantiationUsesQueryAtoms) {
  AnswerProfile prof = answer_profile(ex_query(), ex_kb(), SupportMode::kInstantiation);
  EXPECT_EQ(prof.strata[0].support, (AssertionSet{R("R", "a", "z")}));
  EXPECT_EQ(prof.strata[4].support, (AssertionSet{R("R", "c", "z"), R("R", "e", "z")}));
  EXPECT_EQ(prof.strata[4].answers, unary({"c", "e"}));
}

TEST(AnswerProfile, InstantiationThroughInclusion) {
  PrioritizedKB kb = PrioritizedKB::build(ex_tbox(), {{R("R", "a", "z")}});
  AnswerProfile prof = answer_profile(parse_query("q(?x) :- P(?x, z)"), kb, SupportMode::kInstantiation);
  EXPECT_EQ(prof.strata[0].support, (AssertionSet{R("P", "a", "z")}));
}

TEST(AnswerProfile, InstantiationDropsAnonymousWitness) {
  TBox t{ConceptInclusion{atom("A"), some("P"), false}};
  PrioritizedKB kb = PrioritizedKB::build(t, {{C("A", "a")}});
  AnswerProfile prof = answer_profile(parse_query("q(?x) :- P(?x, ?y)"), kb, SupportMode::kInstantiation);
  EXPECT_EQ(prof.strata[0].answers, unary({"a"}));
  EXPECT_TRUE(prof.strata[0].support.empty());
}

TEST(AnswerProfile, BooleanQuerySupportAboutConstants) {
  PrioritizedKB kb = PrioritizedKB::build(ex_tbox(), {{C("A", "a"), C("D", "a"), C("A", "b")}});
  AnswerProfile prof = answer_profile(parse_query("q() :- A(a)"), kb);
  EXPECT_EQ(prof.strata[0].answers, std::vector<AnswerTuple>{AnswerTuple{}});
  EXPECT_EQ(prof.strata[0].support, (AssertionSet{C("A", "a"), C("D", "a")}));
}

TEST(AnswersFromAssertions, PossibilisticSet) {
  AnswerProfile prof = answer_profile(ex_query(), ex_kb());
  EXPECT_EQ(answers_from_assertions(prof, AssertionSet{C("A", "a"), C("A", "b")}), unary({"a", "b"}));
}

TEST(AnswersFromAssertions, NothingRetained) {
  AnswerProfile prof = answer_profile(ex_query(), ex_kb());
  EXPECT_TRUE(answers_from_assertions(prof, AssertionSet{}).empty());
}

TEST(AnswersFromAssertions, NonDefeatedSet) {
  AnswerProfile prof = answer_profile(ex_query(), ex_kb());
  EXPECT_EQ(answers_from_assertions(prof, AssertionSet{C("A", "a"), C("A", "b"), C("E", "e"), C("A", "c")}),
            unary({"a", "b", "e", "c"}));
}

TEST(AnswersFromAssertions, UnsupportedAnswersAreKept) {
  PrioritizedKB kb = PrioritizedKB::build(ex_tbox(), {{R("R", "a", "z")}});
  AnswerProfile prof = answer_profile(ex_query(), kb);
  EXPECT_TRUE(prof.strata[0].support.empty());
  EXPECT_EQ(answers_from_assertions(prof, AssertionSet{}), unary({"a"}));
}
