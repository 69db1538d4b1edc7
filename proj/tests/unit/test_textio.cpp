#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "literepair/error.hpp"
#include "literepair/textio.hpp"

using namespace literepair;
using namespace literepair::testing;

TEST(ParseKb, ExampleFileMatchesBuiltFixture) {
  PrioritizedKB kb = parse_kb(read_text(data_path("ex.dlkb")));
  EXPECT_TRUE(kb == ex_kb());
}

TEST(ParseKb, EmptySections) {
  PrioritizedKB kb = parse_kb("[tbox]\n[stratum 1]\n");
  EXPECT_TRUE(kb.tbox().empty());
  ASSERT_EQ(kb.strata_count(), 1u);
  EXPECT_TRUE(kb.stratum(1).empty());
}

TEST(ParseKb, InconsistentStratumCitesConflict) {
  try {
    parse_kb("[tbox]\nA <= !B\n[stratum 1]\nA(a)\nB(a)\n");
    FAIL() << "expected InconsistentStratumError";
  } catch (const InconsistentStratumError& e) {
    EXPECT_EQ(e.stratum(), 1u);
    EXPECT_EQ(e.witness(), (std::vector<std::string>{"A(a)", "B(a)"}));
    EXPECT_NE(std::string(e.what()).find("{A(a), B(a)}"), std::string::npos) << e.what();
  }
}

TEST(ParseKb, AxiomForms) {
  PrioritizedKB kb = parse_kb(
      "[tbox]\n"
      "exists R- <= A   % range\n"
      "exists P <= !exists Q-\n"
      "role R- <= !P\n"
      "role S <= R\n"
      "[stratum 1]\n");
  const TBox& t = kb.tbox();
  EXPECT_EQ(t.concept_axioms().size(), 2u);
  EXPECT_EQ(t.role_axioms().size(), 2u);
  EXPECT_NE(std::find(t.concept_axioms().begin(), t.concept_axioms().end(),
                      ConceptInclusion{some("R", true), atom("A"), false}),
            t.concept_axioms().end());
  EXPECT_NE(std::find(t.concept_axioms().begin(), t.concept_axioms().end(),
                      ConceptInclusion{some("P"), some("Q", true), true}),
            t.concept_axioms().end());
  EXPECT_NE(std::find(t.role_axioms().begin(), t.role_axioms().end(), RoleInclusion{role("R", true), role("P"), true}),
            t.role_axioms().end());
}

TEST(ParseKb, KeywordsAreOrdinaryNamesWhenNotFollowedByIdentifier) {
  PrioritizedKB kb = parse_kb("[tbox]\nrole <= exists\n[stratum 1]\nrole(a)\n");
  ASSERT_EQ(kb.tbox().concept_axioms().size(), 1u);
  EXPECT_EQ(kb.tbox().concept_axioms()[0], (ConceptInclusion{atom("role"), atom("exists"), false}));
}

TEST(ParseKb, RejectsNestedInverse) {
  EXPECT_THROW(parse_kb("[tbox]\nexists P-- <= A\n[stratum 1]\n"), ParseError);
  EXPECT_THROW(parse_kb("[tbox]\nrole P-- <= Q\n[stratum 1]\n"), ParseError);
}

TEST(ParseKb, RejectsNamespaceClash) {
  EXPECT_THROW(parse_kb("[tbox]\n[stratum 1]\nA(a)\nA(a, b)\n"), NamespaceError);
  EXPECT_THROW(parse_kb("[tbox]\nexists A <= A\n[stratum 1]\n"), NamespaceError);
  EXPECT_THROW(parse_kb("[tbox]\n[stratum 1]\nA(a)\nB(A)\n"), NamespaceError);
  EXPECT_THROW(parse_kb("[tbox]\n[stratum 1]\nP(a, b)\nA(P)\n"), NamespaceError);
}

TEST(ParseKb, NamespaceErrorCarriesPosition) {
  try {
    parse_kb("[tbox]\n[stratum 1]\nA(a)\n  A(a, b)\n");
    FAIL();
  } catch (const NamespaceError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_EQ(e.column(), 3u);
    EXPECT_EQ(e.code(), "E_PARSE");
  }
}

TEST(ParseKb, StratumHeadersMustIncreaseFromOne) {
  EXPECT_THROW(parse_kb("[tbox]\n[stratum 2]\n"), ParseError);
  EXPECT_THROW(parse_kb("[tbox]\n[stratum 1]\n[stratum 3]\n"), ParseError);
  EXPECT_THROW(parse_kb("[tbox]\n[stratum 1]\n[stratum 1]\n"), ParseError);
}

TEST(ParseKb, SyntaxErrors) {
  EXPECT_THROW(parse_kb("[tbox]\n"), ParseError);                           // no stratum
  EXPECT_THROW(parse_kb("[stratum 1]\n[tbox]\n"), ParseError);              // tbox after strata
  EXPECT_THROW(parse_kb("[tbox]\n[tbox]\n[stratum 1]\n"), ParseError);      // tbox twice
  EXPECT_THROW(parse_kb("A(a)\n[stratum 1]\n"), ParseError);                // before any section
  EXPECT_THROW(parse_kb("[tbox]\nA <= \n[stratum 1]\n"), ParseError);       // missing rhs
  EXPECT_THROW(parse_kb("[tbox]\n[stratum 1]\nA(a, b, c)\n"), ParseError);  // arity 3
  EXPECT_THROW(parse_kb("[tbox]\n[stratum 1]\nA(9a)\n"), ParseError);       // bad identifier
  EXPECT_THROW(parse_kb("[tbox]\n[stratum 1]\nA(a) B(b)\n"), ParseError);   // trailing junk
  EXPECT_THROW(parse_kb("[abox]\n"), ParseError);                           // unknown section
  EXPECT_THROW(parse_kb("[tbox]\n[stratum 1]\nA(?x)\n"), ParseError);       // variable in ABox
}

TEST(ParseKb, SyntaxErrorPosition) {
  try {
    parse_kb("[tbox]\nA <= B\nA <= $\n[stratum 1]\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 6u);
  }
}

TEST(ParseKb, CommentsBlankLinesAndCrlf) {
  PrioritizedKB kb = parse_kb("% header\r\n\r\n[tbox] % t\r\nA <= B\r\n[stratum 1]\r\n  A(a)  % fact\r\n");
  EXPECT_EQ(kb.tbox().size(), 1u);
  EXPECT_EQ(kb.stratum(1), (AssertionSet{C("A", "a")}));
}

TEST(ParseQuery, InstanceQuery) {
  ConjunctiveQuery q = parse_query("q(?x) :- R(?x, z)");
  EXPECT_EQ(q.kind(), QueryKind::kInstance);
  EXPECT_EQ(q.arity(), 1u);
  ASSERT_EQ(q.body().size(), 1u);
  EXPECT_FALSE(q.body()[0].is_concept());
  EXPECT_TRUE(q == ex_query());
  EXPECT_EQ(q.to_string(), "q(?x) :- R(?x, z)");
}

TEST(ParseQuery, BooleanGroundQuery) {
  ConjunctiveQuery q = parse_query("q() :- A(a)");
  EXPECT_EQ(q.kind(), QueryKind::kGround);
  EXPECT_EQ(q.arity(), 0u);
  EXPECT_EQ(q.constants(), (std::vector<Symbol>{Symbol("a")}));
}

TEST(ParseQuery, ConjunctiveWithExistential) {
  ConjunctiveQuery q = parse_query("q(?x) :- R(?x,?y), A(?x)");
  EXPECT_EQ(q.kind(), QueryKind::kConjunctive);
  EXPECT_EQ(q.body().size(), 2u);
  EXPECT_EQ(q.head(), (std::vector<Term>{Term::var(Symbol("x"))}));
}

TEST(ParseQuery, BooleanWithVariablesIsLegal) {
  ConjunctiveQuery q = parse_query("q() :- R(?x, ?y)");
  EXPECT_EQ(q.arity(), 0u);
  EXPECT_EQ(q.kind(), QueryKind::kConjunctive);
}

TEST(ParseQuery, MultiLineAndComments) {
  ConjunctiveQuery q = parse_query("% instance\nq(?x) :-\n  R(?x, ?y), % edge\n  A(?y)\n");
  EXPECT_EQ(q.body().size(), 2u);
}

TEST(ParseQuery, Errors) {
  EXPECT_THROW(parse_query("q(?x) :- A(?y)"), ParseError);  // unbound head variable
  EXPECT_THROW(parse_query(""), ParseError);
  EXPECT_THROW(parse_query("q(x) :- A(x)"), ParseError);     // head term not a variable
  EXPECT_THROW(parse_query("q(?x) A(?x)"), ParseError);
  EXPECT_THROW(parse_query("q(?x) :- A(?x), A(?x, b)"), NamespaceError);
  EXPECT_THROW(parse_query("q(?x) :- A(?x, b, c)"), ParseError);
  EXPECT_THROW(parse_query("q(?x) :- A(?x) extra"), ParseError);
}

TEST(EmitKb, CanonicalAndStable) {
  PrioritizedKB kb = ex_kb();
  std::string text = emit_kb(kb);
  EXPECT_EQ(text,
            "[tbox]\n"
            "A <= !B\n"
            "A <= !E\n"
            "E <= D\n"
            "role R <= P\n"
            "[stratum 1]\nA(a)\nA(c)\nR(a,z)\n"
            "[stratum 2]\nA(b)\nB(a)\nR(b,z)\n"
            "[stratum 3]\nB(a)\nB(c)\nR(a,z)\n"
            "[stratum 4]\nA(c)\nE(e)\nR(e,z)\n"
            "[stratum 5]\nA(c)\nA(e)\nR(c,z)\nR(e,z)\n");
  PrioritizedKB back = parse_kb(text);
  EXPECT_TRUE(back == kb);
  EXPECT_EQ(emit_kb(back), text);
}

TEST(EmitKb, RoundTripsInverseAndExistentialAxioms) {
  std::string src = "[tbox]\nexists R- <= !exists P\nA <= exists Q-\nrole Q- <= !R\n[stratum 1]\nA(a)\n[stratum 2]\n";
  PrioritizedKB kb = parse_kb(src);
  EXPECT_TRUE(parse_kb(emit_kb(kb)) == kb);
}

TEST(EmitReport, FieldOrderAndFormatting) {
  Report r;
  r.command = "repair";
  r.strategy = Strategy::kNonDefeated;
  r.pipeline = Pipeline::kAfterQuery;
  r.mode = SupportMode::kAboutAnswers;
  r.query = "q(?x) :- R(?x, z)";
  r.rank = 2;
  r.checks = 3;
  r.repair = AssertionSet{C("A", "b"), C("A", "a")};
  r.answers = unary({"b", "a"});
  r.productivity = Ratio{0.5, false};
  Metrics m;
  m.cr = 1;
  m.precision = Ratio{1.0 / 3.0, false};
  m.recall = Ratio{0.0, true};
  m.f_measure = Ratio{2.0 / 3.0, false};
  r.metrics = m;
  r.elapsed_ms = 1.23456;
  EXPECT_EQ(emit_report(r),
            "command: repair\n"
            "strategy: nd\n"
            "pipeline: after-query\n"
            "mode: about-answers\n"
            "query: q(?x) :- R(?x, z)\n"
            "rank: 2\n"
            "checks: 3\n"
            "repair_size: 2\n"
            "repair: {A(a), A(b)}\n"
            "answers: {a, b}\n"
            "productivity: 0.500000\n"
            "productivity_basis: answers\n"
            "cr: 1\n"
            "cnr: 0\n"
            "ir: 0\n"
            "inr: 0\n"
            "precision: 0.333333\n"
            "recall: 0.000000 (undefined)\n"
            "f_measure: 0.666667\n"
            "elapsed_ms: 1.235\n");
}

TEST(EmitReport, AbsentFieldsAndTuples) {
  Report r;
  r.command = "query";
  r.details = {{"note", "x"}};
  r.answers = std::vector<AnswerTuple>{tuple({"a", "b"}), tuple({})};
  std::sort(r.answers->begin(), r.answers->end());
  EXPECT_EQ(emit_report(r), "command: query\nnote: x\nanswers: {(), (a, b)}\n");
}
