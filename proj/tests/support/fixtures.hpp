#pragma once

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>

#include "literepair/model.hpp"
#include "literepair/query.hpp"
#include "literepair/textio.hpp"

namespace literepair::testing {

inline std::string data_path(const std::string& name) { return std::string(LITEREPAIR_TEST_DATA) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Assertion C(const char* concept_name, const char* ind) {
  return Assertion::concept_assertion(Symbol(concept_name), Symbol(ind));
}
inline Assertion R(const char* role, const char* a, const char* b) {
  return Assertion::role_assertion(Symbol(role), Symbol(a), Symbol(b));
}

inline BasicConcept atom(const char* name) { return BasicConcept::atomic(Symbol(name)); }
inline BasicConcept some(const char* role, bool inverted = false) {
  return BasicConcept::exists(Role{Symbol(role), inverted});
}
inline Role role(const char* name, bool inverted = false) { return Role{Symbol(name), inverted}; }

// "A(a); R(a,z)" -> set; parsed with an empty TBox so any set is accepted.
inline AssertionSet abox(std::string_view text) {
  std::string kb = "[stratum 1]\n";
  for (char c : text) kb += c == ';' ? '\n' : c;
  return parse_kb(kb).stratum(1);
}

// T = {A <= !B, A <= !E, E <= D, R <= P}
inline TBox ex_tbox() {
  return TBox{ConceptInclusion{atom("A"), atom("B"), true}, ConceptInclusion{atom("A"), atom("E"), true},
              ConceptInclusion{atom("E"), atom("D"), false}, RoleInclusion{role("R"), role("P"), false}};
}

inline std::vector<AssertionSet> ex_strata() {
  return {
      {C("A", "a"), R("R", "a", "z"), C("A", "c")},
      {C("B", "a"), R("R", "b", "z"), C("A", "b")},
      {C("B", "a"), R("R", "a", "z"), C("B", "c")},
      {C("E", "e"), R("R", "e", "z"), C("A", "c")},
      {C("A", "e"), R("R", "e", "z"), C("A", "c"), R("R", "c", "z")},
  };
}

inline PrioritizedKB ex_kb() { return PrioritizedKB::build(ex_tbox(), ex_strata()); }

inline StratifiedAssertions ex_ps() { return StratifiedAssertions(ex_strata()); }

// q_Ps as listed for the example.
inline StratifiedAssertions ex_qps() {
  return StratifiedAssertions({{C("A", "a")}, {C("A", "b")}, {C("B", "a")}, {C("E", "e")}, {C("A", "e"), C("A", "c")}});
}

// Cumulative free-set rows k = 1..5 for the support profile.
inline std::vector<AssertionSet> ex_qps_table() {
  return {
      {C("A", "a")},
      {C("A", "a"), C("A", "b")},
      {C("A", "a"), C("A", "b")},
      {C("A", "a"), C("A", "b"), C("E", "e")},
      {C("A", "a"), C("A", "b"), C("E", "e"), C("A", "c")},
  };
}

// Same for the raw profile.
inline std::vector<AssertionSet> ex_ps_table() {
  return {
      {C("A", "a"), R("R", "a", "z"), C("A", "c")},
      {C("A", "a"), R("R", "a", "z"), C("A", "c"), R("R", "b", "z"), C("A", "b")},
      {C("A", "a"), R("R", "a", "z"), C("A", "c"), R("R", "b", "z"), C("A", "b")},
      {C("A", "a"), R("R", "a", "z"), C("A", "c"), R("R", "b", "z"), C("A", "b"), C("E", "e"), R("R", "e", "z")},
      {C("A", "a"), R("R", "a", "z"), C("A", "c"), R("R", "b", "z"), C("A", "b"), C("E", "e"), R("R", "e", "z"),
       R("R", "c", "z")},
  };
}

// q(?x) :- R(?x, z)
inline ConjunctiveQuery ex_query() {
  Symbol x("x");
  return ConjunctiveQuery(Symbol("q"), {Term::var(x)}, {QueryAtom{Symbol("R"), {Term::var(x), Term::constant(Symbol("z"))}}});
}

inline AnswerTuple tuple(std::initializer_list<const char*> names) {
  AnswerTuple t;
  for (const char* n : names) t.push_back(Symbol(n));
  return t;
}

inline std::vector<AnswerTuple> unary(std::initializer_list<const char*> names) {
  std::vector<AnswerTuple> out;
  for (const char* n : names) out.push_back({Symbol(n)});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace literepair::testing
