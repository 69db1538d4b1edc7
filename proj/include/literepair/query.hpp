#pragma once

// Conjunctive queries over DL-Lite_R knowledge bases: PerfectRef-style
// rewriting into a union of CQs, plain evaluation of that union over
// indexed assertion sets, and the per-stratum answer/support profile that
// the after-querying repairs operate on.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "literepair/model.hpp"

namespace literepair {

struct Term {
  Symbol name;
  bool variable = false;

  static Term var(Symbol name) { return Term{name, true}; }
  static Term constant(Symbol name) { return Term{name, false}; }
  std::string to_string() const { return variable ? "?" + name.str() : name.str(); }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

struct QueryAtom {
  Symbol predicate;
  std::vector<Term> args;  // one term for concepts, two for roles

  bool is_concept() const { return args.size() == 1; }
  std::string to_string() const;

  friend bool operator==(const QueryAtom&, const QueryAtom&) = default;
  friend auto operator<=>(const QueryAtom&, const QueryAtom&) = default;
};

enum class QueryKind { kInstance, kGround, kConjunctive };
const char* to_string(QueryKind kind);

class ConjunctiveQuery {
 public:
  // Throws UsageError when a head variable does not occur in the body or the
  // body is empty. The kind is derived from the shape.
  ConjunctiveQuery(Symbol name, std::vector<Term> head, std::vector<QueryAtom> body);

  Symbol name() const { return name_; }
  const std::vector<Term>& head() const { return head_; }
  const std::vector<QueryAtom>& body() const { return body_; }
  QueryKind kind() const { return kind_; }
  std::size_t arity() const { return head_.size(); }
  // Individual constants occurring in the body, sorted.
  std::vector<Symbol> constants() const;
  std::string to_string() const;  // "q(?x) :- R(?x, z)"

  friend bool operator==(const ConjunctiveQuery&, const ConjunctiveQuery&) = default;

 private:
  Symbol name_;
  std::vector<Term> head_;
  std::vector<QueryAtom> body_;
  QueryKind kind_;
};

// Named individuals; empty for boolean queries (the empty tuple is "true").
using AnswerTuple = std::vector<Symbol>;
std::string to_string(const AnswerTuple& tuple);  // "(a)", "(a, b)", "()"
std::string to_string(const std::vector<AnswerTuple>& answers);  // "{(a), (b)}"

// One member of a rewriting. origin maps every variable of the input query
// to the term standing for it here; variables that were rewritten away map
// to a variable that no longer occurs in the body.
struct RewrittenQuery {
  std::vector<Term> head;
  std::vector<QueryAtom> body;
  std::map<Symbol, Term> origin;

  std::string to_string() const;
};

// PerfectRef: positive inclusions applied backwards plus atom unification,
// to a fixpoint; members are distinct up to variable renaming and sorted by
// their canonical text.
std::vector<RewrittenQuery> rewrite(const ConjunctiveQuery& query, const TBox& tbox);

// Indexed, read-only view of an assertion set.
class AssertionStore {
 public:
  explicit AssertionStore(std::span<const Assertion> assertions);
  explicit AssertionStore(const AssertionSet& assertions) : AssertionStore(assertions.view()) {}

  // The indexes point into assertions_, whose buffer survives a move.
  AssertionStore(const AssertionStore&) = delete;
  AssertionStore& operator=(const AssertionStore&) = delete;
  AssertionStore(AssertionStore&&) = default;
  AssertionStore& operator=(AssertionStore&&) = default;

  std::span<const Assertion> assertions() const { return assertions_; }
  // Concept assertions about the individual, in assertion order.
  std::span<const Assertion* const> concept_assertions_about(Symbol individual) const;

 private:
  friend class Matcher;

  struct PairHash {
    std::size_t operator()(const std::pair<Symbol, Symbol>& p) const noexcept {
      return p.first.hash() * 1000003u ^ p.second.hash();
    }
  };

  std::vector<Assertion> assertions_;
  std::unordered_map<Symbol, std::vector<const Assertion*>> by_predicate_;
  std::unordered_map<std::pair<Symbol, Symbol>, std::vector<const Assertion*>, PairHash> by_predicate_subject_;
  std::unordered_map<std::pair<Symbol, Symbol>, std::vector<const Assertion*>, PairHash> by_predicate_object_;
  std::unordered_map<Symbol, std::vector<const Assertion*>> concepts_by_individual_;
};

using AssertionFilter = std::function<bool(const Assertion&)>;

struct Match {
  AnswerTuple tuple;
  std::size_t member = 0;                    // index into the rewriting
  std::map<Symbol, Symbol> binding;          // rewritten-query variable -> individual
};

// Answers of a prepared rewriting over a store. When filter is set, only
// assertions it accepts are visible. Answers are sorted and unique.
std::vector<AnswerTuple> evaluate(std::span<const RewrittenQuery> rewriting, const AssertionStore& store,
                                  const AssertionFilter& filter = nullptr);
// Every match of every member; used for instantiation supports.
std::vector<Match> matches(std::span<const RewrittenQuery> rewriting, const AssertionStore& store);

// Certain answers over <tbox, assertions>.
std::vector<AnswerTuple> evaluate(const ConjunctiveQuery& query, const TBox& tbox, const AssertionSet& assertions);

enum class SupportMode {
  kAboutAnswers,   // concept assertions of the stratum about answer individuals
  kInstantiation,  // ground images of the query atoms under the answer's matches
};
const char* to_string(SupportMode mode);

struct StratumAnswers {
  std::vector<AnswerTuple> answers;                    // S_i, sorted
  AssertionSet support;                                // q_{L_i}
  std::vector<AssertionSet> support_of;                // support_of[j] belongs to answers[j]
};

struct AnswerProfile {
  std::vector<StratumAnswers> strata;
  SupportMode mode = SupportMode::kAboutAnswers;

  StratifiedAssertions supports() const;
  // Union of all S_i: the answers obtained when consistency is ignored.
  std::vector<AnswerTuple> all_answers() const;
};

// Precomputed pieces for building answer profiles repeatedly.
struct PreparedQuery {
  PreparedQuery(const ConjunctiveQuery& query, const TBox& tbox);

  ConjunctiveQuery query;
  std::vector<RewrittenQuery> rewriting;
};

AnswerProfile answer_profile(const PreparedQuery& prepared, std::span<const AssertionStore> strata,
                             SupportMode mode = SupportMode::kAboutAnswers);
AnswerProfile answer_profile(const ConjunctiveQuery& query, const PrioritizedKB& kb,
                             SupportMode mode = SupportMode::kAboutAnswers);

// Answers of the profile having a support assertion in retained. An answer
// whose support is empty in every stratum is never touched by a repair and
// is always kept.
std::vector<AnswerTuple> answers_from_assertions(const AnswerProfile& profile, const AssertionSet& retained);

}  // namespace literepair
