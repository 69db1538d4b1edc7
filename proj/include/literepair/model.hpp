#pragma once

// Domain vocabulary shared by every module: DL-Lite_R roles, basic concepts,
// TBox axioms, ABox assertions and prioritized (stratified) assertion bases.
// All types are immutable values once built.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "literepair/symbol.hpp"

namespace literepair {

struct Role {
  Symbol name;
  bool inverted = false;

  Role inverse() const { return Role{name, !inverted}; }
  std::string to_string() const;

  friend bool operator==(const Role&, const Role&) = default;
  friend auto operator<=>(const Role&, const Role&) = default;
};

// A role as written, possibly with stacked inversions (P, P-, (P-)-, ...).
struct RoleExpression {
  Symbol name;
  unsigned inversions = 0;
};

// Collapses stacked inversions; idempotent on already-flat roles.
Role normalize(const RoleExpression& expr);
inline Role normalize(const Role& role) { return role; }

class BasicConcept {
 public:
  enum class Kind { kAtomic, kExists };

  static BasicConcept atomic(Symbol name) { return BasicConcept(Kind::kAtomic, name, false); }
  static BasicConcept exists(Role role) { return BasicConcept(Kind::kExists, role.name, role.inverted); }

  Kind kind() const { return kind_; }
  bool is_atomic() const { return kind_ == Kind::kAtomic; }
  Symbol name() const { return name_; }
  // Only meaningful for kExists.
  Role role() const { return Role{name_, inverted_}; }
  std::string to_string() const;

  friend bool operator==(const BasicConcept&, const BasicConcept&) = default;
  friend auto operator<=>(const BasicConcept&, const BasicConcept&) = default;

 private:
  BasicConcept(Kind kind, Symbol name, bool inverted) : kind_(kind), name_(name), inverted_(inverted) {}

  Kind kind_;
  Symbol name_;
  bool inverted_;
};

// lhs <= rhs, or lhs <= !rhs when negative.
struct ConceptInclusion {
  BasicConcept lhs;
  BasicConcept rhs;
  bool negative = false;

  std::string to_string() const;
  friend bool operator==(const ConceptInclusion&, const ConceptInclusion&) = default;
  friend auto operator<=>(const ConceptInclusion&, const ConceptInclusion&) = default;
};

struct RoleInclusion {
  Role lhs;
  Role rhs;
  bool negative = false;

  std::string to_string() const;
  friend bool operator==(const RoleInclusion&, const RoleInclusion&) = default;
  friend auto operator<=>(const RoleInclusion&, const RoleInclusion&) = default;
};

using TBoxAxiom = std::variant<ConceptInclusion, RoleInclusion>;

class TBox {
 public:
  TBox() = default;
  TBox(std::initializer_list<TBoxAxiom> axioms);

  void add(const TBoxAxiom& axiom);

  const std::vector<ConceptInclusion>& concept_axioms() const { return concept_axioms_; }
  const std::vector<RoleInclusion>& role_axioms() const { return role_axioms_; }
  std::size_t size() const { return concept_axioms_.size() + role_axioms_.size(); }
  bool empty() const { return size() == 0; }

  friend bool operator==(const TBox&, const TBox&) = default;

 private:
  // Both kept sorted and duplicate free.
  std::vector<ConceptInclusion> concept_axioms_;
  std::vector<RoleInclusion> role_axioms_;
};

// A(a) or P(a,b). The ordering coincides with the lexicographic order of the
// rendered text because identifiers never contain '(' or ','.
class Assertion {
 public:
  enum class Kind { kConcept, kRole };

  static Assertion concept_assertion(Symbol name, Symbol individual) {
    return Assertion(Kind::kConcept, name, individual, Symbol());
  }
  static Assertion role_assertion(Symbol role, Symbol subject, Symbol object) {
    return Assertion(Kind::kRole, role, subject, object);
  }

  Kind kind() const { return kind_; }
  bool is_concept() const { return kind_ == Kind::kConcept; }
  Symbol predicate() const { return predicate_; }
  Symbol subject() const { return subject_; }
  Symbol object() const { return object_; }
  std::string to_string() const;

  friend bool operator==(const Assertion& a, const Assertion& b) {
    return a.predicate_ == b.predicate_ && a.subject_ == b.subject_ && a.kind_ == b.kind_ && a.object_ == b.object_;
  }
  friend std::strong_ordering operator<=>(const Assertion& a, const Assertion& b);

  std::size_t hash() const;

 private:
  Assertion(Kind kind, Symbol predicate, Symbol subject, Symbol object)
      : kind_(kind), predicate_(predicate), subject_(subject), object_(object) {}

  Kind kind_;
  Symbol predicate_;
  Symbol subject_;
  Symbol object_;
};

struct AssertionHash {
  std::size_t operator()(const Assertion& a) const noexcept { return a.hash(); }
};

// Sorted, duplicate-free sequence of assertions. Exposes contiguous storage
// so the reasoner can scan unions of sets without copying them.
class AssertionSet {
 public:
  using const_iterator = std::vector<Assertion>::const_iterator;

  AssertionSet() = default;
  AssertionSet(std::initializer_list<Assertion> items);
  explicit AssertionSet(std::vector<Assertion> items);

  bool contains(const Assertion& a) const;
  void insert(const Assertion& a);
  void insert(const AssertionSet& other);
  AssertionSet minus(const AssertionSet& other) const;
  bool is_subset_of(const AssertionSet& other) const;

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }
  std::span<const Assertion> view() const { return items_; }
  const std::vector<Assertion>& items() const { return items_; }

  friend bool operator==(const AssertionSet&, const AssertionSet&) = default;

 private:
  std::vector<Assertion> items_;
};

AssertionSet set_union(const AssertionSet& a, const AssertionSet& b);
std::string to_string(const AssertionSet& set);  // "{A(a), R(a,z)}"

// Ordered sets X_1..X_m; either the raw strata of a KB or the per-stratum
// answer supports of a query. May be inconsistent as a whole.
class StratifiedAssertions {
 public:
  StratifiedAssertions() = default;
  explicit StratifiedAssertions(std::vector<AssertionSet> strata) : strata_(std::move(strata)) {}

  std::size_t size() const { return strata_.size(); }
  // 1-based, as priority levels are.
  const AssertionSet& stratum(std::size_t i) const;
  const std::vector<AssertionSet>& strata() const { return strata_; }

  // Views of X_1..X_k, for scanning a prefix without materializing it.
  std::vector<std::span<const Assertion>> prefix_views(std::size_t k) const;

  AssertionSet union_all() const { return union_up_to(size()); }
  // X_1 ∪ ... ∪ X_k; k = 0 yields the empty set. Throws UsageError if k > m.
  AssertionSet union_up_to(std::size_t k) const;

 private:
  std::vector<AssertionSet> strata_;
};

inline AssertionSet union_up_to(const StratifiedAssertions& s, std::size_t k) { return s.union_up_to(k); }

struct Stratum {
  std::size_t index = 0;
  AssertionSet assertions;
};

// TBox plus strata L_1..L_m (m >= 1), each of which is consistent with the
// TBox on its own. Construction through build() enforces both.
class PrioritizedKB {
 public:
  // Throws UsageError for m = 0 and InconsistentStratumError naming the first
  // offending stratum together with one conflict inside it.
  static PrioritizedKB build(TBox tbox, std::vector<AssertionSet> strata);

  const TBox& tbox() const { return tbox_; }
  std::size_t strata_count() const { return profile_.size(); }
  const AssertionSet& stratum(std::size_t i) const { return profile_.stratum(i); }
  const StratifiedAssertions& profile() const { return profile_; }
  AssertionSet all_assertions() const { return profile_.union_all(); }

  friend bool operator==(const PrioritizedKB& a, const PrioritizedKB& b) {
    return a.tbox_ == b.tbox_ && a.profile_.strata() == b.profile_.strata();
  }

 private:
  PrioritizedKB(TBox tbox, StratifiedAssertions profile) : tbox_(std::move(tbox)), profile_(std::move(profile)) {}

  TBox tbox_;
  StratifiedAssertions profile_;
};

}  // namespace literepair
