#pragma once

// Syntactic consistency machinery for DL-Lite_R. The TBox's negative
// inclusions are saturated under its positive inclusions once; afterwards
// every check is a scan for assertion pairs (or single assertions) that
// instantiate a closed disjointness.

#include <cstddef>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "literepair/model.hpp"

namespace literepair {

// Minimal T-inconsistent assertion subset; one or two members, sorted.
struct Conflict {
  std::vector<Assertion> members;

  std::string to_string() const;  // "{A(a), B(a)}"
  friend bool operator==(const Conflict&, const Conflict&) = default;
  friend auto operator<=>(const Conflict&, const Conflict&) = default;
};

class NegativeClosure {
 public:
  explicit NegativeClosure(const TBox& tbox);

  // Both queries are symmetric.
  bool disjoint(const BasicConcept& a, const BasicConcept& b) const;
  bool disjoint(const Role& a, const Role& b) const;
  bool unsatisfiable(const BasicConcept& b) const { return disjoint(b, b); }
  bool unsatisfiable(const Role& r) const { return disjoint(r, r); }

  // True when b takes part in at least one disjointness.
  bool constrained(const BasicConcept& b) const { return concept_partners_.contains(b); }
  bool constrained(const Role& r) const { return role_partners_.contains(r); }

  // Each unordered pair once, smaller element first, sorted.
  std::vector<std::pair<BasicConcept, BasicConcept>> concept_pairs() const;
  std::vector<std::pair<Role, Role>> role_pairs() const;
  std::size_t size() const { return concept_count_ + role_count_; }

  friend bool operator==(const NegativeClosure& a, const NegativeClosure& b) {
    return a.concept_pairs() == b.concept_pairs() && a.role_pairs() == b.role_pairs();
  }

 private:
  struct ConceptHash {
    std::size_t operator()(const BasicConcept& b) const noexcept;
  };
  struct RoleHash {
    std::size_t operator()(const Role& r) const noexcept;
  };

  bool add(const BasicConcept& a, const BasicConcept& b);
  bool add(const Role& a, const Role& b);

  std::unordered_map<BasicConcept, std::unordered_set<BasicConcept, ConceptHash>, ConceptHash> concept_partners_;
  std::unordered_map<Role, std::unordered_set<Role, RoleHash>, RoleHash> role_partners_;
  std::size_t concept_count_ = 0;
  std::size_t role_count_ = 0;

  friend class Reasoner;
};

NegativeClosure negative_closure(const TBox& tbox);

// Owns the closure of one TBox; all checks are const and re-entrant.
class Reasoner {
 public:
  explicit Reasoner(const TBox& tbox) : closure_(tbox) {}

  const NegativeClosure& closure() const { return closure_; }

  bool is_consistent(std::span<const Assertion> assertions) const;
  bool is_consistent(std::span<const std::span<const Assertion>> segments) const;
  bool is_consistent(const AssertionSet& assertions) const { return is_consistent(assertions.view()); }

  // Sorted and duplicate free.
  std::vector<Conflict> conflicts(std::span<const Assertion> assertions) const;
  std::vector<Conflict> conflicts(std::span<const std::span<const Assertion>> segments) const;
  std::vector<Conflict> conflicts(const AssertionSet& assertions) const { return conflicts(assertions.view()); }

  // Input minus the union of all conflicts.
  AssertionSet free_set(std::span<const std::span<const Assertion>> segments) const;
  AssertionSet free_set(const AssertionSet& assertions) const;

  // Basic concepts B with B disjoint from itself, over the TBox signature.
  std::vector<BasicConcept> incoherent_concepts() const;

 private:
  template <class Visitor>
  bool scan(std::span<const std::span<const Assertion>> segments, Visitor&& on_conflict) const;

  NegativeClosure closure_;
};

inline bool is_consistent(const TBox& tbox, const AssertionSet& assertions) {
  return Reasoner(tbox).is_consistent(assertions);
}
inline std::vector<Conflict> conflicts(const TBox& tbox, const AssertionSet& assertions) {
  return Reasoner(tbox).conflicts(assertions);
}
inline AssertionSet free_set(const TBox& tbox, const AssertionSet& assertions) {
  return Reasoner(tbox).free_set(assertions);
}
std::vector<BasicConcept> incoherent_concepts(const TBox& tbox);

}  // namespace literepair
