#pragma once

// Exhaustive reference procedures for small instances. None of them shares a
// code path with the production reasoner, rewriter or rank search; they back
// the property suites.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "literepair/model.hpp"
#include "literepair/query.hpp"
#include "literepair/reasoner.hpp"

namespace literepair {

// Model search over element types. The TBox axioms are read as is (no
// closure): a type is a set of basic concepts closed under the positive
// inclusions and free of negative ones, and it survives elimination when each
// of its existentials has a witness edge to a surviving type. A KB has a
// model iff every asserted role edge is admissible and every named
// individual's forced basic concepts fit in some surviving type.
class ModelSearchOracle {
 public:
  // Guard: at most 14 basic concepts over the TBox plus extra signature.
  explicit ModelSearchOracle(const TBox& tbox, std::span<const Assertion> extra_signature = {});

  bool consistent(std::span<const Assertion> assertions) const;

 private:
  std::size_t concept_index(Symbol name) const;
  std::size_t exists_index(const Role& role) const;
  std::size_t role_bit(const Role& role) const;
  std::uint32_t close_label(std::uint32_t label, bool self_loop) const;
  bool label_admissible(std::uint32_t label) const;
  std::uint32_t label_exists(std::uint32_t label, bool inverse_side) const;
  bool fits(std::uint32_t forced) const;

  TBox tbox_;
  std::vector<Symbol> concepts_;
  std::vector<Symbol> roles_;
  std::vector<std::uint32_t> surviving_;  // realizable types
};

bool oracle_consistency(const TBox& tbox, const AssertionSet& assertions);

// Minimal inconsistent subsets of size <= max_size, by enumerating subsets in
// increasing size and keeping the inconsistent ones with no inconsistent
// proper subset. Guard: 16 assertions.
std::vector<AssertionSet> oracle_conflicts(const TBox& tbox, const AssertionSet& assertions,
                                           std::size_t max_size = 3);

// All inclusion-maximal consistent subsets. Guard: 14 assertions.
std::vector<AssertionSet> oracle_maximal_repairs(const TBox& tbox, const AssertionSet& assertions);

using ConsistencyTest = std::function<bool(const AssertionSet&)>;

// Linear scan k = 1, 2, ... for the largest consistent prefix.
std::size_t oracle_cns_rank(const StratifiedAssertions& strata, const ConsistencyTest& consistent);
std::size_t oracle_cns_rank(const TBox& tbox, const StratifiedAssertions& strata);

// nd by its definition: the union over every k of free(X_1 ∪ ... ∪ X_k),
// each free set computed by brute-force conflict search.
AssertionSet oracle_nd_repair(const TBox& tbox, const StratifiedAssertions& strata);

// Certain answers by materializing the ABox under the positive inclusions
// (oblivious chase with labelled nulls, null depth bounded by
// max(|T|, |body|) + 1) and matching the query directly. Guard: 64
// assertions.
std::vector<AnswerTuple> oracle_evaluate(const ConjunctiveQuery& query, const TBox& tbox,
                                         const AssertionSet& assertions);

}  // namespace literepair
