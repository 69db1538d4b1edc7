#include "literepair/model.hpp"

#include <algorithm>
#include <iterator>

#include "literepair/error.hpp"
#include "literepair/reasoner.hpp"

namespace literepair {

std::string Role::to_string() const { return inverted ? name.str() + "-" : name.str(); }

Role normalize(const RoleExpression& expr) { return Role{expr.name, expr.inversions % 2 == 1}; }

std::string BasicConcept::to_string() const {
  if (is_atomic()) return name_.str();
  return "exists " + role().to_string();
}

std::string ConceptInclusion::to_string() const {
  return lhs.to_string() + (negative ? " <= !" : " <= ") + rhs.to_string();
}

std::string RoleInclusion::to_string() const {
  return "role " + lhs.to_string() + (negative ? " <= !" : " <= ") + rhs.to_string();
}

TBox::TBox(std::initializer_list<TBoxAxiom> axioms) {
  for (const auto& axiom : axioms) add(axiom);
}

namespace {

template <class T>
void insert_sorted(std::vector<T>& items, const T& item) {
  auto it = std::lower_bound(items.begin(), items.end(), item);
  if (it == items.end() || !(*it == item)) items.insert(it, item);
}

}  // namespace

void TBox::add(const TBoxAxiom& axiom) {
  if (const auto* ci = std::get_if<ConceptInclusion>(&axiom)) {
    insert_sorted(concept_axioms_, *ci);
  } else {
    insert_sorted(role_axioms_, std::get<RoleInclusion>(axiom));
  }
}

std::string Assertion::to_string() const {
  if (is_concept()) return predicate_.str() + "(" + subject_.str() + ")";
  return predicate_.str() + "(" + subject_.str() + "," + object_.str() + ")";
}

std::strong_ordering operator<=>(const Assertion& a, const Assertion& b) {
  if (auto c = a.predicate_ <=> b.predicate_; c != 0) return c;
  if (auto c = a.subject_ <=> b.subject_; c != 0) return c;
  // "A(a)" sorts before "A(a,b)": ')' < ','.
  if (a.kind_ != b.kind_) return a.is_concept() ? std::strong_ordering::less : std::strong_ordering::greater;
  return a.object_ <=> b.object_;
}

std::size_t Assertion::hash() const {
  std::size_t h = predicate_.hash();
  h = h * 1000003u ^ subject_.hash();
  h = h * 1000003u ^ object_.hash();
  return h;
}

AssertionSet::AssertionSet(std::initializer_list<Assertion> items) : AssertionSet(std::vector<Assertion>(items)) {}

AssertionSet::AssertionSet(std::vector<Assertion> items) : items_(std::move(items)) {
  if (!std::is_sorted(items_.begin(), items_.end())) std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

bool AssertionSet::contains(const Assertion& a) const { return std::binary_search(items_.begin(), items_.end(), a); }

void AssertionSet::insert(const Assertion& a) {
  auto it = std::lower_bound(items_.begin(), items_.end(), a);
  if (it == items_.end() || !(*it == a)) items_.insert(it, a);
}

void AssertionSet::insert(const AssertionSet& other) {
  if (other.empty()) return;
  std::vector<Assertion> merged;
  merged.reserve(items_.size() + other.items_.size());
  std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(), std::back_inserter(merged));
  items_ = std::move(merged);
}

AssertionSet AssertionSet::minus(const AssertionSet& other) const {
  AssertionSet out;
  std::set_difference(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                      std::back_inserter(out.items_));
  return out;
}

bool AssertionSet::is_subset_of(const AssertionSet& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

AssertionSet set_union(const AssertionSet& a, const AssertionSet& b) {
  AssertionSet out = a;
  out.insert(b);
  return out;
}

std::string to_string(const AssertionSet& set) {
  std::string out = "{";
  bool first = true;
  for (const auto& a : set) {
    if (!first) out += ", ";
    out += a.to_string();
    first = false;
  }
  return out + "}";
}

const AssertionSet& StratifiedAssertions::stratum(std::size_t i) const {
  if (i == 0 || i > strata_.size()) {
    throw UsageError("stratum index " + std::to_string(i) + " out of range 1.." + std::to_string(strata_.size()));
  }
  return strata_[i - 1];
}

std::vector<std::span<const Assertion>> StratifiedAssertions::prefix_views(std::size_t k) const {
  if (k > strata_.size()) {
    throw UsageError("prefix length " + std::to_string(k) + " exceeds " + std::to_string(strata_.size()) + " strata");
  }
  std::vector<std::span<const Assertion>> views;
  views.reserve(k);
  for (std::size_t i = 0; i < k; ++i) views.push_back(strata_[i].view());
  return views;
}

AssertionSet StratifiedAssertions::union_up_to(std::size_t k) const {
  if (k > strata_.size()) {
    throw UsageError("prefix length " + std::to_string(k) + " exceeds " + std::to_string(strata_.size()) + " strata");
  }
  std::vector<Assertion> all;
  for (std::size_t i = 0; i < k; ++i) all.insert(all.end(), strata_[i].begin(), strata_[i].end());
  return AssertionSet(std::move(all));
}

PrioritizedKB PrioritizedKB::build(TBox tbox, std::vector<AssertionSet> strata) {
  if (strata.empty()) throw UsageError("a prioritized KB needs at least one stratum");
  Reasoner reasoner(tbox);
  for (std::size_t i = 0; i < strata.size(); ++i) {
    auto found = reasoner.conflicts(strata[i]);
    if (found.empty()) continue;
    std::vector<std::string> witness;
    for (const auto& a : found.front().members) witness.push_back(a.to_string());
    throw InconsistentStratumError(i + 1, witness,
                                   "stratum " + std::to_string(i + 1) + " is inconsistent with the TBox: conflict " +
                                       found.front().to_string());
  }
  return PrioritizedKB(std::move(tbox), StratifiedAssertions(std::move(strata)));
}

}  // namespace literepair
