#include "literepair/reasoner.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace literepair {

std::string Conflict::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ", ";
    out += members[i].to_string();
  }
  return out + "}";
}

std::size_t NegativeClosure::ConceptHash::operator()(const BasicConcept& b) const noexcept {
  return b.name().hash() * 31u + (b.is_atomic() ? 0u : (b.role().inverted ? 2u : 1u));
}

std::size_t NegativeClosure::RoleHash::operator()(const Role& r) const noexcept {
  return r.name.hash() * 2u + (r.inverted ? 1u : 0u);
}

namespace {

// Reflexive-transitive subsumee sets over a positive inclusion graph.
template <class Node>
class SubsumeeGraph {
 public:
  void add_node(const Node& n) { below_[n]; }
  void add_edge(const Node& lhs, const Node& rhs) {
    below_[rhs].insert(lhs);
    below_[lhs];
  }

  std::set<Node> subsumees(const Node& top) const {
    std::set<Node> seen{top};
    std::vector<Node> stack{top};
    while (!stack.empty()) {
      Node n = stack.back();
      stack.pop_back();
      auto it = below_.find(n);
      if (it == below_.end()) continue;
      for (const auto& m : it->second) {
        if (seen.insert(m).second) stack.push_back(m);
      }
    }
    return seen;
  }

  std::vector<Node> nodes() const {
    std::vector<Node> out;
    for (const auto& [n, _] : below_) out.push_back(n);
    return out;
  }

 private:
  std::map<Node, std::set<Node>> below_;
};

}  // namespace

bool NegativeClosure::add(const BasicConcept& a, const BasicConcept& b) {
  bool inserted = concept_partners_[a].insert(b).second;
  if (!(a == b)) concept_partners_[b].insert(a);
  if (inserted) ++concept_count_;
  return inserted;
}

bool NegativeClosure::add(const Role& a, const Role& b) {
  bool inserted = role_partners_[a].insert(b).second;
  if (!(a == b)) role_partners_[b].insert(a);
  if (inserted) ++role_count_;
  return inserted;
}

NegativeClosure::NegativeClosure(const TBox& tbox) {
  SubsumeeGraph<BasicConcept> concepts;
  SubsumeeGraph<Role> roles;
  std::vector<std::pair<BasicConcept, BasicConcept>> concept_seeds;
  std::vector<std::pair<Role, Role>> role_seeds;

  for (const auto& ax : tbox.concept_axioms()) {
    concepts.add_node(ax.lhs);
    concepts.add_node(ax.rhs);
    if (ax.negative) {
      concept_seeds.emplace_back(ax.lhs, ax.rhs);
    } else {
      concepts.add_edge(ax.lhs, ax.rhs);
    }
  }
  for (const auto& ax : tbox.role_axioms()) {
    for (bool flip : {false, true}) {
      Role lhs = flip ? ax.lhs.inverse() : ax.lhs;
      Role rhs = flip ? ax.rhs.inverse() : ax.rhs;
      roles.add_node(lhs);
      roles.add_node(rhs);
      concepts.add_node(BasicConcept::exists(lhs));
      concepts.add_node(BasicConcept::exists(rhs));
      if (ax.negative) {
        role_seeds.emplace_back(lhs, rhs);
      } else {
        roles.add_edge(lhs, rhs);
        // R1 <= R2 gives exists R1 <= exists R2 (and the inverse form on the flip).
        concepts.add_edge(BasicConcept::exists(lhs), BasicConcept::exists(rhs));
      }
    }
  }
  // Every role mentioned through an existential also has a role node, so the
  // unsatisfiability rule below sees it.
  for (const auto& b : concepts.nodes()) {
    if (!b.is_atomic()) {
      roles.add_node(b.role());
      roles.add_node(b.role().inverse());
    }
  }

  std::size_t concept_done = 0;
  std::size_t role_done = 0;
  while (concept_done < concept_seeds.size() || role_done < role_seeds.size()) {
    for (; concept_done < concept_seeds.size(); ++concept_done) {
      auto [lhs, rhs] = concept_seeds[concept_done];
      auto below_lhs = concepts.subsumees(lhs);
      auto below_rhs = concepts.subsumees(rhs);
      for (const auto& x : below_lhs)
        for (const auto& y : below_rhs) add(x, y);
    }
    for (; role_done < role_seeds.size(); ++role_done) {
      auto [lhs, rhs] = role_seeds[role_done];
      auto below_lhs = roles.subsumees(lhs);
      auto below_rhs = roles.subsumees(rhs);
      for (const auto& x : below_lhs)
        for (const auto& y : below_rhs) {
          add(x, y);
          add(x.inverse(), y.inverse());
        }
    }
    // An empty role, an empty domain and an empty range imply one another.
    for (const auto& r : roles.nodes()) {
      if (r.inverted) continue;
      BasicConcept domain = BasicConcept::exists(r);
      BasicConcept range = BasicConcept::exists(r.inverse());
      if (!(unsatisfiable(r) || unsatisfiable(domain) || unsatisfiable(range))) continue;
      if (!disjoint(r, r)) role_seeds.emplace_back(r, r);
      if (!disjoint(r.inverse(), r.inverse())) role_seeds.emplace_back(r.inverse(), r.inverse());
      if (!disjoint(domain, domain)) concept_seeds.emplace_back(domain, domain);
      if (!disjoint(range, range)) concept_seeds.emplace_back(range, range);
    }
  }
}

bool NegativeClosure::disjoint(const BasicConcept& a, const BasicConcept& b) const {
  auto it = concept_partners_.find(a);
  return it != concept_partners_.end() && it->second.contains(b);
}

bool NegativeClosure::disjoint(const Role& a, const Role& b) const {
  auto it = role_partners_.find(a);
  return it != role_partners_.end() && it->second.contains(b);
}

std::vector<std::pair<BasicConcept, BasicConcept>> NegativeClosure::concept_pairs() const {
  std::vector<std::pair<BasicConcept, BasicConcept>> out;
  for (const auto& [a, partners] : concept_partners_)
    for (const auto& b : partners)
      if (!(b < a)) out.emplace_back(a, b);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Role, Role>> NegativeClosure::role_pairs() const {
  std::vector<std::pair<Role, Role>> out;
  for (const auto& [a, partners] : role_partners_)
    for (const auto& b : partners)
      if (!(b < a)) out.emplace_back(a, b);
  std::sort(out.begin(), out.end());
  return out;
}

NegativeClosure negative_closure(const TBox& tbox) { return NegativeClosure(tbox); }

namespace {

struct ConceptFact {
  BasicConcept concept_;
  const Assertion* source;
};

struct RoleFact {
  Role role;  // oriented from the first to the second element of the key
  const Assertion* source;
};

struct PairKeyHash {
  std::size_t operator()(const std::pair<Symbol, Symbol>& p) const noexcept {
    return p.first.hash() * 1000003u ^ p.second.hash();
  }
};

}  // namespace

// Calls on_conflict(f, g) for every violating assertion pair and
// on_conflict(f, nullptr) for every assertion inconsistent on its own. The
// visitor returns false to stop early; scan then returns false.
template <class Visitor>
bool Reasoner::scan(std::span<const std::span<const Assertion>> segments, Visitor&& on_conflict) const {
  const NegativeClosure& c = closure_;
  std::unordered_map<Symbol, std::vector<ConceptFact>> at_individual;
  std::unordered_map<std::pair<Symbol, Symbol>, std::vector<RoleFact>, PairKeyHash> at_pair;

  auto record_concept = [&](Symbol individual, const BasicConcept& b, const Assertion* src) {
    if (!c.constrained(b)) return true;
    auto& facts = at_individual[individual];
    for (const auto& f : facts) {
      if (*f.source == *src) continue;
      if (c.disjoint(f.concept_, b) && !on_conflict(f.source, src)) return false;
    }
    facts.push_back({b, src});
    return true;
  };

  for (const auto& segment : segments) {
    for (const Assertion& a : segment) {
      if (a.is_concept()) {
        BasicConcept b = BasicConcept::atomic(a.predicate());
        if (c.unsatisfiable(b)) {
          if (!on_conflict(&a, nullptr)) return false;
          continue;
        }
        if (!record_concept(a.subject(), b, &a)) return false;
        continue;
      }
      Role r{a.predicate(), false};
      BasicConcept domain = BasicConcept::exists(r);
      BasicConcept range = BasicConcept::exists(r.inverse());
      bool self_loop = a.subject() == a.object();
      if (c.unsatisfiable(r) || c.unsatisfiable(domain) || c.unsatisfiable(range) ||
          (self_loop && (c.disjoint(domain, range) || c.disjoint(r, r.inverse())))) {
        if (!on_conflict(&a, nullptr)) return false;
        continue;
      }
      if (!record_concept(a.subject(), domain, &a)) return false;
      if (!record_concept(a.object(), range, &a)) return false;
      if (!c.constrained(r)) continue;
      // Key the pair with its smaller element first.
      bool forward = !(a.object() < a.subject());
      auto key = forward ? std::make_pair(a.subject(), a.object()) : std::make_pair(a.object(), a.subject());
      Role oriented = forward ? r : r.inverse();
      auto& facts = at_pair[key];
      for (const auto& f : facts) {
        if (*f.source == a) continue;
        bool clash = c.disjoint(f.role, oriented);
        if (self_loop) {
          // On (x,x) a role and its inverse hold together.
          clash = clash || c.disjoint(f.role.inverse(), oriented) || c.disjoint(f.role, oriented.inverse());
        }
        if (clash && !on_conflict(f.source, &a)) return false;
      }
      facts.push_back({oriented, &a});
    }
  }
  return true;
}

bool Reasoner::is_consistent(std::span<const std::span<const Assertion>> segments) const {
  return scan(segments, [](const Assertion*, const Assertion*) { return false; });
}

bool Reasoner::is_consistent(std::span<const Assertion> assertions) const {
  std::span<const Assertion> one[] = {assertions};
  return is_consistent(std::span<const std::span<const Assertion>>(one));
}

std::vector<Conflict> Reasoner::conflicts(std::span<const std::span<const Assertion>> segments) const {
  std::vector<Assertion> singles;
  std::vector<std::pair<Assertion, Assertion>> pairs;
  scan(segments, [&](const Assertion* f, const Assertion* g) {
    if (g == nullptr) {
      singles.push_back(*f);
    } else {
      pairs.emplace_back(std::min(*f, *g), std::max(*f, *g));
    }
    return true;
  });
  std::sort(singles.begin(), singles.end());
  singles.erase(std::unique(singles.begin(), singles.end()), singles.end());

  std::vector<Conflict> out;
  out.reserve(singles.size() + pairs.size());
  for (const auto& s : singles) out.push_back(Conflict{{s}});
  // A pair is minimal only if neither member is inconsistent on its own.
  for (const auto& [f, g] : pairs) {
    if (std::binary_search(singles.begin(), singles.end(), f) || std::binary_search(singles.begin(), singles.end(), g))
      continue;
    out.push_back(Conflict{{f, g}});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Conflict> Reasoner::conflicts(std::span<const Assertion> assertions) const {
  std::span<const Assertion> one[] = {assertions};
  return conflicts(std::span<const std::span<const Assertion>>(one));
}

AssertionSet Reasoner::free_set(std::span<const std::span<const Assertion>> segments) const {
  std::vector<Assertion> involved;
  scan(segments, [&](const Assertion* f, const Assertion* g) {
    involved.push_back(*f);
    if (g) involved.push_back(*g);
    return true;
  });
  // Segments usually come from sets, so merging keeps the result sorted.
  std::vector<Assertion> all;
  for (const auto& segment : segments) {
    auto mid = static_cast<std::ptrdiff_t>(all.size());
    all.insert(all.end(), segment.begin(), segment.end());
    if (std::is_sorted(all.begin() + mid, all.end())) {
      std::inplace_merge(all.begin(), all.begin() + mid, all.end());
    } else {
      std::sort(all.begin(), all.end());
    }
  }
  return AssertionSet(std::move(all)).minus(AssertionSet(std::move(involved)));
}

AssertionSet Reasoner::free_set(const AssertionSet& assertions) const {
  std::span<const Assertion> one[] = {assertions.view()};
  return free_set(std::span<const std::span<const Assertion>>(one));
}

std::vector<BasicConcept> Reasoner::incoherent_concepts() const {
  std::vector<BasicConcept> out;
  for (const auto& [b, partners] : closure_.concept_partners_) {
    if (partners.contains(b)) out.push_back(b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BasicConcept> incoherent_concepts(const TBox& tbox) { return Reasoner(tbox).incoherent_concepts(); }

}  // namespace literepair
