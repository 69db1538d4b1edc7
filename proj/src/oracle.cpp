#include "literepair/oracle.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <deque>
#include <optional>
#include <tuple>
#include <cstdint>
#include <functional>
#include <map>
#include <set>

#include "literepair/error.hpp"

namespace literepair {

namespace {

constexpr std::size_t kMaxBasicConcepts = 14;

void collect(const Assertion& a, std::set<Symbol>& concepts, std::set<Symbol>& roles) {
  (a.is_concept() ? concepts : roles).insert(a.predicate());
}

}  // namespace

// Basic concepts are numbered A_0..A_{c-1}, then exists P_j at c + 2j and
// exists P_j- at c + 2j + 1. Role bit 2j is P_j, 2j + 1 is P_j-.
std::size_t ModelSearchOracle::concept_index(Symbol name) const {
  auto it = std::lower_bound(concepts_.begin(), concepts_.end(), name);
  return it != concepts_.end() && *it == name ? static_cast<std::size_t>(it - concepts_.begin()) : SIZE_MAX;
}

std::size_t ModelSearchOracle::role_bit(const Role& role) const {
  auto it = std::lower_bound(roles_.begin(), roles_.end(), role.name);
  if (it == roles_.end() || *it != role.name) return SIZE_MAX;
  return 2 * static_cast<std::size_t>(it - roles_.begin()) + (role.inverted ? 1 : 0);
}

std::size_t ModelSearchOracle::exists_index(const Role& role) const {
  std::size_t bit = role_bit(role);
  return bit == SIZE_MAX ? SIZE_MAX : concepts_.size() + bit;
}

std::uint32_t ModelSearchOracle::close_label(std::uint32_t label, bool self_loop) const {
  for (bool changed = true; changed;) {
    changed = false;
    std::uint32_t before = label;
    for (const auto& ax : tbox_.role_axioms()) {
      if (ax.negative) continue;
      for (bool flip : {false, true}) {
        std::size_t from = role_bit(flip ? ax.lhs.inverse() : ax.lhs);
        std::size_t to = role_bit(flip ? ax.rhs.inverse() : ax.rhs);
        if (label >> from & 1u) label |= 1u << to;
      }
    }
    if (self_loop) {
      std::uint32_t swapped = ((label & 0x55555555u) << 1) | ((label & 0xAAAAAAAAu) >> 1);
      label |= swapped;
    }
    changed = label != before;
  }
  return label;
}

bool ModelSearchOracle::label_admissible(std::uint32_t label) const {
  for (const auto& ax : tbox_.role_axioms()) {
    if (!ax.negative) continue;
    for (bool flip : {false, true}) {
      std::size_t a = role_bit(flip ? ax.lhs.inverse() : ax.lhs);
      std::size_t b = role_bit(flip ? ax.rhs.inverse() : ax.rhs);
      if ((label >> a & 1u) && (label >> b & 1u)) return false;
    }
  }
  return true;
}

// Existentials an edge with this label forces on its source (or target).
std::uint32_t ModelSearchOracle::label_exists(std::uint32_t label, bool inverse_side) const {
  std::uint32_t out = 0;
  for (std::size_t bit = 0; bit < 2 * roles_.size(); ++bit) {
    if (!(label >> bit & 1u)) continue;
    std::size_t b = inverse_side ? (bit ^ 1u) : bit;
    out |= 1u << (concepts_.size() + b);
  }
  return out;
}

bool ModelSearchOracle::fits(std::uint32_t forced) const {
  return std::any_of(surviving_.begin(), surviving_.end(), [&](std::uint32_t t) { return (t & forced) == forced; });
}

ModelSearchOracle::ModelSearchOracle(const TBox& tbox, std::span<const Assertion> extra_signature) : tbox_(tbox) {
  std::set<Symbol> concepts;
  std::set<Symbol> roles;
  auto add_basic = [&](const BasicConcept& b) { (b.is_atomic() ? concepts : roles).insert(b.name()); };
  for (const auto& ax : tbox.concept_axioms()) {
    add_basic(ax.lhs);
    add_basic(ax.rhs);
  }
  for (const auto& ax : tbox.role_axioms()) {
    roles.insert(ax.lhs.name);
    roles.insert(ax.rhs.name);
  }
  for (const auto& a : extra_signature) collect(a, concepts, roles);
  concepts_.assign(concepts.begin(), concepts.end());
  roles_.assign(roles.begin(), roles.end());
  const std::size_t basic = concepts_.size() + 2 * roles_.size();
  if (basic > kMaxBasicConcepts)
    throw OracleGuardError("model search is limited to " + std::to_string(kMaxBasicConcepts) + " basic concepts");

  auto index_of = [&](const BasicConcept& b) {
    return b.is_atomic() ? concept_index(b.name()) : exists_index(b.role());
  };

  // Locally valid types.
  std::vector<std::uint32_t> types;
  for (std::uint32_t t = 0; t < (1u << basic); ++t) {
    bool ok = true;
    for (const auto& ax : tbox.concept_axioms()) {
      bool lhs = t >> index_of(ax.lhs) & 1u;
      bool rhs = t >> index_of(ax.rhs) & 1u;
      if (lhs && (ax.negative ? rhs : !rhs)) {
        ok = false;
        break;
      }
    }
    if (ok) types.push_back(t);
  }

  // Admissible closed labels of edges between distinct elements.
  std::vector<std::uint32_t> labels;
  for (std::uint32_t l = 1; l < (1u << (2 * roles_.size())); ++l) {
    if (close_label(l, false) == l && label_admissible(l)) labels.push_back(l);
  }

  // Greatest fixpoint: drop types with an existential lacking a witness.
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<bool> target_ok(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      std::uint32_t need = label_exists(labels[i], true);
      target_ok[i] = std::any_of(types.begin(), types.end(), [&](std::uint32_t t) { return (t & need) == need; });
    }
    std::vector<std::uint32_t> kept;
    for (std::uint32_t t : types) {
      bool ok = true;
      for (std::size_t bit = 0; bit < 2 * roles_.size() && ok; ++bit) {
        if (!(t >> (concepts_.size() + bit) & 1u)) continue;
        bool witnessed = false;
        for (std::size_t i = 0; i < labels.size() && !witnessed; ++i) {
          if (!(labels[i] >> bit & 1u) || !target_ok[i]) continue;
          std::uint32_t need = label_exists(labels[i], false);
          witnessed = (t & need) == need;
        }
        ok = witnessed;
      }
      if (ok) kept.push_back(t);
    }
    changed = kept.size() != types.size();
    types = std::move(kept);
  }
  surviving_ = std::move(types);
}

bool ModelSearchOracle::consistent(std::span<const Assertion> assertions) const {
  std::map<Symbol, std::uint32_t> forced;
  std::map<std::pair<Symbol, Symbol>, std::uint32_t> edges;
  for (const auto& a : assertions) {
    forced.try_emplace(a.subject(), 0u);
    if (a.is_concept()) {
      std::size_t i = concept_index(a.predicate());
      if (i != SIZE_MAX) forced[a.subject()] |= 1u << i;
      continue;
    }
    forced.try_emplace(a.object(), 0u);
    std::size_t bit = role_bit(Role{a.predicate(), false});
    if (bit == SIZE_MAX) continue;
    if (a.subject() < a.object() || a.subject() == a.object()) {
      edges[{a.subject(), a.object()}] |= 1u << bit;
    } else {
      edges[{a.object(), a.subject()}] |= 1u << (bit ^ 1u);
    }
  }
  for (auto& [pair, label] : edges) {
    bool self_loop = pair.first == pair.second;
    label = close_label(label, self_loop);
    if (!label_admissible(label)) return false;
    forced[pair.first] |= label_exists(label, false);
    forced[pair.second] |= label_exists(label, true);
  }
  for (const auto& [_, f] : forced)
    if (!fits(f)) return false;
  return true;
}

bool oracle_consistency(const TBox& tbox, const AssertionSet& assertions) {
  return ModelSearchOracle(tbox, assertions.view()).consistent(assertions.view());
}

std::vector<AssertionSet> oracle_conflicts(const TBox& tbox, const AssertionSet& assertions, std::size_t max_size) {
  if (assertions.size() > 16) throw OracleGuardError("conflict enumeration is limited to 16 assertions");
  ModelSearchOracle oracle(tbox, assertions.view());
  const auto& items = assertions.items();
  const std::size_t n = items.size();
  std::vector<std::uint32_t> found;
  for (std::size_t size = 1; size <= max_size && size <= n; ++size) {
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
      bool has_smaller = std::any_of(found.begin(), found.end(), [&](std::uint32_t f) { return (f & mask) == f; });
      if (has_smaller) continue;
      std::vector<Assertion> subset;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1u) subset.push_back(items[i]);
      if (!oracle.consistent(subset)) found.push_back(mask);
    }
  }
  std::vector<AssertionSet> out;
  for (std::uint32_t mask : found) {
    std::vector<Assertion> subset;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) subset.push_back(items[i]);
    out.emplace_back(std::move(subset));
  }
  std::sort(out.begin(), out.end(), [](const AssertionSet& a, const AssertionSet& b) { return a.items() < b.items(); });
  return out;
}

std::vector<AssertionSet> oracle_maximal_repairs(const TBox& tbox, const AssertionSet& assertions) {
  if (assertions.size() > 14) throw OracleGuardError("maximal repair enumeration is limited to 14 assertions");
  ModelSearchOracle oracle(tbox, assertions.view());
  const auto& items = assertions.items();
  const std::size_t n = items.size();
  std::vector<std::uint32_t> masks(1u << n);
  for (std::uint32_t i = 0; i < masks.size(); ++i) masks[i] = i;
  std::stable_sort(masks.begin(), masks.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) > std::popcount(b); });
  std::vector<std::uint32_t> maximal;
  for (std::uint32_t mask : masks) {
    if (std::any_of(maximal.begin(), maximal.end(), [&](std::uint32_t m) { return (m & mask) == mask; })) continue;
    std::vector<Assertion> subset;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) subset.push_back(items[i]);
    if (oracle.consistent(subset)) maximal.push_back(mask);
  }
  std::vector<AssertionSet> out;
  for (std::uint32_t mask : maximal) {
    std::vector<Assertion> subset;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) subset.push_back(items[i]);
    out.emplace_back(std::move(subset));
  }
  std::sort(out.begin(), out.end(), [](const AssertionSet& a, const AssertionSet& b) { return a.items() < b.items(); });
  return out;
}

std::size_t oracle_cns_rank(const StratifiedAssertions& strata, const ConsistencyTest& consistent) {
  for (std::size_t k = 1; k <= strata.size(); ++k)
    if (!consistent(strata.union_up_to(k))) return k - 1;
  return strata.size();
}

std::size_t oracle_cns_rank(const TBox& tbox, const StratifiedAssertions& strata) {
  AssertionSet all = strata.union_all();
  ModelSearchOracle oracle(tbox, all.view());
  return oracle_cns_rank(strata, [&](const AssertionSet& s) { return oracle.consistent(s.view()); });
}

AssertionSet oracle_nd_repair(const TBox& tbox, const StratifiedAssertions& strata) {
  AssertionSet out;
  for (std::size_t k = 1; k <= strata.size(); ++k) {
    AssertionSet prefix = strata.union_up_to(k);
    AssertionSet involved;
    for (const auto& c : oracle_conflicts(tbox, prefix)) involved.insert(c);
    out.insert(prefix.minus(involved));
  }
  return out;
}

namespace {

// Materialization of an ABox under the positive inclusions. Elements
// 0..named-1 are the individuals, the rest labelled nulls.
class Chase {
 public:
  Chase(const TBox& tbox, std::size_t max_depth) : tbox_(tbox), max_depth_(max_depth) {}

  std::size_t named(Symbol s) {
    auto [it, inserted] = ids_.emplace(s, depth_.size());
    if (inserted) {
      depth_.push_back(0);
      names_.push_back(s);
      concepts_.emplace_back();
    }
    return it->second;
  }

  void add_concept(Symbol a, std::size_t x) {
    if (concepts_[x].insert(a).second) pending_.push_back({a, x, SIZE_MAX});
  }

  void add_role(Symbol p, std::size_t x, std::size_t y) {
    if (roles_.insert({p, x, y}).second) {
      out_[{p, x}].push_back(y);
      in_[{p, y}].push_back(x);
      by_role_[p].push_back({x, y});
      pending_.push_back({p, x, y});
    }
  }

  void run() {
    while (!pending_.empty()) {
      Fact f = pending_.front();
      pending_.pop_front();
      const auto& cis = tbox_.concept_axioms();
      if (f.object == SIZE_MAX) {
        for (std::size_t i = 0; i < cis.size(); ++i)
          if (!cis[i].negative && cis[i].lhs == BasicConcept::atomic(f.predicate)) apply(i, f.subject);
        continue;
      }
      for (std::size_t i = 0; i < cis.size(); ++i) {
        if (cis[i].negative || cis[i].lhs.is_atomic() || cis[i].lhs.name() != f.predicate) continue;
        apply(i, cis[i].lhs.role().inverted ? f.object : f.subject);
      }
      for (const auto& ri : tbox_.role_axioms()) {
        if (ri.negative || ri.lhs.name != f.predicate) continue;
        std::size_t from = ri.lhs.inverted ? f.object : f.subject;
        std::size_t to = ri.lhs.inverted ? f.subject : f.object;
        if (ri.rhs.inverted) std::swap(from, to);
        add_role(ri.rhs.name, from, to);
      }
    }
  }

  std::vector<AnswerTuple> answer(const ConjunctiveQuery& query) {
    std::size_t named_count = names_.size();
    std::set<AnswerTuple> answers;
    std::map<Symbol, std::size_t> binding;
    const auto& body = query.body();
    std::vector<bool> done(body.size(), false);

    auto value = [&](const Term& t) -> std::optional<std::size_t> {
      if (!t.variable) {
        auto it = ids_.find(t.name);
        if (it == ids_.end()) return SIZE_MAX;  // matches nothing
        return it->second;
      }
      auto it = binding.find(t.name);
      if (it == binding.end()) return std::nullopt;
      return it->second;
    };

    std::function<void(std::size_t)> search = [&](std::size_t left) {
      if (left == 0) {
        AnswerTuple tuple;
        for (const auto& h : query.head()) {
          std::size_t e = binding.at(h.name);
          if (e >= named_count) return;
          tuple.push_back(names_[e]);
        }
        answers.insert(tuple);
        return;
      }
      // Prefer an atom with a bound argument.
      std::size_t i = body.size();
      for (std::size_t j = 0; j < body.size(); ++j) {
        if (done[j]) continue;
        if (i == body.size()) i = j;
        bool bound = false;
        for (const auto& t : body[j].args) bound = bound || value(t).has_value();
        if (bound) {
          i = j;
          break;
        }
      }
      const QueryAtom& atom = body[i];
      done[i] = true;
      std::vector<std::pair<std::size_t, std::size_t>> candidates;
      if (atom.is_concept()) {
        auto v = value(atom.args[0]);
        if (v) {
          if (*v < concepts_.size() && concepts_[*v].contains(atom.predicate)) candidates.push_back({*v, 0});
        } else {
          for (std::size_t x = 0; x < concepts_.size(); ++x)
            if (concepts_[x].contains(atom.predicate)) candidates.push_back({x, 0});
        }
      } else {
        auto s = value(atom.args[0]);
        auto o = value(atom.args[1]);
        if (s) {
          auto it = out_.find({atom.predicate, *s});
          if (it != out_.end())
            for (std::size_t y : it->second) candidates.push_back({*s, y});
        } else if (o) {
          auto it = in_.find({atom.predicate, *o});
          if (it != in_.end())
            for (std::size_t x : it->second) candidates.push_back({x, *o});
        } else {
          auto it = by_role_.find(atom.predicate);
          if (it != by_role_.end()) candidates = it->second;
        }
      }
      for (const auto& [x, y] : candidates) {
        auto saved = binding;
        std::size_t vals[2] = {x, y};
        bool ok = true;
        for (std::size_t k = 0; k < atom.args.size() && ok; ++k) {
          auto v = value(atom.args[k]);
          if (v) {
            ok = *v == vals[k];
          } else {
            binding[atom.args[k].name] = vals[k];
          }
        }
        if (ok) search(left - 1);
        binding = std::move(saved);
      }
      done[i] = false;
    };
    search(body.size());
    return std::vector<AnswerTuple>(answers.begin(), answers.end());
  }

 private:
  struct Fact {
    Symbol predicate;
    std::size_t subject;
    std::size_t object;  // SIZE_MAX for concept facts
  };

  void apply(std::size_t axiom, std::size_t x) {
    const ConceptInclusion& ci = tbox_.concept_axioms()[axiom];
    if (ci.rhs.is_atomic()) {
      add_concept(ci.rhs.name(), x);
      return;
    }
    // Oblivious: one fresh null per trigger, up to the depth bound.
    if (depth_[x] >= max_depth_ || !fired_.insert({axiom, x}).second) return;
    std::size_t y = depth_.size();
    depth_.push_back(depth_[x] + 1);
    concepts_.emplace_back();
    if (ci.rhs.role().inverted) {
      add_role(ci.rhs.name(), y, x);
    } else {
      add_role(ci.rhs.name(), x, y);
    }
  }

  const TBox& tbox_;
  std::size_t max_depth_;
  std::map<Symbol, std::size_t> ids_;
  std::vector<Symbol> names_;
  std::vector<std::size_t> depth_;
  std::vector<std::set<Symbol>> concepts_;
  std::set<std::tuple<Symbol, std::size_t, std::size_t>> roles_;
  std::map<std::pair<Symbol, std::size_t>, std::vector<std::size_t>> out_;
  std::map<std::pair<Symbol, std::size_t>, std::vector<std::size_t>> in_;
  std::map<Symbol, std::vector<std::pair<std::size_t, std::size_t>>> by_role_;
  std::set<std::pair<std::size_t, std::size_t>> fired_;
  std::deque<Fact> pending_;
};

}  // namespace

std::vector<AnswerTuple> oracle_evaluate(const ConjunctiveQuery& query, const TBox& tbox,
                                         const AssertionSet& assertions) {
  if (assertions.size() > 64) throw OracleGuardError("chase evaluation is limited to 64 assertions");
  Chase chase(tbox, std::max(tbox.size(), query.body().size()) + 1);
  for (const auto& a : assertions) {
    chase.named(a.subject());
    if (!a.is_concept()) chase.named(a.object());
  }
  for (const auto& a : assertions) {
    if (a.is_concept()) {
      chase.add_concept(a.predicate(), chase.named(a.subject()));
    } else {
      chase.add_role(a.predicate(), chase.named(a.subject()), chase.named(a.object()));
    }
  }
  chase.run();
  return chase.answer(query);
}

}  // namespace literepair
