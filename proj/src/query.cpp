#include "literepair/query.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "literepair/error.hpp"

namespace literepair {

std::string QueryAtom::to_string() const {
  std::string out = predicate.str() + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += args[i].to_string();
  }
  return out + ")";
}

const char* to_string(QueryKind kind) {
  switch (kind) {
    case QueryKind::kInstance:
      return "instance";
    case QueryKind::kGround:
      return "ground";
    case QueryKind::kConjunctive:
      return "conjunctive";
  }
  return "?";
}

const char* to_string(SupportMode mode) {
  return mode == SupportMode::kAboutAnswers ? "about-answers" : "instantiation";
}

namespace {

std::string render(const std::vector<Term>& head, const std::vector<QueryAtom>& body) {
  std::string out = "q(";
  for (std::size_t i = 0; i < head.size(); ++i) {
    if (i) out += ", ";
    out += head[i].to_string();
  }
  out += ") :- ";
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i) out += ", ";
    out += body[i].to_string();
  }
  return out;
}

}  // namespace

ConjunctiveQuery::ConjunctiveQuery(Symbol name, std::vector<Term> head, std::vector<QueryAtom> body)
    : name_(name), head_(std::move(head)), body_(std::move(body)) {
  if (body_.empty()) throw UsageError("query " + name_.str() + " has an empty body");
  bool any_variable = false;
  for (const auto& atom : body_) {
    if (atom.args.empty() || atom.args.size() > 2)
      throw UsageError("atom " + atom.predicate.str() + " must have one or two arguments");
    for (const auto& t : atom.args) any_variable = any_variable || t.variable;
  }
  for (const auto& h : head_) {
    if (!h.variable) continue;
    bool bound = std::any_of(body_.begin(), body_.end(), [&](const QueryAtom& a) {
      return std::find(a.args.begin(), a.args.end(), h) != a.args.end();
    });
    if (!bound) throw UsageError("head variable " + h.to_string() + " does not occur in the body");
  }
  if (!any_variable && head_.empty()) {
    kind_ = QueryKind::kGround;
  } else if (body_.size() == 1 && !head_.empty()) {
    kind_ = QueryKind::kInstance;
  } else {
    kind_ = QueryKind::kConjunctive;
  }
}

std::vector<Symbol> ConjunctiveQuery::constants() const {
  std::vector<Symbol> out;
  for (const auto& atom : body_)
    for (const auto& t : atom.args)
      if (!t.variable) out.push_back(t.name);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string ConjunctiveQuery::to_string() const {
  std::string out = render(head_, body_);
  out.replace(0, 1, name_.str());
  return out;
}

std::string to_string(const AnswerTuple& tuple) {
  std::string out = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ", ";
    out += tuple[i].str();
  }
  return out + ")";
}

std::string to_string(const std::vector<AnswerTuple>& answers) {
  std::string out = "{";
  for (std::size_t i = 0; i < answers.size(); ++i) {
    if (i) out += ", ";
    out += to_string(answers[i]);
  }
  return out + "}";
}

std::string RewrittenQuery::to_string() const { return render(head, body); }

// ---------------------------------------------------------------------------
// Rewriting

namespace {

using Substitution = std::map<Symbol, Term>;  // variable name -> term

Term substitute(const Substitution& s, const Term& t) {
  if (!t.variable) return t;
  auto it = s.find(t.name);
  return it == s.end() ? t : it->second;
}

void substitute(const Substitution& s, RewrittenQuery& q) {
  for (auto& t : q.head) t = substitute(s, t);
  for (auto& atom : q.body)
    for (auto& t : atom.args) t = substitute(s, t);
  for (auto& [_, t] : q.origin) t = substitute(s, t);
  std::sort(q.body.begin(), q.body.end());
  q.body.erase(std::unique(q.body.begin(), q.body.end()), q.body.end());
}

// Most general unifier of two atoms with the same predicate and arity.
std::optional<Substitution> unify(const QueryAtom& a, const QueryAtom& b) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size()) return std::nullopt;
  Substitution s;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    Term x = substitute(s, a.args[i]);
    Term y = substitute(s, b.args[i]);
    if (x == y) continue;
    if (!x.variable && !y.variable) return std::nullopt;
    if (!y.variable) std::swap(x, y);
    // y is a variable; bind it to x everywhere.
    for (auto& [_, t] : s)
      if (t == y) t = x;
    s[y.name] = x;
  }
  return s;
}

std::string canonical_text(const std::vector<Term>& head, const std::vector<QueryAtom>& body,
                           const std::vector<std::size_t>& order) {
  std::map<Symbol, std::size_t> names;
  std::string out;
  auto put = [&](const Term& t) {
    if (!t.variable) {
      out += t.name.str();
    } else {
      auto [it, _] = names.emplace(t.name, names.size());
      out += "?" + std::to_string(it->second);
    }
  };
  for (const auto& t : head) {
    put(t);
    out += ",";
  }
  out += "|";
  for (std::size_t i : order) {
    out += body[i].predicate.str() + "(";
    for (const auto& t : body[i].args) {
      put(t);
      out += ",";
    }
    out += ")";
  }
  return out;
}

// Text identical for two queries iff they are equal up to variable renaming
// and atom order.
std::string canonical(const RewrittenQuery& q) {
  std::vector<std::size_t> order(q.body.size());
  std::iota(order.begin(), order.end(), 0);
  if (q.body.size() <= 7) {
    std::string best;
    bool first = true;
    do {
      std::string text = canonical_text(q.head, q.body, order);
      if (first || text < best) best = std::move(text);
      first = false;
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
  }
  // Large bodies: order atoms by their text with variables blanked out.
  auto shape = [&](std::size_t i) {
    std::string s = q.body[i].predicate.str();
    for (const auto& t : q.body[i].args) s += "," + (t.variable ? std::string("?") : t.name.str());
    return s;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return shape(a) < shape(b); });
  return canonical_text(q.head, q.body, order);
}

class Rewriter {
 public:
  explicit Rewriter(const TBox& tbox) {
    for (const auto& ax : tbox.concept_axioms())
      if (!ax.negative) concept_pis_.push_back(ax);
    for (const auto& ax : tbox.role_axioms()) {
      if (ax.negative) continue;
      // Normalized so the right-hand side is a plain role name.
      role_pis_.push_back(ax.rhs.inverted ? RoleInclusion{ax.lhs.inverse(), ax.rhs.inverse(), false} : ax);
    }
  }

  std::vector<RewrittenQuery> run(const ConjunctiveQuery& query) {
    RewrittenQuery start{query.head(), query.body(), {}};
    for (const auto& atom : query.body())
      for (const auto& t : atom.args)
        if (t.variable) start.origin[t.name] = t;
    std::sort(start.body.begin(), start.body.end());
    start.body.erase(std::unique(start.body.begin(), start.body.end()), start.body.end());

    std::map<std::string, RewrittenQuery> done;
    std::vector<RewrittenQuery> pending{start};
    while (!pending.empty()) {
      RewrittenQuery q = std::move(pending.back());
      pending.pop_back();
      std::string key = canonical(q);
      if (done.contains(key)) continue;
      done.emplace(key, q);
      for (std::size_t i = 0; i < q.body.size(); ++i) {
        for (auto& atom : replacements(q, i)) {
          RewrittenQuery next = q;
          next.body[i] = std::move(atom);
          std::sort(next.body.begin(), next.body.end());
          next.body.erase(std::unique(next.body.begin(), next.body.end()), next.body.end());
          pending.push_back(std::move(next));
        }
        for (std::size_t j = i + 1; j < q.body.size(); ++j) {
          auto mgu = unify(q.body[i], q.body[j]);
          if (!mgu) continue;
          RewrittenQuery next = q;
          substitute(*mgu, next);
          pending.push_back(std::move(next));
        }
      }
    }
    std::vector<RewrittenQuery> out;
    out.reserve(done.size());
    for (auto& [_, q] : done) out.push_back(std::move(q));
    return out;
  }

 private:
  Term fresh() { return Term::var(Symbol("%" + std::to_string(++counter_))); }

  // A variable that occurs once in the whole query, head included.
  static bool unbound(const RewrittenQuery& q, const Term& t) {
    if (!t.variable) return false;
    std::size_t n = 0;
    for (const auto& h : q.head) n += h == t;
    for (const auto& atom : q.body)
      for (const auto& a : atom.args) n += a == t;
    return n == 1;
  }

  QueryAtom from_concept(const BasicConcept& b, const Term& t) {
    if (b.is_atomic()) return QueryAtom{b.name(), {t}};
    if (b.role().inverted) return QueryAtom{b.name(), {fresh(), t}};
    return QueryAtom{b.name(), {t, fresh()}};
  }

  std::vector<QueryAtom> replacements(const RewrittenQuery& q, std::size_t i) {
    const QueryAtom& g = q.body[i];
    std::vector<QueryAtom> out;
    if (g.is_concept()) {
      for (const auto& ax : concept_pis_)
        if (ax.rhs.is_atomic() && ax.rhs.name() == g.predicate) out.push_back(from_concept(ax.lhs, g.args[0]));
      return out;
    }
    const Term& s = g.args[0];
    const Term& o = g.args[1];
    for (const auto& ax : role_pis_) {
      if (ax.rhs.name != g.predicate) continue;
      out.push_back(ax.lhs.inverted ? QueryAtom{ax.lhs.name, {o, s}} : QueryAtom{ax.lhs.name, {s, o}});
    }
    bool free_object = unbound(q, o);
    bool free_subject = unbound(q, s);
    for (const auto& ax : concept_pis_) {
      if (ax.rhs.is_atomic() || ax.rhs.name() != g.predicate) continue;
      if (!ax.rhs.role().inverted && free_object) out.push_back(from_concept(ax.lhs, s));
      if (ax.rhs.role().inverted && free_subject) out.push_back(from_concept(ax.lhs, o));
    }
    return out;
  }

  std::vector<ConceptInclusion> concept_pis_;
  std::vector<RoleInclusion> role_pis_;
  std::size_t counter_ = 0;
};

}  // namespace

std::vector<RewrittenQuery> rewrite(const ConjunctiveQuery& query, const TBox& tbox) {
  return Rewriter(tbox).run(query);
}

// ---------------------------------------------------------------------------
// Storage and matching

AssertionStore::AssertionStore(std::span<const Assertion> assertions)
    : assertions_(assertions.begin(), assertions.end()) {
  for (const Assertion& a : assertions_) {
    by_predicate_[a.predicate()].push_back(&a);
    by_predicate_subject_[{a.predicate(), a.subject()}].push_back(&a);
    if (a.is_concept()) {
      concepts_by_individual_[a.subject()].push_back(&a);
    } else {
      by_predicate_object_[{a.predicate(), a.object()}].push_back(&a);
    }
  }
}

std::span<const Assertion* const> AssertionStore::concept_assertions_about(Symbol individual) const {
  auto it = concepts_by_individual_.find(individual);
  if (it == concepts_by_individual_.end()) return {};
  return it->second;
}

class Matcher {
 public:
  Matcher(const AssertionStore& store, const AssertionFilter& filter) : store_(store), filter_(filter) {}

  using Binding = std::vector<std::pair<Symbol, Symbol>>;

  template <class F>
  void run(const RewrittenQuery& q, F&& on_match) {
    query_ = &q;
    used_.assign(q.body.size(), false);
    binding_.clear();
    step(q.body.size(), on_match);
  }

 private:
  const Symbol* lookup(Symbol var) const {
    for (const auto& [v, ind] : binding_)
      if (v == var) return &ind;
    return nullptr;
  }

  bool is_bound(const Term& t) const { return !t.variable || lookup(t.name) != nullptr; }

  Symbol value(const Term& t) const { return t.variable ? *lookup(t.name) : t.name; }

  std::span<const Assertion* const> candidates(const QueryAtom& atom) const {
    auto get = [](const auto& index, const auto& key) -> std::span<const Assertion* const> {
      auto it = index.find(key);
      if (it == index.end()) return {};
      return it->second;
    };
    if (is_bound(atom.args[0])) return get(store_.by_predicate_subject_, std::make_pair(atom.predicate, value(atom.args[0])));
    if (atom.args.size() == 2 && is_bound(atom.args[1]))
      return get(store_.by_predicate_object_, std::make_pair(atom.predicate, value(atom.args[1])));
    return get(store_.by_predicate_, atom.predicate);
  }

  template <class F>
  void step(std::size_t remaining, F& on_match) {
    if (remaining == 0) {
      on_match(binding_);
      return;
    }
    // Most constrained atom next.
    std::size_t pick = 0;
    int best = -1;
    for (std::size_t i = 0; i < used_.size(); ++i) {
      if (used_[i]) continue;
      int bound = 0;
      for (const auto& t : query_->body[i].args) bound += is_bound(t);
      if (bound > best) {
        best = bound;
        pick = i;
      }
    }
    const QueryAtom& atom = query_->body[pick];
    used_[pick] = true;
    for (const Assertion* a : candidates(atom)) {
      if (a->is_concept() != atom.is_concept()) continue;
      if (filter_ && !filter_(*a)) continue;
      std::size_t mark = binding_.size();
      bool ok = true;
      Symbol values[2] = {a->subject(), a->object()};
      for (std::size_t k = 0; k < atom.args.size() && ok; ++k) {
        const Term& t = atom.args[k];
        if (!t.variable) {
          ok = t.name == values[k];
        } else if (const Symbol* v = lookup(t.name)) {
          ok = *v == values[k];
        } else {
          binding_.emplace_back(t.name, values[k]);
        }
      }
      if (ok) step(remaining - 1, on_match);
      binding_.resize(mark);
    }
    used_[pick] = false;
  }

  const AssertionStore& store_;
  const AssertionFilter& filter_;
  const RewrittenQuery* query_ = nullptr;
  std::vector<bool> used_;
  Binding binding_;
};

namespace {

AnswerTuple tuple_of(const RewrittenQuery& q, const Matcher::Binding& binding) {
  AnswerTuple tuple;
  tuple.reserve(q.head.size());
  for (const auto& t : q.head) {
    if (!t.variable) {
      tuple.push_back(t.name);
      continue;
    }
    for (const auto& [v, ind] : binding)
      if (v == t.name) {
        tuple.push_back(ind);
        break;
      }
  }
  return tuple;
}

}  // namespace

std::vector<AnswerTuple> evaluate(std::span<const RewrittenQuery> rewriting, const AssertionStore& store,
                                  const AssertionFilter& filter) {
  std::vector<AnswerTuple> out;
  Matcher matcher(store, filter);
  for (const auto& q : rewriting) {
    matcher.run(q, [&](const Matcher::Binding& b) { out.push_back(tuple_of(q, b)); });
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Match> matches(std::span<const RewrittenQuery> rewriting, const AssertionStore& store) {
  std::vector<Match> out;
  AssertionFilter none;
  Matcher matcher(store, none);
  for (std::size_t i = 0; i < rewriting.size(); ++i) {
    const auto& q = rewriting[i];
    matcher.run(q, [&](const Matcher::Binding& b) {
      out.push_back(Match{tuple_of(q, b), i, std::map<Symbol, Symbol>(b.begin(), b.end())});
    });
  }
  return out;
}

std::vector<AnswerTuple> evaluate(const ConjunctiveQuery& query, const TBox& tbox, const AssertionSet& assertions) {
  auto rewriting = rewrite(query, tbox);
  AssertionStore store(assertions);
  return evaluate(rewriting, store);
}

// ---------------------------------------------------------------------------
// Profiles

StratifiedAssertions AnswerProfile::supports() const {
  std::vector<AssertionSet> sets;
  sets.reserve(strata.size());
  for (const auto& s : strata) sets.push_back(s.support);
  return StratifiedAssertions(std::move(sets));
}

std::vector<AnswerTuple> AnswerProfile::all_answers() const {
  std::vector<AnswerTuple> out;
  for (const auto& s : strata) out.insert(out.end(), s.answers.begin(), s.answers.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PreparedQuery::PreparedQuery(const ConjunctiveQuery& q, const TBox& tbox) : query(q), rewriting(rewrite(q, tbox)) {}

namespace {

// The ground image of an input atom under one match, or nothing when one of
// its variables was only witnessed by an anonymous element.
std::optional<Assertion> instantiate(const QueryAtom& atom, const RewrittenQuery& member, const Match& m) {
  Symbol values[2];
  for (std::size_t k = 0; k < atom.args.size(); ++k) {
    Term t = atom.args[k];
    if (t.variable) {
      auto o = member.origin.find(t.name);
      if (o != member.origin.end()) t = o->second;
    }
    if (!t.variable) {
      values[k] = t.name;
      continue;
    }
    auto b = m.binding.find(t.name);
    if (b == m.binding.end()) return std::nullopt;
    values[k] = b->second;
  }
  if (atom.is_concept()) return Assertion::concept_assertion(atom.predicate, values[0]);
  return Assertion::role_assertion(atom.predicate, values[0], values[1]);
}

}  // namespace

AnswerProfile answer_profile(const PreparedQuery& prepared, std::span<const AssertionStore> strata, SupportMode mode) {
  AnswerProfile profile;
  profile.mode = mode;
  profile.strata.reserve(strata.size());
  std::vector<Symbol> query_constants = prepared.query.constants();

  for (const AssertionStore& store : strata) {
    StratumAnswers sa;
    if (mode == SupportMode::kAboutAnswers) {
      sa.answers = evaluate(prepared.rewriting, store);
      std::vector<Assertion> all;
      sa.support_of.reserve(sa.answers.size());
      for (const auto& tuple : sa.answers) {
        const std::vector<Symbol>& about = tuple.empty() ? query_constants : tuple;
        std::vector<Assertion> mine;
        for (Symbol ind : about)
          for (const Assertion* a : store.concept_assertions_about(ind)) mine.push_back(*a);
        all.insert(all.end(), mine.begin(), mine.end());
        sa.support_of.emplace_back(std::move(mine));
      }
      sa.support = AssertionSet(std::move(all));
    } else {
      std::map<AnswerTuple, std::vector<Assertion>> grouped;
      for (const Match& m : matches(prepared.rewriting, store)) {
        auto& bucket = grouped[m.tuple];
        const RewrittenQuery& member = prepared.rewriting[m.member];
        for (const auto& atom : prepared.query.body())
          if (auto a = instantiate(atom, member, m)) bucket.push_back(*a);
      }
      std::vector<Assertion> all;
      for (auto& [tuple, items] : grouped) {
        sa.answers.push_back(tuple);
        all.insert(all.end(), items.begin(), items.end());
        sa.support_of.emplace_back(std::move(items));
      }
      sa.support = AssertionSet(std::move(all));
    }
    profile.strata.push_back(std::move(sa));
  }
  return profile;
}

AnswerProfile answer_profile(const ConjunctiveQuery& query, const PrioritizedKB& kb, SupportMode mode) {
  PreparedQuery prepared(query, kb.tbox());
  std::vector<AssertionStore> stores;
  stores.reserve(kb.strata_count());
  for (std::size_t i = 1; i <= kb.strata_count(); ++i) stores.emplace_back(kb.stratum(i));
  return answer_profile(prepared, stores, mode);
}

std::vector<AnswerTuple> answers_from_assertions(const AnswerProfile& profile, const AssertionSet& retained) {
  struct Seen {
    const AnswerTuple* tuple;
    bool kept;
    bool supported;
  };
  std::vector<Seen> seen;
  for (const auto& sa : profile.strata) {
    for (std::size_t j = 0; j < sa.answers.size(); ++j) {
      const AssertionSet& support = sa.support_of[j];
      bool kept = std::any_of(support.begin(), support.end(), [&](const Assertion& a) { return retained.contains(a); });
      seen.push_back(Seen{&sa.answers[j], kept, !support.empty()});
    }
  }
  std::sort(seen.begin(), seen.end(), [](const Seen& a, const Seen& b) { return *a.tuple < *b.tuple; });
  // An answer survives if some support was retained, or if it never had a
  // non-empty support at all.
  std::vector<AnswerTuple> out;
  for (std::size_t i = 0; i < seen.size();) {
    std::size_t end = i;
    bool kept = false;
    bool supported = false;
    for (; end < seen.size() && *seen[end].tuple == *seen[i].tuple; ++end) {
      kept = kept || seen[end].kept;
      supported = supported || seen[end].supported;
    }
    if (kept || !supported) out.push_back(*seen[i].tuple);
    i = end;
  }
  return out;
}

}  // namespace literepair
