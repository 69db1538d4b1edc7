#include "literepair/textio.hpp"

#include <cctype>
#include <cstdio>
#include <map>

#include "literepair/error.hpp"

namespace literepair {

namespace {

enum class Tok { kIdent, kNumber, kVariable, kLParen, kRParen, kLBracket, kRBracket, kComma, kSub, kNot, kMinus, kIf, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::kIdent:
      return "identifier";
    case Tok::kNumber:
      return "number";
    case Tok::kVariable:
      return "variable";
    case Tok::kLParen:
      return "'('";
    case Tok::kRParen:
      return "')'";
    case Tok::kLBracket:
      return "'['";
    case Tok::kRBracket:
      return "']'";
    case Tok::kComma:
      return "','";
    case Tok::kSub:
      return "'<='";
    case Tok::kNot:
      return "'!'";
    case Tok::kMinus:
      return "'-'";
    case Tok::kIf:
      return "':-'";
    case Tok::kEnd:
      return "end of line";
  }
  return "?";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Tokens of one line; comments already stripped.
std::vector<Token> lex(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    std::size_t col = i + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({Tok::kIdent, std::string(line.substr(i, j - i)), line_no, col});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      if (j < line.size() && ident_char(line[j])) throw ParseError(line_no, col, "identifiers must not start with a digit");
      out.push_back({Tok::kNumber, std::string(line.substr(i, j - i)), line_no, col});
      i = j;
      continue;
    }
    if (c == '?') {
      std::size_t j = i + 1;
      if (j >= line.size() || !ident_start(line[j])) throw ParseError(line_no, col, "expected a variable name after '?'");
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({Tok::kVariable, std::string(line.substr(i + 1, j - i - 1)), line_no, col});
      i = j;
      continue;
    }
    if (line.substr(i, 2) == "<=") {
      out.push_back({Tok::kSub, "<=", line_no, col});
      i += 2;
      continue;
    }
    if (line.substr(i, 2) == ":-") {
      out.push_back({Tok::kIf, ":-", line_no, col});
      i += 2;
      continue;
    }
    Tok kind;
    switch (c) {
      case '(':
        kind = Tok::kLParen;
        break;
      case ')':
        kind = Tok::kRParen;
        break;
      case '[':
        kind = Tok::kLBracket;
        break;
      case ']':
        kind = Tok::kRBracket;
        break;
      case ',':
        kind = Tok::kComma;
        break;
      case '!':
        kind = Tok::kNot;
        break;
      case '-':
        kind = Tok::kMinus;
        break;
      default:
        throw ParseError(line_no, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, std::string(1, c), line_no, col});
    ++i;
  }
  out.push_back({Tok::kEnd, "", line_no, line.size() + 1});
  return out;
}

class Cursor {
 public:
  explicit Cursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }
  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_word(std::string_view word) const { return at(Tok::kIdent) && peek().text == word; }

  Token take(Tok kind, const char* what = nullptr) {
    const Token& t = peek();
    if (t.kind != kind) {
      std::string found = t.kind == Tok::kEnd ? "end of line" : "'" + t.text + "'";
      throw ParseError(t.line, t.column, std::string("expected ") + (what ? what : describe(kind)) + ", found " + found);
    }
    return tokens_[pos_++];
  }
  bool accept(Tok kind) {
    if (!at(kind)) return false;
    ++pos_;
    return true;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

enum class Space { kConcept, kRole, kIndividual };

const char* space_name(Space s) {
  switch (s) {
    case Space::kConcept:
      return "concept";
    case Space::kRole:
      return "role";
    case Space::kIndividual:
      return "individual";
  }
  return "?";
}

// Names are declared on first use; a second use in another namespace clashes.
class Namespaces {
 public:
  Symbol declare(const Token& t, Space space) {
    auto [it, inserted] = spaces_.emplace(t.text, space);
    if (!inserted && it->second != space) {
      throw NamespaceError(t.line, t.column,
                           "'" + t.text + "' used as " + space_name(space) + " but already declared as " +
                               space_name(it->second));
    }
    return Symbol(t.text);
  }

 private:
  std::map<std::string, Space, std::less<>> spaces_;
};

Role parse_role(Cursor& c, Namespaces& ns) {
  Symbol name = ns.declare(c.take(Tok::kIdent, "role name"), Space::kRole);
  bool inverted = false;
  if (c.at(Tok::kMinus)) {
    c.take(Tok::kMinus);
    inverted = true;
    if (c.at(Tok::kMinus)) throw ParseError(c.peek().line, c.peek().column, "nested inverse role");
  }
  return Role{name, inverted};
}

BasicConcept parse_basic_concept(Cursor& c, Namespaces& ns) {
  if (c.at_word("exists") && c.peek(1).kind == Tok::kIdent) {
    c.take(Tok::kIdent);
    return BasicConcept::exists(parse_role(c, ns));
  }
  return BasicConcept::atomic(ns.declare(c.take(Tok::kIdent, "concept name"), Space::kConcept));
}

TBoxAxiom parse_axiom(Cursor& c, Namespaces& ns) {
  if (c.at_word("role") && c.peek(1).kind == Tok::kIdent) {
    c.take(Tok::kIdent);
    Role lhs = parse_role(c, ns);
    c.take(Tok::kSub);
    bool negative = c.accept(Tok::kNot);
    Role rhs = parse_role(c, ns);
    return RoleInclusion{lhs, rhs, negative};
  }
  BasicConcept lhs = parse_basic_concept(c, ns);
  c.take(Tok::kSub);
  bool negative = c.accept(Tok::kNot);
  BasicConcept rhs = parse_basic_concept(c, ns);
  return ConceptInclusion{lhs, rhs, negative};
}

Assertion parse_assertion(Cursor& c, Namespaces& ns) {
  Token pred = c.take(Tok::kIdent, "assertion");
  c.take(Tok::kLParen);
  Token first = c.take(Tok::kIdent, "individual name");
  if (c.accept(Tok::kComma)) {
    Token second = c.take(Tok::kIdent, "individual name");
    c.take(Tok::kRParen);
    Symbol p = ns.declare(pred, Space::kRole);
    return Assertion::role_assertion(p, ns.declare(first, Space::kIndividual), ns.declare(second, Space::kIndividual));
  }
  c.take(Tok::kRParen);
  Symbol p = ns.declare(pred, Space::kConcept);
  return Assertion::concept_assertion(p, ns.declare(first, Space::kIndividual));
}

std::string_view strip_comment(std::string_view line) {
  auto pct = line.find('%');
  return pct == std::string_view::npos ? line : line.substr(0, pct);
}

}  // namespace

PrioritizedKB parse_kb(std::string_view text) {
  Namespaces ns;
  TBox tbox;
  std::vector<AssertionSet> strata;
  std::vector<std::vector<Assertion>> pending;
  enum class Section { kNone, kTBox, kStratum } section = Section::kNone;
  bool seen_tbox = false;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = strip_comment(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    start = end + 1;
    ++line_no;

    Cursor c(lex(line, line_no));
    if (c.at(Tok::kEnd)) continue;
    if (c.at(Tok::kLBracket)) {
      c.take(Tok::kLBracket);
      Token word = c.take(Tok::kIdent, "section name");
      if (word.text == "tbox") {
        if (seen_tbox || section != Section::kNone)
          throw ParseError(word.line, word.column, "the [tbox] section must come first and only once");
        seen_tbox = true;
        section = Section::kTBox;
      } else if (word.text == "stratum") {
        Token num = c.take(Tok::kNumber, "stratum number");
        std::size_t index = std::stoul(num.text);
        if (index != pending.size() + 1) {
          throw ParseError(num.line, num.column,
                           "expected [stratum " + std::to_string(pending.size() + 1) + "], found [stratum " + num.text + "]");
        }
        pending.emplace_back();
        section = Section::kStratum;
      } else {
        throw ParseError(word.line, word.column, "unknown section '" + word.text + "'");
      }
      c.take(Tok::kRBracket);
      c.take(Tok::kEnd);
      continue;
    }
    if (section == Section::kNone) {
      throw ParseError(line_no, c.peek().column, "content before the first section header");
    }
    if (section == Section::kTBox) {
      tbox.add(parse_axiom(c, ns));
    } else {
      pending.back().push_back(parse_assertion(c, ns));
    }
    c.take(Tok::kEnd);
  }
  if (pending.empty()) throw ParseError(line_no, 1, "no [stratum 1] section");
  for (auto& items : pending) strata.emplace_back(std::move(items));
  return PrioritizedKB::build(std::move(tbox), std::move(strata));
}

ConjunctiveQuery parse_query(std::string_view text) {
  // Flatten to one logical line, remembering where each piece came from.
  std::vector<Token> tokens;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = strip_comment(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    auto line_tokens = lex(line, line_no);
    line_tokens.pop_back();
    tokens.insert(tokens.end(), line_tokens.begin(), line_tokens.end());
  }
  tokens.push_back({Tok::kEnd, "", line_no, 1});
  Cursor c(std::move(tokens));
  if (c.at(Tok::kEnd)) throw ParseError(1, 1, "empty query");

  Namespaces ns;
  Symbol name(c.take(Tok::kIdent, "query name").text);
  std::vector<Term> head;
  c.take(Tok::kLParen);
  if (!c.at(Tok::kRParen)) {
    do {
      Token v = c.take(Tok::kVariable, "head variable");
      head.push_back(Term::var(Symbol(v.text)));
    } while (c.accept(Tok::kComma));
  }
  c.take(Tok::kRParen);
  Token arrow = c.take(Tok::kIf);

  std::vector<QueryAtom> body;
  do {
    Token pred = c.take(Tok::kIdent, "atom");
    std::vector<Term> args;
    c.take(Tok::kLParen);
    do {
      if (c.at(Tok::kVariable)) {
        args.push_back(Term::var(Symbol(c.take(Tok::kVariable).text)));
      } else {
        args.push_back(Term::constant(ns.declare(c.take(Tok::kIdent, "term"), Space::kIndividual)));
      }
    } while (c.accept(Tok::kComma));
    c.take(Tok::kRParen);
    if (args.size() > 2) throw ParseError(pred.line, pred.column, "atoms take one or two arguments");
    QueryAtom atom{ns.declare(pred, args.size() == 1 ? Space::kConcept : Space::kRole), std::move(args)};
    body.push_back(std::move(atom));
  } while (c.accept(Tok::kComma));
  c.take(Tok::kEnd);

  for (const auto& h : head) {
    bool bound = false;
    for (const auto& atom : body)
      for (const auto& t : atom.args) bound = bound || t == h;
    if (!bound) throw ParseError(arrow.line, arrow.column, "head variable ?" + h.name.str() + " does not occur in the body");
  }
  return ConjunctiveQuery(name, std::move(head), std::move(body));
}

std::string emit_kb(const PrioritizedKB& kb) {
  std::string out = "[tbox]\n";
  for (const auto& ax : kb.tbox().concept_axioms()) out += ax.to_string() + "\n";
  for (const auto& ax : kb.tbox().role_axioms()) out += ax.to_string() + "\n";
  for (std::size_t i = 1; i <= kb.strata_count(); ++i) {
    out += "[stratum " + std::to_string(i) + "]\n";
    for (const auto& a : kb.stratum(i)) out += a.to_string() + "\n";
  }
  return out;
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string ratio(const Ratio& r) { return fixed(r.value, 6) + (r.undefined ? " (undefined)" : ""); }

// Unary tuples print as bare names.
std::string answers_text(const std::vector<AnswerTuple>& answers) {
  std::string out = "{";
  for (std::size_t i = 0; i < answers.size(); ++i) {
    if (i) out += ", ";
    out += answers[i].size() == 1 ? answers[i][0].str() : to_string(answers[i]);
  }
  return out + "}";
}

}  // namespace

std::string emit_report(const Report& r) {
  std::string out;
  auto line = [&](const char* key, const std::string& value) { out += std::string(key) + ": " + value + "\n"; };
  line("command", r.command);
  if (r.strategy) line("strategy", to_string(*r.strategy));
  if (r.pipeline) line("pipeline", to_string(*r.pipeline));
  if (r.mode) line("mode", to_string(*r.mode));
  if (r.query) line("query", *r.query);
  for (const auto& [key, value] : r.details) line(key.c_str(), value);
  if (r.rank) line("rank", std::to_string(*r.rank));
  if (r.checks) line("checks", std::to_string(*r.checks));
  if (r.repair) {
    line("repair_size", std::to_string(r.repair->size()));
    line("repair", to_string(*r.repair));
  }
  if (r.answers) line("answers", answers_text(*r.answers));
  if (r.raw_answers) line("raw_answers", answers_text(*r.raw_answers));
  if (r.productivity) {
    line("productivity", ratio(*r.productivity));
    line("productivity_basis", "answers");
  }
  if (r.metrics) {
    line("cr", std::to_string(r.metrics->cr));
    line("cnr", std::to_string(r.metrics->cnr));
    line("ir", std::to_string(r.metrics->ir));
    line("inr", std::to_string(r.metrics->inr));
    line("precision", ratio(r.metrics->precision));
    line("recall", ratio(r.metrics->recall));
    line("f_measure", ratio(r.metrics->f_measure));
  }
  if (r.elapsed_ms) line("elapsed_ms", fixed(*r.elapsed_ms, 3));
  return out;
}

}  // namespace literepair
