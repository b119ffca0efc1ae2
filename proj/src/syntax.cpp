#include "fodb/syntax.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <functional>
#include <sstream>

namespace fodb {

namespace {

constexpr std::array<std::string_view, 17> kReserved = {
    "forall", "exists", "signature", "domain", "interpret", "theory",
    "const", "rel", "insert", "delete", "new", "reinterpret", "drop",
    "tuple", "premises", "steps", "conclusion"};

}  // namespace

bool is_reserved_word(std::string_view name) {
  return std::find(kReserved.begin(), kReserved.end(), name) != kReserved.end();
}

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

bool is_variable_name(std::string_view name) {
  if (name.empty()) return false;
  if (name[0] < 'u' || name[0] > 'z') return false;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  }
  return true;
}

Symbol make_constant(std::string name) { return Symbol{std::move(name), SymbolKind::Constant, 0}; }

Symbol make_relation(std::string name, int arity) {
  return Symbol{std::move(name), SymbolKind::Relation, arity};
}

void Signature::add(Symbol s) {
  if (!is_identifier(s.name) || is_reserved_word(s.name)) {
    throw ValidationError("invalid symbol name '" + s.name + "'");
  }
  if (s.kind == SymbolKind::Constant && s.arity != 0) {
    throw ValidationError("constant '" + s.name + "' must have arity 0");
  }
  if (s.kind == SymbolKind::Relation && s.arity < 1) {
    throw ValidationError("relation '" + s.name + "' must have arity >= 1");
  }
  auto [it, inserted] = symbols_.emplace(s.name, s);
  if (!inserted && !(it->second == s)) {
    throw ValidationError("duplicate symbol name '" + s.name + "'");
  }
}

void Signature::remove(const std::string& name) { symbols_.erase(name); }

bool Signature::contains(const std::string& name) const { return symbols_.count(name) != 0; }

const Symbol* Signature::find(const std::string& name) const {
  auto it = symbols_.find(name);
  return it == symbols_.end() ? nullptr : &it->second;
}

std::vector<Symbol> Signature::symbols() const {
  std::vector<Symbol> out;
  out.reserve(symbols_.size());
  for (const auto& [_, s] : symbols_) out.push_back(s);
  return out;
}

Term make_var(std::string name) { return Term{TermKind::Variable, std::move(name)}; }

Term make_const_term(std::string name) { return Term{TermKind::Constant, std::move(name)}; }

// ---------------------------------------------------------------------------
// Formula nodes
// ---------------------------------------------------------------------------

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_term(const Term& t) {
  return hash_combine(static_cast<std::size_t>(t.kind), std::hash<std::string>{}(t.name));
}

}  // namespace

struct Formula::Node {
  FormulaKind kind;
  std::string name;          // relation (Atom) or bound variable (quantifiers)
  std::vector<Term> terms;   // Atom args, or Equal's two sides
  std::vector<Formula> kids;
  std::size_t hash = 0;

  // Nested classes can reach the enclosing class's private constructor.
  static Formula build(FormulaKind kind, std::string name, std::vector<Term> terms,
                       std::vector<Formula> kids) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->name = std::move(name);
    n->terms = std::move(terms);
    n->kids = std::move(kids);
    std::size_t h = hash_combine(0, static_cast<std::size_t>(kind));
    h = hash_combine(h, std::hash<std::string>{}(n->name));
    for (const Term& t : n->terms) h = hash_combine(h, hash_term(t));
    for (const Formula& k : n->kids) h = hash_combine(h, k.hash());
    n->hash = h;
    return Formula(std::move(n));
  }
};

Formula Formula::atom(std::string relation, std::vector<Term> args) {
  return Node::build(FormulaKind::Atom, std::move(relation), std::move(args), {});
}

Formula Formula::equal(Term lhs, Term rhs) {
  return Node::build(FormulaKind::Equal, "", {std::move(lhs), std::move(rhs)}, {});
}

Formula Formula::negation(Formula f) {
  return Node::build(FormulaKind::Not, "", {}, {std::move(f)});
}

Formula Formula::conjunction(Formula l, Formula r) {
  return Node::build(FormulaKind::And, "", {}, {std::move(l), std::move(r)});
}

Formula Formula::disjunction(Formula l, Formula r) {
  return Node::build(FormulaKind::Or, "", {}, {std::move(l), std::move(r)});
}

Formula Formula::implication(Formula l, Formula r) {
  return Node::build(FormulaKind::Implies, "", {}, {std::move(l), std::move(r)});
}

Formula Formula::biconditional(Formula l, Formula r) {
  return Node::build(FormulaKind::Iff, "", {}, {std::move(l), std::move(r)});
}

Formula Formula::forall(std::string var, Formula body) {
  return Node::build(FormulaKind::Forall, std::move(var), {}, {std::move(body)});
}

Formula Formula::exists(std::string var, Formula body) {
  return Node::build(FormulaKind::Exists, std::move(var), {}, {std::move(body)});
}

const Formula::Node& Formula::node() const {
  if (!node_) throw std::logic_error("use of invalid Formula");
  return *node_;
}

FormulaKind Formula::kind() const { return node().kind; }
const std::string& Formula::name() const { return node().name; }
const std::vector<Term>& Formula::terms() const { return node().terms; }
const Formula& Formula::child(std::size_t i) const { return node().kids.at(i); }
std::size_t Formula::child_count() const { return node().kids.size(); }
std::size_t Formula::hash() const { return node().hash; }

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->hash != o.node_->hash) return false;
  if (node_->kind != o.node_->kind || node_->name != o.node_->name) return false;
  if (!(node_->terms == o.node_->terms)) return false;
  if (node_->kids.size() != o.node_->kids.size()) return false;
  for (std::size_t i = 0; i < node_->kids.size(); ++i) {
    if (node_->kids[i] != o.node_->kids[i]) return false;
  }
  return true;
}

bool contains_formula(const std::vector<Formula>& fs, const Formula& f) {
  for (const Formula& g : fs) {
    if (g == f) return true;
  }
  return false;
}

void add_formula(std::vector<Formula>& fs, const Formula& f) {
  if (!contains_formula(fs, f)) fs.push_back(f);
}

// ---------------------------------------------------------------------------
// Parser
//
// Precedence, loosest to tightest: <->, -> (right-assoc), |, &, then the
// prefix operators ~ / forall v / exists v, then atoms.
// ---------------------------------------------------------------------------

namespace {

class FormulaParser {
 public:
  FormulaParser(Lexer& lex, const Signature& sig, std::map<std::string, Symbol>& unknowns)
      : lex_(lex), sig_(sig), unknowns_(unknowns) {}

  Formula parse() { return parse_iff(); }

 private:
  Formula parse_iff() {
    Formula l = parse_imp();
    if (lex_.at(Token::Kind::BiArrow)) {
      lex_.next();
      return Formula::biconditional(std::move(l), parse_iff());
    }
    return l;
  }

  Formula parse_imp() {
    Formula l = parse_or();
    if (lex_.at(Token::Kind::Arrow)) {
      lex_.next();
      return Formula::implication(std::move(l), parse_imp());
    }
    return l;
  }

  Formula parse_or() {
    Formula l = parse_and();
    while (lex_.at(Token::Kind::Pipe)) {
      lex_.next();
      l = Formula::disjunction(std::move(l), parse_and());
    }
    return l;
  }

  Formula parse_and() {
    Formula l = parse_unary();
    while (lex_.at(Token::Kind::Amp)) {
      lex_.next();
      l = Formula::conjunction(std::move(l), parse_unary());
    }
    return l;
  }

  Formula parse_unary() {
    if (lex_.at(Token::Kind::Tilde)) {
      lex_.next();
      return Formula::negation(parse_unary());
    }
    if (lex_.at_ident("forall") || lex_.at_ident("exists")) {
      const bool universal = lex_.peek().text == "forall";
      lex_.next();
      Token var = lex_.expect(Token::Kind::Ident, "quantified variable");
      if (is_reserved_word(var.text)) {
        throw ParseError(var.line, var.col, "reserved word '" + var.text + "' cannot be a variable");
      }
      bound_.push_back(var.text);
      Formula body = parse_unary();
      bound_.pop_back();
      return universal ? Formula::forall(var.text, std::move(body))
                       : Formula::exists(var.text, std::move(body));
    }
    return parse_primary();
  }

  Formula parse_primary() {
    if (lex_.at(Token::Kind::LParen)) {
      lex_.next();
      Formula f = parse_iff();
      lex_.expect(Token::Kind::RParen, "')'");
      return f;
    }
    if (lex_.at(Token::Kind::Ident)) {
      Token id = lex_.next();
      if (is_reserved_word(id.text)) {
        throw ParseError(id.line, id.col, "unexpected reserved word '" + id.text + "'");
      }
      if (lex_.at(Token::Kind::LParen)) {
        lex_.next();
        std::vector<Term> args;
        args.push_back(parse_term());
        while (lex_.at(Token::Kind::Comma)) {
          lex_.next();
          args.push_back(parse_term());
        }
        lex_.expect(Token::Kind::RParen, "')'");
        resolve_relation(id, static_cast<int>(args.size()));
        return Formula::atom(id.text, std::move(args));
      }
      Term lhs = resolve_term(id);
      return parse_equality(std::move(lhs));
    }
    lex_.fail("expected a formula, found " + Lexer::describe(lex_.peek()));
  }

  Formula parse_equality(Term lhs) {
    if (lex_.at(Token::Kind::Eq)) {
      lex_.next();
      Term rhs = parse_term();
      return Formula::equal(std::move(lhs), std::move(rhs));
    }
    if (lex_.at(Token::Kind::Neq)) {
      lex_.next();
      Term rhs = parse_term();
      return Formula::negation(Formula::equal(std::move(lhs), std::move(rhs)));
    }
    lex_.fail("expected '=' or '!=' after term");
  }

  Term parse_term() {
    Token id = lex_.expect(Token::Kind::Ident, "term");
    if (is_reserved_word(id.text)) {
      throw ParseError(id.line, id.col, "unexpected reserved word '" + id.text + "'");
    }
    return resolve_term(id);
  }

  bool is_bound(const std::string& name) const {
    return std::find(bound_.rbegin(), bound_.rend(), name) != bound_.rend();
  }

  Term resolve_term(const Token& id) {
    if (is_bound(id.text)) return make_var(id.text);
    if (const Symbol* s = sig_.find(id.text)) {
      if (s->kind == SymbolKind::Relation) {
        throw ParseError(id.line, id.col, "relation symbol '" + id.text + "' used as a term");
      }
      return make_const_term(id.text);
    }
    if (is_variable_name(id.text)) return make_var(id.text);
    auto it = unknowns_.find(id.text);
    if (it != unknowns_.end()) {
      if (it->second.kind != SymbolKind::Constant) {
        throw ParseError(id.line, id.col,
                         "symbol '" + id.text + "' used both as a relation and as a constant");
      }
    } else {
      unknowns_.emplace(id.text, make_constant(id.text));
    }
    return make_const_term(id.text);
  }

  void resolve_relation(const Token& id, int argc) {
    if (is_bound(id.text)) {
      throw ParseError(id.line, id.col,
                       "quantified variable '" + id.text + "' applied to arguments");
    }
    if (const Symbol* s = sig_.find(id.text)) {
      if (s->kind == SymbolKind::Constant) {
        throw ParseError(id.line, id.col, "constant symbol '" + id.text + "' applied to arguments");
      }
      if (s->arity != argc) {
        throw ParseError(id.line, id.col, "arity mismatch: relation '" + id.text + "' expects " +
                                              std::to_string(s->arity) + " argument(s), got " +
                                              std::to_string(argc));
      }
      return;
    }
    auto it = unknowns_.find(id.text);
    if (it != unknowns_.end()) {
      if (it->second.kind != SymbolKind::Relation) {
        throw ParseError(id.line, id.col,
                         "symbol '" + id.text + "' used both as a relation and as a constant");
      }
      if (it->second.arity != argc) {
        throw ParseError(id.line, id.col, "inconsistent arity for unknown symbol '" + id.text +
                                              "': " + std::to_string(it->second.arity) + " vs " +
                                              std::to_string(argc));
      }
      return;
    }
    unknowns_.emplace(id.text, make_relation(id.text, argc));
  }

  Lexer& lex_;
  const Signature& sig_;
  std::map<std::string, Symbol>& unknowns_;
  std::vector<std::string> bound_;
};

}  // namespace

Formula parse_formula_at(Lexer& lex, const Signature& sig,
                         std::map<std::string, Symbol>& unknowns) {
  FormulaParser p(lex, sig, unknowns);
  return p.parse();
}

ParseResult parse_formula(std::string_view text, const Signature& sig) {
  Lexer lex(text);
  std::map<std::string, Symbol> unknowns;
  Formula f = parse_formula_at(lex, sig, unknowns);
  if (!lex.at(Token::Kind::End)) {
    lex.fail("unexpected trailing input " + Lexer::describe(lex.peek()));
  }
  ParseResult r{std::move(f), {}};
  for (auto& [_, s] : unknowns) r.unknown_symbols.push_back(s);
  return r;
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {

int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::Iff: return 1;
    case FormulaKind::Implies: return 2;
    case FormulaKind::Or: return 3;
    case FormulaKind::And: return 4;
    case FormulaKind::Not:
    case FormulaKind::Forall:
    case FormulaKind::Exists: return 5;
    case FormulaKind::Atom:
    case FormulaKind::Equal: return 6;
  }
  return 6;
}

void print_rec(const Formula& f, std::ostringstream& out);

void print_child(const Formula& child, int min_prec, std::ostringstream& out) {
  if (precedence(child.kind()) < min_prec) {
    out << '(';
    print_rec(child, out);
    out << ')';
  } else {
    print_rec(child, out);
  }
}

void print_binary(const Formula& f, const char* op, bool right_assoc, std::ostringstream& out) {
  const int p = precedence(f.kind());
  // Children at the same level need parens exactly on the non-associated side.
  print_child(f.child(0), right_assoc ? p + 1 : p, out);
  out << ' ' << op << ' ';
  print_child(f.child(1), right_assoc ? p : p + 1, out);
}

void print_rec(const Formula& f, std::ostringstream& out) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      out << f.name() << '(';
      const auto& ts = f.terms();
      for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i) out << ',';
        out << ts[i].name;
      }
      out << ')';
      return;
    }
    case FormulaKind::Equal:
      out << f.terms()[0].name << " = " << f.terms()[1].name;
      return;
    case FormulaKind::Not:
      if (f.child(0).kind() == FormulaKind::Equal) {
        const auto& ts = f.child(0).terms();
        out << ts[0].name << " != " << ts[1].name;
        return;
      }
      out << '~';
      print_child(f.child(0), 5, out);
      return;
    case FormulaKind::And:
      print_binary(f, "&", false, out);
      return;
    case FormulaKind::Or:
      print_binary(f, "|", false, out);
      return;
    case FormulaKind::Implies:
      print_binary(f, "->", true, out);
      return;
    case FormulaKind::Iff:
      print_binary(f, "<->", true, out);
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      out << (f.kind() == FormulaKind::Forall ? "forall " : "exists ") << f.name() << ' ';
      print_child(f.child(0), 5, out);
      return;
  }
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::ostringstream out;
  print_rec(f, out);
  return out.str();
}

// ---------------------------------------------------------------------------
// Free variables and symbol collection
// ---------------------------------------------------------------------------

namespace {

void free_vars_rec(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Equal:
      for (const Term& t : f.terms()) {
        if (t.kind == TermKind::Variable &&
            std::find(bound.begin(), bound.end(), t.name) == bound.end()) {
          out.insert(t.name);
        }
      }
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      bound.push_back(f.name());
      free_vars_rec(f.child(0), bound, out);
      bound.pop_back();
      return;
    default:
      for (std::size_t i = 0; i < f.child_count(); ++i) free_vars_rec(f.child(i), bound, out);
      return;
  }
}

void symbols_rec(const Formula& f, std::set<Symbol>& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      out.insert(make_relation(f.name(), static_cast<int>(f.terms().size())));
      [[fallthrough]];
    case FormulaKind::Equal:
      for (const Term& t : f.terms()) {
        if (t.kind == TermKind::Constant) out.insert(make_constant(t.name));
      }
      return;
    default:
      for (std::size_t i = 0; i < f.child_count(); ++i) symbols_rec(f.child(i), out);
      return;
  }
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  free_vars_rec(f, bound, out);
  return out;
}

bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

std::vector<Symbol> symbols_of(const Formula& f) {
  std::set<Symbol> set;
  symbols_rec(f, set);
  return std::vector<Symbol>(set.begin(), set.end());
}

}  // namespace fodb
