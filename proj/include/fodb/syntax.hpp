#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fodb/errors.hpp"
#include "fodb/lexer.hpp"

namespace fodb {

enum class SymbolKind { Constant, Relation };

// Constant or relation symbol. Constants are exactly the arity-0 symbols;
// relations have arity >= 1.
struct Symbol {
  std::string name;
  SymbolKind kind = SymbolKind::Constant;
  int arity = 0;

  bool operator==(const Symbol& o) const {
    return name == o.name && kind == o.kind && arity == o.arity;
  }
  bool operator<(const Symbol& o) const {
    if (name != o.name) return name < o.name;
    if (kind != o.kind) return kind < o.kind;
    return arity < o.arity;
  }
};

Symbol make_constant(std::string name);
Symbol make_relation(std::string name, int arity);

// Finite set of symbols with unique names. Names may not be reserved words
// of the file formats.
class Signature {
 public:
  Signature() = default;

  void add(Symbol s);  // throws ValidationError on duplicate/invalid
  void remove(const std::string& name);
  bool contains(const std::string& name) const;
  const Symbol* find(const std::string& name) const;  // null when absent
  std::vector<Symbol> symbols() const;                // sorted by name
  std::size_t size() const { return symbols_.size(); }

  bool operator==(const Signature& o) const { return symbols_ == o.symbols_; }

 private:
  std::map<std::string, Symbol> symbols_;
};

// True for names reserved by the formula language or the file formats.
bool is_reserved_word(std::string_view name);
// True for identifiers the parser reads as variables when unbound: a letter
// in u..z followed only by digits (x, y, z2, ...).
bool is_variable_name(std::string_view name);
bool is_identifier(std::string_view name);

enum class TermKind { Variable, Constant };

struct Term {
  TermKind kind = TermKind::Constant;
  std::string name;

  bool operator==(const Term& o) const { return kind == o.kind && name == o.name; }
};

Term make_var(std::string name);
Term make_const_term(std::string name);

enum class FormulaKind { Atom, Equal, Not, And, Or, Implies, Iff, Forall, Exists };

// Immutable first-order formula tree. Equality is plain structural equality
// including bound-variable names; it is the equality used by every set
// operation downstream.
class Formula {
 public:
  Formula() = default;  // invalid placeholder; any accessor throws

  static Formula atom(std::string relation, std::vector<Term> args);
  static Formula equal(Term lhs, Term rhs);
  static Formula negation(Formula f);
  static Formula conjunction(Formula l, Formula r);
  static Formula disjunction(Formula l, Formula r);
  static Formula implication(Formula l, Formula r);
  static Formula biconditional(Formula l, Formula r);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  bool valid() const { return node_ != nullptr; }
  FormulaKind kind() const;
  // Atom: relation name; Forall/Exists: bound variable name.
  const std::string& name() const;
  // Atom: argument terms; Equal: the two sides.
  const std::vector<Term>& terms() const;
  const Formula& child(std::size_t i) const;
  std::size_t child_count() const;
  std::size_t hash() const;

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  const Node& node() const;

  std::shared_ptr<const Node> node_;
};

bool contains_formula(const std::vector<Formula>& fs, const Formula& f);
// Appends f unless an equal formula is already present.
void add_formula(std::vector<Formula>& fs, const Formula& f);

struct ParseResult {
  Formula formula;
  std::vector<Symbol> unknown_symbols;  // sorted by name
};

// Parses one formula against sig. Symbols not in sig parse successfully and
// are reported: identifiers applied to arguments become relations of the
// observed arity, bare identifiers become constants. Errors carry line/col.
ParseResult parse_formula(std::string_view text, const Signature& sig);

// Parses a single formula starting at the lexer's current token, leaving the
// lexer positioned just past it. Unknown symbols accumulate into `unknowns`
// (inconsistent reuse across calls is an error).
Formula parse_formula_at(Lexer& lex, const Signature& sig,
                         std::map<std::string, Symbol>& unknowns);

// Minimal parenthesization; parse(print(f)) is structurally f.
std::string print_formula(const Formula& f);

std::set<std::string> free_variables(const Formula& f);
bool is_sentence(const Formula& f);

// Every constant and relation symbol occurring in f, with observed arity,
// sorted by name.
std::vector<Symbol> symbols_of(const Formula& f);

}  // namespace fodb
