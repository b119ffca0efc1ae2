#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fodb/syntax.hpp"

namespace fodb {

using ElementId = std::uint32_t;
using Tuple = std::vector<ElementId>;

// Finite first-order structure: ordered nonempty domain of labelled elements,
// constant interpretations, relation interpretations. Immutable after
// construction. Element identity is the domain index; labels are display
// names, unique within one structure so files and scripts can reference
// elements by label.
class Structure {
 public:
  Structure() = default;  // invalid placeholder

  // Label-based factory (used by the .fodb loader). Missing relation entries
  // default to the empty set; missing constant entries are an error.
  static Structure make(Signature sig, std::vector<std::string> domain_labels,
                        const std::map<std::string, std::string>& const_labels,
                        const std::map<std::string, std::set<std::vector<std::string>>>& rel_tuples);

  // Id-based factory (used by the structural operations).
  static Structure from_parts(Signature sig, std::vector<std::string> domain_labels,
                              std::map<std::string, ElementId> consts,
                              std::map<std::string, std::set<Tuple>> rels);

  const Signature& sig() const { return sig_; }
  const std::vector<std::string>& domain() const { return domain_; }
  std::size_t domain_size() const { return domain_.size(); }
  const std::string& label(ElementId e) const { return domain_.at(e); }
  std::optional<ElementId> element_by_label(const std::string& label) const;

  const std::map<std::string, ElementId>& consts() const { return consts_; }
  const std::map<std::string, std::set<Tuple>>& rels() const { return rels_; }
  std::optional<ElementId> const_interp(const std::string& name) const;
  const std::set<Tuple>* rel_interp(const std::string& name) const;  // null when absent

  // True when this structure interprets the symbol at exactly that arity.
  bool interprets(const Symbol& s) const;

  // Deterministic byte string; equal iff identical signature, ordered domain
  // labels, and interpretations. Isomorphism is deliberately not quotiented.
  std::string canonical_encoding() const;

 private:
  Signature sig_;
  std::vector<std::string> domain_;
  std::map<std::string, ElementId> consts_;
  std::map<std::string, std::set<Tuple>> rels_;
};

// Tarskian satisfaction for sentences, with equality as element identity.
// A sentence mentioning any symbol the structure does not interpret
// evaluates to false rather than erroring; callers that care surface a
// warning. Throws EvalError on non-sentence input.
bool evaluate(const Structure& a, const Formula& f);

// True when every sentence of t is true in a.
bool models_theory(const Structure& a, const std::vector<Formula>& t);

// Symbols of f that a does not interpret (drives the false-convention
// warning in reports).
std::vector<Symbol> uninterpreted_symbols(const Structure& a, const Formula& f);

}  // namespace fodb
