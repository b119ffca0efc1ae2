#include "fodb/structure.hpp"

#include <algorithm>
#include <sstream>

#include "fodb/errors.hpp"

namespace fodb {

Structure Structure::from_parts(Signature sig, std::vector<std::string> domain_labels,
                                std::map<std::string, ElementId> consts,
                                std::map<std::string, std::set<Tuple>> rels) {
  if (domain_labels.empty()) throw ValidationError("structure domain must be nonempty");
  {
    std::set<std::string> seen;
    for (const std::string& l : domain_labels) {
      if (!is_identifier(l) || is_reserved_word(l)) {
        throw ValidationError("invalid element label '" + l + "'");
      }
      if (!seen.insert(l).second) throw ValidationError("duplicate element label '" + l + "'");
    }
  }
  const ElementId n = static_cast<ElementId>(domain_labels.size());
  for (const Symbol& s : sig.symbols()) {
    if (s.kind == SymbolKind::Constant) {
      auto it = consts.find(s.name);
      if (it == consts.end()) {
        throw ValidationError("constant '" + s.name + "' has no interpretation");
      }
      if (it->second >= n) throw ValidationError("constant '" + s.name + "' maps outside the domain");
    } else {
      auto [it, _] = rels.try_emplace(s.name);
      for (const Tuple& t : it->second) {
        if (static_cast<int>(t.size()) != s.arity) {
          throw ValidationError("tuple arity mismatch in relation '" + s.name + "'");
        }
        for (ElementId e : t) {
          if (e >= n) throw ValidationError("tuple in '" + s.name + "' references a missing element");
        }
      }
    }
  }
  for (const auto& [name, _] : consts) {
    const Symbol* s = sig.find(name);
    if (!s || s->kind != SymbolKind::Constant) {
      throw ValidationError("interpretation for undeclared constant '" + name + "'");
    }
  }
  for (const auto& [name, _] : rels) {
    const Symbol* s = sig.find(name);
    if (!s || s->kind != SymbolKind::Relation) {
      throw ValidationError("interpretation for undeclared relation '" + name + "'");
    }
  }
  Structure a;
  a.sig_ = std::move(sig);
  a.domain_ = std::move(domain_labels);
  a.consts_ = std::move(consts);
  a.rels_ = std::move(rels);
  return a;
}

Structure Structure::make(Signature sig, std::vector<std::string> domain_labels,
                          const std::map<std::string, std::string>& const_labels,
                          const std::map<std::string, std::set<std::vector<std::string>>>& rel_tuples) {
  std::map<std::string, ElementId> index;
  for (ElementId i = 0; i < domain_labels.size(); ++i) {
    if (!index.emplace(domain_labels[i], i).second) {
      throw ValidationError("duplicate element label '" + domain_labels[i] + "'");
    }
  }
  auto lookup = [&](const std::string& l) -> ElementId {
    auto it = index.find(l);
    if (it == index.end()) throw ValidationError("unknown element label '" + l + "'");
    return it->second;
  };
  std::map<std::string, ElementId> consts;
  for (const auto& [name, label] : const_labels) consts[name] = lookup(label);
  std::map<std::string, std::set<Tuple>> rels;
  for (const auto& [name, tuples] : rel_tuples) {
    std::set<Tuple> out;
    for (const auto& labels : tuples) {
      Tuple t;
      t.reserve(labels.size());
      for (const std::string& l : labels) t.push_back(lookup(l));
      out.insert(std::move(t));
    }
    rels[name] = std::move(out);
  }
  return from_parts(std::move(sig), std::move(domain_labels), std::move(consts), std::move(rels));
}

std::optional<ElementId> Structure::element_by_label(const std::string& label) const {
  for (ElementId i = 0; i < domain_.size(); ++i) {
    if (domain_[i] == label) return i;
  }
  return std::nullopt;
}

std::optional<ElementId> Structure::const_interp(const std::string& name) const {
  auto it = consts_.find(name);
  if (it == consts_.end()) return std::nullopt;
  return it->second;
}

const std::set<Tuple>* Structure::rel_interp(const std::string& name) const {
  auto it = rels_.find(name);
  return it == rels_.end() ? nullptr : &it->second;
}

bool Structure::interprets(const Symbol& s) const {
  const Symbol* own = sig_.find(s.name);
  if (!own) return false;
  if (own->kind != s.kind || own->arity != s.arity) return false;
  if (s.kind == SymbolKind::Constant) return consts_.count(s.name) != 0;
  return rels_.count(s.name) != 0;
}

std::string Structure::canonical_encoding() const {
  std::ostringstream out;
  out << "S{";
  for (const Symbol& s : sig_.symbols()) {
    out << s.name << '/' << (s.kind == SymbolKind::Constant ? 'c' : 'r') << s.arity << ';';
  }
  out << "}D{";
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (i) out << ',';
    out << domain_[i];
  }
  out << "}C{";
  for (const auto& [name, e] : consts_) out << name << '=' << domain_[e] << ';';
  out << "}R{";
  for (const auto& [name, tuples] : rels_) {
    out << name << "={";
    for (const Tuple& t : tuples) {
      out << '(';
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out << ',';
        out << domain_[t[i]];
      }
      out << ')';
    }
    out << "};";
  }
  out << '}';
  return out.str();
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

struct Env {
  std::vector<std::pair<std::string, ElementId>> frames;

  ElementId lookup(const std::string& v) const {
    for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
      if (it->first == v) return it->second;
    }
    throw EvalError("unbound variable '" + v + "' during evaluation");
  }
};

ElementId term_value(const Structure& a, const Term& t, const Env& env) {
  if (t.kind == TermKind::Variable) return env.lookup(t.name);
  return *a.const_interp(t.name);
}

bool eval_rec(const Structure& a, const Formula& f, Env& env) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      Tuple tuple;
      tuple.reserve(f.terms().size());
      for (const Term& t : f.terms()) tuple.push_back(term_value(a, t, env));
      const std::set<Tuple>* rel = a.rel_interp(f.name());
      return rel && rel->count(tuple) != 0;
    }
    case FormulaKind::Equal:
      return term_value(a, f.terms()[0], env) == term_value(a, f.terms()[1], env);
    case FormulaKind::Not:
      return !eval_rec(a, f.child(0), env);
    case FormulaKind::And:
      return eval_rec(a, f.child(0), env) && eval_rec(a, f.child(1), env);
    case FormulaKind::Or:
      return eval_rec(a, f.child(0), env) || eval_rec(a, f.child(1), env);
    case FormulaKind::Implies:
      return !eval_rec(a, f.child(0), env) || eval_rec(a, f.child(1), env);
    case FormulaKind::Iff:
      return eval_rec(a, f.child(0), env) == eval_rec(a, f.child(1), env);
    case FormulaKind::Forall: {
      for (ElementId e = 0; e < a.domain_size(); ++e) {
        env.frames.emplace_back(f.name(), e);
        const bool ok = eval_rec(a, f.child(0), env);
        env.frames.pop_back();
        if (!ok) return false;
      }
      return true;
    }
    case FormulaKind::Exists: {
      for (ElementId e = 0; e < a.domain_size(); ++e) {
        env.frames.emplace_back(f.name(), e);
        const bool ok = eval_rec(a, f.child(0), env);
        env.frames.pop_back();
        if (ok) return true;
      }
      return false;
    }
  }
  return false;
}

}  // namespace

std::vector<Symbol> uninterpreted_symbols(const Structure& a, const Formula& f) {
  std::vector<Symbol> out;
  for (const Symbol& s : symbols_of(f)) {
    if (!a.interprets(s)) out.push_back(s);
  }
  return out;
}

bool evaluate(const Structure& a, const Formula& f) {
  if (!is_sentence(f)) {
    throw EvalError("evaluate requires a sentence; free variables in '" + print_formula(f) + "'");
  }
  // Out-of-signature convention: the whole sentence counts as false when any
  // of its symbols lacks an interpretation.
  if (!uninterpreted_symbols(a, f).empty()) return false;
  Env env;
  return eval_rec(a, f, env);
}

bool models_theory(const Structure& a, const std::vector<Formula>& t) {
  for (const Formula& f : t) {
    if (!evaluate(a, f)) return false;
  }
  return true;
}

}  // namespace fodb
