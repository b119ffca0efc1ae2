#include "fodb/ops.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fodb/errors.hpp"

namespace fodb {

const char* op_mode_name(OpMode m) { return m == OpMode::Paper ? "paper" : "strict"; }

std::string OperationDescriptor::to_line() const {
  std::ostringstream out;
  auto ref = [](const ElemRef& r) { return r.fresh ? "new " + r.label : r.label; };
  switch (payload) {
    case OpPayload::ConstBind:
      out << "insert const " << symbol << " = " << ref(args.at(0));
      break;
    case OpPayload::RelTuple: {
      out << "insert rel " << symbol << " (";
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out << ',';
        out << ref(args[i]);
      }
      out << ')';
      break;
    }
    case OpPayload::ConstReinterpret:
      out << "delete const " << symbol << " reinterpret " << args.at(0).label;
      break;
    case OpPayload::ConstDrop:
      out << "delete const " << symbol << " drop";
      break;
    case OpPayload::RelTupleRemove: {
      out << "delete rel " << symbol << " tuple (";
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out << ',';
        out << args[i].label;
      }
      out << ')';
      break;
    }
    case OpPayload::RelDrop:
      out << "delete rel " << symbol << " drop";
      break;
  }
  return out.str();
}

namespace {

[[noreturn]] void op_fail(const std::string& msg) { throw OperationError(msg); }

// Resolves the args of an insertion, appending fresh elements to the domain.
// Two fresh refs with the same label denote the same new element.
Tuple resolve_insert_args(const Structure& a, const std::vector<ElemRef>& args,
                          std::vector<std::string>& domain) {
  Tuple out;
  std::map<std::string, ElementId> created;
  for (const ElemRef& r : args) {
    if (r.fresh) {
      auto it = created.find(r.label);
      if (it != created.end()) {
        out.push_back(it->second);
        continue;
      }
      if (!is_identifier(r.label) || is_reserved_word(r.label)) {
        op_fail("invalid fresh element label '" + r.label + "'");
      }
      if (std::find(domain.begin(), domain.end(), r.label) != domain.end()) {
        op_fail("fresh element label '" + r.label + "' collides with an existing element");
      }
      const ElementId id = static_cast<ElementId>(domain.size());
      domain.push_back(r.label);
      created.emplace(r.label, id);
      out.push_back(id);
    } else {
      auto e = a.element_by_label(r.label);
      if (!e) op_fail("unknown element label '" + r.label + "'");
      out.push_back(*e);
    }
  }
  return out;
}

void check_proviso(const Structure& next, const Theory& t, const std::string& what) {
  for (const Formula& f : t.sentences()) {
    if (!evaluate(next, f)) {
      op_fail(what + " rejected: theory sentence '" + print_formula(f) + "' falsified");
    }
  }
}

std::vector<Formula> collect_breaks(const Structure& next, const Theory& t) {
  std::vector<Formula> out;
  for (const Formula& f : t.sentences()) {
    if (!evaluate(next, f)) out.push_back(f);
  }
  return out;
}

// Rebuilds a structure after removing a set of domain elements. Callers
// guarantee the removed elements occur in no remaining interpretation.
Structure drop_elements(const Signature& sig, const Structure& a, const std::set<ElementId>& gone,
                        const std::map<std::string, ElementId>& consts,
                        const std::map<std::string, std::set<Tuple>>& rels) {
  if (gone.size() >= a.domain_size()) {
    op_fail("deletion would empty the domain");
  }
  std::vector<std::string> domain;
  std::vector<ElementId> remap(a.domain_size(), 0);
  for (ElementId i = 0; i < a.domain_size(); ++i) {
    if (gone.count(i)) continue;
    remap[i] = static_cast<ElementId>(domain.size());
    domain.push_back(a.label(i));
  }
  std::map<std::string, ElementId> new_consts;
  for (const auto& [name, e] : consts) new_consts[name] = remap[e];
  std::map<std::string, std::set<Tuple>> new_rels;
  for (const auto& [name, tuples] : rels) {
    std::set<Tuple> out;
    for (const Tuple& t : tuples) {
      Tuple nt;
      nt.reserve(t.size());
      for (ElementId e : t) nt.push_back(remap[e]);
      out.insert(std::move(nt));
    }
    new_rels[name] = std::move(out);
  }
  return Structure::from_parts(sig, std::move(domain), std::move(new_consts), std::move(new_rels));
}

Tuple resolve_existing_tuple(const Structure& a, const std::vector<ElemRef>& args) {
  Tuple out;
  for (const ElemRef& r : args) {
    if (r.fresh) op_fail("deletion arguments must name existing elements");
    auto e = a.element_by_label(r.label);
    if (!e) op_fail("unknown element label '" + r.label + "'");
    out.push_back(*e);
  }
  return out;
}

}  // namespace

bool free_for(const Structure& a, ElementId e, const std::string& symbol) {
  for (const auto& [name, val] : a.consts()) {
    if (name != symbol && val == e) return false;
  }
  for (const auto& [name, tuples] : a.rels()) {
    if (name == symbol) continue;
    for (const Tuple& t : tuples) {
      if (std::find(t.begin(), t.end(), e) != t.end()) return false;
    }
  }
  return true;
}

ApplyResult apply_insertion(const Database& d, const OperationDescriptor& op, OpMode) {
  const Structure& a = d.structure;
  if (op.kind != OpKind::Insert) op_fail("descriptor is not an insertion");
  const Symbol* declared = a.sig().find(op.symbol);

  if (op.payload == OpPayload::ConstBind) {
    if (declared && declared->kind != SymbolKind::Constant) {
      op_fail("'" + op.symbol + "' is a relation; insert a tuple instead");
    }
    if (op.args.size() != 1) op_fail("constant insertion takes exactly one element");
    std::vector<std::string> domain = a.domain();
    Tuple resolved = resolve_insert_args(a, op.args, domain);
    Signature sig = a.sig();
    if (!declared) sig.add(make_constant(op.symbol));
    auto consts = a.consts();
    consts[op.symbol] = resolved[0];
    Structure next = Structure::from_parts(std::move(sig), std::move(domain), std::move(consts),
                                           a.rels());
    // The proviso comes first so a rebinding that also breaks the theory is
    // reported as the theory violation (the worked examples name it that way).
    check_proviso(next, d.theory, "insertion of '" + op.symbol + "'");
    bool identity = false;
    if (declared) {
      if (a.const_interp(op.symbol) == next.const_interp(op.symbol) &&
          next.domain_size() == a.domain_size()) {
        identity = true;
      } else {
        op_fail("insertion cannot change the interpretation of existing constant '" + op.symbol +
                "'");
      }
    }
    return ApplyResult{Database{std::move(next), d.theory}, {}, identity};
  }

  if (op.payload != OpPayload::RelTuple) op_fail("descriptor is not an insertion payload");
  if (declared && declared->kind != SymbolKind::Relation) {
    op_fail("'" + op.symbol + "' is a constant; bind it instead");
  }
  if (op.args.empty()) op_fail("relation insertion needs at least one argument");
  if (declared && declared->arity != static_cast<int>(op.args.size())) {
    op_fail("arity mismatch: relation '" + op.symbol + "' expects " +
            std::to_string(declared->arity) + " argument(s), got " +
            std::to_string(op.args.size()));
  }
  std::vector<std::string> domain = a.domain();
  Tuple tuple = resolve_insert_args(a, op.args, domain);
  Signature sig = a.sig();
  if (!declared) sig.add(make_relation(op.symbol, static_cast<int>(op.args.size())));
  auto rels = a.rels();
  const bool identity = rels.count(op.symbol) && rels[op.symbol].count(tuple) != 0 &&
                        domain.size() == a.domain_size();
  rels[op.symbol].insert(tuple);
  Structure next =
      Structure::from_parts(std::move(sig), std::move(domain), a.consts(), std::move(rels));
  check_proviso(next, d.theory, "insertion of '" + op.symbol + "'");
  return ApplyResult{Database{std::move(next), d.theory}, {}, identity};
}

ApplyResult apply_deletion(const Database& d, const OperationDescriptor& op, OpMode mode) {
  const Structure& a = d.structure;
  if (op.kind != OpKind::Delete) op_fail("descriptor is not a deletion");
  const Symbol* declared = a.sig().find(op.symbol);
  if (!declared) op_fail("cannot delete '" + op.symbol + "': not in the signature");

  Structure next;
  switch (op.payload) {
    case OpPayload::ConstReinterpret: {
      if (declared->kind != SymbolKind::Constant) op_fail("'" + op.symbol + "' is not a constant");
      Tuple target = resolve_existing_tuple(a, op.args);
      if (target.size() != 1) op_fail("reinterpretation takes exactly one element");
      if (target[0] == *a.const_interp(op.symbol)) {
        op_fail("reinterpretation target equals the current interpretation of '" + op.symbol + "'");
      }
      auto consts = a.consts();
      consts[op.symbol] = target[0];
      next = Structure::from_parts(a.sig(), a.domain(), std::move(consts), a.rels());
      break;
    }
    case OpPayload::ConstDrop: {
      if (declared->kind != SymbolKind::Constant) op_fail("'" + op.symbol + "' is not a constant");
      const ElementId e = *a.const_interp(op.symbol);
      Signature sig = a.sig();
      sig.remove(op.symbol);
      auto consts = a.consts();
      consts.erase(op.symbol);
      std::set<ElementId> gone;
      if (free_for(a, e, op.symbol)) gone.insert(e);
      next = drop_elements(sig, a, gone, consts, a.rels());
      break;
    }
    case OpPayload::RelTupleRemove: {
      if (declared->kind != SymbolKind::Relation) op_fail("'" + op.symbol + "' is not a relation");
      Tuple tuple = resolve_existing_tuple(a, op.args);
      if (static_cast<int>(tuple.size()) != declared->arity) {
        op_fail("arity mismatch in tuple removal from '" + op.symbol + "'");
      }
      auto rels = a.rels();
      auto& tuples = rels[op.symbol];
      if (tuples.erase(tuple) == 0) {
        op_fail("tuple named for removal is absent from '" + op.symbol + "'");
      }
      next = Structure::from_parts(a.sig(), a.domain(), a.consts(), std::move(rels));
      break;
    }
    case OpPayload::RelDrop: {
      if (declared->kind != SymbolKind::Relation) op_fail("'" + op.symbol + "' is not a relation");
      Signature sig = a.sig();
      sig.remove(op.symbol);
      auto rels = a.rels();
      const std::set<Tuple> old_tuples = rels[op.symbol];
      rels.erase(op.symbol);
      std::set<ElementId> gone;
      for (const Tuple& t : old_tuples) {
        for (ElementId e : t) {
          if (free_for(a, e, op.symbol)) gone.insert(e);
        }
      }
      next = drop_elements(sig, a, gone, a.consts(), rels);
      break;
    }
    default:
      op_fail("descriptor is not a deletion payload");
  }

  std::vector<Formula> breaks = collect_breaks(next, d.theory);
  if (mode == OpMode::Strict && !breaks.empty()) {
    op_fail("deletion of '" + op.symbol + "' rejected in strict mode: theory sentence '" +
            print_formula(breaks.front()) + "' falsified");
  }
  return ApplyResult{Database{std::move(next), d.theory}, std::move(breaks), false};
}

ApplyResult apply_operation(const Database& d, const OperationDescriptor& op, OpMode mode) {
  return op.kind == OpKind::Insert ? apply_insertion(d, op, mode) : apply_deletion(d, op, mode);
}

// ---------------------------------------------------------------------------
// Successor enumeration
// ---------------------------------------------------------------------------

namespace {

// Fresh labels for search successors: _1, _2, ... skipping collisions.
std::vector<std::string> fresh_labels(const Structure& a, int count) {
  std::vector<std::string> out;
  int n = 1;
  while (static_cast<int>(out.size()) < count) {
    std::string label = "_" + std::to_string(n++);
    if (!a.element_by_label(label)) out.push_back(label);
  }
  return out;
}

// All argument vectors for an arity-n tuple over existing elements plus at
// most `budget` fresh ones. Fresh slots are introduced in first-use order so
// each distinct shape appears once.
void tuple_args(const Structure& a, int arity, int budget, const std::vector<std::string>& fresh,
                std::vector<ElemRef>& current, int used_fresh,
                std::vector<std::vector<ElemRef>>& out) {
  if (static_cast<int>(current.size()) == arity) {
    out.push_back(current);
    return;
  }
  for (ElementId e = 0; e < a.domain_size(); ++e) {
    current.push_back(ElemRef{false, a.label(e)});
    tuple_args(a, arity, budget, fresh, current, used_fresh, out);
    current.pop_back();
  }
  for (int i = 0; i < used_fresh; ++i) {
    current.push_back(ElemRef{true, fresh[i]});
    tuple_args(a, arity, budget, fresh, current, used_fresh, out);
    current.pop_back();
  }
  if (used_fresh < budget) {
    current.push_back(ElemRef{true, fresh[used_fresh]});
    tuple_args(a, arity, budget, fresh, current, used_fresh + 1, out);
    current.pop_back();
  }
}

void try_push(const Database& d, OperationDescriptor op, OpMode mode, std::set<std::string>& seen,
              std::vector<Successor>& out) {
  try {
    ApplyResult r = apply_operation(d, op, mode);
    if (r.identity) return;
    if (!seen.insert(r.database.structure.canonical_encoding()).second) return;
    out.push_back(Successor{std::move(op), std::move(r)});
  } catch (const OperationError&) {
    // illegal: skip
  }
}

}  // namespace

std::vector<Successor> enumerate_successors(const Database& d, OpMode mode, int fresh_budget,
                                            const std::vector<Symbol>& symbol_pool) {
  const Structure& a = d.structure;
  std::map<std::string, Symbol> symbols;
  for (const Symbol& s : a.sig().symbols()) symbols[s.name] = s;
  for (const Symbol& s : symbol_pool) symbols.try_emplace(s.name, s);

  const std::vector<std::string> fresh = fresh_labels(a, std::max(fresh_budget, 0));
  std::set<std::string> seen;
  std::vector<Successor> out;

  for (const auto& [name, sym] : symbols) {
    const bool in_sig = a.sig().contains(name);
    // Insertions. Existing constants admit only the identity insertion,
    // which search excludes.
    if (sym.kind == SymbolKind::Constant && !in_sig) {
      for (ElementId e = 0; e < a.domain_size(); ++e) {
        try_push(d,
                 OperationDescriptor{OpKind::Insert, OpPayload::ConstBind, name,
                                     {ElemRef{false, a.label(e)}}},
                 mode, seen, out);
      }
      if (fresh_budget >= 1) {
        try_push(d,
                 OperationDescriptor{OpKind::Insert, OpPayload::ConstBind, name,
                                     {ElemRef{true, fresh[0]}}},
                 mode, seen, out);
      }
    }
    if (sym.kind == SymbolKind::Relation) {
      std::vector<std::vector<ElemRef>> argsets;
      std::vector<ElemRef> current;
      tuple_args(a, sym.arity, std::max(fresh_budget, 0), fresh, current, 0, argsets);
      for (auto& args : argsets) {
        try_push(d, OperationDescriptor{OpKind::Insert, OpPayload::RelTuple, name, std::move(args)},
                 mode, seen, out);
      }
    }
    if (!in_sig) continue;
    // Deletions.
    if (sym.kind == SymbolKind::Constant) {
      for (ElementId e = 0; e < a.domain_size(); ++e) {
        try_push(d,
                 OperationDescriptor{OpKind::Delete, OpPayload::ConstReinterpret, name,
                                     {ElemRef{false, a.label(e)}}},
                 mode, seen, out);
      }
      try_push(d, OperationDescriptor{OpKind::Delete, OpPayload::ConstDrop, name, {}}, mode, seen,
               out);
    } else {
      const std::set<Tuple>* tuples = a.rel_interp(name);
      if (tuples) {
        for (const Tuple& t : *tuples) {
          std::vector<ElemRef> args;
          for (ElementId e : t) args.push_back(ElemRef{false, a.label(e)});
          try_push(d,
                   OperationDescriptor{OpKind::Delete, OpPayload::RelTupleRemove, name,
                                       std::move(args)},
                   mode, seen, out);
        }
      }
      try_push(d, OperationDescriptor{OpKind::Delete, OpPayload::RelDrop, name, {}}, mode, seen,
               out);
    }
  }
  return out;
}

}  // namespace fodb
